//! Constructions of asymptotic pairs of rays on distinct arc-components.
//!
//! Each construction names two backward itineraries `e`, `ẽ` and a short
//! list of key folds: steps where the two rays fold at depths that differ by
//! a multiple of `N`. Everything in between is filled in by lockstep
//! transports (see [`crate::cycle`]). Running the key folds once carries
//! `(e, ẽ)` to `(e·A, ẽ·A)`; every later cycle lifts the key depths by the
//! length of the suffix appended so far.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arc::same_arc_component;
use crate::backward::BackSeq;
use crate::cycle::{drive_cycle, CycleError, Fill, KeyFold};
use crate::forward::{first_discrepancy, Depth, ForwardSeq};
use crate::kneading::KneadingSeq;
use crate::ray::{check_asymptotic, AsymptoticReport, FoldSchedule, FoldSpec, RayError};
use crate::symbol::{Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "case1")]
    Case1,
    #[serde(rename = "case2")]
    Case2,
    #[serde(rename = "case3")]
    Case3,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Case::Case1 => "case1",
            Case::Case2 => "case2",
            Case::Case3 => "case3",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("parameters out of range: {0}")]
    BadParams(String),
    #[error("hypothesis fails for {tau} with k = {k}")]
    HypothesisFailed { tau: String, k: usize },
    #[error("fill contains a star")]
    BadFill,
    #[error("cycle {cycle}: {source}")]
    Cycle { cycle: usize, source: CycleError },
    #[error("cycle {cycle} does not end in a shifted copy of its start")]
    NotSelfSimilar { cycle: usize },
    #[error(transparent)]
    Ray(#[from] RayError),
}

/// `ν_1 … ν_N ≈ τ_1 … τ_N`, with `ν_N` chosen freely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NuWord {
    word: Word,
}

impl NuWord {
    pub fn new(tau: &KneadingSeq, last: Symbol) -> Option<Self> {
        if last.is_star() {
            return None;
        }
        let n = tau.period();
        let mut word: Word = (1..n).map(|i| tau.sym(i as i64)).collect();
        word.push(last);
        Some(NuWord { word })
    }

    /// `ν_i` for `1 ≤ i ≤ N`.
    pub fn at(&self, i: usize) -> Symbol {
        self.word[i - 1]
    }

    /// `ν_i` with its complement taken when `flip` holds.
    fn sym(&self, i: usize, flip: bool) -> Symbol {
        let s = self.at(i);
        if flip {
            s.complement().expect("ν has no stars")
        } else {
            s
        }
    }

    /// `ν_from … ν_to`, complementing the indices listed in `primed`.
    fn block(&self, from: usize, to: usize, primed: &[usize]) -> Word {
        (from..=to)
            .map(|i| self.sym(i, primed.contains(&i)))
            .collect()
    }

    pub fn word(&self) -> &Word {
        &self.word
    }
}

impl fmt::Display for NuWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

/// One `(case, k, ν)` triple allowed by the hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypothesis {
    pub case: Case,
    pub k: usize,
    pub nu: NuWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub tau: KneadingSeq,
    pub entries: Vec<Hypothesis>,
    pub case1: bool,
}

/// All acceptable kneading sequences of period at most `max_n`, ordered by
/// period and then lexicographically.
pub fn enumerate_kneading(max_n: usize) -> Vec<KneadingSeq> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        // τ_1 = 1 and τ_2 … τ_{N-1} range over {1, 2}.
        for bits in 0u64..(1 << (n - 2)) {
            let mut body = Word::new();
            body.push(Symbol::Star);
            body.push(Symbol::One);
            for j in (0..n - 2).rev() {
                body.push(if bits >> j & 1 == 1 {
                    Symbol::Two
                } else {
                    Symbol::One
                });
            }
            let Ok(seq) = ForwardSeq::periodic(body) else {
                continue;
            };
            if seq.period_len() != n {
                continue;
            }
            if let Ok(tau) = KneadingSeq::new(seq) {
                out.push(tau);
            }
        }
    }
    out
}

/// `k` with `N/2 < k < N` and `d̲(σ^k τ, τ) ≥ N − k`.
pub fn admissible_shifts(tau: &KneadingSeq) -> Vec<usize> {
    let n = tau.period();
    (n / 2 + 1..n)
        .filter(
            |&k| match first_discrepancy(&tau.seq().shift(k), tau.seq()) {
                Depth::Finite(d) => d >= n - k,
                Depth::Infinite => true,
            },
        )
        .collect()
}

/// Whether `τ = (*12^{N-2})^∞`.
pub fn is_case1_tau(tau: &KneadingSeq) -> bool {
    (2..tau.period()).all(|i| tau.sym(i as i64) == Symbol::Two)
}

pub fn scan_hypotheses(tau: &KneadingSeq) -> HypothesisReport {
    let n = tau.period();
    let shifts = admissible_shifts(tau);
    let mut entries = Vec::new();
    for (case, primed) in [(Case::Case2, false), (Case::Case3, true)] {
        for &k in &shifts {
            let base = tau.sym((n - k) as i64);
            let last = if primed {
                base.complement()
            } else {
                Some(base)
            };
            let nu =
                NuWord::new(tau, last.expect("τ_{N-k} is not a star")).expect("ν_N is not a star");
            entries.push(Hypothesis { case, k, nu });
        }
    }
    HypothesisReport {
        tau: tau.clone(),
        entries,
        case1: n >= 3 && is_case1_tau(tau),
    }
}

/// Case-2 selection in its unfolded form: `ν_{k+j} = τ_j` for `j = 1..N−k`.
pub fn case2_by_alignment(tau: &KneadingSeq, k: usize, nu: &NuWord) -> bool {
    let n = tau.period();
    (1..=n - k).all(|j| nu.at(k + j) == tau.sym(j as i64))
}

/// A packaged construction: the pair `(e, ẽ)` and the key folds of one cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremInstance {
    pub case: Case,
    pub tau: KneadingSeq,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub nu: Option<NuWord>,
    pub e: BackSeq,
    pub etilde: BackSeq,
    pub keys: Vec<KeyFold>,
}

impl TheoremInstance {
    /// A pair with explicitly supplied itineraries, using the key folds of
    /// `self`. Used to run printed variants through the same machinery.
    pub fn with_pair(&self, e: BackSeq, etilde: BackSeq) -> TheoremInstance {
        TheoremInstance {
            e,
            etilde,
            ..self.clone()
        }
    }

    pub fn n(&self) -> usize {
        self.tau.period()
    }
}

fn back(period: Word, suffix: Word) -> BackSeq {
    BackSeq::new(period, suffix).expect("constructed periods are nonempty")
}

fn run_of(s: Symbol, len: usize) -> Word {
    std::iter::repeat_n(s, len).collect()
}

fn cat(parts: &[&Word]) -> Word {
    let mut out = Word::new();
    for p in parts {
        out.extend_from(p);
    }
    out
}

fn case1_tau(n: usize) -> KneadingSeq {
    let body: String = std::iter::once('1')
        .chain(std::iter::repeat_n('2', n - 2))
        .collect();
    KneadingSeq::from_body(&body).expect("(*12^{N-2}) is acceptable")
}

pub fn build_case1(n: usize, l: usize) -> Result<TheoremInstance, TheoremError> {
    if n < 3 {
        return Err(TheoremError::BadParams(format!(
            "N = {n} must be at least 3"
        )));
    }
    if l < 1 || l > n - 2 {
        return Err(TheoremError::BadParams(format!(
            "l = {l} must lie in 1..={}",
            n - 2
        )));
    }
    let one = run_of(Symbol::One, 1);
    let p = cat(&[&one, &run_of(Symbol::Two, n - 3), &one]);
    let stem = cat(&[&one, &run_of(Symbol::Two, n - 2), &one]);
    let e = back(p.clone(), stem.clone());
    let etilde = back(p, cat(&[&stem, &run_of(Symbol::Two, l)]));
    Ok(TheoremInstance {
        case: Case::Case1,
        tau: case1_tau(n),
        k: None,
        l: Some(l),
        nu: None,
        e,
        etilde,
        keys: vec![
            KeyFold {
                e_depth: n + 1,
                f_depth: 1,
            },
            KeyFold {
                e_depth: l + 1,
                f_depth: n + l + 1,
            },
        ],
    })
}

fn hypothesis(tau: &KneadingSeq, case: Case, k: usize) -> Result<NuWord, TheoremError> {
    scan_hypotheses(tau)
        .entries
        .into_iter()
        .find(|h| h.case == case && h.k == k)
        .map(|h| h.nu)
        .ok_or(TheoremError::HypothesisFailed {
            tau: tau.to_string(),
            k,
        })
}

/// Case 2 with `ν` supplied directly; the hypothesis on `k` is not checked.
pub fn case2_pair(n: usize, k: usize, nu: &NuWord) -> (BackSeq, BackSeq) {
    let e = back(nu.block(1, k, &[k]), nu.block(1, n, &[]));
    let etilde = back(nu.block(1, k, &[n - k]), nu.block(1, n, &[n - k, n]));
    (e, etilde)
}

/// Case 3 with `ν` supplied directly; the hypothesis on `k` is not checked.
pub fn case3_pair(n: usize, k: usize, nu: &NuWord) -> (BackSeq, BackSeq) {
    let p = cat(&[&nu.block(n - k + 1, k, &[k]), &nu.block(1, n, &[])]);
    let e = back(p.clone(), Word::new());
    let etilde = back(p, nu.block(n - k + 1, n, &[n]));
    (e, etilde)
}

pub fn build_case2(tau: &KneadingSeq, k: usize) -> Result<TheoremInstance, TheoremError> {
    let nu = hypothesis(tau, Case::Case2, k)?;
    let n = tau.period();
    let (e, etilde) = case2_pair(n, k, &nu);
    Ok(TheoremInstance {
        case: Case::Case2,
        tau: tau.clone(),
        k: Some(k),
        l: None,
        nu: Some(nu),
        e,
        etilde,
        keys: vec![
            KeyFold {
                e_depth: n + 1,
                f_depth: 1,
            },
            KeyFold {
                e_depth: n + k + 1,
                f_depth: k + 1,
            },
        ],
    })
}

pub fn build_case3(tau: &KneadingSeq, k: usize) -> Result<TheoremInstance, TheoremError> {
    let nu = hypothesis(tau, Case::Case3, k)?;
    let n = tau.period();
    let (e, etilde) = case3_pair(n, k, &nu);
    Ok(TheoremInstance {
        case: Case::Case3,
        tau: tau.clone(),
        k: Some(k),
        l: None,
        nu: Some(nu),
        e,
        etilde,
        keys: vec![
            KeyFold {
                e_depth: n + 1,
                f_depth: 1,
            },
            KeyFold {
                e_depth: k + 1,
                f_depth: n + k + 1,
            },
        ],
    })
}

/// The two schedules of an instance, cycle by cycle, until both have at
/// least `horizon` folds; then truncated to `horizon`, or to the end of the
/// first cycle when that is longer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedPair {
    pub e_side: FoldSchedule,
    pub f_side: FoldSchedule,
    /// Fold counts at which a cycle ends (before truncation).
    pub cycle_ends: Vec<usize>,
    /// The appended words `A_1, A_2, …` of the completed cycles.
    pub appended: Vec<Word>,
}

pub fn generate_schedules(
    inst: &TheoremInstance,
    horizon: usize,
    fill: &[Symbol],
) -> Result<GeneratedPair, TheoremError> {
    let mut fill = Fill::new(fill.to_vec()).ok_or(TheoremError::BadFill)?;
    let tau = &inst.tau;
    let mut folds_e: Vec<FoldSpec> = Vec::new();
    let mut folds_f: Vec<FoldSpec> = Vec::new();
    let mut seen_e: HashSet<BackSeq> = HashSet::from([inst.e.clone()]);
    let mut seen_f: HashSet<BackSeq> = HashSet::from([inst.etilde.clone()]);
    let (mut x, mut y) = (inst.e.clone(), inst.etilde.clone());
    let mut lift = 0;
    let mut cycle_ends = Vec::new();
    let mut appended = Vec::new();
    let mut cycle = 0;
    while folds_e.len() < horizon {
        cycle += 1;
        let keys: Vec<KeyFold> = inst
            .keys
            .iter()
            .map(|k| KeyFold {
                e_depth: k.e_depth + lift,
                f_depth: k.f_depth + lift,
            })
            .collect();
        let run = drive_cycle(&x, &y, &keys, tau, &mut fill, &seen_e, &seen_f)
            .map_err(|source| TheoremError::Cycle { cycle, source })?;
        let a = appended_word(&inst.e, &inst.etilde, &run.end_e, &run.end_f)
            .ok_or(TheoremError::NotSelfSimilar { cycle })?;
        seen_e.extend(run.states_e.iter().cloned());
        seen_f.extend(run.states_f.iter().cloned());
        folds_e.extend(run.folds_e);
        folds_f.extend(run.folds_f);
        cycle_ends.push(folds_e.len());
        lift = a.len();
        appended.push(a);
        x = run.end_e;
        y = run.end_f;
    }
    let keep = horizon.max(cycle_ends.first().copied().unwrap_or(0));
    let e_side = FoldSchedule::new(inst.e.clone(), folds_e, tau.clone()).truncated(keep);
    let f_side = FoldSchedule::new(inst.etilde.clone(), folds_f, tau.clone()).truncated(keep);
    Ok(GeneratedPair {
        e_side,
        f_side,
        cycle_ends,
        appended,
    })
}

/// The common word `A` with `x = e·A` and `y = ẽ·A`, if any.
fn appended_word(e: &BackSeq, etilde: &BackSeq, x: &BackSeq, y: &BackSeq) -> Option<Word> {
    let bound = x.suffix_len().max(y.suffix_len()) + x.period_len().max(y.period_len()) + 1;
    (1..=bound)
        .find(|&m| x.drop_last(m) == *e && y.drop_last(m) == *etilde && x.last(m) == y.last(m))
        .map(|m| x.last(m))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub distinct_components: bool,
    pub asymptotic: AsymptoticReport,
    pub cycle_ends: Vec<usize>,
    pub appended: Vec<Word>,
}

impl VerificationReport {
    pub fn certified(&self) -> bool {
        self.distinct_components && self.asymptotic.verdict == crate::ray::Verdict::Certified
    }
}

pub fn verify_instance(
    inst: &TheoremInstance,
    horizon: usize,
) -> Result<VerificationReport, TheoremError> {
    verify_with_fill(inst, horizon, &[])
}

pub fn verify_with_fill(
    inst: &TheoremInstance,
    horizon: usize,
    fill: &[Symbol],
) -> Result<VerificationReport, TheoremError> {
    let pair = generate_schedules(inst, horizon, fill)?;
    let asymptotic = check_asymptotic(&pair.e_side, &pair.f_side).map_err(|e| match e {
        crate::ray::AsymptoticError::Ray(r) => TheoremError::Ray(r),
        other => TheoremError::BadParams(other.to_string()),
    })?;
    Ok(VerificationReport {
        distinct_components: !same_arc_component(&inst.e, &inst.etilde, &inst.tau),
        asymptotic,
        cycle_ends: pair.cycle_ends,
        appended: pair.appended,
    })
}

/// The `N - 2` instances of the first construction for one `N`, which share
/// the itinerary `e`.
pub fn build_fan(n: usize) -> Result<Vec<TheoremInstance>, TheoremError> {
    if n < 3 {
        return Err(TheoremError::BadParams(format!(
            "N = {n} must be at least 3"
        )));
    }
    (1..=n - 2).map(|l| build_case1(n, l)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanReport {
    pub members: Vec<VerificationReport>,
    /// Whether every pair of `ẽ`-side rays has matching classes at every step.
    pub pairwise_matched: bool,
    /// First step at which two `e`-side schedules disagree, if any.
    pub e_side_divergence: Option<usize>,
}

impl FanReport {
    /// Whether the members form one fan around a single `e`-side ray.
    pub fn is_fan(&self) -> bool {
        self.pairwise_matched
            && self.e_side_divergence.is_none()
            && self.members.iter().all(|m| m.certified())
    }
}

pub fn verify_fan(n: usize, horizon: usize) -> Result<FanReport, TheoremError> {
    let fan = build_fan(n)?;
    let pairs: Vec<GeneratedPair> = fan
        .iter()
        .map(|i| generate_schedules(i, horizon, &[]))
        .collect::<Result<_, _>>()?;
    let members = fan
        .iter()
        .map(|i| verify_instance(i, horizon))
        .collect::<Result<Vec<_>, _>>()?;

    let e_side_divergence = pairs
        .iter()
        .skip(1)
        .filter_map(|p| {
            let (a, b) = (&pairs[0].e_side.folds, &p.e_side.folds);
            let len = a.len().min(b.len());
            (0..len).find(|&i| a[i] != b[i]).map(|i| i + 1)
        })
        .min();

    let n_tau = fan[0].tau.period();
    let classes: Vec<Vec<usize>> = pairs
        .iter()
        .map(|p| {
            let trace = crate::ray::schedule_apply(&p.f_side)?;
            Ok(trace.pattern.classes(n_tau).unwrap_or_default())
        })
        .collect::<Result<_, RayError>>()?;
    let pairwise_matched = classes.windows(2).all(|w| {
        let len = w[0].len().min(w[1].len());
        w[0][..len] == w[1][..len]
    });
    Ok(FanReport {
        members,
        pairwise_matched,
        e_side_divergence,
    })
}

/// One schedule pair per fill; each fill chooses the replacements for the
/// stars of the `τ`-blocks, in order.
pub fn variant_schedules(
    inst: &TheoremInstance,
    fills: &[Vec<Symbol>],
    horizon: usize,
) -> Result<Vec<GeneratedPair>, TheoremError> {
    fills
        .iter()
        .map(|f| generate_schedules(inst, horizon, f))
        .collect()
}
