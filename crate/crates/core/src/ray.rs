//! Rays as fold schedules, their folding patterns, and the comparison of two
//! rays for asymptotic behaviour.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::backward::BackSeq;
use crate::cycle::{drive_cycle, Fill, KeyFold};
use crate::discrepancy::{discrepancies, DiscrepancySet};
use crate::fold::{fold_apply, FlipChoice};
use crate::forward::Depth;
use crate::kneading::KneadingSeq;
use crate::FoldError;

/// One step `R^{n-1} e → R^n e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FoldSpec {
    pub residue: usize,
    pub flips: FlipChoice,
}

impl FoldSpec {
    /// A fold that complements the single depth `k`.
    pub fn at_depth(k: usize, n: usize) -> Self {
        FoldSpec {
            residue: k % n,
            flips: FlipChoice::single(k),
        }
    }
}

impl fmt::Display for FoldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.residue, self.flips)
    }
}

/// A ray truncated after finitely many folds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldSchedule {
    pub start: BackSeq,
    pub folds: Vec<FoldSpec>,
    pub tau: KneadingSeq,
}

impl FoldSchedule {
    pub fn new(start: BackSeq, folds: Vec<FoldSpec>, tau: KneadingSeq) -> Self {
        FoldSchedule { start, folds, tau }
    }

    /// The number of folds, which is the horizon of the truncated ray.
    pub fn horizon(&self) -> usize {
        self.folds.len()
    }

    pub fn truncated(&self, horizon: usize) -> FoldSchedule {
        let folds = self.folds.iter().take(horizon).cloned().collect();
        FoldSchedule {
            start: self.start.clone(),
            folds,
            tau: self.tau.clone(),
        }
    }
}

/// The sequence `α_1, α_2, …` of discrepancy sets between consecutive
/// itineraries of a ray.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldingPattern(pub Vec<DiscrepancySet>);

impl FoldingPattern {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `C(α_n)` for every step.
    pub fn classes(&self, n: usize) -> Result<Vec<usize>, ClassError> {
        self.0.iter().map(|a| c_class(a, n)).collect()
    }
}

/// The itineraries `R^0 e, …, R^L e` of a schedule and its folding pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayTrace {
    pub itineraries: Vec<BackSeq>,
    pub pattern: FoldingPattern,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IllegalCause {
    BetaUndefined,
    FlipOutOfRange,
    Revisit,
    StarInSequence,
}

impl fmt::Display for IllegalCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IllegalCause::BetaUndefined => "beta undefined",
            IllegalCause::FlipOutOfRange => "flip out of range",
            IllegalCause::Revisit => "itinerary revisited",
            IllegalCause::StarInSequence => "star in sequence",
        };
        f.write_str(s)
    }
}

impl From<FoldError> for IllegalCause {
    fn from(e: FoldError) -> Self {
        match e {
            FoldError::BetaUndefined { .. } => IllegalCause::BetaUndefined,
            FoldError::FlipOutOfRange { .. } | FoldError::EmptyFlip => IllegalCause::FlipOutOfRange,
            FoldError::StarAtFlip { .. } => IllegalCause::StarInSequence,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RayError {
    /// `step` counts folds from 1; step 0 refers to the start itself.
    #[error("illegal fold at step {step}: {cause}")]
    IllegalFold { step: usize, cause: IllegalCause },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("discrepancy set is empty")]
    Empty,
    #[error("discrepancies fall in more than one residue class")]
    MixedResidues,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsymptoticError {
    #[error("schedules have different horizons ({0} and {1})")]
    HorizonMismatch(usize, usize),
    #[error("schedules use different kneading sequences")]
    TauMismatch,
    #[error(transparent)]
    Ray(#[from] RayError),
}

/// Applies every fold of `s` in order.
pub fn schedule_apply(s: &FoldSchedule) -> Result<RayTrace, RayError> {
    if s.start.contains_star() {
        return Err(RayError::IllegalFold {
            step: 0,
            cause: IllegalCause::StarInSequence,
        });
    }
    let mut seen: HashSet<BackSeq> = HashSet::from([s.start.clone()]);
    let mut itineraries = vec![s.start.clone()];
    let mut pattern = Vec::with_capacity(s.folds.len());
    for (idx, spec) in s.folds.iter().enumerate() {
        let step = idx + 1;
        let prev = itineraries.last().expect("start is always present");
        let next = fold_apply(prev, spec.residue, &spec.flips, &s.tau).map_err(|e| {
            RayError::IllegalFold {
                step,
                cause: e.into(),
            }
        })?;
        if !seen.insert(next.clone()) {
            return Err(RayError::IllegalFold {
                step,
                cause: IllegalCause::Revisit,
            });
        }
        pattern.push(discrepancies(prev, &next));
        itineraries.push(next);
    }
    Ok(RayTrace {
        itineraries,
        pattern: FoldingPattern(pattern),
    })
}

/// `C(α)`: the common residue of the elements of `α` modulo `n`.
pub fn c_class(a: &DiscrepancySet, n: usize) -> Result<usize, ClassError> {
    let first = a.first().ok_or(ClassError::Empty)?;
    let c = first % n;
    // Every element below the threshold, then one full tail period.
    let span = a.threshold() + a.tail_modulus();
    if a.up_to(span).iter().any(|k| k % n != c) {
        return Err(ClassError::MixedResidues);
    }
    if !a.is_finite() && !a.tail_modulus().is_multiple_of(n) {
        return Err(ClassError::MixedResidues);
    }
    Ok(c)
}

/// Overall outcome of comparing two truncated rays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Matched classes, strictly growing `d` across a validated cycle.
    Certified,
    /// The two rays are the same ray.
    Trivial,
    /// Matched classes and growing `d` within the horizon, no certificate.
    Suggestive,
    Negative,
}

impl Verdict {
    pub fn is_positive(self) -> bool {
        matches!(self, Verdict::Certified | Verdict::Trivial)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Certified => "certified",
            Verdict::Trivial => "trivial",
            Verdict::Suggestive => "suggestive",
            Verdict::Negative => "negative",
        };
        f.write_str(s)
    }
}

/// Witness that a pair of rays repeats itself with a growing suffix.
///
/// The folds `cycle_start..cycle_end` carry both rays from a pair `(x, y)` to
/// `(x·A, y·A)`. Lifting every key fold of that window by `|A|` and filling in
/// the transports again yields one more legal cycle, ending at
/// `(x·A·A', y·A·A')` with `|A'| = |A|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfSimilarCertificate {
    pub cycle_start: usize,
    pub cycle_end: usize,
    pub appended: String,
    /// Depth pairs of the folds where the two rays fold differently.
    pub keys: Vec<(usize, usize)>,
    /// Residues `C(α_n)` of the key folds, in order.
    pub key_residues: Vec<usize>,
    pub replay_appended: String,
    pub replay_folds: usize,
    /// First discrepancies at `cycle_start`, `cycle_end` and after the replay.
    pub d_growth: [Depth; 3],
    #[serde(skip)]
    pub replay_a: Vec<FoldSpec>,
    #[serde(skip)]
    pub replay_b: Vec<FoldSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymptoticReport {
    pub horizon: usize,
    pub c_matched: Vec<bool>,
    pub d_values: Vec<Depth>,
    pub certificate: Option<SelfSimilarCertificate>,
    pub verdict: Verdict,
}

/// First discrepancy of the pair, `Infinite` when equal.
pub fn first_difference(e: &BackSeq, f: &BackSeq) -> Depth {
    discrepancies(e, f)
        .first()
        .map_or(Depth::Infinite, Depth::Finite)
}

/// Compares two rays step by step and searches for a certificate.
pub fn check_asymptotic(
    a: &FoldSchedule,
    b: &FoldSchedule,
) -> Result<AsymptoticReport, AsymptoticError> {
    if a.horizon() != b.horizon() {
        return Err(AsymptoticError::HorizonMismatch(a.horizon(), b.horizon()));
    }
    if a.tau != b.tau {
        return Err(AsymptoticError::TauMismatch);
    }
    let n = a.tau.period();
    let ra = schedule_apply(a)?;
    let rb = schedule_apply(b)?;
    let c_matched: Vec<bool> = ra
        .pattern
        .0
        .iter()
        .zip(&rb.pattern.0)
        .map(|(x, y)| matches!((c_class(x, n), c_class(y, n)), (Ok(p), Ok(q)) if p == q))
        .collect();
    let d_values: Vec<Depth> = ra
        .itineraries
        .iter()
        .zip(&rb.itineraries)
        .map(|(x, y)| first_difference(x, y))
        .collect();

    let all_matched = c_matched.iter().all(|&m| m);
    let trivial = d_values.iter().all(|d| d.is_infinite());
    let certificate = if all_matched && !trivial {
        certify_traces(a, &ra, &rb)
    } else {
        None
    };
    let verdict = if !all_matched {
        Verdict::Negative
    } else if trivial {
        Verdict::Trivial
    } else if certificate.is_some() {
        Verdict::Certified
    } else if d_values.first() < d_values.last() {
        Verdict::Suggestive
    } else {
        Verdict::Negative
    };
    Ok(AsymptoticReport {
        horizon: a.horizon(),
        c_matched,
        d_values,
        certificate,
        verdict,
    })
}

/// Searches the two schedules for a self-similar cycle and validates it by
/// replaying one further cycle.
pub fn certify_self_similar(a: &FoldSchedule, b: &FoldSchedule) -> Option<SelfSimilarCertificate> {
    if a.tau != b.tau {
        return None;
    }
    let ra = schedule_apply(a).ok()?;
    let rb = schedule_apply(b).ok()?;
    certify_traces(a, &ra, &rb)
}

fn certify_traces(
    a: &FoldSchedule,
    ra: &RayTrace,
    rb: &RayTrace,
) -> Option<SelfSimilarCertificate> {
    let tau = &a.tau;
    let n = tau.period();
    let len = ra.itineraries.len().min(rb.itineraries.len());
    for n1 in 1..len {
        for n0 in 0..n1 {
            let (x0, y0) = (&ra.itineraries[n0], &rb.itineraries[n0]);
            let (x1, y1) = (&ra.itineraries[n1], &rb.itineraries[n1]);
            for a_len in appended_lengths(x0, x1, y0, y1) {
                if let Some(cert) = try_cycle(tau, n, ra, rb, n0, n1, a_len) {
                    return Some(cert);
                }
            }
        }
    }
    None
}

/// Lengths `m ≥ 1` with `x1 = x0·A`, `y1 = y0·A` for one common `A`, `|A| = m`.
fn appended_lengths(x0: &BackSeq, x1: &BackSeq, y0: &BackSeq, y1: &BackSeq) -> Vec<usize> {
    let bound = x1.suffix_len().max(y1.suffix_len()) + x1.period_len().max(y1.period_len()) + 1;
    (1..=bound)
        .filter(|&m| x1.drop_last(m) == *x0 && y1.drop_last(m) == *y0 && x1.last(m) == y1.last(m))
        .collect()
}

fn try_cycle(
    tau: &KneadingSeq,
    n: usize,
    ra: &RayTrace,
    rb: &RayTrace,
    n0: usize,
    n1: usize,
    a_len: usize,
) -> Option<SelfSimilarCertificate> {
    let d0 = first_difference(&ra.itineraries[n0], &rb.itineraries[n0]);
    let d1 = first_difference(&ra.itineraries[n1], &rb.itineraries[n1]);
    if d1 <= d0 {
        return None;
    }
    let mut keys = Vec::new();
    let mut key_residues = Vec::new();
    for step in n0 + 1..=n1 {
        let (pa, pb) = (&ra.pattern.0[step - 1], &rb.pattern.0[step - 1]);
        if pa == pb {
            continue;
        }
        let (ka, kb) = (pa.first()?, pb.first()?);
        // Key folds must be single flips for the lift to be defined.
        if *pa != DiscrepancySet::finite([ka]) || *pb != DiscrepancySet::finite([kb]) {
            return None;
        }
        keys.push(KeyFold {
            e_depth: ka,
            f_depth: kb,
        });
        key_residues.push(ka % n);
    }
    if keys.is_empty() {
        return None;
    }
    let lifted: Vec<KeyFold> = keys
        .iter()
        .map(|k| KeyFold {
            e_depth: k.e_depth + a_len,
            f_depth: k.f_depth + a_len,
        })
        .collect();
    let visited_a: HashSet<BackSeq> = ra.itineraries[..=n1].iter().cloned().collect();
    let visited_b: HashSet<BackSeq> = rb.itineraries[..=n1].iter().cloned().collect();
    let (x1, y1) = (&ra.itineraries[n1], &rb.itineraries[n1]);
    let run = drive_cycle(
        x1,
        y1,
        &lifted,
        tau,
        &mut Fill::default(),
        &visited_a,
        &visited_b,
    )
    .ok()?;
    let (x2, y2) = (&run.end_e, &run.end_f);
    if x2.drop_last(a_len) != *x1 || y2.drop_last(a_len) != *y1 || x2.last(a_len) != y2.last(a_len)
    {
        return None;
    }
    let d2 = first_difference(x2, y2);
    if d2 <= d1 {
        return None;
    }
    Some(SelfSimilarCertificate {
        cycle_start: n0,
        cycle_end: n1,
        appended: x1.last(a_len).to_string(),
        keys: keys.iter().map(|k| (k.e_depth, k.f_depth)).collect(),
        key_residues,
        replay_appended: x2.last(a_len).to_string(),
        replay_folds: run.folds_e.len(),
        d_growth: [d0, d1, d2],
        replay_a: run.folds_e,
        replay_b: run.folds_f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::w;

    fn b(per: &str, suf: &str) -> BackSeq {
        BackSeq::new(w(per), w(suf)).unwrap()
    }

    fn tau112() -> KneadingSeq {
        KneadingSeq::from_body("112").unwrap()
    }

    #[test]
    fn worked_ray() {
        let folds = vec![
            FoldSpec {
                residue: 0,
                flips: FlipChoice::All,
            },
            FoldSpec {
                residue: 1,
                flips: FlipChoice::single(1),
            },
            FoldSpec {
                residue: 3,
                flips: FlipChoice::single(3),
            },
        ];
        let s = FoldSchedule::new(b("1112", ""), folds, tau112());
        let trace = schedule_apply(&s).unwrap();
        let expect = [
            b("1112", ""),
            b("2112", ""),
            b("2112", "2111"),
            b("2112", "2211"),
        ];
        assert_eq!(trace.itineraries, expect);
        assert_eq!(
            trace.pattern.0,
            vec![
                DiscrepancySet::from_parts(&[], 1, 4, &[0]),
                DiscrepancySet::finite([1]),
                DiscrepancySet::finite([3]),
            ]
        );
        assert_eq!(trace.pattern.classes(4), Ok(vec![0, 1, 3]));
    }

    #[test]
    fn empty_schedule_and_illegal_fold() {
        let s = FoldSchedule::new(b("1", ""), vec![], tau112());
        let trace = schedule_apply(&s).unwrap();
        assert_eq!(trace.itineraries, vec![b("1", "")]);
        assert!(trace.pattern.is_empty());

        let bad = FoldSchedule::new(b("1", ""), vec![FoldSpec::at_depth(4, 4)], tau112());
        assert_eq!(
            schedule_apply(&bad),
            Err(RayError::IllegalFold {
                step: 1,
                cause: IllegalCause::BetaUndefined
            })
        );
    }

    #[test]
    fn revisits_are_rejected() {
        let back_and_forth = vec![FoldSpec::at_depth(2, 4), FoldSpec::at_depth(2, 4)];
        let s = FoldSchedule::new(b("1", ""), back_and_forth, tau112());
        assert_eq!(
            schedule_apply(&s),
            Err(RayError::IllegalFold {
                step: 2,
                cause: IllegalCause::Revisit
            })
        );
    }

    #[test]
    fn classes() {
        assert_eq!(
            c_class(&DiscrepancySet::from_parts(&[], 1, 4, &[0]), 4),
            Ok(0)
        );
        assert_eq!(c_class(&DiscrepancySet::finite([1]), 4), Ok(1));
        assert_eq!(c_class(&DiscrepancySet::finite([3, 7, 11]), 4), Ok(3));
        assert_eq!(
            c_class(&DiscrepancySet::finite([3, 4]), 4),
            Err(ClassError::MixedResidues)
        );
        assert_eq!(c_class(&DiscrepancySet::empty(), 4), Err(ClassError::Empty));
    }

    #[test]
    fn identical_schedules_are_trivial() {
        let s = FoldSchedule::new(b("1", ""), vec![FoldSpec::at_depth(2, 4)], tau112());
        let rep = check_asymptotic(&s, &s).unwrap();
        assert_eq!(rep.verdict, Verdict::Trivial);
        assert!(rep.d_values.iter().all(|d| d.is_infinite()));
        assert!(rep.certificate.is_none());
    }

    #[test]
    fn mismatches_are_reported() {
        let s = FoldSchedule::new(b("1", ""), vec![FoldSpec::at_depth(2, 4)], tau112());
        let t = FoldSchedule::new(b("1", ""), vec![], tau112());
        assert_eq!(
            check_asymptotic(&s, &t),
            Err(AsymptoticError::HorizonMismatch(1, 0))
        );
        let other = FoldSchedule::new(b("1", ""), vec![], KneadingSeq::from_body("12").unwrap());
        assert_eq!(
            check_asymptotic(&t, &other),
            Err(AsymptoticError::TauMismatch)
        );
    }
}
