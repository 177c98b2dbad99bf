//! Independent reference implementations and shared checks.
//!
//! The oracles here read sequences from their raw words with their own
//! indexing and decide everything by scanning positions to a fixed depth.
//! They share nothing with the library beyond the literal syntax.

#![allow(dead_code)]

use itinerary::theorems::{enumerate_kneading, generate_schedules, TheoremInstance};
use itinerary::{
    beta, biseq_admissible, boundary_point, c_class, discrepancies, first_discrepancy, fold_apply,
    in_cylinder, is_acceptable, is_admissible, mu_point, project, same_arc_component,
    schedule_apply, shift, BackSeq, BetaResult, BiSeq, Depth, FlipChoice, FoldSchedule, FoldSpec,
    ForwardSeq, KneadingSeq,
};
use num_integer::lcm;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::cmp::Ordering;

pub const SCAN: usize = 200;

pub fn approx(a: char, b: char) -> bool {
    a == b || a == '*' || b == '*'
}

/// `prefix (period)^∞` as raw characters.
#[derive(Debug, Clone)]
pub struct RawFwd {
    pub prefix: Vec<char>,
    pub period: Vec<char>,
}

impl RawFwd {
    pub fn at(&self, i: usize) -> char {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn literal(&self) -> String {
        let p: String = self.prefix.iter().collect();
        let q: String = self.period.iter().collect();
        format!("{p}({q})#")
    }

    pub fn lib(&self) -> ForwardSeq {
        self.literal().parse().expect("raw forward literal parses")
    }
}

/// `(period)^∞ suffix`, read leftward from position -1.
#[derive(Debug, Clone)]
pub struct RawBack {
    pub period: Vec<char>,
    pub suffix: Vec<char>,
}

impl RawBack {
    /// The symbol at position `-k`, `k ≥ 1`.
    pub fn depth(&self, k: usize) -> char {
        let s = self.suffix.len();
        if k <= s {
            self.suffix[s - k]
        } else {
            let l = self.period.len();
            self.period[(l - (k - s) % l) % l]
        }
    }

    pub fn literal(&self) -> String {
        let p: String = self.period.iter().collect();
        let s: String = self.suffix.iter().collect();
        format!("#({p}){s}")
    }

    pub fn lib(&self) -> BackSeq {
        self.literal().parse().expect("raw backward literal parses")
    }

    pub fn from_lib(e: &BackSeq) -> RawBack {
        RawBack {
            period: e.period().to_string().chars().collect(),
            suffix: e.suffix().to_string().chars().collect(),
        }
    }
}

pub fn tau_chars(tau: &KneadingSeq) -> Vec<char> {
    tau.block().to_string().chars().collect()
}

pub fn kneading_pool() -> Vec<KneadingSeq> {
    enumerate_kneading(5)
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn word(r: &mut StdRng, len: usize, star_chance: f64) -> Vec<char> {
    (0..len)
        .map(|_| {
            if r.gen_bool(star_chance) {
                '*'
            } else if r.gen_bool(0.5) {
                '1'
            } else {
                '2'
            }
        })
        .collect()
}

pub fn raw_fwd(r: &mut StdRng, star_chance: f64) -> RawFwd {
    let plen = r.gen_range(0..=8);
    let qlen = r.gen_range(1..=6);
    RawFwd {
        prefix: word(r, plen, star_chance),
        period: word(r, qlen, star_chance),
    }
}

pub fn raw_back(r: &mut StdRng, star_chance: f64) -> RawBack {
    let qlen = r.gen_range(1..=6);
    let slen = r.gen_range(0..=8);
    RawBack {
        period: word(r, qlen, star_chance),
        suffix: word(r, slen, star_chance),
    }
}

/// A forward sequence with a good chance of being admissible: either
/// star-free, or a random head followed by a rotation of `τ`.
pub fn raw_fwd_biased(r: &mut StdRng, tau: &[char]) -> RawFwd {
    if r.gen_bool(0.5) {
        raw_fwd(r, 0.0)
    } else {
        let plen = r.gen_range(0..=8);
        let rot = r.gen_range(0..tau.len());
        let period: Vec<char> = (0..tau.len()).map(|j| tau[(rot + j) % tau.len()]).collect();
        RawFwd {
            prefix: word(r, plen, 0.0),
            period,
        }
    }
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// `β^i(e)` by testing every depth `k ≤ 200` in the class directly against
/// the definition `e_{-k} … e_{-1} ≈ τ_0 … τ_{k-1}`.
pub fn naive_beta(e: &RawBack, i: usize, tau: &[char]) -> BetaResult {
    let n = tau.len();
    let matches = |k: usize| (1..=k).all(|j| approx(e.depth(j), tau[(k - j) % n]));
    let ks: Vec<usize> = (1..=SCAN).filter(|k| k % n == i % n).collect();
    let deepest = *ks.last().expect("scan covers every class");
    if matches(deepest) {
        return BetaResult::Infinite;
    }
    ks.into_iter()
        .filter(|&k| matches(k))
        .max()
        .map_or(BetaResult::Undefined, BetaResult::Finite)
}

fn fwd_equal_from(x: &RawFwd, n: usize, tau: &[char]) -> bool {
    (0..SCAN).all(|j| x.at(n + j) == tau[j % tau.len()])
}

fn fwd_approx_from(x: &RawFwd, n: usize, tau: &[char]) -> bool {
    (0..SCAN).all(|j| approx(x.at(n + j), tau[j % tau.len()]))
}

/// Admissibility by scanning shifts to four times the joint window.
pub fn naive_admissible(x: &RawFwd, tau: &[char]) -> bool {
    let depth = 4 * (x.prefix.len() + lcm(x.period.len(), tau.len()));
    (0..depth).all(|n| {
        let eq = fwd_equal_from(x, n, tau);
        (x.at(n) != '*' || eq) && (!fwd_approx_from(x, n, tau) || eq)
    })
}

/// Acceptability of a purely periodic word: every shift that is `≈` to the
/// sequence equals it.
pub fn naive_acceptable(t: &[char]) -> bool {
    let x = RawFwd {
        prefix: vec![],
        period: t.to_vec(),
    };
    (1..4 * t.len()).all(|n| !fwd_approx_from(&x, n, t) || fwd_equal_from(&x, n, t))
}

/// The arc-component criterion evaluated from its definition: the
/// discrepancy positions are listed by scanning, and every pair of
/// consecutive tail discrepancies inside one joint period is checked.
pub fn naive_arc(e: &RawBack, f: &RawBack, tau: &[char]) -> bool {
    let n = tau.len();
    let start = e.suffix.len().max(f.suffix.len());
    let joint = lcm(lcm(e.period.len(), f.period.len()), n);
    let disc: Vec<usize> = (1..=start + 3 * joint)
        .filter(|&k| e.depth(k) != f.depth(k))
        .collect();
    let tail: Vec<usize> = disc.iter().copied().filter(|&k| k > start).collect();
    if tail.is_empty() {
        return true;
    }
    let r = tail[0] % n;
    if tail.iter().any(|k| k % n != r) {
        return false;
    }
    let block_ok = |x: &RawBack, lo: usize, hi: usize| {
        (lo + 1..hi + 1).all(|j| approx(x.depth(j), tau[(hi - j) % n]))
    };
    tail.windows(2)
        .filter(|w| w[0] <= start + joint)
        .all(|w| block_ok(e, w[0], w[1]) && block_ok(f, w[0], w[1]))
}

/// First `k ≥ 1` with `e_{-k} ≠ f_{-k}`, by scanning.
pub fn naive_first_difference(e: &BackSeq, f: &BackSeq) -> Depth {
    let bound = e.suffix_len().max(f.suffix_len()) + lcm(e.period_len(), f.period_len());
    (1..=bound)
        .find(|&k| e.depth(k) != f.depth(k))
        .map_or(Depth::Infinite, Depth::Finite)
}

// ---------------------------------------------------------------------------
// Random legal moves
// ---------------------------------------------------------------------------

/// A random legal fold of `e`, if any residue has `β` defined.
pub fn random_fold(r: &mut StdRng, e: &BackSeq, tau: &KneadingSeq) -> Option<FoldSpec> {
    let n = tau.period();
    let defined: Vec<usize> = (0..n).filter(|&i| beta(e, i, tau).is_defined()).collect();
    if defined.is_empty() {
        return None;
    }
    let i = defined[r.gen_range(0..defined.len())];
    let top = match beta(e, i, tau) {
        BetaResult::Finite(b) => b,
        BetaResult::Infinite => 3 * n + i,
        BetaResult::Undefined => unreachable!(),
    };
    let depths: Vec<usize> = (1..=top)
        .filter(|k| k % n == i)
        .filter(|&k| !e.depth(k).is_star())
        .collect();
    if depths.is_empty() {
        return None;
    }
    let flips = if r.gen_bool(0.25) && depths.len() == (1..=top).filter(|k| k % n == i).count() {
        FlipChoice::All
    } else {
        let mut chosen: Vec<usize> = depths.iter().copied().filter(|_| r.gen_bool(0.4)).collect();
        if chosen.is_empty() {
            chosen.push(depths[r.gen_range(0..depths.len())]);
        }
        FlipChoice::depths(chosen)
    };
    Some(FoldSpec { residue: i, flips })
}

/// A random ray of at most `len` folds that never revisits an itinerary.
pub fn random_schedule(
    r: &mut StdRng,
    start: &BackSeq,
    tau: &KneadingSeq,
    len: usize,
) -> FoldSchedule {
    let mut seen = vec![start.clone()];
    let mut folds = Vec::new();
    let mut cur = start.clone();
    for _ in 0..len {
        let mut moved = false;
        for _ in 0..8 {
            let Some(spec) = random_fold(r, &cur, tau) else {
                break;
            };
            let Ok(next) = fold_apply(&cur, spec.residue, &spec.flips, tau) else {
                continue;
            };
            if !seen.contains(&next) {
                seen.push(next.clone());
                folds.push(spec);
                cur = next;
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    FoldSchedule::new(start.clone(), folds, tau.clone())
}

/// A random star-free backward itinerary whose boundary points are
/// admissible, so that it lies in the inverse limit.
pub fn admissible_back(r: &mut StdRng, tau: &KneadingSeq) -> BackSeq {
    loop {
        let e = raw_back(r, 0.0).lib();
        let ok = (0..tau.period()).all(|i| match boundary_point(&e, i, tau) {
            Ok(p) => biseq_admissible(&p, tau),
            Err(_) => true,
        });
        if ok {
            return e;
        }
    }
}

// ---------------------------------------------------------------------------
// Invariant checks, each returning a description of the first failure
// ---------------------------------------------------------------------------

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn check_approx_laws(x: &ForwardSeq, y: &ForwardSeq) -> Check {
    ensure(itinerary::approx(x, x), || format!("{x} is not ≈ itself"))?;
    ensure(itinerary::approx(x, y) == itinerary::approx(y, x), || {
        format!("≈ is not symmetric on {x}, {y}")
    })?;
    let star: ForwardSeq = "(*)#".parse().unwrap();
    ensure(itinerary::approx(&star, x), || format!("(*)# is not ≈ {x}"))
}

/// Canonical form is idempotent and equality agrees with a positional scan.
pub fn check_canonical(a: &RawFwd, b: &RawFwd) -> Check {
    let (x, y) = (a.lib(), b.lib());
    let again: ForwardSeq = x
        .to_string()
        .parse()
        .map_err(|e| format!("{x} does not reparse: {e:?}"))?;
    ensure(again == x && again.to_string() == x.to_string(), || {
        format!("canonical form of {x} is not stable")
    })?;
    let scan_equal = (0..SCAN).all(|i| a.at(i) == b.at(i));
    ensure(scan_equal == (x == y), || {
        format!("equality of {x} and {y} disagrees with the scan")
    })
}

pub fn check_discrepancy_shift(x: &ForwardSeq, y: &ForwardSeq) -> Check {
    if let Depth::Finite(d) = first_discrepancy(x, y) {
        if d >= 1 {
            let after = first_discrepancy(&shift(x, 1), &shift(y, 1));
            ensure(after >= Depth::Finite(d - 1), || {
                format!("shifting {x}, {y} lost more than one position")
            })?;
        }
    }
    Ok(())
}

pub fn check_shift_invariance(x: &ForwardSeq, tau: &KneadingSeq) -> Check {
    if !is_admissible(x, tau) {
        return Ok(());
    }
    (0..=50).try_for_each(|n| {
        ensure(is_admissible(&shift(x, n), tau), || {
            format!("σ^{n}({x}) is not {tau}-admissible")
        })
    })
}

/// For `t` with `t_0 = *`: acceptable exactly when `t` is admissible with
/// respect to itself. The right side is decided by the oracle because a
/// [`KneadingSeq`] cannot be built from an unacceptable word.
pub fn check_acceptable_self_admissible(t: &[char]) -> Check {
    let x = RawFwd {
        prefix: vec![],
        period: t.to_vec(),
    };
    let acc = is_acceptable(&x.lib()).map_err(|e| e.to_string())?;
    let lib_period: Vec<char> = x.lib().period().to_string().chars().collect();
    ensure(acc == naive_admissible(&x, &lib_period), || {
        format!("{} acceptable = {acc} disagrees", x.literal())
    })
}

pub fn check_mu(x: &ForwardSeq, y: &ForwardSeq, tau: &KneadingSeq) -> Check {
    if x == y || !is_admissible(x, tau) || !is_admissible(y, tau) {
        return Ok(());
    }
    let Depth::Finite(n) = first_discrepancy(x, y) else {
        return Ok(());
    };
    let mu = mu_point(x, y, tau).map_err(|e| format!("μ({x}, {y}) failed: {e}"))?;
    ensure(mu.at(n).is_star(), || {
        format!("μ({x}, {y}) = {mu} has no * at {n}")
    })?;
    ensure(first_discrepancy(&mu, x) >= Depth::Finite(n), || {
        format!("μ = {mu} separates from {x} before {n}")
    })?;
    ensure(first_discrepancy(&mu, y) >= Depth::Finite(n), || {
        format!("μ = {mu} separates from {y} before {n}")
    })?;
    ensure(is_admissible(&mu, tau), || {
        format!("μ = {mu} is not admissible")
    })?;
    let t = tau_chars(tau);
    let prime = |i: usize| match i.cmp(&n) {
        Ordering::Less if x.at(i).is_star() => y.at(i).to_char(),
        Ordering::Less => x.at(i).to_char(),
        _ => t[(i - n) % t.len()],
    };
    ensure(
        (0..n + t.len()).all(|i| approx(mu.at(i).to_char(), prime(i))),
        || format!("μ = {mu} is not ≈ μ′ for {x}, {y}"),
    )?;
    let back = mu_point(y, x, tau).map_err(|e| e.to_string())?;
    ensure(back == mu, || format!("μ is not symmetric on {x}, {y}"))
}

pub fn check_beta_law(e: &RawBack, tau: &KneadingSeq) -> Check {
    let t = tau_chars(tau);
    let n = t.len();
    let lib = e.lib();
    let matches = |k: usize| (1..=k).all(|j| approx(e.depth(j), t[(k - j) % n]));
    for i in 0..n {
        if let BetaResult::Finite(k) = beta(&lib, i, tau) {
            ensure(k >= 1 && k % n == i, || {
                format!("β^{i}({lib}) = {k} is in the wrong class")
            })?;
            ensure(matches(k), || {
                format!("β^{i}({lib}) = {k} but the match fails")
            })?;
            ensure(!matches(k + n), || {
                format!("β^{i}({lib}) = {k} but depth {} also matches", k + n)
            })?;
        }
    }
    Ok(())
}

/// Random admissible points with a `*` at depth `k`: a random head followed
/// by `τ_0 … τ_{k-1}`.
pub fn starred_points(r: &mut StdRng, tau: &KneadingSeq, count: usize) -> Vec<(BackSeq, usize)> {
    let t = tau_chars(tau);
    let n = t.len();
    let mut out = Vec::new();
    while out.len() < count {
        let k = r.gen_range(1..=2 * n + 2);
        let head = raw_back(r, 0.0);
        let mut suffix = head.suffix.clone();
        suffix.extend((0..k).map(|j| t[j % n]));
        let e = RawBack {
            period: head.period,
            suffix,
        }
        .lib();
        if biseq_admissible(&BiSeq::new(e.clone(), shift(tau.seq(), k % n)), tau) {
            out.push((e, k));
        }
    }
    out
}

/// The class of the star depth `k` has `β` defined and reaching `k`.
pub fn check_star_class(e: &BackSeq, k: usize, tau: &KneadingSeq) -> Check {
    let b = beta(e, k % tau.period(), tau);
    ensure(b.covers(k), || {
        format!(
            "{e}: β^{} = {b} does not reach the * at depth {k}",
            k % tau.period()
        )
    })
}

/// The literal uniqueness claim: only the class of `k` has `β` defined.
pub fn check_star_class_unique(e: &BackSeq, k: usize, tau: &KneadingSeq) -> Check {
    let defined: Vec<usize> = (0..tau.period())
        .filter(|&i| beta(e, i, tau).is_defined())
        .collect();
    ensure(defined == vec![k % tau.period()], || {
        format!(
            "{e} under {tau}: classes {defined:?} have β defined, expected only {}",
            k % tau.period()
        )
    })
}

pub fn check_fold(e: &BackSeq, spec: &FoldSpec, tau: &KneadingSeq) -> Check {
    let f = fold_apply(e, spec.residue, &spec.flips, tau)
        .map_err(|err| format!("fold {spec} of {e}: {err}"))?;
    let back = fold_apply(&f, spec.residue, &spec.flips, tau)
        .map_err(|err| format!("refold {spec} of {f}: {err}"))?;
    ensure(back == *e, || {
        format!("folding {e} twice by {spec} gives {back}")
    })?;
    let (b0, b1) = (beta(e, spec.residue, tau), beta(&f, spec.residue, tau));
    ensure(b0 == b1, || {
        format!("β changes across the fold {e} -> {f}: {b0} vs {b1}")
    })?;
    let p = boundary_point(e, spec.residue, tau).map_err(|err| err.to_string())?;
    ensure(in_cylinder(&p, e, -1), || format!("{p} is not in T({e})"))?;
    ensure(in_cylinder(&p, &f, -1), || format!("{p} is not in T({f})"))?;
    ensure(biseq_admissible(&p, tau), || {
        format!("shared point {p} is not admissible")
    })?;
    let d = discrepancies(e, &f);
    ensure(
        c_class(&d, tau.period()) == Ok(spec.residue % tau.period()),
        || format!("α of {e} -> {f} is {d}"),
    )
}

pub fn check_arc_laws(a: &BackSeq, b: &BackSeq, c: &BackSeq, tau: &KneadingSeq) -> Check {
    ensure(same_arc_component(a, a, tau), || {
        format!("{a} is not in its own component")
    })?;
    let ab = same_arc_component(a, b, tau);
    ensure(ab == same_arc_component(b, a, tau), || {
        format!("component relation not symmetric on {a}, {b}")
    })?;
    let bc = same_arc_component(b, c, tau);
    ensure(!(ab && bc) || same_arc_component(a, c, tau), || {
        format!("component relation not transitive on {a}, {b}, {c}")
    })
}

/// Per-step checks on a ray: one class per fold, `d_n` against a scan, and
/// the projection of each shared boundary point.
pub fn check_ray(s: &FoldSchedule) -> Check {
    let tau = &s.tau;
    let n = tau.period();
    let trace = schedule_apply(s).map_err(|e| e.to_string())?;
    for (step, alpha) in trace.pattern.0.iter().enumerate() {
        let c = c_class(alpha, n).map_err(|e| format!("α_{} = {alpha}: {e}", step + 1))?;
        let prev = &trace.itineraries[step];
        let p = boundary_point(prev, s.folds[step].residue, tau).map_err(|e| e.to_string())?;
        ensure(project(&p, 0) == shift(tau.seq(), c), || {
            format!("step {}: π_0 of {p} is not σ^{c}(τ)", step + 1)
        })?;
        ensure(
            discrepancies(prev, &trace.itineraries[step + 1]) == *alpha,
            || format!("α_{} mismatch", step + 1),
        )?;
    }
    Ok(())
}

pub fn check_d_values(a: &FoldSchedule, b: &FoldSchedule) -> Check {
    let report = itinerary::check_asymptotic(a, b).map_err(|e| e.to_string())?;
    let (ra, rb) = (schedule_apply(a).unwrap(), schedule_apply(b).unwrap());
    for (i, (x, y)) in ra.itineraries.iter().zip(&rb.itineraries).enumerate() {
        let d = naive_first_difference(x, y);
        ensure(report.d_values[i] == d, || {
            format!("d_{i} = {} but a scan gives {d}", report.d_values[i])
        })?;
    }
    Ok(())
}

/// Replays the certificate's fold window from the certified end state and
/// checks that both rays gain the same word of the certified length.
pub fn check_certificate_replay(inst: &TheoremInstance, horizon: usize) -> Check {
    let pair = generate_schedules(inst, horizon, &[]).map_err(|e| e.to_string())?;
    let report =
        itinerary::check_asymptotic(&pair.e_side, &pair.f_side).map_err(|e| e.to_string())?;
    let Some(cert) = report.certificate else {
        return Err("no certificate".into());
    };
    let ra = schedule_apply(&pair.e_side).unwrap();
    let rb = schedule_apply(&pair.f_side).unwrap();
    let (x1, y1) = (
        &ra.itineraries[cert.cycle_end],
        &rb.itineraries[cert.cycle_end],
    );
    let m = cert.appended.len();
    let end_a = schedule_apply(&FoldSchedule::new(
        x1.clone(),
        cert.replay_a.clone(),
        inst.tau.clone(),
    ))
    .map_err(|e| format!("replay on e side: {e}"))?;
    let end_b = schedule_apply(&FoldSchedule::new(
        y1.clone(),
        cert.replay_b.clone(),
        inst.tau.clone(),
    ))
    .map_err(|e| format!("replay on ẽ side: {e}"))?;
    let (x2, y2) = (
        end_a.itineraries.last().unwrap(),
        end_b.itineraries.last().unwrap(),
    );
    ensure(x2.drop_last(m) == *x1 && y2.drop_last(m) == *y1, || {
        "replay does not extend the certified state".into()
    })?;
    ensure(x2.last(m) == y2.last(m), || {
        "replay appends different words".into()
    })?;
    ensure(x2.last(m).to_string() == cert.replay_appended, || {
        "replay word differs from the certificate".into()
    })?;
    // Where the generated schedule already covers the replayed window, it
    // must be the same window.
    let covered = pair.e_side.folds.len().saturating_sub(cert.cycle_end);
    let k = covered.min(cert.replay_a.len());
    ensure(
        pair.e_side.folds[cert.cycle_end..cert.cycle_end + k] == cert.replay_a[..k],
        || "replay diverges from the generated e-side schedule".into(),
    )?;
    ensure(
        pair.f_side.folds[cert.cycle_end..cert.cycle_end + k] == cert.replay_b[..k],
        || "replay diverges from the generated ẽ-side schedule".into(),
    )?;
    ensure(matches!(cert.d_growth, [a, b, c] if a < b && b < c), || {
        format!("d does not grow: {:?}", cert.d_growth)
    })
}

/// Whether the far tail of `e` is `≈` to the `τ`-periodic tail in some class.
pub fn tail_approximates_tau(e: &BackSeq, tau: &KneadingSeq) -> bool {
    let t = tau_chars(tau);
    let n = t.len();
    let start = e.suffix_len() + 1;
    let span = lcm(e.period_len(), n);
    let raw = RawBack::from_lib(e);
    (0..n).any(|i| (start..start + span).all(|j| approx(raw.depth(j), t[(n + i - j % n) % n])))
}
