//! The arc-component criterion for pairs of backward itineraries.

use crate::backward::BackSeq;
use crate::discrepancy::discrepancies;
use crate::kneading::KneadingSeq;

/// Whether `T(e)` and `T(f)` lie on one arc-component.
///
/// Finitely many discrepancies always connect. Otherwise the discrepancies
/// must eventually sit in a single residue class `c` modulo `N`, and between
/// consecutive ones both itineraries must read `≈`-copies of `τ_0 … τ_{N-1}`,
/// which amounts to `x_{-m} ≈ τ_{(c - m) mod N}` for every large `m`.
pub fn same_arc_component(e: &BackSeq, f: &BackSeq, tau: &KneadingSeq) -> bool {
    let d = discrepancies(e, f);
    if d.is_finite() {
        return true;
    }
    let n = tau.period();
    let modulus = d.tail_modulus();
    if !modulus.is_multiple_of(n) {
        return false;
    }
    let classes: Vec<usize> = d.tail_residues().iter().map(|r| r % n).collect();
    let c = classes[0];
    if classes.iter().any(|&r| r != c) {
        return false;
    }

    // Past this depth the discrepancy set and both itineraries are periodic.
    let settled = d
        .threshold()
        .max(e.suffix_len() + 1)
        .max(f.suffix_len() + 1);
    let k0 = (settled..)
        .find(|&k| d.contains(k))
        .expect("infinite set has elements past any bound");
    let span = [modulus, e.period_len(), f.period_len(), n]
        .into_iter()
        .fold(1, num_integer::lcm);
    (k0 + 1..=k0 + span).all(|m| {
        let t = tau.sym(c as i64 - m as i64);
        e.depth(m).approx(t) && f.depth(m).approx(t)
    })
}
