//! Cylinders `T(e)`, the β-matching depths and their shared boundary points.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::backward::{BackSeq, BiSeq};
use crate::forward::{Depth, ForwardSeq};
use crate::kneading::{is_admissible, KneadingSeq};
use crate::periodic::Periodic;
use crate::symbol::Word;
use crate::FoldError;

/// `β^i(e)`: the deepest `≈`-match of `e` against `τ` in one residue class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BetaResult {
    Undefined,
    Finite(usize),
    Infinite,
}

impl BetaResult {
    pub fn is_defined(self) -> bool {
        self != BetaResult::Undefined
    }

    /// The depth as a [`Depth`], or `None` when undefined.
    pub fn depth(self) -> Option<Depth> {
        match self {
            BetaResult::Undefined => None,
            BetaResult::Finite(k) => Some(Depth::Finite(k)),
            BetaResult::Infinite => Some(Depth::Infinite),
        }
    }

    /// Whether a flip at depth `k` lies inside the matched window.
    pub fn covers(self, k: usize) -> bool {
        match self {
            BetaResult::Undefined => false,
            BetaResult::Finite(b) => k >= 1 && k <= b,
            BetaResult::Infinite => k >= 1,
        }
    }
}

impl fmt::Display for BetaResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaResult::Undefined => write!(f, "undefined"),
            BetaResult::Finite(k) => write!(f, "{k}"),
            BetaResult::Infinite => write!(f, "inf"),
        }
    }
}

/// Length of the longest run `e_{-j} ≈ τ_{(i-j) mod N}`, `j = 1, 2, …`.
pub fn match_depth(e: &BackSeq, i: usize, tau: &KneadingSeq) -> Depth {
    let n = tau.period();
    let bound = e.suffix_len() + num_integer::lcm(e.period_len(), n) + n;
    (1..=bound)
        .find(|&j| !e.depth(j).approx(tau.sym(i as i64 - j as i64)))
        .map_or(Depth::Infinite, |j| Depth::Finite(j - 1))
}

pub fn beta(e: &BackSeq, i: usize, tau: &KneadingSeq) -> BetaResult {
    let n = tau.period();
    let i = i % n;
    match match_depth(e, i, tau) {
        Depth::Infinite => BetaResult::Infinite,
        Depth::Finite(md) => {
            let back_off = (md as i64 - i as i64).rem_euclid(n as i64) as usize;
            match md.checked_sub(back_off) {
                Some(k) if k >= 1 => BetaResult::Finite(k),
                _ => BetaResult::Undefined,
            }
        }
    }
}

/// The unique point shared by `T(e)` and every cylinder reached by folding at
/// residue `i`.
pub fn boundary_point(e: &BackSeq, i: usize, tau: &KneadingSeq) -> Result<BiSeq, FoldError> {
    let n = tau.period();
    let i = i % n;
    let fwd = tau.seq().shift(i);
    let back = match beta(e, i, tau) {
        BetaResult::Undefined => return Err(FoldError::BetaUndefined { residue: i }),
        BetaResult::Finite(b) => {
            let tail: Word = (0..b).map(|j| tau.sym(j as i64)).collect();
            e.drop_last(b).append(&tail)
        }
        BetaResult::Infinite => {
            let rev = (0..n).map(|j| tau.sym(i as i64 - 1 - j as i64)).collect();
            BackSeq::from_reversed(Periodic::new(Vec::new(), rev))
        }
    };
    Ok(BiSeq::new(back, fwd))
}

/// `π_n(p) = p_n p_{n+1} …`.
pub fn project(p: &BiSeq, n: i64) -> ForwardSeq {
    if n >= 0 {
        p.fwd.shift(n as usize)
    } else {
        p.fwd.prepend(&p.back.last(n.unsigned_abs() as usize))
    }
}

/// `p_j ≈ e_j` for every `j ≤ n`; the cylinder `T(e)` is `n = -1`.
///
/// # Panics
///
/// When `n ≥ 0`: a backward itinerary has no coordinates there.
pub fn in_cylinder(p: &BiSeq, e: &BackSeq, n: i64) -> bool {
    assert!(n <= -1, "cylinder depth must be negative, got {n}");
    let skip = (n.unsigned_abs() - 1) as usize;
    let (a, b) = (p.back.drop_last(skip), e.drop_last(skip));
    (1..=a.scan_bound(&b)).all(|k| a.depth(k).approx(b.depth(k)))
}

/// `π_n(p) ∈ D_τ` for every integer `n`.
pub fn biseq_admissible(p: &BiSeq, tau: &KneadingSeq) -> bool {
    // Reading from far enough left covers every later start; two joint
    // periods guarantee that any violation further left repeats inside.
    let joint = num_integer::lcm(p.back.period_len(), tau.period());
    let depth = p.back.suffix_len() + 2 * joint;
    is_admissible(&project(p, -(depth as i64)), tau)
}
