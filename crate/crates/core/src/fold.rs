//! Folds: passing from `T(e)` to an adjacent cylinder across a shared
//! boundary point by complementing symbols in one residue class.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::backward::BackSeq;
use crate::cylinder::{beta, BetaResult};
use crate::kneading::KneadingSeq;
use crate::periodic::Periodic;
use crate::FoldError;

/// Which depths of the residue class to complement.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FlipChoice {
    /// Every depth `k ≡ i (mod N)` with `1 ≤ k ≤ β`.
    All,
    /// Explicit depths `k ≥ 1` (the positions `-k`).
    Depths(BTreeSet<usize>),
}

impl FlipChoice {
    pub fn depths<I: IntoIterator<Item = usize>>(ks: I) -> Self {
        FlipChoice::Depths(ks.into_iter().collect())
    }

    pub fn single(k: usize) -> Self {
        FlipChoice::depths([k])
    }
}

impl fmt::Display for FlipChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlipChoice::All => write!(f, "ALL"),
            FlipChoice::Depths(ks) => {
                let items: Vec<String> = ks.iter().map(|k| format!("-{k}")).collect();
                write!(f, "{{{}}}", items.join(","))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FlipRepr {
    Tag(String),
    Positions(Vec<i64>),
}

impl Serialize for FlipChoice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            FlipChoice::All => FlipRepr::Tag("ALL".into()),
            FlipChoice::Depths(ks) => {
                FlipRepr::Positions(ks.iter().map(|&k| -(k as i64)).collect())
            }
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FlipChoice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match FlipRepr::deserialize(d)? {
            FlipRepr::Tag(t) if t == "ALL" => Ok(FlipChoice::All),
            FlipRepr::Tag(t) => Err(serde::de::Error::custom(format!("unknown flip tag {t:?}"))),
            FlipRepr::Positions(ps) => {
                if let Some(p) = ps.iter().find(|&&p| p >= 0) {
                    return Err(serde::de::Error::custom(format!(
                        "flip position {p} is not negative"
                    )));
                }
                Ok(FlipChoice::depths(
                    ps.iter().map(|p| p.unsigned_abs() as usize),
                ))
            }
        }
    }
}

/// Folds `e` across its boundary point at residue `i`.
///
/// The result differs from `e` exactly at the chosen depths, so the
/// discrepancy set of the pair is the flip set.
pub fn fold_apply(
    e: &BackSeq,
    i: usize,
    flips: &FlipChoice,
    tau: &KneadingSeq,
) -> Result<BackSeq, FoldError> {
    let n = tau.period();
    let i = i % n;
    let b = beta(e, i, tau);
    if b == BetaResult::Undefined {
        return Err(FoldError::BetaUndefined { residue: i });
    }
    let in_class = |k: usize| k % n == i;

    let (mut pre, mut per, hit): (Vec<_>, Vec<_>, Box<dyn Fn(usize) -> bool>) = match (flips, b) {
        (FlipChoice::Depths(ks), _) => {
            if ks.is_empty() {
                return Err(FoldError::EmptyFlip);
            }
            if let Some(&k) = ks.iter().find(|&&k| !in_class(k) || !b.covers(k)) {
                return Err(FoldError::FlipOutOfRange { depth: k });
            }
            let deepest = *ks.iter().next_back().unwrap_or(&0);
            let (pre, per) = e.reversed().unfolded(deepest, 1);
            let ks = ks.clone();
            (pre, per, Box::new(move |k| ks.contains(&k)))
        }
        (FlipChoice::All, BetaResult::Finite(top)) => {
            let (pre, per) = e.reversed().unfolded(top, 1);
            (pre, per, Box::new(move |k| in_class(k) && k <= top))
        }
        (FlipChoice::All, _) => {
            let (pre, per) = e.reversed().unfolded(0, n);
            (pre, per, Box::new(in_class))
        }
    };

    let plen = pre.len();
    let cells = pre
        .iter_mut()
        .enumerate()
        .chain(per.iter_mut().enumerate().map(|(j, s)| (j + plen, s)));
    for (j, sym) in cells {
        let k = j + 1;
        if hit(k) {
            *sym = sym.complement().ok_or(FoldError::StarAtFlip { depth: k })?;
        }
    }
    Ok(BackSeq::from_reversed(Periodic::new(pre, per)))
}
