//! Sets of discrepancy depths between two backward itineraries.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::backward::BackSeq;
use crate::periodic::Periodic;

/// An eventually periodic subset of `{1, 2, 3, …}`.
///
/// Internally a canonical eventually periodic indicator sequence whose index
/// `j` stands for the element `j + 1`, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscrepancySet {
    flags: Periodic<bool>,
}

impl DiscrepancySet {
    pub fn empty() -> Self {
        DiscrepancySet {
            flags: Periodic::constant(false),
        }
    }

    pub fn finite<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        let elems: BTreeSet<usize> = elems.into_iter().collect();
        assert!(!elems.contains(&0), "discrepancy depths start at 1");
        let top = elems.iter().next_back().copied().unwrap_or(0);
        let prefix = (1..=top).map(|k| elems.contains(&k)).collect();
        DiscrepancySet {
            flags: Periodic::new(prefix, vec![false]),
        }
    }

    /// `head ∪ {k ≥ threshold : k mod modulus ∈ residues}`.
    pub fn from_parts(
        head: &[usize],
        threshold: usize,
        modulus: usize,
        residues: &[usize],
    ) -> Self {
        assert!(threshold >= 1 && modulus >= 1);
        assert!(head.iter().all(|&k| k >= 1 && k < threshold));
        let prefix = (1..threshold).map(|k| head.contains(&k)).collect();
        let period = (threshold..threshold + modulus)
            .map(|k| residues.contains(&(k % modulus)))
            .collect();
        DiscrepancySet {
            flags: Periodic::new(prefix, period),
        }
    }

    pub(crate) fn from_flags(flags: Periodic<bool>) -> Self {
        DiscrepancySet { flags }
    }

    pub fn contains(&self, k: usize) -> bool {
        k >= 1 && self.flags.at(k - 1)
    }

    pub fn is_empty(&self) -> bool {
        self.flags
            .prefix()
            .iter()
            .chain(self.flags.period())
            .all(|b| !b)
    }

    pub fn is_finite(&self) -> bool {
        self.flags.period().iter().all(|b| !b)
    }

    /// Every element is below this bound or lies in the periodic tail.
    pub fn threshold(&self) -> usize {
        self.flags.prefix().len() + 1
    }

    pub fn tail_modulus(&self) -> usize {
        self.flags.period().len()
    }

    /// Residues modulo [`Self::tail_modulus`] occupied by the tail.
    pub fn tail_residues(&self) -> BTreeSet<usize> {
        let t = self.threshold();
        let m = self.tail_modulus();
        (t..t + m)
            .filter(|&k| self.contains(k))
            .map(|k| k % m)
            .collect()
    }

    /// Elements below the threshold.
    pub fn head(&self) -> BTreeSet<usize> {
        (1..self.threshold())
            .filter(|&k| self.contains(k))
            .collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Largest element, when finite and nonempty.
    pub fn last(&self) -> Option<usize> {
        if self.is_finite() {
            self.head().into_iter().next_back()
        } else {
            None
        }
    }

    /// Ascending elements; endless when the set is infinite.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let finite_end = if self.is_finite() {
            Some(self.threshold())
        } else {
            None
        };
        (1usize..)
            .take_while(move |&k| finite_end.is_none_or(|end| k < end))
            .filter(move |&k| self.contains(k))
    }

    /// Elements up to and including `bound`.
    pub fn up_to(&self, bound: usize) -> Vec<usize> {
        (1..=bound).filter(|&k| self.contains(k)).collect()
    }
}

impl fmt::Display for DiscrepancySet {
    /// `{1, 3}` for finite sets, `{4, 8, 12, ...}` when a tail exists.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            let items: Vec<String> = self.head().iter().map(|k| k.to_string()).collect();
            return write!(f, "{{{}}}", items.join(", "));
        }
        let shown = self.threshold() + 3 * self.tail_modulus() - 1;
        let items: Vec<String> = self.up_to(shown).iter().map(|k| k.to_string()).collect();
        write!(f, "{{{}, ...}}", items.join(", "))
    }
}

impl Serialize for DiscrepancySet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Parts {
            head: Vec<usize>,
            threshold: usize,
            tail_modulus: usize,
            tail_residues: Vec<usize>,
        }
        let finite = self.is_finite();
        Parts {
            head: self.head().into_iter().collect(),
            threshold: self.threshold(),
            tail_modulus: if finite { 0 } else { self.tail_modulus() },
            tail_residues: if finite {
                Vec::new()
            } else {
                self.tail_residues().into_iter().collect()
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiscrepancySet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Parts {
            head: Vec<usize>,
            threshold: usize,
            tail_modulus: usize,
            tail_residues: Vec<usize>,
        }
        let p = Parts::deserialize(d)?;
        if p.threshold == 0 || p.head.iter().any(|&k| k == 0 || k >= p.threshold) {
            return Err(serde::de::Error::custom("malformed discrepancy set"));
        }
        if p.tail_modulus == 0 {
            return Ok(DiscrepancySet::finite(p.head));
        }
        Ok(DiscrepancySet::from_parts(
            &p.head,
            p.threshold,
            p.tail_modulus,
            &p.tail_residues,
        ))
    }
}

/// `{k ≥ 1 : e_{-k} ≠ f_{-k}}`, compared with strict inequality.
pub fn discrepancies(e: &BackSeq, f: &BackSeq) -> DiscrepancySet {
    let (a, b) = (e.reversed(), f.reversed());
    let (start, period) = a.joint_window(b);
    let flag = |j: usize| a.at(j) != b.at(j);
    let prefix = (0..start).map(flag).collect();
    let tail = (start..start + period).map(flag).collect();
    DiscrepancySet::from_flags(Periodic::new(prefix, tail))
}
