//! Left-infinite itineraries `e = … e_{-3} e_{-2} e_{-1}` and two-sided points.
//!
//! A [`BackSeq`] is stored reversed, as the forward sequence
//! `e_{-1} e_{-2} e_{-3} …`, so depth `k ≥ 1` lives at index `k - 1`. The
//! literal form `#(period)suffix` writes the period toward `-∞` on the left.

use std::fmt;

use crate::forward::ForwardSeq;
use crate::periodic::Periodic;
use crate::symbol::{Symbol, Word};
use crate::SeqError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BackSeq {
    rev: Periodic<Symbol>,
}

impl BackSeq {
    /// `period^∞ · suffix`, read left to right.
    pub fn new(period: Word, suffix: Word) -> Result<Self, SeqError> {
        if period.is_empty() {
            return Err(SeqError::EmptyPeriod);
        }
        let mut pre = suffix.0;
        pre.reverse();
        let mut per = period.0;
        per.reverse();
        Ok(BackSeq {
            rev: Periodic::new(pre, per),
        })
    }

    pub fn periodic(period: Word) -> Result<Self, SeqError> {
        Self::new(period, Word::new())
    }

    pub(crate) fn from_reversed(rev: Periodic<Symbol>) -> Self {
        BackSeq { rev }
    }

    pub(crate) fn reversed(&self) -> &Periodic<Symbol> {
        &self.rev
    }

    /// The reversed reading `e_{-1} e_{-2} …` as a forward sequence.
    pub fn reversed_seq(&self) -> ForwardSeq {
        ForwardSeq::from_periodic(self.rev.clone())
    }

    pub fn period(&self) -> Word {
        self.rev.period().iter().rev().copied().collect()
    }

    pub fn suffix(&self) -> Word {
        self.rev.prefix().iter().rev().copied().collect()
    }

    pub fn suffix_len(&self) -> usize {
        self.rev.prefix().len()
    }

    pub fn period_len(&self) -> usize {
        self.rev.period().len()
    }

    /// `e_{-k}` for `k ≥ 1`.
    #[inline]
    pub fn depth(&self, k: usize) -> Symbol {
        debug_assert!(k >= 1, "depths start at 1");
        self.rev.at(k - 1)
    }

    /// `e_{-n} … e_{-1}`, left to right.
    pub fn last(&self, n: usize) -> Word {
        (1..=n).rev().map(|k| self.depth(k)).collect()
    }

    /// `e · w`: the word appended on the right, pushing `e` deeper.
    pub fn append(&self, w: &Word) -> BackSeq {
        let head: Vec<Symbol> = w.0.iter().rev().copied().collect();
        BackSeq {
            rev: self.rev.prepend(&head),
        }
    }

    /// `… e_{-(n+2)} e_{-(n+1)}`: the last `n` symbols removed.
    pub fn drop_last(&self, n: usize) -> BackSeq {
        BackSeq {
            rev: self.rev.shift(n),
        }
    }

    /// Replaces the last `w.len()` symbols by `w`.
    pub fn with_last(&self, w: &Word) -> BackSeq {
        self.drop_last(w.len()).append(w)
    }

    pub fn contains_star(&self) -> bool {
        self.rev
            .prefix()
            .iter()
            .chain(self.rev.period())
            .any(|s| s.is_star())
    }

    /// Scan depth that decides any positional property shared with `other`.
    pub fn scan_bound(&self, other: &BackSeq) -> usize {
        let (start, period) = self.rev.joint_window(&other.rev);
        start + period
    }
}

impl fmt::Display for BackSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#({}){}", self.period(), self.suffix())
    }
}

/// A two-sided sequence `… x_{-2} x_{-1} . x_0 x_1 …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiSeq {
    pub back: BackSeq,
    pub fwd: ForwardSeq,
}

impl BiSeq {
    pub fn new(back: BackSeq, fwd: ForwardSeq) -> Self {
        BiSeq { back, fwd }
    }

    /// `x_i` for any integer position.
    pub fn at(&self, i: i64) -> Symbol {
        if i >= 0 {
            self.fwd.at(i as usize)
        } else {
            self.back.depth((-i) as usize)
        }
    }
}

impl fmt::Display for BiSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.back, self.fwd)
    }
}
