//! Right-infinite itineraries `x = x_0 x_1 x_2 …` and the positional
//! relations between them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::periodic::Periodic;
use crate::symbol::{Symbol, Word};
use crate::SeqError;

/// A position count that may be unbounded: first discrepancies and match
/// depths are `Infinite` when no failure ever occurs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Depth {
    Finite(usize),
    Infinite,
}

impl Depth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Depth::Finite(n) => Some(n),
            Depth::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Depth::Infinite
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(n) => write!(f, "{n}"),
            Depth::Infinite => write!(f, "inf"),
        }
    }
}

/// Eventually periodic element of `{*,1,2}^ℕ`, kept in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForwardSeq(Periodic<Symbol>);

impl ForwardSeq {
    pub fn new(prefix: Word, period: Word) -> Result<Self, SeqError> {
        if period.is_empty() {
            return Err(SeqError::EmptyPeriod);
        }
        Ok(ForwardSeq(Periodic::new(prefix.0, period.0)))
    }

    /// Purely periodic `(period)#`.
    pub fn periodic(period: Word) -> Result<Self, SeqError> {
        Self::new(Word::new(), period)
    }

    pub(crate) fn from_periodic(p: Periodic<Symbol>) -> Self {
        ForwardSeq(p)
    }

    pub fn prefix(&self) -> Word {
        Word(self.0.prefix().to_vec())
    }

    pub fn period(&self) -> Word {
        Word(self.0.period().to_vec())
    }

    pub fn prefix_len(&self) -> usize {
        self.0.prefix().len()
    }

    pub fn period_len(&self) -> usize {
        self.0.period().len()
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.0.is_purely_periodic()
    }

    #[inline]
    pub fn at(&self, i: usize) -> Symbol {
        self.0.at(i)
    }

    pub fn take(&self, n: usize) -> Word {
        Word(self.0.take(n))
    }

    /// `σ^n x`.
    pub fn shift(&self, n: usize) -> ForwardSeq {
        ForwardSeq(self.0.shift(n))
    }

    /// `w · x`.
    pub fn prepend(&self, head: &Word) -> ForwardSeq {
        ForwardSeq(self.0.prepend(&head.0))
    }

    pub fn contains_star(&self) -> bool {
        self.0
            .prefix()
            .iter()
            .chain(self.0.period())
            .any(|s| s.is_star())
    }

    /// Number of leading positions that decide any pairwise positional
    /// property of `self` and `other`.
    pub fn scan_bound(&self, other: &ForwardSeq) -> usize {
        let (start, period) = self.0.joint_window(&other.0);
        start + period
    }
}

impl fmt::Display for ForwardSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})#", self.prefix(), self.period())
    }
}

/// `x ≈ y` position by position.
pub fn approx(x: &ForwardSeq, y: &ForwardSeq) -> bool {
    first_discrepancy(x, y) == Depth::Infinite
}

/// `σ^n x`.
pub fn shift(x: &ForwardSeq, n: usize) -> ForwardSeq {
    x.shift(n)
}

/// Least `i` with `x_i ≉ y_i`.
pub fn first_discrepancy(x: &ForwardSeq, y: &ForwardSeq) -> Depth {
    (0..x.scan_bound(y))
        .find(|&i| !x.at(i).approx(y.at(i)))
        .map_or(Depth::Infinite, Depth::Finite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::w;

    fn f(pre: &str, per: &str) -> ForwardSeq {
        ForwardSeq::new(w(pre), w(per)).unwrap()
    }

    #[test]
    fn approx_examples() {
        let t = f("", "*12");
        assert!(approx(&t, &t));
        let u = f("", "*11");
        assert!(approx(&u.shift(1), &u));
        assert!(!approx(&t.shift(2), &t));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(f("", "*12").shift(3), f("", "*12"));
        assert_eq!(f("", "*12").shift(1), f("", "12*"));
        assert_eq!(f("1", "2").shift(5), f("", "2"));
    }

    #[test]
    fn first_discrepancy_examples() {
        let t = f("", "*12");
        assert_eq!(first_discrepancy(&t.shift(2), &t), Depth::Finite(2));
        assert_eq!(first_discrepancy(&t, &t), Depth::Infinite);
        let u = f("", "*1221");
        assert_eq!(first_discrepancy(&u.shift(3), &u), Depth::Finite(3));
    }

    #[test]
    fn empty_period_rejected() {
        assert_eq!(ForwardSeq::new(w("1"), w("")), Err(SeqError::EmptyPeriod));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(f("12", "12").to_string(), "(12)#");
        assert_eq!(f("1", "2222").to_string(), "1(2)#");
    }
}
