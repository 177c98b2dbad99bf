//! Right-infinite eventually periodic sequences over an arbitrary alphabet.
//!
//! A value is stored as `prefix · period^∞`, always in canonical form: the
//! period is primitive and the prefix is as short as possible. Two values
//! are equal as infinite sequences iff their canonical forms are identical,
//! so `PartialEq` is structural.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Periodic<T> {
    prefix: Vec<T>,
    period: Vec<T>,
}

impl<T: Copy + Eq> Periodic<T> {
    /// Builds the canonical form of `prefix · period^∞`.
    ///
    /// Panics if `period` is empty; callers validate first.
    pub fn new(mut prefix: Vec<T>, period: Vec<T>) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        let mut period = primitive_root(period);
        // Roll the period left-to-right while the last prefix symbol repeats
        // the last period symbol.
        while let (Some(&p), Some(&q)) = (prefix.last(), period.last()) {
            if p != q {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Periodic { prefix, period }
    }

    pub fn constant(value: T) -> Self {
        Periodic {
            prefix: Vec::new(),
            period: vec![value],
        }
    }

    pub fn prefix(&self) -> &[T] {
        &self.prefix
    }

    pub fn period(&self) -> &[T] {
        &self.period
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.prefix.is_empty()
    }

    #[inline]
    pub fn at(&self, i: usize) -> T {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// Drops the first `n` terms.
    pub fn shift(&self, n: usize) -> Self {
        if n <= self.prefix.len() {
            return Periodic {
                prefix: self.prefix[n..].to_vec(),
                period: self.period.clone(),
            };
        }
        let mut period = self.period.clone();
        period.rotate_left((n - self.prefix.len()) % self.period.len());
        Periodic {
            prefix: Vec::new(),
            period,
        }
    }

    /// Prepends a finite block.
    pub fn prepend(&self, head: &[T]) -> Self {
        let mut prefix = head.to_vec();
        prefix.extend_from_slice(&self.prefix);
        Periodic::new(prefix, self.period.clone())
    }

    /// The first `n` terms.
    pub fn take(&self, n: usize) -> Vec<T> {
        (0..n).map(|i| self.at(i)).collect()
    }

    /// Index from which both sequences are jointly periodic, and the joint
    /// period. Any positional property that holds on `0..start + period`
    /// holds everywhere.
    pub fn joint_window<U: Copy + Eq>(&self, other: &Periodic<U>) -> (usize, usize) {
        let start = self.prefix.len().max(other.prefix.len());
        let period = num_integer::lcm(self.period.len(), other.period.len());
        (start, period)
    }

    /// Rewrites the storage so the prefix has at least `min_prefix` terms and
    /// the period length is a multiple of `modulus`. The result is *not*
    /// canonical; it is meant for positional editing followed by
    /// [`Periodic::new`].
    pub fn unfolded(&self, min_prefix: usize, modulus: usize) -> (Vec<T>, Vec<T>) {
        let plen = self.prefix.len().max(min_prefix);
        let prefix = self.take(plen);
        let len = num_integer::lcm(self.period.len(), modulus.max(1));
        let period = (plen..plen + len).map(|i| self.at(i)).collect();
        (prefix, period)
    }
}

/// Shortest word `r` with `word = r^m`.
fn primitive_root<T: Copy + Eq>(word: Vec<T>) -> Vec<T> {
    let n = word.len();
    for d in 1..n {
        if n.is_multiple_of(d) && (d..n).all(|i| word[i] == word[i - d]) {
            return word[..d].to_vec();
        }
    }
    word
}
