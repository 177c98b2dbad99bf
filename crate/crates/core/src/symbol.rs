use std::fmt;

use serde::{Deserialize, Serialize};

/// One letter of the itinerary alphabet `{*, 1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    /// The critical point.
    Star,
    One,
    Two,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::Star, Symbol::One, Symbol::Two];

    /// `a ≈ b`: equal, or at least one side is the star.
    #[inline]
    pub fn approx(self, other: Symbol) -> bool {
        self == other || self == Symbol::Star || other == Symbol::Star
    }

    /// Swaps `1` and `2`. The star has no complement.
    pub fn complement(self) -> Option<Symbol> {
        match self {
            Symbol::Star => None,
            Symbol::One => Some(Symbol::Two),
            Symbol::Two => Some(Symbol::One),
        }
    }

    pub fn is_star(self) -> bool {
        self == Symbol::Star
    }

    pub fn to_char(self) -> char {
        match self {
            Symbol::Star => '*',
            Symbol::One => '1',
            Symbol::Two => '2',
        }
    }

    pub fn from_char(c: char) -> Option<Symbol> {
        match c {
            '*' => Some(Symbol::Star),
            '1' => Some(Symbol::One),
            '2' => Some(Symbol::Two),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A finite block of symbols, written left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    /// Parses a run of `*`, `1`, `2`. Returns `None` on any other character.
    pub fn parse(s: &str) -> Option<Word> {
        s.chars()
            .map(Symbol::from_char)
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }

    pub fn contains_star(&self) -> bool {
        self.0.iter().any(|s| s.is_star())
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl std::ops::Index<usize> for Word {
    type Output = Symbol;
    fn index(&self, i: usize) -> &Symbol {
        &self.0[i]
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s)?;
        }
        Ok(())
    }
}

/// Shorthand for tests and constructors: `w("1*2")`.
///
/// Panics on characters outside the alphabet.
pub fn w(s: &str) -> Word {
    Word::parse(s).unwrap_or_else(|| panic!("not a symbol word: {s:?}"))
}
