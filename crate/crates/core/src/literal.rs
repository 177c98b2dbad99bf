//! Text literals for sequences.
//!
//! ```text
//! FORWARD := WORD? "(" WORD ")#"         e.g. (*12)#   1(2)#
//! BACK    := "#(" WORD ")" WORD?          e.g. #(1)21   #(2112)2111
//! BI      := BACK "." FORWARD             e.g. #(1)*.(112*)#
//! WORD    := ("*" | "1" | "2")+
//! ```
//!
//! Parsing canonicalizes, and `Display` prints the canonical form, so
//! formatting followed by parsing is the identity.

use std::fmt;
use std::str::FromStr;

use crate::backward::{BackSeq, BiSeq};
use crate::forward::ForwardSeq;
use crate::kneading::KneadingSeq;
use crate::symbol::{Symbol, Word};
use crate::ParseError;

/// Any of the three literal shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Literal {
    Forward(ForwardSeq),
    Back(BackSeq),
    Bi(BiSeq),
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Forward(x) => x.fmt(f),
            Literal::Back(e) => e.fmt(f),
            Literal::Bi(p) => p.fmt(f),
        }
    }
}

/// Parses whichever literal shape `s` has.
pub fn parse_literal(s: &str) -> Result<Literal, ParseError> {
    let mut c = Cursor::new(s);
    let lit = if c.peek() == Some('#') {
        let back = c.back()?;
        if c.peek() == Some('.') {
            c.bump();
            Literal::Bi(BiSeq::new(back, c.forward()?))
        } else {
            Literal::Back(back)
        }
    } else {
        Literal::Forward(c.forward()?)
    };
    c.end()?;
    Ok(lit)
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn expect(&mut self, ch: char, what: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(ch) {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::Syntax {
                pos: self.pos,
                expected: what,
            })
        }
    }

    fn word(&mut self) -> Word {
        let mut out = Word::new();
        while let Some(s) = self.peek().and_then(Symbol::from_char) {
            out.push(s);
            self.bump();
        }
        out
    }

    fn period(&mut self) -> Result<Word, ParseError> {
        self.expect('(', "'('")?;
        let per = self.word();
        if per.is_empty() {
            return if self.peek() == Some(')') {
                Err(ParseError::EmptyPeriod)
            } else {
                Err(ParseError::Syntax {
                    pos: self.pos,
                    expected: "a symbol",
                })
            };
        }
        self.expect(')', "')'")?;
        Ok(per)
    }

    fn forward(&mut self) -> Result<ForwardSeq, ParseError> {
        let pre = self.word();
        let per = self.period()?;
        self.expect('#', "'#'")?;
        ForwardSeq::new(pre, per).map_err(|_| ParseError::EmptyPeriod)
    }

    fn back(&mut self) -> Result<BackSeq, ParseError> {
        self.expect('#', "'#'")?;
        let per = self.period()?;
        let suf = self.word();
        BackSeq::new(per, suf).map_err(|_| ParseError::EmptyPeriod)
    }

    fn end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(ParseError::Syntax {
                pos: self.pos,
                expected: "end of input",
            }),
        }
    }
}

fn only<T>(
    s: &str,
    pick: impl FnOnce(Literal) -> Option<T>,
    expected: &'static str,
) -> Result<T, ParseError> {
    pick(parse_literal(s)?).ok_or(ParseError::Syntax { pos: 0, expected })
}

impl FromStr for ForwardSeq {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        only(
            s,
            |l| {
                if let Literal::Forward(x) = l {
                    Some(x)
                } else {
                    None
                }
            },
            "a forward literal",
        )
    }
}

impl FromStr for BackSeq {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        only(
            s,
            |l| {
                if let Literal::Back(x) = l {
                    Some(x)
                } else {
                    None
                }
            },
            "a backward literal",
        )
    }
}

impl FromStr for BiSeq {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        only(
            s,
            |l| {
                if let Literal::Bi(x) = l {
                    Some(x)
                } else {
                    None
                }
            },
            "a two-sided literal",
        )
    }
}

impl FromStr for KneadingSeq {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        Ok(KneadingSeq::new(s.parse::<ForwardSeq>()?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_shape() {
        let tau: KneadingSeq = "(*112)#".parse().unwrap();
        assert_eq!(tau.period(), 4);
        let e: BackSeq = "#(2112)2111".parse().unwrap();
        assert_eq!(e.to_string(), "#(2211)1");
        let p: BiSeq = "#(1)*.(112*)#".parse().unwrap();
        assert_eq!(p.to_string(), "#(1)*.(112*)#");
        assert_eq!("1(2)#".parse::<ForwardSeq>().unwrap().to_string(), "1(2)#");
    }

    #[test]
    fn reports_errors() {
        assert_eq!("#()1".parse::<BackSeq>(), Err(ParseError::EmptyPeriod));
        assert_eq!(
            "(12".parse::<ForwardSeq>(),
            Err(ParseError::Syntax {
                pos: 3,
                expected: "')'"
            })
        );
        assert_eq!(
            "(1x)#".parse::<ForwardSeq>(),
            Err(ParseError::Syntax {
                pos: 2,
                expected: "')'"
            })
        );
        assert_eq!(
            "(12)#7".parse::<ForwardSeq>(),
            Err(ParseError::Syntax {
                pos: 5,
                expected: "end of input"
            })
        );
        assert!("(*11)#".parse::<KneadingSeq>().is_err());
        assert!("#(1)".parse::<ForwardSeq>().is_err());
    }
}
