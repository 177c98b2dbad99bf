use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("sequence must be purely periodic")]
    NotPurelyPeriodic,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KneadingError {
    #[error("kneading sequence must be purely periodic")]
    NotPurelyPeriodic,
    #[error("kneading sequence must start with *")]
    NoLeadingStar,
    #[error("kneading sequence must have period at least 2 with 1 in position 1")]
    SecondSymbolNotOne,
    #[error("kneading sequence has a * away from position 0")]
    InteriorStar,
    #[error("kneading sequence is not acceptable")]
    NotAcceptable,
}

impl From<SeqError> for KneadingError {
    fn from(_: SeqError) -> Self {
        KneadingError::NotPurelyPeriodic
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MuError {
    #[error("mu-process needs two distinct sequences")]
    EqualInputs,
    #[error("mu-process input is not admissible")]
    InadmissibleInput,
    #[error("mu-process produced an inadmissible point {0}")]
    AdmissibilityViolation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoldError {
    #[error("beta is undefined at residue {residue}")]
    BetaUndefined { residue: usize },
    #[error("flip at depth {depth} is outside the matched residue class")]
    FlipOutOfRange { depth: usize },
    #[error("flip set is empty")]
    EmptyFlip,
    #[error("cannot flip the * at depth {depth}")]
    StarAtFlip { depth: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: expected {expected}")]
    Syntax { pos: usize, expected: &'static str },
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error(transparent)]
    Kneading(#[from] KneadingError),
}
