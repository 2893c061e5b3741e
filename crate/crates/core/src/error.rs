use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("state space must not be empty")]
    EmptySpace,
    #[error("state space has {0} states; at most 64 are supported")]
    SpaceTooLarge(usize),
    #[error("duplicate state name `{0}`")]
    DuplicateState(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("space mismatch: expected {expected}, found {found}")]
    SpaceMismatch { expected: String, found: String },
    #[error("invalid subprobability: {0}")]
    InvalidMeasure(String),
    #[error("invalid kernel row `{state}`: {reason}")]
    InvalidRow { state: String, reason: String },
    #[error("value {value} outside [0, 1]")]
    OutOfUnitInterval { value: String },
    #[error("negative function value {value} at state `{state}`")]
    NegativeValue { state: String, value: String },
    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),
    #[error("generator has no points")]
    EmptyGenerator,
    #[error("kernel family must not be empty")]
    EmptyFamily,
    #[error("denominator bound must be positive")]
    InvalidDenominatorBound,
    #[error("partition is invalid: {0}")]
    InvalidPartition(String),
    #[error("map is invalid: {0}")]
    InvalidMap(String),
    #[error("not a congruence: states `{0}` and `{1}` are related but have different pushed portfolios")]
    NotACongruence(String, String),
    #[error("not a morphism: portfolio mismatch at state `{0}`")]
    NotAMorphism(String),
    #[error("morphism is not strong: {0}")]
    NotStrong(String),
    #[error("invalid isomorphism: {0}")]
    InvalidIsomorphism(String),
    #[error("equivalence search exceeded its bound of {0} candidates")]
    SearchBoundExceeded(u64),
    #[error("unbound atom `{0}`")]
    UnboundAtom(String),
    #[error("unbound game `{0}`")]
    UnboundGame(String),
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}
