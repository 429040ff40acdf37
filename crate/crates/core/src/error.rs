use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),

    #[error("polynomial {poly:?} is not irreducible of degree {degree} over F_{p}")]
    Reducible { p: u32, degree: u32, poly: Vec<u32> },

    #[error("ring order {order} exceeds cap {cap}")]
    OrderCap { order: u128, cap: usize },

    #[error("enumeration of {size} items exceeds cap {cap}")]
    EnumerationCap { size: u128, cap: usize },

    #[error("character check failed: {0}")]
    Character(String),

    #[error("ring axiom violated: {0}")]
    Axiom(String),

    #[error("cyclotomic reduction left a non-constant remainder for element {element}")]
    NonConstantRemainder { element: usize },

    #[error("rank {rank} out of range 0..={max}")]
    RankOutOfRange { rank: usize, max: usize },

    /// Holds the 0-based column index; the message counts from 1.
    #[error("generator matrix column {} is zero", .0 + 1)]
    ZeroColumn(usize),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("code is not modular")]
    NotModular,

    #[error("code is not a two-weight code")]
    NotTwoWeight,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("parameter {name} = {value} is not an integer")]
    NonInteger { name: &'static str, value: String },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
