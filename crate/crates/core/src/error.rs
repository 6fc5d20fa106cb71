use std::fmt;

use crate::numeration::Base;

/// Errors raised by the library.
///
/// Membership failure of [`crate::numeration::represent`] is *not* an error; it
/// is reported as `None`. `NotMember` is only raised where an operation needs a
/// member and was handed something else.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid base {p}/{q}: {reason}")]
    InvalidBase { p: u64, q: u64, reason: &'static str },

    #[error("digit {digit} is out of range for base {base}")]
    InvalidDigit { digit: u64, base: Base },

    #[error("malformed {what}: {text:?}")]
    Malformed { what: &'static str, text: String },

    #[error("{value} is not a member of N_{base}")]
    NotMember { value: String, base: Base },

    #[error("{n} is not coprime with q = {q}")]
    NotCoprime { n: u64, q: u32 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("tape index {index} out of range for a {tapes}-tape automaton")]
    TapeIndex { index: usize, tapes: usize },

    #[error("state budget of {budget} states exceeded")]
    StateBudget { budget: usize },

    #[error("alphabet of {p}^{tapes} letters is too large")]
    AlphabetTooLarge { p: u32, tapes: usize },

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("{0}")]
    Parse(ParseError),

    #[error("unknown macro `{name}` (known: {})", .candidates.join(", "))]
    UnknownMacro { name: String, candidates: Vec<String> },

    #[error("macro `{name}` expects {expected} arguments, got {found}")]
    Arity { name: String, expected: usize, found: usize },

    #[error("free variable `{0}` is missing from the variable order")]
    UnboundVariable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("json: {0}")]
    Json(String),
}

/// Syntax error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
