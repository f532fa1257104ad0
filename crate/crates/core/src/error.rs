//! Error type shared across the crate.

use std::fmt;

/// Errors reported by fallible operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A variable index outside `1..=arity`.
    VariableOutOfRange { var: usize, arity: usize },
    /// An evaluation point outside `0..2^arity`.
    PointOutOfRange { point: u64, arity: usize },
    /// A depth argument outside `0..=arity`.
    DepthOutOfRange { depth: usize, arity: usize },
    /// An arity outside the range an operation supports.
    UnsupportedArity { arity: usize, detail: &'static str },
    /// A layer decomposition whose pieces do not fit together.
    InvalidDecomposition(String),
    /// A sampler asked to draw from an empty set.
    EmptySupport(String),
    /// A variable-name list whose length does not match a table's arity.
    NameCount { names: usize, arity: usize },
    /// A malformed expression, with the byte offset of the offending token.
    Syntax { position: usize, message: String },
    /// A malformed hexadecimal truth table.
    TableFormat(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VariableOutOfRange { var, arity } => {
                write!(f, "variable x{var} out of range for arity {arity}")
            }
            Error::PointOutOfRange { point, arity } => {
                write!(f, "point {point} out of range for arity {arity}")
            }
            Error::DepthOutOfRange { depth, arity } => {
                write!(f, "depth {depth} out of range for arity {arity}")
            }
            Error::UnsupportedArity { arity, detail } => {
                write!(f, "arity {arity} unsupported: {detail}")
            }
            Error::InvalidDecomposition(msg) => write!(f, "invalid decomposition: {msg}"),
            Error::EmptySupport(msg) => write!(f, "empty support: {msg}"),
            Error::NameCount { names, arity } => {
                write!(f, "{names} variable names given for arity {arity}")
            }
            Error::Syntax { position, message } => {
                write!(f, "syntax error at offset {position}: {message}")
            }
            Error::TableFormat(msg) => write!(f, "bad truth table: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
