//! Error types shared across the crate.

use thiserror::Error;

/// Errors from exact rational evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    /// A negative power of q was evaluated at q = 0.
    #[error("negative power of q evaluated at q = 0")]
    ZeroToNegativePower,
}

/// Errors from parsing the text or JSON polynomial formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError {
            pos,
            msg: msg.into(),
        }
    }
}

/// Errors from the X/Y exchange involution.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SwapError {
    /// The polynomial mentions Y_{-1}, which has no X partner.
    #[error("polynomial contains Y_-1, which has no X counterpart")]
    ContainsYMinusOne,
}

/// Errors from operations that evaluate at rational parameter points.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    /// The point violates a pole constraint of the requested operation.
    #[error("invalid rational point: {0}")]
    Pole(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
