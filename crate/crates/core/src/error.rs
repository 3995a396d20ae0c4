use thiserror::Error;

use crate::expr::{DiffError, EvalError, ParseError};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate interval [{a}, {b}]: need finite a < b")]
    DegenerateInterval { a: f64, b: f64 },

    #[error("invalid norm exponent {0}: must be >= 1 or infinity")]
    InvalidExponent(f64),

    #[error("exponents r = {r} and s = {s} are not conjugate (1/r + 1/s != 1)")]
    ConjugateMismatch { r: f64, s: f64 },

    #[error("derivative norm must be finite and non-negative, got {0}")]
    InvalidNorm(f64),

    #[error("number of subintervals must be at least 1, got {0}")]
    InvalidPanelCount(usize),

    #[error("composite Simpson needs an even number of subintervals, got {0}")]
    OddSimpsonPanels(usize),

    #[error("finite-difference step {h} is invalid for [{a}, {b}]")]
    InvalidStep { h: f64, a: f64, b: f64 },

    #[error("tolerance must be finite and positive, got {0}")]
    InvalidTolerance(f64),

    #[error("rule {rule} is not supported by {context}")]
    UnsupportedRule { rule: &'static str, context: &'static str },

    #[error("sup norm on [{lo}, {hi}] appears unbounded (largest sample {max_seen})")]
    DivergentNorm { lo: f64, hi: f64, max_seen: f64 },

    #[error("{entry} is not smooth enough for {rule}")]
    InsufficientSmoothness { entry: String, rule: &'static str },

    #[error("partition breakpoints must be strictly increasing and finite")]
    InvalidPartition,

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Eval(#[from] EvalError),

    #[error(transparent)]
    Diff(#[from] DiffError),
}
