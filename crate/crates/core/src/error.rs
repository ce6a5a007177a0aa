use thiserror::Error;

use crate::gf2::BitVec;
use crate::phasestate::{CyclotomicSum, Extremality};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("enumeration needs {needed} work items, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("{what} is {size}, limit is {limit}")]
    SizeGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("evaluation requires flat temporal order (T = 0)")]
    NonFlatTemporalOrder,

    #[error("{0}")]
    DeterminismViolation(Box<DeterminismViolation>),

    #[error("promise violated on output row {row}: {detail}")]
    PromiseViolation { row: usize, detail: String },

    #[error("CSS orthogonality violated between X row {x_row} and Z row {z_row}")]
    OrthogonalityViolation { x_row: usize, z_row: usize },

    #[error("function is affine, no AND-extraction triple exists")]
    LinearFunction,

    #[error("embedded data corrupted: {0}")]
    DataCorruption(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported output: {0}")]
    UnsupportedFormat(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

/// A context whose correlation-operator expectation was not `±1`.
///
/// Carries the exact histogram so the boundary of determinism can be
/// inspected after the fact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminismViolation {
    pub input: BitVec,
    pub q: BitVec,
    pub row: usize,
    pub outcome: Extremality,
    pub histogram: CyclotomicSum,
}

impl std::fmt::Display for DeterminismViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "non-deterministic output row {} for input {} (q = {}): {:?}, histogram {:?}",
            self.row,
            self.input,
            self.q,
            self.outcome,
            self.histogram.counts()
        )
    }
}

impl Error {
    pub(crate) fn dims(context: &'static str, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            context,
            expected,
            found,
        }
    }
}
