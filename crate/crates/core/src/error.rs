use thiserror::Error;

use crate::grid::Rational;

/// Errors raised by grid, bracket, Zak and lattice operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    #[error("shift {shift} is not a whole number of cells at {n} samples per unit")]
    IncompatibleShift { shift: Rational, n: usize },

    #[error("period {period} is not a whole number of cells at {n} samples per unit")]
    IncompatiblePeriod { period: Rational, n: usize },

    #[error("scale {scale} is not compatible with {n} samples per unit")]
    IncompatibleScale { scale: Rational, n: usize },

    #[error("incompatible lattice: {0}")]
    IncompatibleLattice(String),

    #[error("unsupported lattice for Zak certification: a = {a}, b = {b}")]
    UnsupportedLattice { a: Rational, b: Rational },

    #[error("{n_v} frequency samples alias a support of {needed} translates")]
    Aliasing { n_v: usize, needed: usize },

    #[error("resolution too coarse: {0}")]
    ResolutionTooCoarse(String),

    #[error("no grid point with nonvanishing bracket norm in any trial")]
    NoValidPoints,

    #[error("malformed data: {0}")]
    Malformed(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
