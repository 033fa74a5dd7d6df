//! Algorithms for finding perfect matchings in d-regular bipartite graphs via
//! two-stage edge sampling, together with the supporting machinery: exact edge
//! strengths from recursive minimum cuts, an instrumented Hopcroft-Karp,
//! boundary-driven graph decomposition, thick-pair uncrossing over shared
//! cuts, and Birkhoff-von-Neumann matching extraction for doubly stochastic
//! matrices.
//!
//! The crate is `no_std` (with `alloc`); all file formats, timing, and CLI
//! plumbing live in the companion `regmatch` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
#[macro_use]
extern crate std;

pub mod bvn;
pub mod decomposition;
pub mod graph;
pub mod matching;
pub mod pipeline;
pub mod sampling;
pub mod strength;
pub mod uncrossing;

use alloc::string::String;
use core::fmt;

/// Exact rational scalar used for edge weights, strengths of weighted graphs,
/// thickness accounting, and doubly stochastic matrix entries.
pub type Rational = num_rational::BigRational;

pub use num_bigint::BigInt;

/// Builds a [`Rational`] from an integer numerator/denominator pair.
///
/// # Panics
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Errors shared by every module in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Parameters are outside an operation's documented domain
    /// (e.g. `d > n` when generating a regular graph).
    InvalidParameters(String),
    /// Structurally invalid input data (index out of range, mismatched
    /// strength map, degree not matching a declared regularity, ...).
    InvalidInput(String),
    /// Text input did not parse; `line` is 1-based.
    Parse { line: usize, message: String },
    /// An exponential-time routine was asked to run beyond its size cap.
    InstanceTooLarge(String),
    /// The matching cannot be extended: no augmenting path exists.
    NoAugmentingPath,
    /// No split index exists for the given pair of multisets.
    NoSplitIndex,
    /// A pair collection fails a precondition (not thick, redundant, or not
    /// sharing the required cut).
    InvalidCollection(String),
    /// Input is outside the supported class (e.g. non-dyadic entries fed to
    /// the bit-elimination matcher).
    UnsupportedInput(String),
    /// The requested mode/variant combination cannot run on this input.
    InvalidConfiguration(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameters(m) => write!(f, "invalid parameters: {m}"),
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
            Error::InstanceTooLarge(m) => write!(f, "instance too large: {m}"),
            Error::NoAugmentingPath => write!(f, "no augmenting path exists"),
            Error::NoSplitIndex => write!(f, "no split index exists for the given multisets"),
            Error::InvalidCollection(m) => write!(f, "invalid pair collection: {m}"),
            Error::UnsupportedInput(m) => write!(f, "unsupported input: {m}"),
            Error::InvalidConfiguration(m) => write!(f, "invalid configuration: {m}"),
        }
    }
}

impl core::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Natural logarithm of a vertex count, as used by the sampling-rate
/// formulas. Returns 0 for `n <= 1`.
pub fn ln(n: usize) -> f64 {
    if n <= 1 {
        0.0
    } else {
        libm::log(n as f64)
    }
}
