//! Shared error type.

use alloc::string::String;
use core::fmt;

/// Errors reported by the core algorithms.
///
/// A failed *verification* is never an error — verifiers return verdicts or
/// `Option` witnesses. Errors are reserved for violated preconditions,
/// capacity limits, and malformed input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An element lies outside the ground set `[1, n]`.
    ElementOutOfRange {
        /// The offending element.
        element: u8,
        /// Ground-set size.
        n: u8,
    },
    /// A set does not have the required cardinality.
    WrongCardinality {
        /// Cardinality required by the call.
        expected: usize,
        /// Cardinality actually present.
        actual: usize,
    },
    /// Elements were not distinct or not sorted strictly ascending.
    NotStrictlyAscending,
    /// Two sets live over different ground sets.
    GroundSetMismatch,
    /// A rank is outside `[0, C(n, r))`.
    RankOutOfRange {
        /// The offending rank.
        rank: u64,
        /// Number of valid ranks.
        count: u64,
    },
    /// The ground set exceeds the one-machine-word cap `n <= 64`.
    GroundSetTooLarge(u64),
    /// The object would exceed an addressable index space (for example more
    /// edges than DIMACS variables can name).
    CapacityExceeded(&'static str),
    /// A parameter violates a documented precondition.
    InvalidParameter(&'static str),
    /// A required Ramsey table entry is absent; the result is reported as
    /// unavailable instead of fabricated.
    MissingRamseyEntry(String),
    /// A theorem hypothesis could not be verified from the table, so the
    /// bound is refused.
    HypothesisNotSatisfied(String),
    /// A SAT model does not satisfy the formula it claims to solve.
    ModelInconsistent {
        /// Index of the first violated clause.
        clause: usize,
    },
    /// Malformed text input (DIMACS model, set literal, ...).
    Parse {
        /// 1-based line number, 0 when not line-oriented.
        line: usize,
        /// Description of the problem.
        message: String,
    },
    /// An oracle answered the same pair with two different colors.
    InconsistentOracle,
    /// An exhaustive search failed where a theorem guarantees success.
    /// This indicates an implementation bug, never a mathematical outcome.
    TheoremViolation(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ElementOutOfRange { element, n } => {
                write!(f, "element {element} outside ground set [1, {n}]")
            }
            Error::WrongCardinality { expected, actual } => {
                write!(f, "expected a {expected}-set, got {actual} elements")
            }
            Error::NotStrictlyAscending => {
                write!(f, "elements must be distinct and strictly ascending")
            }
            Error::GroundSetMismatch => write!(f, "sets live over different ground sets"),
            Error::RankOutOfRange { rank, count } => {
                write!(f, "rank {rank} outside [0, {count})")
            }
            Error::GroundSetTooLarge(n) => {
                write!(f, "ground set size {n} exceeds the cap of 64")
            }
            Error::CapacityExceeded(what) => write!(f, "capacity exceeded: {what}"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::MissingRamseyEntry(which) => {
                write!(f, "no table entry for {which}; refusing to fabricate")
            }
            Error::HypothesisNotSatisfied(what) => {
                write!(f, "theorem hypothesis not satisfiable from table: {what}")
            }
            Error::ModelInconsistent { clause } => {
                write!(f, "model violates clause {clause}")
            }
            Error::Parse { line, message } => {
                if *line == 0 {
                    write!(f, "parse error: {message}")
                } else {
                    write!(f, "parse error at line {line}: {message}")
                }
            }
            Error::InconsistentOracle => {
                write!(f, "oracle answered the same pair with two different colors")
            }
            Error::TheoremViolation(what) => {
                write!(f, "exhaustive search failed where success is guaranteed ({what}); this is a bug")
            }
        }
    }
}

impl core::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
