use thiserror::Error;

/// Errors produced by the exact-arithmetic operations in this crate.
///
/// Domain violations are reported, never silently clamped: every operation
/// states its preconditions and returns one of these variants when an input
/// falls outside them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: String },

    #[error("matrix is singular")]
    Singular,

    #[error("row of length {n} is not a bijection of 1..={n}")]
    NotABijection { n: usize },

    #[error("permutation fixes the prefix {{1..={prefix}}} and is reducible")]
    Reducible { prefix: usize },

    #[error("induction step undefined: last length equals last image length (boundary tie)")]
    BoundaryTie,

    #[error("orbit point landed on a discontinuity at step {step}")]
    BreakpointHit { step: usize },

    #[error("iteration cap of {cap} steps exceeded")]
    IterationCap { cap: usize },

    #[error("input outside operation domain: {0}")]
    OutOfDomain(String),

    #[error("empty expansion carries no continued-fraction digits")]
    EmptyExpansion,

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("degenerate construction: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
