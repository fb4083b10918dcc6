//! Error type shared across the crate.
//!
//! Mathematical *verdicts* (an axiom that fails to hold) are not errors;
//! they are reported through [`crate::lie::AxiomReport`]. Errors are
//! reserved for inputs that make an operation meaningless: malformed
//! scalars, dimension mismatches, singular pairings, violated
//! preconditions.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rational literal {literal:?}: {reason}")]
    BadRational { literal: String, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("two-form is not antisymmetric at entry ({row}, {col}) (1-based)")]
    NotAntisymmetric { row: usize, col: usize },

    #[error("degenerate structure: {0}")]
    DegenerateStructure(String),

    #[error("singular pairing: {0}")]
    SingularPairing(String),

    #[error("matrix {which} is not a derivation of the given product (fails at basis pair ({i}, {j}), 1-based)")]
    NotADerivation { which: usize, i: usize, j: usize },

    #[error("derivations {0} and {1} (1-based) do not commute")]
    DerivationsDoNotCommute(usize, usize),

    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    #[error("constraint violation: parameter {name} must not equal {forbidden}")]
    ConstraintViolation { name: String, forbidden: String },

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
