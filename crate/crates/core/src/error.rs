use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed input: wrong lengths, mismatched sample spaces, bad indices.
    #[error("invalid input: {0}")]
    Input(String),

    /// Dimensions of two operands disagree.
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A matrix that must be invertible is singular at the configured tolerance.
    #[error("ill-conditioned matrix: {0}")]
    Conditioning(String),

    /// A numerical postcondition failed even though the inputs satisfied their invariants.
    /// This points at an inconsistent tolerance regime rather than bad input.
    #[error("internal degeneracy: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
