use alloc::string::String;
use core::fmt;

/// Which density-matrix invariant a state failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    Dimension,
    Trace,
    Hermiticity,
    NegativeEigenvalue,
    /// A diagonal probability is negative or the diagonal does not sum to one.
    Probabilities,
    /// An X-state coherence exceeds the geometric mean of its block's populations.
    CoherenceBound,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Violation::Dimension => "wrong dimension",
            Violation::Trace => "trace differs from one",
            Violation::Hermiticity => "not Hermitian",
            Violation::NegativeEigenvalue => "negative eigenvalue",
            Violation::Probabilities => "populations are not a probability vector",
            Violation::CoherenceBound => "coherence exceeds positivity bound",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// `deviation` is the measured size of the violation (e.g. |tr - 1| or the
    /// most negative eigenvalue).
    #[error("invalid state: {violation} (deviation {deviation:e})")]
    InvalidState { violation: Violation, deviation: f64 },
    #[error("state is not X-shaped: entry ({row}, {col}) has magnitude {magnitude:e}")]
    NotXShaped { row: usize, col: usize, magnitude: f64 },
}

impl Error {
    pub(crate) fn invalid_argument(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn invalid_state(violation: Violation, deviation: f64) -> Self {
        Error::InvalidState { violation, deviation }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
