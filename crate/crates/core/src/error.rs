use thiserror::Error;

/// Errors raised by constructors, evaluators and checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge after {terms} bands: {what}")]
    NonConvergent { what: &'static str, terms: usize },

    #[error("pole: {0}")]
    Pole(String),

    #[error("index {index} out of range for dimension {n}")]
    Index { index: usize, n: usize },

    #[error("rank deficient design matrix (condition number {condition:.3e})")]
    RankDeficient { condition: f64 },

    #[error("polynomial is not divisible by z1 - z2 - c (remainder {remainder:.3e})")]
    NotDivisible { remainder: f64 },

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("bad slots ({i}, {j}) for lifting a two-variable operator")]
    BadSlots { i: usize, j: usize },

    #[error("matrix is not homogeneous: entry ({k},{l}),({i},{j}) = {magnitude:.3e}")]
    NotHomogeneous {
        k: usize,
        l: usize,
        i: usize,
        j: usize,
        magnitude: f64,
    },

    #[error("conjugation entry {magnitude:.3e} exceeds the overflow guard")]
    OverflowGuard { magnitude: f64 },
}

impl Error {
    /// True for failures of the numerics (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergent { .. }
                | Error::Pole(_)
                | Error::RankDeficient { .. }
                | Error::NotDivisible { .. }
                | Error::OverflowGuard { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
