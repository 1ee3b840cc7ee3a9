use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: Complex64 },

    #[error("{function}: argument {at} outside the domain ({reason})")]
    Domain {
        function: &'static str,
        at: Complex64,
        reason: &'static str,
    },

    #[error("{0}: ratio diverges")]
    RatioDiverges(&'static str),

    #[error("series diverges: {0}")]
    Divergence(String),

    #[error("series terms exceeded 1e100 after {terms} terms")]
    SeriesOverflow {
        terms: usize,
        /// Best partial sum available before the blow-up.
        seed: Complex64,
    },

    #[error("{method} did not converge after {iterations} iterations")]
    NoConvergence {
        method: &'static str,
        iterations: usize,
    },

    #[error("derivative vanished at {at}")]
    DerivativeUnderflow { at: Complex64 },

    #[error("refinement left the basin: moved from {from} to {to}")]
    BasinEscape { from: Complex64, to: Complex64 },

    #[error("root within {distance:e} of the contour")]
    BoundaryTooClose { distance: f64 },

    #[error("phase jump of {jump:.3} rad between adjacent contour samples")]
    PhaseJump { jump: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-finite value produced in {0}")]
    NonFinite(&'static str),
}

impl Error {
    pub(crate) fn domain(function: &'static str, at: Complex64, reason: &'static str) -> Self {
        Error::Domain {
            function,
            at,
            reason,
        }
    }
}
