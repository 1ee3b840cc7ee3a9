//! Root fields of transcendental and polynomial equations.
//!
//! An equation `sigma(z) = sum m_i * p_i(z) + t` is split into one expansion
//! per term: term `k` is inverted on every branch of `p_k^{-1}`, the remaining
//! terms are pushed through that inverse, and the root is recovered as a
//! Lagrange–Bürmann series around `w0 = -t / m_k`. Series roots are polished
//! with Newton's method and the per-branch results are merged into one
//! deduplicated root field.
//!
//! Modules:
//!
//! * [`specialfn`] Gamma, digamma, `pFq`, Lambert W, branch-indexed inverses.
//! * [`jet`] truncated power series used to build every derivative tower.
//! * [`engine`] equations, term catalog, series roots, refinement, root fields.
//! * [`trinomial`] closed-form and hypergeometric trinomial/quintic solvers.
//! * [`famous`] dedicated solvers for seven classic equation families,
//!   registered by name.
//! * [`oracle`] independent ground truth: Aberth, grid Newton, argument principle.

pub mod engine;
pub mod error;
pub mod famous;
pub mod jet;
pub mod oracle;
pub mod specialfn;
pub mod trinomial;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex scalar used throughout the crate.
pub type ComplexValue = Complex64;

/// Drops negative zeros so `-t` lands on the same side of the branch cut as `0 - t`.
pub(crate) fn unsigned_zero(z: Complex64) -> Complex64 {
    Complex64::new(z.re + 0.0, z.im + 0.0)
}

pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
