//! Equations `sigma(z) = sum m_i p_i(z) + t`, their series roots, and root fields.

mod convergence;
mod damping;
mod equation;
mod lagrange;
mod newton;
mod root;
mod solve;
mod term;

pub use convergence::{convergence_check, enumerate_branches, ConvergenceReport};
pub use damping::{damped_equation, damped_root, DAMPING_BOW, MAX_DAMPING};
pub use equation::{Equation, Term};
pub use lagrange::{
    expansion_center, lagrange_root, lagrange_series, lagrange_series_for, phi, SeriesOutcome, OVERFLOW_LIMIT,
    TAIL_TOL,
};
pub use newton::{newton, newton_refine, NewtonOutcome, BASIN_RADIUS};
pub use root::{BranchSpec, RootField, RootRecord, DEDUP_TOL};
pub use solve::{complete_conjugates, expansion_order, solve_all, solve_branch, solve_branches, BranchResult, SolveOptions, Solution};
pub use term::TermFunction;

use num_complex::Complex64;

use crate::error::Result;
use crate::specialfn::BranchIndex;

/// One branch of `p^{-1}(w)`.
pub fn inverse_branch(p: TermFunction, w: Complex64, b: BranchIndex) -> Result<Complex64> {
    p.inverse(w, b)
}
