//! Complex special functions and branch-resolved elementary inverses.
//!
//! Everything here is a pure function of its arguments.

mod branch;
mod digamma;
mod gamma;
mod hypergeometric;
mod lambert;

pub use branch::{arccos_branch, arcsin_branch, log_branch, root_branch, BranchIndex};
pub use digamma::{digamma, EULER_GAMMA};
pub use gamma::{gamma, gamma_ratio, ln_gamma, sin_pi};
pub use hypergeometric::{pfq, PfqSum};
pub use lambert::{lambert_w, LAMBERT_MAX_ITER};
