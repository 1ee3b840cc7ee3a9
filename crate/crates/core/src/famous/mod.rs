//! Dedicated solvers for classic equation families.

use crate::engine::BranchSpec;

/// Branch tag for roots known in closed form rather than from a series.
pub const TRIVIAL_BRANCH: BranchSpec = BranchSpec {
    k: 0,
    q: 0,
    s: 0,
    reciprocal: false,
};

mod dde;
mod hypersphere;
mod kepler;
mod lambert;
mod powerpq;
mod registry;
mod selfpower;
mod tanw;
mod wien;

pub use dde::{dde_char_roots, DdeCharSpec, DdeResult, DDE_RESIDUAL, NEUTRAL_CHAIN_CATEGORY};
pub use hypersphere::{
    hypersphere_max, BoundRoot, HypersphereKind, HypersphereResult, LOWER_BOUND_SHIFT, UPPER_BOUND_SHIFT,
};
pub use kepler::{kepler_arcsin_field, kepler_series_term, kepler_solve, KeplerResult, KeplerSpec};
pub use lambert::{log_form, zexpz_solve, LambertRegion};
pub use selfpower::{selfpower_equation, selfpower_solve, SELFPOWER_RESIDUAL};
pub use powerpq::{power_pq_equation, power_pq_solve, winding_half_width};
pub use tanw::{tan_equation, tan_solve};
pub use wien::{wien_displacement_constant, wien_equation, wien_solve, WienResult};
pub use registry::{
    FamousReport, FamousSolver, ReferenceCheck, ParamSpec, Params, Registry, JUPITER_ECCENTRICITY, JUPITER_MEAN_ANOMALY,
};
