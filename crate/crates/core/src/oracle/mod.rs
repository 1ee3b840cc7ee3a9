//! Reference root finders that share no code path with the series engine.
//!
//! Everything here is deterministic: Aberth starts from a fixed circle, grid
//! scans use fixed lattices, and contour counts use fixed sampling.

mod aberth;
mod compare;
mod contour;
mod scan;

pub use aberth::{aberth_roots, poly_eval, poly_from_roots};
pub use compare::{compare_root_sets, ComparisonReport};
pub use contour::{argument_principle_count, argument_principle_count_fn, count_zeros_fn, BOUNDARY_CLEARANCE};
pub use scan::{grid_newton_scan, grid_newton_scan_fn, Rectangle};
