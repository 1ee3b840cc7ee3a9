use num_complex::Complex64;

use crate::engine::{lagrange_root, newton_refine, BranchSpec, Equation, RootField, RootRecord, Term, TermFunction};
use crate::error::Result;

use super::TRIVIAL_BRANCH;

/// `x + 5 e^-x - 5 = 0`; term 1 is `x`, term 2 is `5 e^-x`.
pub fn wien_equation() -> Equation {
    Equation::new(
        vec![
            Term::new(Complex64::new(1.0, 0.0), TermFunction::Power(Complex64::new(1.0, 0.0))),
            Term::new(Complex64::new(5.0, 0.0), TermFunction::ExpScaled(Complex64::new(-1.0, 0.0))),
        ],
        Complex64::new(-5.0, 0.0),
    )
    .expect("valid equation")
}

#[derive(Debug, Clone, PartialEq)]
pub struct WienResult {
    /// The nonzero real root.
    pub root: f64,
    pub series_terms: usize,
    pub converged: bool,
    /// `x = 0` and the series root, merged.
    pub field: RootField,
}

/// Wien's displacement equation `5 - 5 e^-x - x = 0`.
///
/// Expands on `x` around 5 with `phi(x) = 5 e^-x`, then polishes with Newton.
pub fn wien_solve() -> Result<WienResult> {
    let eq = wien_equation();
    let series = lagrange_root(&eq, BranchSpec::new(1, 1, 0), 30)?;
    let mut root = newton_refine(&eq, series.z, 1e-16, 20)?;
    root.branches = series.branches.clone();
    root.series_terms = series.series_terms;
    root.converged = series.converged;
    let mut field = RootField::default();
    field.insert(RootRecord::new(&eq, Complex64::new(0.0, 0.0), TRIVIAL_BRANCH, 0, false, true)?);
    field.insert(root.clone());
    Ok(WienResult {
        root: root.z.re,
        series_terms: series.series_terms,
        converged: series.converged,
        field,
    })
}

/// Displacement constant `b = h c / (x k_B)`; units follow the inputs.
pub fn wien_displacement_constant(planck: f64, light_speed: f64, boltzmann: f64, x: f64) -> f64 {
    planck * light_speed / (x * boltzmann)
}
