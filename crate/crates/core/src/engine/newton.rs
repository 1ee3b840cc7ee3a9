use num_complex::Complex64;

use super::equation::Equation;
use super::root::RootRecord;
use crate::error::{Error, Result};
use crate::is_finite;

/// Largest allowed move, relative to `max(1, |z0|)`.
pub const BASIN_RADIUS: f64 = 0.5;

const POLISH_STEPS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOutcome {
    pub z: Complex64,
    pub iterations: usize,
    /// `|f(z)|` at the returned point.
    pub residual: f64,
}

/// Newton's method on `f`, which returns `(f(z), f'(z))`.
///
/// Stops once `|f(z)| <= tol * max(1, |z|)`, then takes a few polishing
/// steps while they keep shrinking the residual. With `basin` set, any
/// iterate farther than `basin * max(1, |z0|)` from `z0` is an error.
pub fn newton<F>(f: F, z0: Complex64, tol: f64, max_iter: usize, basin: Option<f64>) -> Result<NewtonOutcome>
where
    F: Fn(Complex64) -> Result<(Complex64, Complex64)>,
{
    let reach = basin.map(|b| b * z0.norm().max(1.0));
    let mut z = z0;
    let (mut fz, mut dfz) = f(z)?;
    let mut iterations = 0;
    while fz.norm() > tol * z.norm().max(1.0) {
        if iterations == max_iter {
            return Err(Error::NoConvergence {
                method: "newton",
                iterations,
            });
        }
        if dfz.norm() < 1e-300 || !is_finite(fz / dfz) {
            return Err(Error::DerivativeUnderflow { at: z });
        }
        z -= fz / dfz;
        iterations += 1;
        if let Some(r) = reach {
            if (z - z0).norm() > r {
                return Err(Error::BasinEscape { from: z0, to: z });
            }
        }
        (fz, dfz) = f(z)?;
    }
    if iterations > 0 {
        for _ in 0..POLISH_STEPS {
            if dfz.norm() < 1e-300 {
                break;
            }
            let next = z - fz / dfz;
            let Ok((fn_, dfn)) = f(next) else { break };
            if !(fn_.norm() < fz.norm()) {
                break;
            }
            z = next;
            fz = fn_;
            dfz = dfn;
        }
    }
    Ok(NewtonOutcome {
        z,
        iterations,
        residual: fz.norm(),
    })
}

/// Newton refinement of `sigma` from `z0`, guarded against basin escape.
pub fn newton_refine(eq: &Equation, z0: Complex64, tol: f64, max_iter: usize) -> Result<RootRecord> {
    let out = newton_iterations(eq, z0, tol, max_iter)?;
    Ok(RootRecord {
        z: out.z,
        branches: Vec::new(),
        residual: out.residual,
        series_terms: 0,
        refined: true,
        converged: false,
    })
}

pub(crate) fn newton_iterations(eq: &Equation, z0: Complex64, tol: f64, max_iter: usize) -> Result<NewtonOutcome> {
    newton(|z| eq.eval_with_derivative(z), z0, tol, max_iter, Some(BASIN_RADIUS))
}
