use num_complex::Complex64;

use super::equation::{Equation, Term};
use super::lagrange::lagrange_series_for;
use super::newton::newton_iterations;
use super::root::{BranchSpec, RootRecord};
use crate::error::{Error, Result};

/// Largest damping exponent `s` in `mu = e^-(s+1)`.
pub const MAX_DAMPING: u32 = 8;

/// Peak phase of the continuation path in the `mu` plane.
pub const DAMPING_BOW: f64 = 0.5;

const MIN_STEPS: usize = 32;
const MAX_STEPS: usize = 1024;

/// `eq` with every coefficient except term `k`'s multiplied by `mu`.
pub fn damped_equation(eq: &Equation, k: usize, mu: Complex64) -> Result<Equation> {
    let terms = eq
        .terms()
        .iter()
        .enumerate()
        .map(|(i, t)| if i + 1 == k { *t } else { Term::new(t.coef * mu, t.func) })
        .collect();
    Equation::new(terms, eq.constant())
}

fn continue_to_one(eq: &Equation, k: usize, mu0: f64, z0: Complex64, steps: usize, tol: f64) -> Result<Complex64> {
    let mut z = z0;
    for i in 1..=steps {
        let tau = i as f64 / steps as f64;
        let mu = Complex64::from_polar(mu0.powf(1.0 - tau), DAMPING_BOW * (std::f64::consts::PI * tau).sin());
        let damped = damped_equation(eq, k, mu)?;
        z = newton_iterations(&damped, z, tol, 100)?.z;
    }
    Ok(z)
}

/// Root on branch `b` when the plain series diverges.
///
/// The other terms are scaled by `mu = e^-(s+1)` for `s = 1, 2, ...` until
/// the damped series passes its tail test; the root is then followed back to
/// `mu = 1` by Newton continuation along `mu0^(1-tau) e^(i b sin(pi tau))`
/// with `b = DAMPING_BOW`, doubling the step count whenever a step fails.
/// Leaving the real axis keeps conjugate starts from merging where real
/// roots collide. The record is refined but not converged.
pub fn damped_root(eq: &Equation, b: BranchSpec, terms: usize, tol: f64) -> Result<RootRecord> {
    for s in 1..=MAX_DAMPING {
        let mu0 = (-(s as f64 + 1.0)).exp();
        let damped = damped_equation(eq, b.k, Complex64::new(mu0, 0.0))?;
        let series = lagrange_series_for(&damped, b, terms)?;
        if !series.converged {
            continue;
        }
        let mut steps = MIN_STEPS;
        let z = loop {
            match continue_to_one(eq, b.k, mu0, series.sum, steps, tol) {
                Ok(z) => break z,
                Err(e) if steps >= MAX_STEPS => return Err(e),
                Err(_) => steps *= 2,
            }
        };
        let n = newton_iterations(eq, z, tol, 100)?;
        return RootRecord::new(eq, n.z, b, series.terms_used(), true, false);
    }
    Err(Error::Divergence(format!("{b}: damping up to s={MAX_DAMPING} never converged")))
}
