use std::f64::consts::{E, TAU};

use num_complex::Complex64;

use crate::engine::{
    damped_root, lagrange_series_for, newton, BranchSpec, Equation, RootField, RootRecord, Solution, Term,
    TermFunction,
};
use crate::error::{Error, Result};
use crate::specialfn::lambert_w;

/// Which expansion covers `|t|` for the principal root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambertRegion {
    /// `|t| > e`: expand on `z` in every branch.
    Large,
    /// `|t| < 1/e`: the principal root expands on `log z`.
    Small,
    /// `1/e <= |t| <= e`: the principal root needs damping.
    Middle,
}

impl LambertRegion {
    pub fn of(t: Complex64) -> Self {
        let a = t.norm();
        if a > E {
            LambertRegion::Large
        } else if a < 1.0 / E {
            LambertRegion::Small
        } else {
            LambertRegion::Middle
        }
    }
}

/// `log z + m z - zeta = 0` with `zeta = Log t + 2 pi i k`; term 1 is `m z`, term 2 is `log z`.
pub fn log_form(t: Complex64, k: i64, m: f64) -> Result<Equation> {
    let zeta = t.ln() + Complex64::new(0.0, TAU * k as f64);
    Equation::new(
        vec![
            Term::new(Complex64::new(m, 0.0), TermFunction::Power(Complex64::new(1.0, 0.0))),
            Term::new(Complex64::new(1.0, 0.0), TermFunction::Log),
        ],
        -zeta,
    )
}

/// `z e^z / t - 1`, scaled so the stopping test is independent of `|t|`.
fn residual_form(t: Complex64) -> impl Fn(Complex64) -> Result<(Complex64, Complex64)> {
    move |z: Complex64| {
        let e = z.exp();
        Ok((z * e / t - 1.0, e * (z + 1.0) / t))
    }
}

/// Seed for the principal root when `1/e <= |t| <= e`, from the damped
/// `log z` expansion of `log z + z = Log t`.
fn damped_seed(t: Complex64, terms: usize) -> Result<(Complex64, usize)> {
    let eq = log_form(t, 0, 1.0)?;
    let r = damped_root(&eq, BranchSpec::new(2, 1, 0), terms, 1e-13)?;
    Ok((r.z, r.series_terms))
}

/// Roots of `z e^z = t` on branches `k_range`, one per branch.
///
/// Each root is refined on `z e^z - t` and kept only if it matches
/// `W_k(t)`.
pub fn zexpz_solve(t: Complex64, k_range: (i64, i64), terms: usize) -> Result<Solution> {
    if t == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidInput("z e^z = t needs t != 0".into()));
    }
    let region = LambertRegion::of(t);
    let mut out = Solution {
        field: RootField::default(),
        diagnostics: Vec::new(),
        unrescued: 0,
    };
    let f = residual_form(t);
    for k in k_range.0..=k_range.1 {
        // term 1 (z) for every k != 0 and for large |t|; term 2 (log z) otherwise
        let (seed, used, converged, branch) = match (k, region) {
            (0, LambertRegion::Small) => {
                let eq = log_form(t, 0, 1.0)?;
                let s = lagrange_series_for(&eq, BranchSpec::new(2, 1, 0), terms)?;
                (if s.converged { s.sum } else { s.optimal }, s.terms_used(), s.converged, BranchSpec::new(2, 1, k))
            }
            (0, LambertRegion::Middle) => match damped_seed(t, terms) {
                Ok((z, used)) => (z, used, false, BranchSpec::new(2, 1, k)),
                Err(e) => {
                    out.unrescued += 1;
                    out.diagnostics.push(format!("k=0: {e}"));
                    continue;
                }
            },
            _ => {
                let eq = log_form(t, k, 1.0)?;
                match lagrange_series_for(&eq, BranchSpec::new(1, 1, 0), terms) {
                    Ok(s) => (if s.converged { s.sum } else { s.optimal }, s.terms_used(), s.converged, BranchSpec::new(1, 1, k)),
                    Err(e) => {
                        out.diagnostics.push(format!("k={k}: {e}"));
                        continue;
                    }
                }
            }
        };
        let refined = match newton(&f, seed, 1e-14, 100, Some(0.5)) {
            Ok(n) => n,
            Err(e) => {
                out.unrescued += usize::from(!converged);
                out.diagnostics.push(format!("k={k}: refinement failed: {e}"));
                continue;
            }
        };
        let reference = lambert_w(k, t)?;
        if (refined.z - reference).norm() > 1e-10 * reference.norm().max(1.0) {
            out.diagnostics.push(format!("k={k}: root {} is not W_{k}(t) = {reference}", refined.z));
            continue;
        }
        out.field.insert(RootRecord {
            z: refined.z,
            branches: vec![branch],
            residual: (refined.z * refined.z.exp() - t).norm(),
            series_terms: used,
            refined: true,
            converged,
        });
    }
    Ok(out)
}
