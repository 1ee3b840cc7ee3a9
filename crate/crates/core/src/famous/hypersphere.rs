use std::f64::consts::PI;

use num_complex::Complex64;

use crate::engine::{lagrange_series, newton, MAX_DAMPING};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::specialfn::digamma;

/// Lower-bound constant in `ln(x + c) - 1/x < psi(x)`.
pub const LOWER_BOUND_SHIFT: f64 = 0.5;
/// Upper-bound constant, `e^-gamma` rounded to two places as in the classic statement.
pub const UPPER_BOUND_SHIFT: f64 = 0.56;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypersphereKind {
    /// Maximise `S_n = 2 pi^(n/2) / Gamma(n/2)`.
    Surface,
    /// Maximise `V_n = pi^(n/2) / Gamma(1 + n/2)`.
    Volume,
}

impl HypersphereKind {
    /// `psi(n/2 + offset) = ln pi` locates the maximum.
    fn offset(self) -> f64 {
        match self {
            HypersphereKind::Surface => 0.0,
            HypersphereKind::Volume => 1.0,
        }
    }

    fn log_measure(self, n: f64) -> f64 {
        let half = Complex64::new(n / 2.0 + self.offset(), 0.0);
        let lg = crate::specialfn::ln_gamma(half).expect("positive argument").re;
        match self {
            HypersphereKind::Surface => 2f64.ln() + n / 2.0 * PI.ln() - lg,
            HypersphereKind::Volume => n / 2.0 * PI.ln() - lg,
        }
    }
}

/// One bound equation `ln(x/2 + offset + c) - 1/(x/2 + offset) = ln pi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRoot {
    pub shift: f64,
    /// Damped series value that seeded Newton.
    pub seed: f64,
    pub damping: u32,
    pub series_terms: usize,
    pub root: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypersphereResult {
    pub kind: HypersphereKind,
    /// Root of the `c = 1/2` bound equation.
    pub lower_bound_root: BoundRoot,
    /// Root of the `c = 0.56` bound equation.
    pub upper_bound_root: BoundRoot,
    /// Smaller of the two bound roots.
    pub lower: f64,
    /// Larger of the two bound roots.
    pub upper: f64,
    /// Root of the digamma condition itself.
    pub true_root: f64,
    /// Dimension with the largest measure.
    pub integer_answer: u32,
}

const SERIES_TERMS: usize = 40;

/// Root of `ln(u/2 + c) - 2m/u = ln pi` in `u`, by expanding on the logarithm:
/// `u = 2(e^w - c)` and `phi(w) = -m / (e^w - c)` around `w0 = ln pi`.
fn damped_series(c: f64, m: f64, terms: usize) -> Result<(f64, usize, bool)> {
    let w0 = Complex64::new(PI.ln(), 0.0);
    let shift = Complex64::new(-c, 0.0);
    let out = lagrange_series(w0, terms, |w: &Jet| {
        let y = w.exp().add_scalar(shift);
        let z = y.scale(Complex64::new(2.0, 0.0));
        let phi = y.recip()?.scale(Complex64::new(-m, 0.0));
        Ok((z, phi))
    })?;
    let v = if out.converged { out.sum } else { out.optimal };
    Ok((v.re, out.terms_used(), out.converged))
}

fn bound_root(kind: HypersphereKind, c: f64) -> Result<BoundRoot> {
    let off = 2.0 * kind.offset();
    for s in 1..=MAX_DAMPING {
        let m = (-(s as f64 + 1.0)).exp();
        let (u, used, converged) = damped_series(c, m, SERIES_TERMS)?;
        if !converged {
            continue;
        }
        let lnpi = PI.ln();
        let f = |x: Complex64| -> Result<(Complex64, Complex64)> {
            let u = x + off;
            Ok(((u / 2.0 + c).ln() - 2.0 / u - lnpi, 1.0 / (u + 2.0 * c) + 2.0 / (u * u)))
        };
        let root = newton(f, Complex64::new(u - off, 0.0), 1e-15, 100, None)?;
        return Ok(BoundRoot {
            shift: c,
            seed: u - off,
            damping: s,
            series_terms: used,
            root: root.z.re,
        });
    }
    Err(Error::Divergence(format!("bound equation c={c}: damping never converged")))
}

/// Root of `psi(n/2 + offset) = ln pi` by bisection; `psi` is increasing on the bracket.
fn digamma_root(kind: HypersphereKind) -> Result<f64> {
    let g = |n: f64| -> Result<f64> { Ok(digamma(n / 2.0 + kind.offset())? - PI.ln()) };
    let (mut lo, mut hi) = (1.0, 30.0);
    if g(lo)? >= 0.0 || g(hi)? <= 0.0 {
        return Err(Error::NoConvergence {
            method: "digamma bisection",
            iterations: 0,
        });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Dimension maximising the unit hypersphere surface area or volume.
pub fn hypersphere_max(kind: HypersphereKind) -> Result<HypersphereResult> {
    let a = bound_root(kind, LOWER_BOUND_SHIFT)?;
    let b = bound_root(kind, UPPER_BOUND_SHIFT)?;
    let true_root = digamma_root(kind)?;
    let (lo, hi) = (true_root.floor(), true_root.ceil());
    let integer_answer = if kind.log_measure(lo) >= kind.log_measure(hi) { lo } else { hi };
    Ok(HypersphereResult {
        kind,
        lower: a.root.min(b.root),
        upper: a.root.max(b.root),
        lower_bound_root: a,
        upper_bound_root: b,
        true_root,
        integer_answer: integer_answer as u32,
    })
}
