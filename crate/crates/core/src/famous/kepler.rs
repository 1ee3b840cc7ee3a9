use num_complex::Complex64;

use crate::engine::{
    newton, solve_branches, BranchSpec, Equation, SolveOptions, Solution, Term, TermFunction, TAIL_TOL,
};
use crate::error::{Error, Result};
use crate::specialfn::ln_gamma;

/// `M = E - e sin E`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeplerSpec {
    /// Mean anomaly in radians.
    pub mean_anomaly: f64,
    pub eccentricity: f64,
}

impl KeplerSpec {
    pub fn new(mean_anomaly: f64, eccentricity: f64) -> Result<Self> {
        if !mean_anomaly.is_finite() || !eccentricity.is_finite() {
            return Err(Error::NonFinite("Kepler parameters"));
        }
        Ok(Self {
            mean_anomaly,
            eccentricity,
        })
    }

    /// `E - e sin E - M = 0` as an engine equation; term 1 is `E`, term 2 is `-e sin E`.
    pub fn equation(&self) -> Result<Equation> {
        Equation::new(
            vec![
                Term::new(Complex64::new(1.0, 0.0), TermFunction::Power(Complex64::new(1.0, 0.0))),
                Term::new(Complex64::new(-self.eccentricity, 0.0), TermFunction::Sin),
            ],
            Complex64::new(-self.mean_anomaly, 0.0),
        )
    }

    pub fn residual(&self, e_anomaly: f64) -> f64 {
        (e_anomaly - self.eccentricity * e_anomaly.sin() - self.mean_anomaly).abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeplerResult {
    /// Eccentric anomaly after refinement.
    pub eccentric_anomaly: f64,
    /// Truncated series value before refinement.
    pub series: f64,
    pub terms: usize,
    /// Tail test verdict; always false for `|e| >= 1`.
    pub converged: bool,
    pub residual: f64,
}

fn ln_factorial(n: usize) -> f64 {
    ln_gamma(Complex64::new(n as f64 + 1.0, 0.0)).expect("positive argument").re
}

/// `e^i / i! * d^(i-1)/dM^(i-1) sin^i(M)` from the power-reduction formulas:
/// `2 (e/2)^i / i! * sum_k (-1)^k C(i,k) (i-2k)^(i-1) sin((i-2k) M)` over `i - 2k > 0`.
pub fn kepler_series_term(i: usize, m: f64, e: f64) -> f64 {
    if e == 0.0 {
        return 0.0;
    }
    let sign = if e < 0.0 && i % 2 == 1 { -1.0 } else { 1.0 };
    let base = 2f64.ln() + i as f64 * (e.abs() / 2.0).ln() - ln_factorial(i);
    let mut sum = 0.0;
    for k in 0..=(i - 1) / 2 {
        let a = (i - 2 * k) as f64;
        let ln_binom = ln_factorial(i) - ln_factorial(k) - ln_factorial(i - k);
        let mag = (base + ln_binom + (i - 1) as f64 * a.ln()).exp();
        let alt = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += alt * mag * (a * m).sin();
    }
    sign * sum
}

/// Eccentric anomaly from the closed-form series around `E = M`, refined by Newton.
///
/// The series only converges for small eccentricities; when the tail test
/// fails the smallest-term partial sum seeds Newton, and if that stalls the
/// start `M + 0.85 e sign(sin M)` is used instead.
pub fn kepler_solve(spec: KeplerSpec, terms: usize) -> Result<KeplerResult> {
    if terms == 0 {
        return Err(Error::InvalidInput("series needs at least one term".into()));
    }
    let (m, e) = (spec.mean_anomaly, spec.eccentricity);
    let mut sum = m;
    let mut optimal = m;
    let mut smallest = f64::INFINITY;
    let mut last = [f64::INFINITY; 2];
    for i in 1..=terms {
        let t = kepler_series_term(i, m, e);
        if !t.is_finite() {
            break;
        }
        if t.abs() < smallest {
            smallest = t.abs();
            optimal = sum;
        }
        sum += t;
        last = [last[1], t.abs()];
    }
    let converged = e.abs() < 1.0 && last[0].max(last[1]) < TAIL_TOL * sum.abs().max(1.0);
    let seed = if converged { sum } else { optimal };
    let f = |x: Complex64| Ok((x - e * x.sin() - m, 1.0 - e * x.cos()));
    let refined = match newton(f, Complex64::new(seed, 0.0), 1e-14, 100, None) {
        Ok(n) if n.z.im.abs() < 1e-12 => n,
        _ => {
            let start = m + 0.85 * e * m.sin().signum();
            newton(f, Complex64::new(start, 0.0), 1e-14, 200, None)?
        }
    };
    let mut x = refined.z.re;
    // Newton stops at a relative residual; finish on the absolute one
    for _ in 0..3 {
        let d = (x - e * x.sin() - m) / (1.0 - e * x.cos());
        if !d.is_finite() || d == 0.0 {
            break;
        }
        x -= d;
    }
    Ok(KeplerResult {
        eccentric_anomaly: x,
        series: if converged { sum } else { optimal },
        terms,
        converged,
        residual: spec.residual(x),
    })
}

/// Roots from inverting the sine term on both arcsine families and windings `k_range`.
pub fn kepler_arcsin_field(spec: KeplerSpec, k_range: (i64, i64), terms: usize) -> Result<Solution> {
    if spec.eccentricity == 0.0 {
        return Err(Error::InvalidInput("the arcsine field needs e != 0".into()));
    }
    let eq = spec.equation()?;
    let branches: Vec<BranchSpec> = (1..=2)
        .flat_map(|q| (k_range.0..=k_range.1).map(move |s| BranchSpec::new(2, q, s)))
        .collect();
    let opts = SolveOptions {
        terms,
        tol: 1e-12,
        ..Default::default()
    };
    Ok(solve_branches(&eq, &branches, &opts))
}
