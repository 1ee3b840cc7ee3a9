//! Trinomials `x^r2 + m1 x^r1 + t = 0` and the family `x^n - x + t = 0`.
//!
//! For trinomials every series term has a closed Gamma-ratio form, so no jet
//! arithmetic is needed. `x^n - x + t` additionally has a power series in `t`
//! for each root and a decomposition of that series into `n - 1`
//! generalized hypergeometric functions; the quintic case is assembled from
//! four `4F3` functions.

mod quintic;
mod xn;

pub use quintic::quintic_bring_jerrard;
pub use xn::{xn_hypergeometric_root, xn_origin_root, xn_series_root, SeriesValue};

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::engine::{
    newton, BranchSpec, Equation, RootField, RootRecord, Solution, Term, TermFunction, BASIN_RADIUS, DEDUP_TOL,
    OVERFLOW_LIMIT, TAIL_TOL,
};
use crate::error::{Error, Result};
use crate::{is_finite, unsigned_zero};
use crate::specialfn::{gamma_ratio, root_branch};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Windings used for non-integer exponents when the caller gives none.
pub const DEFAULT_WINDINGS: std::ops::RangeInclusive<i64> = -2..=2;

/// `x^r2 + m1 x^r1 + t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrinomialSpec {
    pub r1: Complex64,
    pub r2: Complex64,
    pub m1: Complex64,
    pub t: Complex64,
}

/// Which term the series is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subfield {
    /// Expand on `m1 x^r1`.
    L1,
    /// Expand on `x^r2`.
    L2,
}

impl TrinomialSpec {
    pub fn new(r1: Complex64, r2: Complex64, m1: Complex64, t: Complex64) -> Result<Self> {
        if r1 == ZERO || r2 == ZERO || r1 == r2 {
            return Err(Error::InvalidInput("exponents must be distinct and nonzero".into()));
        }
        if m1 == ZERO || t == ZERO {
            return Err(Error::InvalidInput("m1 and t must be nonzero".into()));
        }
        if ![r1, r2, m1, t].iter().all(|v| is_finite(*v)) {
            return Err(Error::InvalidInput("non-finite trinomial parameter".into()));
        }
        Ok(Self { r1, r2, m1, t })
    }

    pub fn real(r1: f64, r2: f64, m1: f64, t: f64) -> Result<Self> {
        let c = |v| Complex64::new(v, 0.0);
        Self::new(c(r1), c(r2), c(m1), c(t))
    }

    /// The trinomial as a general equation: term 1 is `m1 x^r1`, term 2 is `x^r2`.
    pub fn equation(&self) -> Equation {
        Equation::new(
            vec![
                Term::new(self.m1, TermFunction::Power(self.r1)),
                Term::new(Complex64::new(1.0, 0.0), TermFunction::Power(self.r2)),
            ],
            self.t,
        )
        .expect("validated by TrinomialSpec::new")
    }

    /// `(r, r', c, center)` of the series for `which`.
    fn roles(&self, which: Subfield) -> (Complex64, Complex64, Complex64, Complex64) {
        match which {
            Subfield::L2 => (self.r2, self.r1, self.m1, unsigned_zero(-self.t)),
            Subfield::L1 => (self.r1, self.r2, self.m1.inv(), unsigned_zero(-self.t / self.m1)),
        }
    }

    fn term_index(which: Subfield) -> usize {
        match which {
            Subfield::L1 => 1,
            Subfield::L2 => 2,
        }
    }
}

fn cis(x: Complex64) -> Complex64 {
    (Complex64::new(0.0, TAU) * x).exp()
}

/// Zeroth term `e^(2 pi i s / r) z^(1/r)` of the series for `which`.
pub fn leading_term(s: i64, spec: &TrinomialSpec, which: Subfield) -> Result<Complex64> {
    let (r, _, _, z) = spec.roles(which);
    root_branch(z, r, s)
}

/// Term `j >= 1` of the series for `which`, in closed Gamma-ratio form:
///
/// `(-1)^j / j! * e^(2 pi i s/r) (e^(2 pi i s r'/r) c)^j z^((1 + j r' - j r)/r)
///  * Gamma((1 + j r')/r) / (r Gamma((1 + j r' + r - j r)/r))`.
pub fn closed_term(j: usize, s: i64, spec: &TrinomialSpec, which: Subfield) -> Result<Complex64> {
    if j == 0 {
        return Err(Error::InvalidInput("closed_term needs j >= 1".into()));
    }
    let (r, rp, c, z) = spec.roles(which);
    if z == ZERO {
        return Err(Error::domain("closed_term", z, "series center at the origin"));
    }
    let jf = j as f64;
    let s = s as f64;
    let ratio = gamma_ratio((rp * jf + 1.0) / r, (rp * jf + r - r * jf + 1.0) / r)?;
    let power = ((rp * jf - r * jf + 1.0) / r * z.ln()).exp();
    let rotation = cis(s / r) * (cis(s * rp / r) * c).powu(j as u32);
    let mut inv_fact = 1.0;
    for i in 1..=j {
        inv_fact /= i as f64;
    }
    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
    Ok(rotation * power * ratio / r * (sign * inv_fact))
}

/// Partial sums of the closed-form series for one winding.
fn series_for(spec: &TrinomialSpec, which: Subfield, s: i64, terms: usize) -> Result<(Complex64, Complex64, bool)> {
    let mut sum = leading_term(s, spec, which)?;
    let mut optimal = sum;
    let mut smallest = f64::INFINITY;
    let mut last = [f64::INFINITY; 2];
    for j in 1..=terms {
        let term = closed_term(j, s, spec, which)?;
        if !is_finite(term) || term.norm() > OVERFLOW_LIMIT {
            return Ok((optimal, optimal, false));
        }
        if term.norm() < smallest {
            smallest = term.norm();
            optimal = sum;
        }
        sum += term;
        last = [last[1], term.norm()];
    }
    let converged = last[0].max(last[1]) < TAIL_TOL * sum.norm().max(1.0);
    Ok((sum, if converged { sum } else { optimal }, converged))
}

fn windings(r: Complex64) -> Vec<i64> {
    match TermFunction::Power(r).integer_power() {
        Some(n) => (0..n.abs()).collect(),
        None => DEFAULT_WINDINGS.collect(),
    }
}

/// Series roots of one subfield over the given windings, Newton-refined and deduplicated.
pub fn roots_with(spec: &TrinomialSpec, which: Subfield, terms: usize, windings: &[i64]) -> Solution {
    let eq = spec.equation();
    let (r, ..) = spec.roles(which);
    let mut out = Solution {
        field: RootField::new(DEDUP_TOL),
        diagnostics: Vec::new(),
        unrescued: 0,
    };
    if r.re <= 0.0 {
        out.diagnostics.push(format!("{which:?}: exponent {r} must have positive real part"));
        return out;
    }
    let k = TrinomialSpec::term_index(which);
    for &s in windings {
        let b = BranchSpec::new(k, 1, s);
        let (sum, seed, converged) = match series_for(spec, which, s, terms) {
            Ok(v) => v,
            Err(e) => {
                out.diagnostics.push(format!("{b}: {e}"));
                continue;
            }
        };
        let refined = newton(|z| eq.eval_with_derivative(z), seed, 1e-12, 100, Some(BASIN_RADIUS));
        match refined {
            Ok(n) if n.residual <= 1e-10 * n.z.norm().max(1.0) => {
                if !converged {
                    out.diagnostics.push(format!("{b}: series diverged, Newton rescued {}", n.z));
                }
                // a root of multiplicity m is only pinned to about eps^(1/m)
                let m = eq.multiplicity(n.z, 1e-6);
                let record = RootRecord {
                    z: n.z,
                    branches: vec![b],
                    residual: n.residual,
                    series_terms: terms,
                    refined: true,
                    converged,
                };
                out.field.insert_within(record, DEDUP_TOL.powf(1.0 / m as f64));
            }
            Ok(n) => out.diagnostics.push(format!("{b}: residual {:e} too large", n.residual)),
            Err(e) => {
                if !converged {
                    out.unrescued += 1;
                }
                out.diagnostics.push(format!("{b}: series sum {sum} not refined: {e}"));
            }
        }
    }
    for r in &out.field.roots {
        let m = eq.multiplicity(r.z, 1e-6);
        if m > 1 {
            out.diagnostics.push(format!("root {} has multiplicity {m}", r.z));
        }
    }
    out
}

/// Roots from the `x^r2` expansion, `s = 0..r2-1` for integer `r2`.
#[allow(non_snake_case)]
pub fn roots_L2(spec: &TrinomialSpec, terms: usize) -> Solution {
    roots_with(spec, Subfield::L2, terms, &windings(spec.r2))
}

/// Roots from the `m1 x^r1` expansion, `s = 0..r1-1` for integer `r1`.
#[allow(non_snake_case)]
pub fn roots_L1(spec: &TrinomialSpec, terms: usize) -> Solution {
    roots_with(spec, Subfield::L1, terms, &windings(spec.r1))
}
