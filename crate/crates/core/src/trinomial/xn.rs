use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::engine::TAIL_TOL;
use crate::error::{Error, Result};
use crate::specialfn::{ln_gamma, pfq};

/// A truncated series value with its tail verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub terms: usize,
    pub converged: bool,
}

fn lg(x: f64) -> f64 {
    ln_gamma(Complex64::new(x, 0.0)).expect("positive argument").re
}

fn check(n: u32, k: i64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("x^n - x + t needs n >= 2, got {n}")));
    }
    if k.unsigned_abs() > (n / 2) as u64 {
        return Err(Error::InvalidInput(format!("k = {k} outside |k| <= {}", n / 2)));
    }
    Ok(())
}

/// `omega_k = e^(-2 pi i k / (n-1))`, the root `x^n - x + t` grows from at `t = 0`.
fn omega(n: u32, k: i64) -> Complex64 {
    Complex64::from_polar(1.0, -TAU * k as f64 / (n - 1) as f64)
}

fn tail_verdict(last: [f64; 2], value: Complex64) -> bool {
    last[0].max(last[1]) < TAIL_TOL * value.norm().max(1.0)
}

/// Root of `x^n - x + t` that tends to `omega_k` as `t -> 0`:
///
/// `x_k = omega_k - t/(n-1) * sum_q (t/omega_k)^q Gamma(nq/(n-1) + 1)
///        / (Gamma(q/(n-1) + 1) Gamma(q + 2))`, summed for `q = 0..=terms`.
pub fn xn_series_root(n: u32, t: Complex64, k: i64, terms: usize) -> Result<SeriesValue> {
    check(n, k)?;
    let w = omega(n, k);
    if t == Complex64::new(0.0, 0.0) {
        return Ok(SeriesValue {
            value: w,
            terms: 0,
            converged: true,
        });
    }
    let d = (n - 1) as f64;
    let u = t / w;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut last = [f64::INFINITY; 2];
    for q in 0..=terms {
        let qf = q as f64;
        let coef = (lg(n as f64 * qf / d + 1.0) - lg(qf / d + 1.0) - lg(qf + 2.0)).exp();
        let term = u.powu(q as u32) * coef;
        sum += term;
        last = [last[1], term.norm()];
    }
    let value = w - t / d * sum;
    Ok(SeriesValue {
        value,
        terms: terms + 1,
        converged: tail_verdict(last, value),
    })
}

/// Root of `x^n - x + t` that tends to `0` as `t -> 0`:
/// `x = sum_m C(nm, m) / ((n-1)m + 1) * t^((n-1)m + 1)`.
pub fn xn_origin_root(n: u32, t: Complex64, terms: usize) -> Result<SeriesValue> {
    check(n, 0)?;
    let d = (n - 1) as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut last = [f64::INFINITY; 2];
    for m in 0..=terms {
        let mf = m as f64;
        let binom = (lg(n as f64 * mf + 1.0) - lg(mf + 1.0) - lg(d * mf + 1.0)).exp();
        let term = t.powu((n - 1) * m as u32 + 1) * (binom / (d * mf + 1.0));
        sum += term;
        last = [last[1], term.norm()];
    }
    Ok(SeriesValue {
        value: sum,
        terms: terms + 1,
        converged: tail_verdict(last, sum),
    })
}

/// [`xn_series_root`] regrouped by the residue of `q` mod `n - 1` into
/// `n - 1` hypergeometric functions `nF(n-1)`.
///
/// For residue `q`, with `u = t/omega_k`, `a = nq/(n-1)`:
/// upper parameters `(a+1)/n, ..., (a+n-1)/n, 1`, lower parameters
/// `(q+2)/(n-1), ..., (q+n)/(n-1)`, argument `u^(n-1) n^n / (n-1)^(n-1)`,
/// prefactor `u^q Gamma(a+1) / (Gamma(q/(n-1)+1) Gamma(q+2))`.
pub fn xn_hypergeometric_root(n: u32, t: Complex64, k: i64) -> Result<Complex64> {
    check(n, k)?;
    let w = omega(n, k);
    if t == Complex64::new(0.0, 0.0) {
        return Ok(w);
    }
    let nf = n as f64;
    let d = (n - 1) as f64;
    let u = t / w;
    let arg = u.powu(n - 1) * (nf * nf.ln() - d * d.ln()).exp();
    if arg.norm() >= 1.0 {
        return Err(Error::Divergence(format!(
            "hypergeometric argument {arg} outside the unit disc"
        )));
    }
    let c = |x: f64| Complex64::new(x, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for q in 0..(n - 1) {
        let qf = q as f64;
        let a = nf * qf / d;
        let mut upper: Vec<Complex64> = (1..n).map(|i| c((a + i as f64) / nf)).collect();
        upper.push(c(1.0));
        let lower: Vec<Complex64> = (0..(n - 1)).map(|i| c((qf + 2.0 + i as f64) / d)).collect();
        let f = pfq(&upper, &lower, arg, 1e-17)?;
        let pre = u.powu(q) * (lg(a + 1.0) - lg(qf / d + 1.0) - lg(qf + 2.0)).exp();
        sum += pre * f.value;
    }
    Ok(w - t / d * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{aberth_roots, poly_eval};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn xn_poly(n: u32, t: f64) -> Vec<Complex64> {
        let mut p = vec![c(0.0); n as usize + 1];
        p[0] = c(t);
        p[1] = c(-1.0);
        p[n as usize] = c(1.0);
        p
    }

    #[test]
    fn t_zero_is_unit_root() {
        for k in -2..=2 {
            let v = xn_series_root(5, c(0.0), k, 30).unwrap();
            assert_eq!(v.value, omega(5, k));
            assert_eq!(xn_hypergeometric_root(5, c(0.0), k).unwrap(), omega(5, k));
        }
    }

    #[test]
    fn quadratic_roots() {
        // x^2 - x + 0.2: (1 +- sqrt(0.2)) / 2
        let big = xn_series_root(2, c(0.2), 0, 200).unwrap();
        assert!((big.value - 0.7236067977499790).norm() < 1e-12, "{}", big.value);
        let small = xn_origin_root(2, c(0.2), 200).unwrap();
        assert!((small.value - 0.276393202250021).norm() < 1e-12);
        let h = xn_hypergeometric_root(2, c(0.2), 0).unwrap();
        assert!((h - 0.7236067977499790).norm() < 1e-12);
    }

    #[test]
    fn quintic_against_aberth() {
        let p = xn_poly(5, 0.1);
        let oracle = aberth_roots(&p).unwrap();
        for k in -2..=2 {
            let v = xn_series_root(5, c(0.1), k, 200).unwrap();
            assert!(v.converged);
            assert!(poly_eval(&p, v.value).0.norm() < 1e-12);
            assert!(oracle.iter().any(|z| (z - v.value).norm() < 1e-10));
            let h = xn_hypergeometric_root(5, c(0.1), k).unwrap();
            assert!((h - v.value).norm() < 1e-9, "k={k}: {h} vs {}", v.value);
        }
        let o = xn_origin_root(5, c(0.1), 200).unwrap();
        assert!(oracle.iter().any(|z| (z - o.value).norm() < 1e-12));
    }

    #[test]
    fn outside_radius_flags() {
        let v = xn_series_root(5, c(0.9), 0, 60).unwrap();
        assert!(!v.converged);
        assert!(xn_hypergeometric_root(5, c(0.9), 0).is_err());
        assert!(xn_series_root(5, c(0.1), 3, 10).is_err());
    }
}
