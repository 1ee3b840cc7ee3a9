use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 500;

/// Horner evaluation of `p` and `p'`, coefficients in ascending degree.
pub fn poly_eval(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Ascending coefficients of the monic polynomial with the given roots.
pub fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, &a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r;
        }
        c = next;
    }
    c
}

/// All roots of a polynomial (ascending coefficients) by Aberth–Ehrlich iteration.
///
/// Starts from a fixed, slightly rotated circle so results are reproducible.
/// Zero roots are split off exactly before iterating.
pub fn aberth_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last() == Some(&zero) {
        c.pop();
    }
    if c.len() < 2 {
        return Err(Error::InvalidInput("polynomial degree must be at least 1".into()));
    }
    if c.iter().any(|a| !(a.re.is_finite() && a.im.is_finite())) {
        return Err(Error::InvalidInput("non-finite polynomial coefficient".into()));
    }
    let zeros = c.iter().take_while(|a| **a == zero).count();
    let c = c.split_off(zeros);
    let mut roots = vec![zero; zeros];
    let n = c.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    let lead = c[n];
    let radius = (c[0] / lead).norm().powf(1.0 / n as f64);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4 / n as f64 + 0.1))
        .collect();

    let mut done = false;
    for _ in 0..MAX_SWEEPS {
        let mut biggest: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = poly_eval(&c, z[k]);
            if p == zero {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
                biggest = biggest.max(step.norm() / z[k].norm().max(1e-300));
            }
        }
        if biggest < 1e-15 {
            done = true;
            break;
        }
    }
    // Newton polish; Aberth has already separated the roots
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = poly_eval(&c, *zk);
            if dp == zero {
                break;
            }
            let next = *zk - p / dp;
            if poly_eval(&c, next).0.norm() < p.norm() {
                *zk = next;
            } else {
                break;
            }
        }
    }
    let norm: f64 = c.iter().map(|a| a.norm()).sum();
    let all_small = z
        .iter()
        .all(|&zk| poly_eval(&c, zk).0.norm() <= 1e-12 * norm * zk.norm().max(1.0).powi(n as i32));
    if !done && !all_small {
        return Err(Error::NoConvergence {
            method: "aberth",
            iterations: MAX_SWEEPS,
        });
    }
    roots.extend(z);
    Ok(roots)
}
