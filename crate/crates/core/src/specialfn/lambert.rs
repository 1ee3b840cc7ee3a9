use std::f64::consts::{E, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const LAMBERT_MAX_ITER: usize = 100;

fn halley(t: Complex64, mut w: Complex64) -> Option<Complex64> {
    for _ in 0..LAMBERT_MAX_ITER {
        let ew = w.exp();
        let f = w * ew - t;
        let wp1 = w + 1.0;
        if wp1.norm() < 1e-300 {
            return Some(w);
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        if !(step.re.is_finite() && step.im.is_finite()) {
            return None;
        }
        w -= step;
        if step.norm() <= 4.0 * f64::EPSILON * (1.0 + w.norm()) {
            return Some(w);
        }
    }
    None
}

/// Branch that `w` lands on, read off `log w + w - log t = 2 pi i k`.
fn branch_of(w: Complex64, t: Complex64) -> Option<i64> {
    if w.norm() == 0.0 {
        return Some(0);
    }
    let k = (w.ln() + w - t.ln()).im / (2.0 * PI);
    let r = k.round();
    ((k - r).abs() < 1e-6).then_some(r as i64)
}

fn seeds(k: i64, t: Complex64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(4);
    let near_branch_point = (t + 1.0 / E).norm() < 0.3;
    let p = (2.0 * (E * t + 1.0)).sqrt();
    if near_branch_point {
        match k {
            0 => out.push(-1.0 + p - p * p / 3.0),
            -1 | 1 => out.push(-1.0 - p - p * p / 3.0),
            _ => {}
        }
    }
    if k == 0 && t.norm() < 0.5 {
        out.push(t - t * t + 1.5 * t * t * t);
    }
    let l1 = t.ln() + Complex64::new(0.0, 2.0 * PI * k as f64);
    if l1.norm() > 0.0 {
        let l2 = l1.ln();
        out.push(l1 - l2 + l2 / l1);
        out.push(l1 - l2);
    }
    if k == 0 {
        out.push((1.0 + t).ln());
        out.push(Complex64::new(0.5, 0.0));
    } else {
        // off-axis guesses for the lower branches
        out.push(Complex64::new(-1.0, 2.0 * PI * k as f64 - (k.signum() as f64) * PI / 2.0));
    }
    out
}

/// Lambert W on branch `k`: `w * exp(w) = t`, Halley iteration from a
/// branch-aware seed. Branch membership is confirmed through
/// `log w + w = log t + 2 pi i k` with principal logarithms.
pub fn lambert_w(k: i64, t: Complex64) -> Result<Complex64> {
    if !(t.re.is_finite() && t.im.is_finite()) {
        return Err(Error::NonFinite("lambert_w"));
    }
    if t.norm() == 0.0 {
        return if k == 0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::domain("lambert_w", t, "t = 0 only lies on branch 0"))
        };
    }
    if (t + 1.0 / E).norm() < 1e-15 && (k == 0 || (k == -1 && t.im == 0.0)) {
        return Ok(Complex64::new(-1.0, 0.0));
    }
    // Real t in (-1/e, 0): W_0 and W_{-1} both real; the log test cannot tell
    // the sheets apart there, so use the real-branch convention.
    if t.im == 0.0 && t.re < 0.0 && t.re > -1.0 / E && (k == 0 || k == -1) {
        let seed = if k == 0 { Complex64::new(-0.5, 0.0) } else { Complex64::new(-3.0, 0.0) };
        let mut w = halley(t, seed).ok_or(Error::NoConvergence {
            method: "lambert_w",
            iterations: LAMBERT_MAX_ITER,
        })?;
        w.im = 0.0;
        return Ok(w);
    }
    let mut fallback = None;
    for seed in seeds(k, t) {
        if let Some(w) = halley(t, seed) {
            if branch_of(w, t) == Some(k) {
                return Ok(w);
            }
            fallback.get_or_insert(w);
        }
    }
    fallback.ok_or(Error::NoConvergence {
        method: "lambert_w",
        iterations: LAMBERT_MAX_ITER,
    })
}
