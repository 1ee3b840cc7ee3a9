use num_complex::Complex64;

use crate::engine::{newton, Equation};
use crate::error::{Error, Result};

/// Closed axis-aligned rectangle in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rectangle {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rectangle {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        if !(re_min < re_max && im_min < im_max) {
            return Err(Error::InvalidInput(format!(
                "empty rectangle [{re_min}, {re_max}] x [{im_min}, {im_max}]"
            )));
        }
        Ok(Self {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (self.re_min..=self.re_max).contains(&z.re) && (self.im_min..=self.im_max).contains(&z.im)
    }

    /// Grid node `(i, j)` of an `nx` by `ny` lattice covering the rectangle.
    pub fn node(&self, i: usize, j: usize, nx: usize, ny: usize) -> Complex64 {
        let fx = i as f64 / (nx - 1) as f64;
        let fy = j as f64 / (ny - 1) as f64;
        Complex64::new(
            self.re_min + fx * (self.re_max - self.re_min),
            self.im_min + fy * (self.im_max - self.im_min),
        )
    }

    /// Splits at `re = cut`.
    pub fn split_re(&self, cut: f64) -> Result<(Rectangle, Rectangle)> {
        Ok((
            Rectangle::new(self.re_min, cut, self.im_min, self.im_max)?,
            Rectangle::new(cut, self.re_max, self.im_min, self.im_max)?,
        ))
    }
}

pub(crate) fn sort_points(v: &mut [Complex64]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Newton from every node of an `nx` by `ny` grid; returns distinct roots
/// inside `region`, merged at `1e-7 * max(1, |z|)`, sorted by position.
pub fn grid_newton_scan_fn<F>(f: F, region: Rectangle, nx: usize, ny: usize, tol: f64) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<(Complex64, Complex64)>,
{
    if nx < 4 || ny < 4 {
        return Err(Error::InvalidInput(format!("grid must be at least 4x4, got {nx}x{ny}")));
    }
    let mut found: Vec<Complex64> = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let Ok(out) = newton(&f, region.node(i, j, nx, ny), tol, 100, None) else {
                continue;
            };
            let z = out.z;
            if !region.contains(z) {
                continue;
            }
            if !found.iter().any(|r| (r - z).norm() <= 1e-7 * z.norm().max(1.0)) {
                found.push(z);
            }
        }
    }
    sort_points(&mut found);
    Ok(found)
}

pub fn grid_newton_scan(eq: &Equation, region: Rectangle, nx: usize, ny: usize, tol: f64) -> Result<Vec<Complex64>> {
    grid_newton_scan_fn(|z| eq.eval_with_derivative(z), region, nx, ny, tol)
}
