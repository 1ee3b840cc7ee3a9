use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specialfn::pfq;

fn f43(upper: [f64; 4], lower: [f64; 3], z: Complex64) -> Result<Complex64> {
    let c = |x: f64| Complex64::new(x, 0.0);
    Ok(pfq(&upper.map(c), &lower.map(c), z, 1e-17)?.value)
}

/// The five roots of `x^5 - x + t` from four `4F3` functions of `3125 t^4 / 256`.
///
/// With `omega` running over `1, -1, i, -i`:
///
/// * `x_1 = t F2`
/// * `x = omega F1 - t F2 / 4 - 5 t^2 F3 / (32 omega) - 5 t^3 F4 / (32 omega^2)`
///
/// where
/// `F1 = 4F3(-1/20, 3/20, 7/20, 11/20; 1/4, 1/2, 3/4)`,
/// `F2 = 4F3(1/5, 2/5, 3/5, 4/5; 1/2, 3/4, 5/4)`,
/// `F3 = 4F3(9/20, 13/20, 17/20, 21/20; 3/4, 5/4, 3/2)`,
/// `F4 = 4F3(7/10, 9/10, 11/10, 13/10; 5/4, 3/2, 7/4)`.
pub fn quintic_bring_jerrard(t: Complex64) -> Result<[Complex64; 5]> {
    let z = t.powu(4) * (3125.0 / 256.0);
    if z.norm() >= 1.0 {
        return Err(Error::domain("quintic_bring_jerrard", t, "|3125 t^4 / 256| must be below 1"));
    }
    let f1 = f43([-0.05, 0.15, 0.35, 0.55], [0.25, 0.5, 0.75], z)?;
    let f2 = f43([0.2, 0.4, 0.6, 0.8], [0.5, 0.75, 1.25], z)?;
    let f3 = f43([0.45, 0.65, 0.85, 1.05], [0.75, 1.25, 1.5], z)?;
    let f4 = f43([0.7, 0.9, 1.1, 1.3], [1.25, 1.5, 1.75], z)?;
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let mut roots = [t * f2; 5];
    for (slot, w) in roots[1..].iter_mut().zip([one, -one, i, -i]) {
        *slot = w * f1 - t * f2 / 4.0 - t * t * f3 * 5.0 / (w * 32.0) - t.powu(3) * f4 * 5.0 / (w * w * 32.0);
    }
    for &x in &roots {
        let residual = (x.powu(5) - x + t).norm();
        if residual > 1e-9 {
            return Err(Error::Divergence(format!("quintic root {x} has residual {residual:e}")));
        }
    }
    Ok(roots)
}
