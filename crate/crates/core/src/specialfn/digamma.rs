use num_complex::Complex64;

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Digamma on the positive real axis.
///
/// Shifts the argument above 10 with `psi(x) = psi(x + 1) - 1/x`, then uses the
/// asymptotic expansion.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("digamma", Complex64::new(x, 0.0), "x must be positive"));
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Bernoulli tail: B_{2k} / (2k x^{2k})
    let tail = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * 691.0 / 32760.0)))));
    Ok(acc + x.ln() - 0.5 / x - tail)
}
