use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Index of one sheet of a multivalued inverse: winding `s` and category `q`
/// (1-based, bounded by the owning term's category count).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchIndex {
    pub q: u32,
    pub s: i64,
}

impl BranchIndex {
    pub fn new(q: u32, s: i64) -> Self {
        Self { q, s }
    }
}

fn two_pi_i(s: f64) -> Complex64 {
    Complex64::new(0.0, 2.0 * PI * s)
}

/// `Log z + 2 pi i s`.
pub fn log_branch(z: Complex64, s: i64) -> Result<Complex64> {
    if z.norm() == 0.0 {
        return Err(Error::domain("log_branch", z, "logarithm of zero"));
    }
    Ok(z.ln() + two_pi_i(s as f64))
}

/// `z^(1/r) * exp(2 pi i s / r)` with the principal fractional power.
pub fn root_branch(z: Complex64, r: Complex64, s: i64) -> Result<Complex64> {
    if z.norm() == 0.0 {
        return Err(Error::domain("root_branch", z, "root of zero"));
    }
    if r.norm() == 0.0 {
        return Err(Error::InvalidInput("root_branch: zero exponent".into()));
    }
    Ok((z.ln() / r).exp() * (two_pi_i(s as f64) / r).exp())
}

fn check_category(q: u32, function: &'static str) -> Result<()> {
    if q == 1 || q == 2 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{function}: category {q} not in 1..=2")))
    }
}

/// `q = 1`: `asin z + 2 pi s`; `q = 2`: `pi - asin z + 2 pi s`.
pub fn arcsin_branch(z: Complex64, q: u32, s: i64) -> Result<Complex64> {
    check_category(q, "arcsin_branch")?;
    let base = z.asin();
    let shift = 2.0 * PI * s as f64;
    Ok(if q == 1 { base + shift } else { PI - base + shift })
}

/// `q = 1`: `acos z + 2 pi s`; `q = 2`: `-acos z + 2 pi s`.
pub fn arccos_branch(z: Complex64, q: u32, s: i64) -> Result<Complex64> {
    check_category(q, "arccos_branch")?;
    let base = z.acos();
    let shift = 2.0 * PI * s as f64;
    Ok(if q == 1 { base + shift } else { -base + shift })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn examples() {
        assert!((log_branch(c(1.0, 0.0), 1).unwrap() - c(0.0, 2.0 * PI)).norm() < 1e-15);
        let r = root_branch(c(-7.0, 0.0), c(7.0, 0.0), 0).unwrap();
        assert!((r - c(-7.0, 0.0).powf(1.0 / 7.0)).norm() < 1e-15);
        assert!((r.powi(7) + 7.0).norm() < 1e-13);
        let a = arcsin_branch(c(0.3, 0.0), 2, 0).unwrap();
        assert!((a.re - (PI - 0.304_692_654_015_397_5)).abs() < 1e-15);
        assert!(log_branch(c(0.0, 0.0), 0).is_err());
        assert!(root_branch(c(0.0, 0.0), c(2.0, 0.0), 0).is_err());
        assert!(arcsin_branch(c(0.1, 0.0), 3, 0).is_err());
    }

    proptest! {
        #[test]
        fn right_inverses(re in -5.0..5.0f64, im in -5.0..5.0f64, s in -4i64..4, q in 1u32..=2,
                          rr in 1.0..9.0f64, ri in -2.0..2.0f64) {
            let z = c(re, im);
            prop_assume!(z.norm() > 1e-3);
            let scale = z.norm().max(1.0);
            prop_assert!((log_branch(z, s).unwrap().exp() - z).norm() <= 1e-12 * scale);
            prop_assert!((arcsin_branch(z, q, s).unwrap().sin() - z).norm() <= 1e-12 * scale);
            prop_assert!((arccos_branch(z, q, s).unwrap().cos() - z).norm() <= 1e-12 * scale);
            let r = c(rr, ri);
            let root = root_branch(z, r, s).unwrap();
            // (root)^r on the same sheet: exp(r * (Log z / r + 2 pi i s / r)) = z
            let back = (r * (z.ln() / r + c(0.0, 2.0 * PI * s as f64) / r)).exp();
            prop_assert!((back - z).norm() <= 1e-12 * scale);
            let ln_root = z.ln() / r + c(0.0, 2.0 * PI * s as f64) / r;
            prop_assert!((ln_root.exp() - root).norm() <= 1e-12 * root.norm().max(1.0));
        }
    }
}
