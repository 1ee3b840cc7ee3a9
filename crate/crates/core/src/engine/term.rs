use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::specialfn::{arccos_branch, arcsin_branch, lambert_w, log_branch, root_branch, BranchIndex};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Lambert-W branch used by each `SelfPower` inverse category.
const SELF_POWER_BRANCHES: [i64; 3] = [0, -1, 1];

/// Catalog of term functions `p(z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TermFunction {
    /// `z^r`, principal power for non-integer `r`.
    Power(Complex64),
    /// `e^z`
    Exp,
    /// principal `log z`
    Log,
    Sin,
    Cos,
    /// `z^z = exp(z log z)`
    SelfPower,
    /// `e^(tau z)`
    ExpScaled(Complex64),
    /// `z e^(tau z)`
    ZExpScaled(Complex64),
    /// `sin z / z`; entire, no inverse in the catalog.
    Sinc,
}

impl fmt::Display for TermFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermFunction::Power(r) => write!(f, "z^({r})"),
            TermFunction::Exp => write!(f, "exp(z)"),
            TermFunction::Log => write!(f, "log(z)"),
            TermFunction::Sin => write!(f, "sin(z)"),
            TermFunction::Cos => write!(f, "cos(z)"),
            TermFunction::SelfPower => write!(f, "z^z"),
            TermFunction::ExpScaled(tau) => write!(f, "exp(({tau}) z)"),
            TermFunction::ZExpScaled(tau) => write!(f, "z exp(({tau}) z)"),
            TermFunction::Sinc => write!(f, "sin(z)/z"),
        }
    }
}

fn integer_of(r: Complex64) -> Option<i64> {
    (r.im == 0.0 && r.re == r.re.round() && r.re.abs() < 1e9).then_some(r.re as i64)
}

impl TermFunction {
    pub fn validate(&self) -> Result<()> {
        let bad = |v: Complex64| !(v.re.is_finite() && v.im.is_finite());
        match *self {
            TermFunction::Power(r) if r == ZERO => Err(Error::InvalidInput(
                "power term with exponent 0 is a constant; fold it into t".into(),
            )),
            TermFunction::Power(r) if bad(r) => Err(Error::InvalidInput("non-finite exponent".into())),
            TermFunction::ExpScaled(tau) | TermFunction::ZExpScaled(tau) if tau == ZERO || bad(tau) => {
                Err(Error::InvalidInput("exponential scale must be finite and nonzero".into()))
            }
            _ => Ok(()),
        }
    }

    /// Number of inverse categories `u_q`.
    pub fn category_count(&self) -> u32 {
        match self {
            TermFunction::Sin | TermFunction::Cos => 2,
            TermFunction::SelfPower => SELF_POWER_BRANCHES.len() as u32,
            TermFunction::Sinc => 0,
            _ => 1,
        }
    }

    /// Integer exponent of a power term, if it has one.
    pub fn integer_power(&self) -> Option<i64> {
        match *self {
            TermFunction::Power(r) => integer_of(r),
            _ => None,
        }
    }

    /// Windings worth enumerating inside `[s_min, s_max]`.
    ///
    /// Integer powers have exactly `|r|` distinct roots, so the range is
    /// clamped to `0..|r|`; single-valued inverses only use `s = 0`.
    pub fn windings(&self, s_min: i64, s_max: i64) -> Vec<i64> {
        match self {
            TermFunction::Power(_) => match self.integer_power() {
                Some(r) => (0..r.abs()).collect(),
                None => (s_min..=s_max).collect(),
            },
            TermFunction::Log => vec![0],
            TermFunction::Sinc => Vec::new(),
            _ => (s_min..=s_max).collect(),
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let v = match *self {
            TermFunction::Power(r) => match integer_of(r) {
                Some(n) if n >= 0 => z.powi(n as i32),
                Some(n) => {
                    if z == ZERO {
                        return Err(Error::domain("power term", z, "negative power of zero"));
                    }
                    z.powi(n as i32)
                }
                None => {
                    if z == ZERO {
                        return Err(Error::domain("power term", z, "fractional power of zero"));
                    }
                    (r * z.ln()).exp()
                }
            },
            TermFunction::Exp => z.exp(),
            TermFunction::Log => {
                if z == ZERO {
                    return Err(Error::domain("log term", z, "logarithm of zero"));
                }
                z.ln()
            }
            TermFunction::Sin => z.sin(),
            TermFunction::Cos => z.cos(),
            TermFunction::SelfPower => {
                if z == ZERO {
                    return Err(Error::domain("self-power term", z, "0^0 undefined"));
                }
                (z * z.ln()).exp()
            }
            TermFunction::ExpScaled(tau) => (tau * z).exp(),
            TermFunction::ZExpScaled(tau) => z * (tau * z).exp(),
            TermFunction::Sinc => {
                if z.norm() < 1e-4 {
                    let z2 = z * z;
                    ONE - z2 / 6.0 + z2 * z2 / 120.0
                } else {
                    z.sin() / z
                }
            }
        };
        Ok(v)
    }

    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        let v = match *self {
            TermFunction::Power(r) => match integer_of(r) {
                Some(0) => ZERO,
                Some(n) if n >= 1 => z.powi(n as i32 - 1) * n as f64,
                _ => {
                    if z == ZERO {
                        return Err(Error::domain("power term", z, "singular derivative at zero"));
                    }
                    r * ((r - 1.0) * z.ln()).exp()
                }
            },
            TermFunction::Exp => z.exp(),
            TermFunction::Log => {
                if z == ZERO {
                    return Err(Error::domain("log term", z, "logarithm of zero"));
                }
                z.inv()
            }
            TermFunction::Sin => z.cos(),
            TermFunction::Cos => -z.sin(),
            TermFunction::SelfPower => {
                if z == ZERO {
                    return Err(Error::domain("self-power term", z, "0^0 undefined"));
                }
                (z * z.ln()).exp() * (z.ln() + 1.0)
            }
            TermFunction::ExpScaled(tau) => tau * (tau * z).exp(),
            TermFunction::ZExpScaled(tau) => (tau * z).exp() * (tau * z + 1.0),
            TermFunction::Sinc => {
                if z.norm() < 1e-4 {
                    -z / 3.0 + z * z * z / 30.0
                } else {
                    (z * z.cos() - z.sin()) / (z * z)
                }
            }
        };
        Ok(v)
    }

    /// `p(z)` applied to a jet.
    pub fn eval_jet(&self, z: &Jet) -> Result<Jet> {
        Ok(match *self {
            TermFunction::Power(r) => match integer_of(r) {
                Some(n) => z.powi(n)?,
                None => z.powc(r)?,
            },
            TermFunction::Exp => z.exp(),
            TermFunction::Log => z.ln()?,
            TermFunction::Sin => z.sin(),
            TermFunction::Cos => z.cos(),
            TermFunction::SelfPower => z.mul_jet(&z.ln()?).exp(),
            TermFunction::ExpScaled(tau) => z.scale(tau).exp(),
            TermFunction::ZExpScaled(tau) => z.mul_jet(&z.scale(tau).exp()),
            TermFunction::Sinc => z.sinc(),
        })
    }

    fn check_category(&self, b: BranchIndex) -> Result<()> {
        let u = self.category_count();
        if u == 0 {
            return Err(Error::InvalidInput(format!("{self} has no inverse in the catalog")));
        }
        if b.q < 1 || b.q > u {
            return Err(Error::InvalidInput(format!("category {} outside 1..={u} for {self}", b.q)));
        }
        Ok(())
    }

    /// One branch of `p^{-1}(w)`.
    pub fn inverse(&self, w: Complex64, b: BranchIndex) -> Result<Complex64> {
        self.check_category(b)?;
        match *self {
            TermFunction::Power(r) => {
                if integer_of(r).is_none() {
                    // principal z^r only reaches w when log z = L / r
                    let l = log_branch(w, b.s)? / r;
                    if l.im <= -std::f64::consts::PI || l.im > std::f64::consts::PI {
                        return Err(Error::domain("power inverse", w, "branch misses the principal sheet"));
                    }
                }
                root_branch(w, r, b.s)
            }
            TermFunction::Exp => log_branch(w, b.s),
            TermFunction::Log => {
                if w.im <= -std::f64::consts::PI || w.im > std::f64::consts::PI {
                    return Err(Error::domain("log inverse", w, "outside the range of the principal log"));
                }
                Ok(w.exp())
            }
            TermFunction::Sin => arcsin_branch(w, b.q, b.s),
            TermFunction::Cos => arccos_branch(w, b.q, b.s),
            TermFunction::SelfPower => {
                let l = log_branch(w, b.s)?;
                let h = SELF_POWER_BRANCHES[(b.q - 1) as usize];
                let wl = lambert_w(h, l)?;
                // z^z uses the principal log, so log z must equal W
                if wl.im.abs() > std::f64::consts::PI {
                    return Err(Error::domain("self-power inverse", w, "branch misses the principal sheet"));
                }
                Ok(wl.exp())
            }
            TermFunction::ExpScaled(tau) => Ok(log_branch(w, b.s)? / tau),
            TermFunction::ZExpScaled(tau) => Ok(lambert_w(b.s, tau * w)? / tau),
            TermFunction::Sinc => unreachable!("rejected by check_category"),
        }
    }

    /// Jet of `p^{-1}` along `w`, on the sheet selected by `b`.
    pub fn inverse_jet(&self, w: &Jet, b: BranchIndex) -> Result<Jet> {
        let w0 = w.value();
        let z0 = self.inverse(w0, b)?;
        match *self {
            TermFunction::Power(r) => w.powc_with(r.inv(), z0),
            TermFunction::Exp => w.ln_with(z0),
            TermFunction::Log => Ok(w.exp()),
            TermFunction::Sin => w.solve_inverse(z0, |z| z.sin_cos()),
            TermFunction::Cos => w.solve_inverse(z0, |z| {
                let (s, c) = z.sin_cos();
                (c, -&s)
            }),
            TermFunction::SelfPower => {
                let l0 = log_branch(w0, b.s)?;
                let l = w.ln_with(l0)?;
                let h = SELF_POWER_BRANCHES[(b.q - 1) as usize];
                let wl = l.solve_inverse(lambert_w(h, l0)?, |x| {
                    let e = x.exp();
                    (x.mul_jet(&e), e.mul_jet(&x.add_scalar(ONE)))
                })?;
                Ok(wl.exp())
            }
            TermFunction::ExpScaled(tau) => Ok(w.ln_with(log_branch(w0, b.s)?)?.scale(tau.inv())),
            TermFunction::ZExpScaled(tau) => w.solve_inverse(z0, |z| {
                let e = z.scale(tau).exp();
                (z.mul_jet(&e), e.mul_jet(&z.scale(tau).add_scalar(ONE)))
            }),
            TermFunction::Sinc => unreachable!("inverse() rejects sinc"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inverse_examples() {
        let b0 = BranchIndex::new(1, 0);
        assert_eq!(TermFunction::Exp.inverse(ONE, b0).unwrap(), ZERO);
        let p7 = TermFunction::Power(c(7.0, 0.0));
        assert_eq!(
            p7.inverse(c(-7.0, 0.0), BranchIndex::new(1, 2)).unwrap(),
            root_branch(c(-7.0, 0.0), c(7.0, 0.0), 2).unwrap()
        );
        let x = TermFunction::SelfPower.inverse(c(4.0, 0.0), b0).unwrap();
        assert!((x - 2.0).norm() < 1e-14);
        assert!(p7.inverse(ZERO, b0).is_err());
        assert!(TermFunction::Sinc.inverse(ONE, b0).is_err());
        assert!(TermFunction::Exp.inverse(ONE, BranchIndex::new(2, 0)).is_err());
    }

    #[test]
    fn category_counts_and_windings() {
        assert_eq!(TermFunction::Sin.category_count(), 2);
        assert_eq!(TermFunction::Cos.category_count(), 2);
        assert_eq!(TermFunction::Exp.category_count(), 1);
        assert_eq!(TermFunction::Power(c(7.0, 0.0)).windings(-10, 10), (0..7).collect::<Vec<_>>());
        assert_eq!(TermFunction::Power(c(2.5, 0.0)).windings(-1, 1), vec![-1, 0, 1]);
        assert_eq!(TermFunction::Log.windings(-3, 3), vec![0]);
        assert!(TermFunction::Power(ZERO).validate().is_err());
    }

    #[test]
    fn inverse_jets_differentiate_consistently() {
        let w0 = c(0.4, 0.3);
        let w = Jet::variable(w0, 6);
        let terms = [
            TermFunction::Power(c(3.0, 0.0)),
            TermFunction::Power(c(2.5, 0.5)),
            TermFunction::Exp,
            TermFunction::Log,
            TermFunction::Sin,
            TermFunction::Cos,
            TermFunction::SelfPower,
            TermFunction::ExpScaled(c(-1.5, 0.0)),
            TermFunction::ZExpScaled(c(0.7, 0.0)),
        ];
        for p in terms {
            for q in 1..=p.category_count() {
                let b = BranchIndex::new(q, 1);
                let Ok(z) = p.inverse_jet(&w, b) else { continue };
                // p(z(w)) must be the identity jet
                let back = p.eval_jet(&z).unwrap();
                assert!((back.coeff(0) - w0).norm() < 1e-12, "{p} q={q}");
                assert!((back.coeff(1) - 1.0).norm() < 1e-10, "{p} q={q}");
                for k in 2..6 {
                    assert!(back.coeff(k).norm() < 1e-9, "{p} q={q} k={k} {}", back.coeff(k));
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn inverse_is_right_inverse(kind in 0usize..8, re in -3.0..3.0f64, im in -3.0..3.0f64,
                                    s in -3i64..=3, q in 1u32..=3, r in 1u32..9) {
            let p = match kind {
                0 => TermFunction::Power(c(r as f64, 0.0)),
                1 => TermFunction::Power(c(r as f64 + 0.5, 0.25)),
                2 => TermFunction::Exp,
                3 => TermFunction::Sin,
                4 => TermFunction::Cos,
                5 => TermFunction::SelfPower,
                6 => TermFunction::ExpScaled(c(0.5, -1.0)),
                _ => TermFunction::ZExpScaled(c(-1.0, 0.0)),
            };
            let w = c(re, im);
            prop_assume!(w.norm() > 1e-2);
            let q = q.min(p.category_count());
            let z = match p.inverse(w, BranchIndex::new(q, s)) {
                Ok(z) => z,
                Err(_) if (kind == 5 && q > 1) || kind == 1 => return Ok(()),
                Err(e) => panic!("{p} {w}: {e}"),
            };
            let back = p.eval(z).unwrap();
            prop_assert!((back - w).norm() <= 1e-12 * w.norm().max(1.0), "{} {} -> {} -> {}", p, w, z, back);
        }
    }
}
