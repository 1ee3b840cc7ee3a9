use num_complex::Complex64;

use super::term::TermFunction;
use crate::error::{Error, Result};
use crate::is_finite;
use crate::jet::Jet;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coef: Complex64,
    pub func: TermFunction,
}

impl Term {
    pub fn new(coef: Complex64, func: TermFunction) -> Self {
        Self { coef, func }
    }
}

/// `sigma(z) = sum_i m_i p_i(z) + t`.
#[derive(Debug, Clone, PartialEq)]
pub struct Equation {
    terms: Vec<Term>,
    constant: Complex64,
}

impl Equation {
    pub fn new(terms: Vec<Term>, constant: Complex64) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput("equation needs at least one term".into()));
        }
        if terms.iter().all(|t| t.coef == ZERO) {
            return Err(Error::InvalidInput("at least one nonzero m_i is required".into()));
        }
        if !is_finite(constant) || terms.iter().any(|t| !is_finite(t.coef)) {
            return Err(Error::InvalidInput("coefficients must be finite".into()));
        }
        for t in &terms {
            t.func.validate()?;
        }
        Ok(Self { terms, constant })
    }

    /// Polynomial from coefficients in ascending degree; the degree-0 entry becomes `t`.
    pub fn polynomial(ascending: &[Complex64]) -> Result<Self> {
        let terms = ascending
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| **c != ZERO)
            .map(|(d, &c)| Term::new(c, TermFunction::Power(Complex64::new(d as f64, 0.0))))
            .collect();
        Self::new(terms, ascending.first().copied().unwrap_or(ZERO))
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn constant(&self) -> Complex64 {
        self.constant
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let mut acc = self.constant;
        for t in &self.terms {
            if t.coef != ZERO {
                acc += t.coef * t.func.eval(z)?;
            }
        }
        if !is_finite(acc) {
            return Err(Error::NonFinite("equation value"));
        }
        Ok(acc)
    }

    pub fn eval_derivative(&self, z: Complex64) -> Result<Complex64> {
        let mut acc = ZERO;
        for t in &self.terms {
            if t.coef != ZERO {
                acc += t.coef * t.func.derivative(z)?;
            }
        }
        if !is_finite(acc) {
            return Err(Error::NonFinite("equation derivative"));
        }
        Ok(acc)
    }

    /// Value and derivative together, the shape Newton's method wants.
    pub fn eval_with_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        Ok((self.eval(z)?, self.eval_derivative(z)?))
    }

    /// Sum of `|m_i p_i(z)|` and `|t|`: the rounding scale of `sigma(z)`.
    pub fn magnitude(&self, z: Complex64) -> Result<f64> {
        let mut acc = self.constant.norm();
        for t in &self.terms {
            if t.coef != ZERO {
                acc += (t.coef * t.func.eval(z)?).norm();
            }
        }
        Ok(acc)
    }

    /// Taylor jet of `sigma` around `z0`.
    pub fn eval_jet(&self, z0: Complex64, len: usize) -> Result<Jet> {
        let z = Jet::variable(z0, len);
        let mut acc = Jet::constant(self.constant, z0, len);
        for t in &self.terms {
            if t.coef != ZERO {
                acc = &acc + &(&t.func.eval_jet(&z)? * t.coef);
            }
        }
        Ok(acc)
    }

    /// Order of the zero at `z`, read from the leading Taylor coefficients.
    ///
    /// Coefficients below `rel_tol` times the largest of the first few are
    /// treated as zero. Returns at least 1.
    pub fn multiplicity(&self, z: Complex64, rel_tol: f64) -> u32 {
        const LEN: usize = 8;
        let Ok(jet) = self.eval_jet(z, LEN) else { return 1 };
        let scale = jet.coeffs()[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return 1;
        }
        (1..LEN)
            .find(|&k| jet.coeff(k).norm() > rel_tol * scale)
            .unwrap_or(1) as u32
    }

    /// True when every input is real, so roots come in conjugate pairs.
    pub fn is_real(&self) -> bool {
        let real = |v: Complex64| v.im == 0.0;
        real(self.constant)
            && self.terms.iter().all(|t| {
                real(t.coef)
                    && match t.func {
                        TermFunction::Power(r) => real(r),
                        TermFunction::ExpScaled(tau) | TermFunction::ZExpScaled(tau) => real(tau),
                        _ => true,
                    }
            })
    }

    /// Integer exponents of an all-power equation, or `None`.
    pub fn integer_powers(&self) -> Option<Vec<i64>> {
        self.terms.iter().map(|t| t.func.integer_power()).collect()
    }

    /// Ascending coefficients when `sigma` is a polynomial.
    pub fn polynomial_coefficients(&self) -> Option<Vec<Complex64>> {
        let powers = self.integer_powers()?;
        if powers.iter().any(|&p| p < 0) {
            return None;
        }
        let degree = powers.iter().copied().max().unwrap_or(0) as usize;
        let mut out = vec![ZERO; degree + 1];
        out[0] = self.constant;
        for (t, p) in self.terms.iter().zip(powers) {
            out[p as usize] += t.coef;
        }
        while out.len() > 1 && *out.last().unwrap() == ZERO {
            out.pop();
        }
        Some(out)
    }

    /// The equation in `y = 1/z`, cleared of negative powers.
    ///
    /// Only defined for integer-power equations; roots `y != 0` map back to
    /// roots `z = 1/y` of `self`.
    pub fn reciprocal(&self) -> Option<Equation> {
        let powers = self.integer_powers()?;
        let top = powers.iter().copied().chain([0]).max()?;
        // sigma(1/y) * y^top = sum m_i y^(top - r_i) + t y^top
        let mut coeffs: std::collections::BTreeMap<i64, Complex64> = Default::default();
        for (t, r) in self.terms.iter().zip(&powers) {
            *coeffs.entry(top - r).or_insert(ZERO) += t.coef;
        }
        *coeffs.entry(top).or_insert(ZERO) += self.constant;
        let constant = coeffs.remove(&0).unwrap_or(ZERO);
        let terms: Vec<Term> = coeffs
            .into_iter()
            .filter(|(_, c)| *c != ZERO)
            .map(|(p, c)| Term::new(c, TermFunction::Power(Complex64::new(p as f64, 0.0))))
            .collect();
        if constant == ZERO {
            return None;
        }
        Equation::new(terms, constant).ok()
    }
}
