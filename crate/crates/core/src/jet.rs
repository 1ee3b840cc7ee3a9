//! Truncated power series ("jets").
//!
//! A [`Jet`] holds the first `len` Taylor coefficients of a function of one
//! complex variable around `center`. Arithmetic is exact truncation: the
//! coefficients of a product are the Cauchy convolution of the inputs up to
//! the jet length, and elementary functions use the usual coefficient
//! recurrences. The `(n)`-th derivative at the center is `n! * coeffs[n]`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    center: Complex64,
    coeffs: Vec<Complex64>,
}

impl Jet {
    /// The independent variable `w = center + h`.
    pub fn variable(center: Complex64, len: usize) -> Self {
        assert!(len >= 1, "jet length must be positive");
        let mut coeffs = vec![ZERO; len];
        coeffs[0] = center;
        if len > 1 {
            coeffs[1] = ONE;
        }
        Self { center, coeffs }
    }

    pub fn constant(value: Complex64, center: Complex64, len: usize) -> Self {
        assert!(len >= 1, "jet length must be positive");
        let mut coeffs = vec![ZERO; len];
        coeffs[0] = value;
        Self { center, coeffs }
    }

    pub fn from_coeffs(center: Complex64, coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "jet length must be positive");
        Self { center, coeffs }
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(ZERO)
    }

    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    fn like(&self, coeffs: Vec<Complex64>) -> Self {
        Self {
            center: self.center,
            coeffs,
        }
    }

    pub fn truncate(&self, len: usize) -> Self {
        let len = len.clamp(1, self.len());
        self.like(self.coeffs[..len].to_vec())
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Term-wise derivative; the result is one coefficient shorter.
    pub fn derivative(&self) -> Self {
        if self.len() == 1 {
            return self.like(vec![ZERO]);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, &a)| a * (k + 1) as f64)
            .collect();
        self.like(coeffs)
    }

    /// `n`-th derivative at the center.
    pub fn derivative_at_center(&self, n: usize) -> Complex64 {
        let fact: f64 = (1..=n).map(|k| k as f64).product();
        self.coeff(n) * fact
    }

    pub fn scale(&self, k: Complex64) -> Self {
        self.like(self.coeffs.iter().map(|&a| a * k).collect())
    }

    pub fn add_scalar(&self, k: Complex64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += k;
        out
    }

    fn zip_len(&self, other: &Self) -> usize {
        self.len().min(other.len())
    }

    pub fn mul_jet(&self, other: &Self) -> Self {
        let n = self.zip_len(other);
        let mut out = vec![ZERO; n];
        for (i, &a) in self.coeffs[..n].iter().enumerate() {
            if a == ZERO {
                continue;
            }
            for (j, &b) in other.coeffs[..n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        self.like(out)
    }

    pub fn recip(&self) -> Result<Self> {
        Jet::constant(ONE, self.center, self.len()).div_jet(self)
    }

    pub fn div_jet(&self, den: &Self) -> Result<Self> {
        let d0 = den.coeffs[0];
        if d0.norm() == 0.0 {
            return Err(Error::domain("jet division", den.center, "denominator vanishes at the center"));
        }
        let n = self.zip_len(den);
        let mut out = vec![ZERO; n];
        for k in 0..n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= den.coeffs[j] * out[k - j];
            }
            out[k] = acc / d0;
        }
        Ok(self.like(out))
    }

    pub fn exp(&self) -> Self {
        let n = self.len();
        let mut out = vec![ZERO; n];
        out[0] = self.coeffs[0].exp();
        for k in 1..n {
            let mut acc = ZERO;
            for j in 1..=k {
                acc += self.coeffs[j] * out[k - j] * j as f64;
            }
            out[k] = acc / k as f64;
        }
        self.like(out)
    }

    /// Logarithm whose constant term is `value0` (any branch of `log a0`).
    pub fn ln_with(&self, value0: Complex64) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.norm() == 0.0 {
            return Err(Error::domain("jet ln", self.center, "logarithm of zero"));
        }
        let n = self.len();
        let mut out = vec![ZERO; n];
        out[0] = value0;
        for k in 1..n {
            let mut acc = self.coeffs[k] * k as f64;
            for j in 1..k {
                acc -= out[j] * self.coeffs[k - j] * j as f64;
            }
            out[k] = acc / (a0 * k as f64);
        }
        Ok(self.like(out))
    }

    /// Principal logarithm at the center.
    pub fn ln(&self) -> Result<Self> {
        let v = self.coeffs[0];
        if v.norm() == 0.0 {
            return Err(Error::domain("jet ln", self.center, "logarithm of zero"));
        }
        self.ln_with(v.ln())
    }

    /// `a^alpha` with the constant term fixed to `value0` (selects the sheet).
    pub fn powc_with(&self, alpha: Complex64, value0: Complex64) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.norm() == 0.0 {
            return Err(Error::domain("jet powc", self.center, "power of zero"));
        }
        let n = self.len();
        let mut out = vec![ZERO; n];
        out[0] = value0;
        for k in 1..n {
            let mut acc = ZERO;
            for j in 1..=k {
                acc += self.coeffs[j] * out[k - j] * ((alpha + 1.0) * j as f64 - k as f64);
            }
            out[k] = acc / (a0 * k as f64);
        }
        Ok(self.like(out))
    }

    /// Principal power `exp(alpha * Log a0)` at the center.
    pub fn powc(&self, alpha: Complex64) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.norm() == 0.0 {
            return Err(Error::domain("jet powc", self.center, "power of zero"));
        }
        self.powc_with(alpha, (alpha * a0.ln()).exp())
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let mut result = Jet::constant(ONE, self.center, self.len());
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_jet(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_jet(&base);
            }
        }
        Ok(result)
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let n = self.len();
        let mut s = vec![ZERO; n];
        let mut c = vec![ZERO; n];
        s[0] = self.coeffs[0].sin();
        c[0] = self.coeffs[0].cos();
        for k in 1..n {
            let mut acc_s = ZERO;
            let mut acc_c = ZERO;
            for j in 1..=k {
                let ja = self.coeffs[j] * j as f64;
                acc_s += ja * c[k - j];
                acc_c -= ja * s[k - j];
            }
            s[k] = acc_s / k as f64;
            c[k] = acc_c / k as f64;
        }
        (self.like(s), self.like(c))
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    /// `sin(a) / a`, entire; a power series is used near the origin.
    pub fn sinc(&self) -> Self {
        if self.coeffs[0].norm() > 0.5 {
            let (s, _) = self.sin_cos();
            return s.div_jet(self).expect("nonzero center");
        }
        // sum_{n} (-1)^n a^{2n} / (2n+1)!, Horner in a^2
        let sq = self.mul_jet(self);
        let terms = 24;
        let mut acc = Jet::constant(ZERO, self.center, self.len());
        for n in (0..terms).rev() {
            let fact: f64 = (1..=(2 * n + 1)).map(|k| k as f64).product();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            acc = acc.mul_jet(&sq).add_scalar(Complex64::new(sign / fact, 0.0));
        }
        acc
    }

    /// Solve `f(z) = self` for the jet `z` whose constant term is `z0`.
    ///
    /// `f` returns the jets of `f(z)` and `f'(z)`. Newton's method on jets
    /// doubles the number of correct coefficients each step; `z0` pins the
    /// branch of the inverse.
    pub fn solve_inverse<F>(&self, z0: Complex64, f: F) -> Result<Self>
    where
        F: Fn(&Jet) -> (Jet, Jet),
    {
        let mut z = Jet::constant(z0, self.center, self.len());
        z.coeffs[0] = z0;
        let (_, d0) = f(&z);
        if d0.value().norm() < 1e-300 {
            return Err(Error::domain("jet inverse", self.center, "inverse is singular at the center"));
        }
        let mut steps = 2;
        let mut correct = 1;
        while correct < self.len() {
            correct *= 2;
            steps += 1;
        }
        for _ in 0..steps {
            let (fz, dfz) = f(&z);
            let mut step = (&fz - self).div_jet(&dfz)?;
            step.coeffs[0] = ZERO;
            z = &z - &step;
        }
        if !z.is_finite() {
            return Err(Error::NonFinite("jet inverse"));
        }
        Ok(z)
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        let n = self.zip_len(rhs);
        self.like((0..n).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect())
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        let n = self.zip_len(rhs);
        self.like((0..n).map(|k| self.coeffs[k] - rhs.coeffs[k]).collect())
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.mul_jet(rhs)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-ONE)
    }
}

impl Mul<Complex64> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: Complex64) -> Jet {
        self.scale(rhs)
    }
}

impl Div for &Jet {
    type Output = Result<Jet>;
    fn div(self, rhs: &Jet) -> Result<Jet> {
        self.div_jet(rhs)
    }
}
