use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// If `z` sits on a nonpositive integer, return that integer.
fn nonpositive_integer(z: Complex64) -> Option<i64> {
    if z.im != 0.0 || z.re > 0.0 {
        return None;
    }
    let r = z.re.round();
    (z.re == r).then_some(r as i64)
}

/// `sin(pi z)` with the argument reduced by the nearest integer first, so the
/// zeros at integers stay exact.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let reduced = Complex64::new(z.re - n, z.im) * PI;
    let s = reduced.sin();
    if (n as i64).rem_euclid(2) == 0 {
        s
    } else {
        -s
    }
}

fn lanczos_series(z: Complex64) -> Complex64 {
    // z here is the shifted argument (original z - 1).
    let mut acc = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &p) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += p / (z + i as f64);
    }
    acc
}

/// `ln Gamma(z)` on some branch of the logarithm. Only differences and
/// exponentials of this value are meaningful.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if let Some(n) = nonpositive_integer(z) {
        return Err(Error::Pole {
            function: "ln_gamma",
            at: Complex64::new(n as f64, 0.0),
        });
    }
    if z.re < 0.5 {
        // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
        let s = sin_pi(z);
        let rest = ln_gamma(Complex64::new(1.0, 0.0) - z)?;
        return Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - rest);
    }
    let zm1 = z - 1.0;
    let t = zm1 + LANCZOS_G + 0.5;
    Ok(HALF_LN_TWO_PI + (zm1 + 0.5) * t.ln() - t + lanczos_series(zm1).ln())
}

/// Complex Gamma function (Lanczos, g = 7, nine coefficients; reflection for
/// `Re z < 1/2`).
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if let Some(n) = nonpositive_integer(z) {
        return Err(Error::Pole {
            function: "gamma",
            at: Complex64::new(n as f64, 0.0),
        });
    }
    if z.re < 0.5 {
        let s = sin_pi(z);
        let g = gamma(Complex64::new(1.0, 0.0) - z)?;
        return Ok(PI / (s * g));
    }
    let zm1 = z - 1.0;
    let t = zm1 + LANCZOS_G + 0.5;
    let value = (2.0 * PI).sqrt() * ((zm1 + 0.5) * t.ln() - t).exp() * lanczos_series(zm1);
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite("gamma"))
    }
}

/// `Gamma(a) / Gamma(b)` evaluated without touching the poles.
///
/// * both arguments nonpositive integers: limit of `Gamma(-p + e) / Gamma(-m + e)`,
///   which is `(-1)^(p - m) m! / p!`
/// * only `b` a pole: exactly zero
/// * only `a` a pole: the ratio diverges
/// * `b - a` a (moderate) integer: a finite Pochhammer product
/// * otherwise through `ln Gamma`, so large arguments do not overflow
pub fn gamma_ratio(a: Complex64, b: Complex64) -> Result<Complex64> {
    match (nonpositive_integer(a), nonpositive_integer(b)) {
        (Some(pa), Some(pb)) => {
            let (p, m) = (-pa, -pb);
            let sign = if (p - m).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            // m!/p! as a product to stay finite for large p, m.
            let value = if m >= p {
                ((p + 1)..=m).fold(1.0, |acc, k| acc * k as f64)
            } else {
                1.0 / ((m + 1)..=p).fold(1.0, |acc, k| acc * k as f64)
            };
            return Ok(Complex64::new(sign * value, 0.0));
        }
        (None, Some(_)) => return Ok(Complex64::new(0.0, 0.0)),
        (Some(_), None) => return Err(Error::RatioDiverges("gamma_ratio")),
        (None, None) => {}
    }

    let diff = b - a;
    if diff.im == 0.0 && diff.re == diff.re.round() && diff.re.abs() <= 1000.0 {
        let n = diff.re as i64;
        if n >= 0 {
            // Gamma(a) / Gamma(a + n) = 1 / (a (a+1) ... (a+n-1))
            let mut prod = Complex64::new(1.0, 0.0);
            for i in 0..n {
                prod *= a + i as f64;
            }
            return Ok(prod.inv());
        }
        // Gamma(a) / Gamma(a - n) = (a-1)(a-2)...(a-n)
        let mut prod = Complex64::new(1.0, 0.0);
        for i in 1..=(-n) {
            prod *= a - i as f64;
        }
        return Ok(prod);
    }

    let value = (ln_gamma(a)? - ln_gamma(b)?).exp();
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::RatioDiverges("gamma_ratio"))
    }
}
