use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_TERMS: usize = 1_000_000;

/// Result of a `pFq` summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PfqSum {
    pub value: Complex64,
    /// Number of series terms added after the leading 1.
    pub terms: usize,
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Generalized hypergeometric series `pFq(a; b; z)` by forward term ratios.
///
/// Summation stops once `|term| < tol * |sum|` has held for three consecutive
/// terms. Terminating series (a nonpositive-integer upper parameter) are summed
/// exactly for any `z`.
pub fn pfq(a: &[Complex64], b: &[Complex64], z: Complex64, tol: f64) -> Result<PfqSum> {
    if let Some(&bad) = b.iter().find(|&&bj| is_nonpositive_integer(bj)) {
        return Err(Error::Pole { function: "pfq", at: bad });
    }
    let one = Complex64::new(1.0, 0.0);
    if z == Complex64::new(0.0, 0.0) {
        return Ok(PfqSum { value: one, terms: 0 });
    }
    let terminating = a.iter().any(|&ai| is_nonpositive_integer(ai));
    if !terminating {
        if a.len() > b.len() + 1 {
            return Err(Error::Divergence(format!(
                "{}F{} has zero radius of convergence",
                a.len(),
                b.len()
            )));
        }
        if a.len() == b.len() + 1 && z.norm() >= 1.0 {
            return Err(Error::Divergence(format!(
                "{}F{} outside |z| < 1 (|z| = {})",
                a.len(),
                b.len(),
                z.norm()
            )));
        }
    }

    let mut term = one;
    let mut sum = one;
    let mut quiet = 0usize;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let num = a.iter().fold(one, |acc, &ai| acc * (ai + nf));
        let den = b.iter().fold(one, |acc, &bj| acc * (bj + nf));
        term = term * num / den * z / (nf + 1.0);
        sum += term;
        if !(sum.re.is_finite() && sum.im.is_finite()) {
            return Err(Error::Divergence("pfq partial sum overflowed".into()));
        }
        if term.norm() < tol * sum.norm() || term.norm() == 0.0 {
            quiet += 1;
            if quiet >= 3 {
                return Ok(PfqSum {
                    value: sum,
                    terms: n + 1,
                });
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Divergence(format!("pfq exceeded {MAX_TERMS} terms")))
}
