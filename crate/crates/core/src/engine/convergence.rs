use std::f64::consts::TAU;

use num_complex::Complex64;

use super::equation::Equation;
use super::root::BranchSpec;
use crate::error::{Error, Result};

/// Outcome of sampling the convergence inequality on a circle.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// The inequality held at every usable sample.
    pub holds: bool,
    /// Smallest `|z - w0| - |sum_{i != k} m_i p_i(z) / m_k|` over the samples.
    pub margin: f64,
    /// Samples skipped because a term was singular there.
    pub skipped: usize,
}

/// Samples `|(1/m_k) sum_{i != k} m_i p_i(z)| < |z - w0|` on `|z - w0| = radius`,
/// with `w0 = -t / m_k`.
pub fn convergence_check(eq: &Equation, k: usize, samples: usize, radius: f64) -> Result<ConvergenceReport> {
    if samples < 16 {
        return Err(Error::InvalidInput(format!("need at least 16 samples, got {samples}")));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidInput("radius must be positive".into()));
    }
    let n = eq.terms().len();
    if k < 1 || k > n {
        return Err(Error::InvalidInput(format!("term index {k} outside 1..={n}")));
    }
    let mk = eq.terms()[k - 1].coef;
    if mk == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidInput(format!("term {k} has a zero coefficient")));
    }
    let w0 = -eq.constant() / mk;
    let mut margin = f64::INFINITY;
    let mut skipped = 0;
    for i in 0..samples {
        let z = w0 + Complex64::from_polar(radius, TAU * i as f64 / samples as f64);
        let mut lhs = Complex64::new(0.0, 0.0);
        let mut ok = true;
        for (j, t) in eq.terms().iter().enumerate() {
            if j == k - 1 || t.coef == Complex64::new(0.0, 0.0) {
                continue;
            }
            match t.func.eval(z) {
                Ok(v) => lhs += t.coef * v,
                Err(_) => ok = false,
            }
        }
        if !ok || !lhs.norm().is_finite() {
            skipped += 1;
            continue;
        }
        margin = margin.min(radius - (lhs / mk).norm());
    }
    Ok(ConvergenceReport {
        holds: skipped < samples && margin > 0.0,
        margin,
        skipped,
    })
}

/// Branches of term `k`: every category, windings clamped per term kind.
pub fn enumerate_branches(eq: &Equation, k: usize, s_min: i64, s_max: i64) -> Vec<BranchSpec> {
    let Some(term) = k.checked_sub(1).and_then(|i| eq.terms().get(i)) else {
        return Vec::new();
    };
    if term.coef == Complex64::new(0.0, 0.0) {
        return Vec::new();
    }
    let windings = term.func.windings(s_min, s_max);
    (1..=term.func.category_count())
        .flat_map(|q| windings.iter().map(move |&s| BranchSpec::new(k, q, s)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{Term, TermFunction};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn sin_exp() -> Equation {
        Equation::new(
            vec![Term::new(c(0.5), TermFunction::Sin), Term::new(c(-15.0), TermFunction::Exp)],
            c(std::f64::consts::PI),
        )
        .unwrap()
    }

    #[test]
    fn single_term_margin_is_radius() {
        let eq = Equation::new(vec![Term::new(c(2.0), TermFunction::Exp)], c(-1.0)).unwrap();
        let r = convergence_check(&eq, 1, 32, 1.0).unwrap();
        assert!(r.holds);
        assert_eq!(r.margin, 1.0);
    }

    #[test]
    fn sampling_matches_direct_oracle() {
        let eq = sin_exp();
        let r = convergence_check(&eq, 1, 64, 1.0).unwrap();
        // independent evaluation of the same inequality
        let w0 = -eq.constant() / 0.5;
        let worst = (0..64)
            .map(|i| {
                let z = w0 + Complex64::from_polar(1.0, TAU * i as f64 / 64.0);
                1.0 - (-15.0 * z.exp() / 0.5).norm()
            })
            .fold(f64::INFINITY, f64::min);
        assert!((r.margin - worst).abs() < 1e-12);
        assert!(r.holds);
    }

    #[test]
    fn too_few_samples() {
        assert!(convergence_check(&sin_exp(), 1, 8, 1.0).is_err());
    }

    #[test]
    fn branch_enumeration() {
        let eq = sin_exp();
        assert_eq!(enumerate_branches(&eq, 1, -1, 1).len(), 6);
        assert_eq!(enumerate_branches(&eq, 2, 0, 0), vec![BranchSpec::new(2, 1, 0)]);
        let septic = Equation::new(vec![Term::new(c(1.0), TermFunction::Power(c(7.0)))], c(7.0)).unwrap();
        assert_eq!(enumerate_branches(&septic, 1, -10, 10).len(), 7);
    }
}
