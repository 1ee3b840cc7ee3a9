use num_complex::Complex64;

use super::equation::Equation;
use super::root::{BranchSpec, RootRecord};
use crate::error::{Error, Result};
use crate::{is_finite, unsigned_zero};
use crate::jet::Jet;
use crate::specialfn::BranchIndex;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Terms beyond this magnitude are treated as divergence.
pub const OVERFLOW_LIMIT: f64 = 1e100;

/// Relative size of the tail terms below which a series counts as converged.
pub const TAIL_TOL: f64 = 1e-10;

/// Raw result of a Lagrange–Bürmann expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesOutcome {
    /// `p_k^{-1}(w0)`, the zeroth term.
    pub leading: Complex64,
    /// Terms `j = 1..` in order; shorter than requested after an overflow.
    pub terms: Vec<Complex64>,
    /// Sum of all computed terms.
    pub sum: Complex64,
    /// Partial sum truncated just before the smallest term.
    pub optimal: Complex64,
    pub converged: bool,
    pub overflowed: bool,
}

impl SeriesOutcome {
    pub fn terms_used(&self) -> usize {
        self.terms.len()
    }
}

/// Lagrange–Bürmann inversion around `w0`.
///
/// `expand` maps the jet of `w` to the jets of `z = p^{-1}(w)` and of
/// `phi(w)`. Term `j` is `(-1)^j / j * coef_{j-1}(z' * phi^j)`, which is the
/// `(j-1)`-th derivative divided by `j!`.
pub fn lagrange_series<F>(w0: Complex64, terms: usize, expand: F) -> Result<SeriesOutcome>
where
    F: Fn(&Jet) -> Result<(Jet, Jet)>,
{
    if terms == 0 {
        return Err(Error::InvalidInput("series needs at least one term".into()));
    }
    let w = Jet::variable(w0, terms + 1);
    let (z, phi) = expand(&w)?;
    if !z.is_finite() || !phi.is_finite() {
        return Err(Error::NonFinite("series expansion"));
    }
    let dz = z.derivative();
    let leading = z.value();

    let mut out = Vec::with_capacity(terms);
    let mut sum = leading;
    let mut optimal = leading;
    let mut smallest = f64::INFINITY;
    let mut overflowed = false;
    let mut power = Jet::constant(Complex64::new(1.0, 0.0), w0, terms);
    let phi = phi.truncate(terms);
    for j in 1..=terms {
        power = power.mul_jet(&phi);
        let product = dz.mul_jet(&power);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let term = product.coeff(j - 1) * (sign / j as f64);
        if !is_finite(term) || term.norm() > OVERFLOW_LIMIT {
            overflowed = true;
            break;
        }
        if term.norm() < smallest {
            smallest = term.norm();
            optimal = sum;
        }
        sum += term;
        out.push(term);
    }

    // Some series have periodically vanishing terms, so judge the last two.
    let tail = out.iter().rev().take(2).map(|t| t.norm()).fold(0.0, f64::max);
    let converged = !overflowed && tail < TAIL_TOL * sum.norm().max(1.0);
    if !overflowed && converged {
        optimal = sum;
    }
    Ok(SeriesOutcome {
        leading,
        terms: out,
        sum,
        optimal,
        converged,
        overflowed,
    })
}

fn check_branch(eq: &Equation, b: BranchSpec) -> Result<usize> {
    let n = eq.terms().len();
    if b.k < 1 || b.k > n {
        return Err(Error::InvalidInput(format!("term index {} outside 1..={n}", b.k)));
    }
    let term = &eq.terms()[b.k - 1];
    if term.coef == ZERO {
        return Err(Error::InvalidInput(format!("term {} has a zero coefficient", b.k)));
    }
    let u = term.func.category_count();
    if b.q < 1 || b.q > u {
        return Err(Error::InvalidInput(format!("category {} outside 1..={u} for term {}", b.q, b.k)));
    }
    Ok(b.k - 1)
}

/// Expansion center `w0 = -t / m_k`.
pub fn expansion_center(eq: &Equation, b: BranchSpec) -> Result<Complex64> {
    let idx = check_branch(eq, b)?;
    Ok(unsigned_zero(-eq.constant() / eq.terms()[idx].coef))
}

fn expand(eq: &Equation, idx: usize, b: BranchSpec, w: &Jet) -> Result<(Jet, Jet)> {
    let own = &eq.terms()[idx];
    let z = own.func.inverse_jet(w, BranchIndex::new(b.q, b.s))?;
    let mut phi = Jet::constant(ZERO, w.center(), w.len());
    for (i, other) in eq.terms().iter().enumerate() {
        if i != idx && other.coef != ZERO {
            phi = &phi + &(&other.func.eval_jet(&z)? * (other.coef / own.coef));
        }
    }
    Ok((z, phi))
}

/// `phi(w) = sum_{i != k} (m_i / m_k) p_i(p_k^{-1}(w))` as a jet evaluator.
pub fn phi(eq: &Equation, b: BranchSpec) -> Result<impl Fn(&Jet) -> Result<Jet> + '_> {
    let idx = check_branch(eq, b)?;
    Ok(move |w: &Jet| expand(eq, idx, b, w).map(|(_, p)| p))
}

/// Lagrange–Bürmann series for one branch, without overflow handling.
pub fn lagrange_series_for(eq: &Equation, b: BranchSpec, terms: usize) -> Result<SeriesOutcome> {
    let idx = check_branch(eq, b)?;
    let w0 = unsigned_zero(-eq.constant() / eq.terms()[idx].coef);
    lagrange_series(w0, terms, |w| expand(eq, idx, b, w))
}

/// Series root on branch `b` truncated after `terms` terms.
///
/// Fails with [`Error::SeriesOverflow`] when the terms blow past
/// [`OVERFLOW_LIMIT`]; the error carries the best partial sum as a seed.
pub fn lagrange_root(eq: &Equation, b: BranchSpec, terms: usize) -> Result<RootRecord> {
    let out = lagrange_series_for(eq, b, terms)?;
    if out.overflowed {
        return Err(Error::SeriesOverflow {
            terms: out.terms_used(),
            seed: out.optimal,
        });
    }
    RootRecord::new(eq, out.sum, b, out.terms_used(), false, out.converged)
}
