use num_complex::Complex64;

use crate::engine::{
    newton_refine, solve_branches, BranchSpec, Equation, SolveOptions, Solution, Term, TermFunction,
    DEDUP_TOL,
};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `x^q - m x^p + t`; term 1 is `x^q`, term 2 is `-m x^p`.
pub fn power_pq_equation(p: Complex64, q: Complex64, m: Complex64, t: Complex64) -> Result<Equation> {
    if p == q {
        return Err(Error::InvalidInput("x^q - m x^p + t needs p != q".into()));
    }
    if m == ZERO {
        return Err(Error::InvalidInput("x^q - m x^p + t needs m != 0".into()));
    }
    Equation::new(vec![Term::new(ONE, TermFunction::Power(q)), Term::new(-m, TermFunction::Power(p))], t)
}

/// The same equation in `y = 1/x`, multiplied through by `y^q`:
/// `1 - m y^(q-p) + t y^q`; term 1 is `-m y^(q-p)`, term 2 is `t y^q`.
fn reciprocal_equation(p: Complex64, q: Complex64, m: Complex64, t: Complex64) -> Result<Equation> {
    Equation::new(vec![Term::new(-m, TermFunction::Power(q - p)), Term::new(t, TermFunction::Power(q))], ONE)
}

/// Half-width of the winding range for exponent `r`: `floor(|r|/2)` for
/// real `r`, `floor(|(a^2+b^2)/a| / 2)` for `r = a + bi`.
pub fn winding_half_width(r: Complex64) -> i64 {
    let c = if r.im == 0.0 {
        r.re.abs()
    } else if r.re == 0.0 {
        r.im.abs()
    } else {
        (r.norm_sqr() / r.re).abs()
    };
    (c / 2.0).floor() as i64
}

fn branches_for(eq: &Equation, k: usize) -> Vec<BranchSpec> {
    let func = eq.terms()[k - 1].func;
    let (lo, hi) = match func {
        TermFunction::Power(r) => {
            let w = winding_half_width(r);
            (-w, w)
        }
        _ => (0, 0),
    };
    func.windings(lo, hi).into_iter().map(|s| BranchSpec::new(k, 1, s)).collect()
}

/// Roots of `x^q - m x^p + t` with principal powers.
///
/// Both terms of the equation and both terms of its `1/x` form are expanded
/// and the results unioned. Roots from the reciprocal form are mapped back,
/// refined on the original equation and tagged as reciprocal branches.
/// Multiple roots merge within `DEDUP_TOL^(1/multiplicity)`.
pub fn power_pq_solve(p: Complex64, q: Complex64, m: Complex64, t: Complex64, terms: usize) -> Result<Solution> {
    let eq = power_pq_equation(p, q, m, t)?;
    let opts = SolveOptions {
        terms,
        tol: 1e-12,
        damp: true,
        ..Default::default()
    };
    let direct: Vec<BranchSpec> = [1, 2].iter().flat_map(|&k| branches_for(&eq, k)).collect();
    let mut raw = solve_branches(&eq, &direct, &opts);

    if t != ZERO {
        let inv = reciprocal_equation(p, q, m, t)?;
        let branches: Vec<BranchSpec> = [1, 2].iter().flat_map(|&k| branches_for(&inv, k)).collect();
        let ys = solve_branches(&inv, &branches, &opts);
        raw.diagnostics.extend(ys.diagnostics.into_iter().map(|d| format!("1/x {d}")));
        for y in ys.field.roots {
            if y.z.norm() < 1e-300 {
                continue;
            }
            match newton_refine(&eq, y.z.inv(), opts.tol, opts.max_newton) {
                Ok(mut r) if r.residual <= opts.tol * r.z.norm().max(1.0) => {
                    r.series_terms = y.series_terms;
                    r.converged = y.converged;
                    r.branches = y.branches.iter().map(|b| BranchSpec::reciprocal(b.k, b.q, b.s)).collect();
                    raw.field.insert(r);
                }
                Ok(r) => raw.diagnostics.push(format!("1/x root {} rejected: residual {:e}", r.z, r.residual)),
                Err(e) => raw.diagnostics.push(format!("1/x root {}: {e}", y.z.inv())),
            }
        }
    }

    let mut out = Solution::empty(opts.dedup_tol);
    out.diagnostics = raw.diagnostics;
    out.unrescued = raw.unrescued;
    for r in raw.field.roots {
        let mult = eq.multiplicity(r.z, 1e-6);
        if mult > 1 {
            out.diagnostics.push(format!("root {} has multiplicity {mult}", r.z));
        }
        out.field.insert_within(r, DEDUP_TOL.powf(1.0 / mult as f64));
    }
    out.field.sort_by_position();
    Ok(out)
}
