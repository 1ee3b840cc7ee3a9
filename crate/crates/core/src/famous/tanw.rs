use num_complex::Complex64;

use crate::engine::{newton, solve_branches, BranchSpec, Equation, RootRecord, SolveOptions, Solution, Term, TermFunction};
use crate::error::{Error, Result};

use super::TRIVIAL_BRANCH;

/// `cos w - m sin(w)/w`, the pole-free form of `w = m tan w` away from `w = 0`.
pub fn tan_equation(m: Complex64) -> Result<Equation> {
    if m == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidInput("w = m tan w needs m != 0".into()));
    }
    Equation::new(
        vec![
            Term::new(Complex64::new(1.0, 0.0), TermFunction::Cos),
            Term::new(-m, TermFunction::Sinc),
        ],
        Complex64::new(0.0, 0.0),
    )
}

/// Roots of `w = m tan w`.
///
/// Both arccosine families `+-arccos(0) + 2 pi k` are expanded with the
/// `sin(w)/w` composite, refined, and then polished on `w - m tan w`, whose
/// value is the reported residual. The root `w = 0` is always included
/// under [`TRIVIAL_BRANCH`].
pub fn tan_solve(m: Complex64, k_range: (i64, i64), terms: usize) -> Result<Solution> {
    let eq = tan_equation(m)?;
    let branches: Vec<BranchSpec> = (1..=2)
        .flat_map(|q| (k_range.0..=k_range.1).map(move |s| BranchSpec::new(1, q, s)))
        .collect();
    let opts = SolveOptions {
        terms,
        tol: 1e-13,
        ..Default::default()
    };
    let raw = solve_branches(&eq, &branches, &opts);
    let mut out = Solution::empty(opts.dedup_tol);
    out.diagnostics = raw.diagnostics;
    out.unrescued = raw.unrescued;
    let f = |w: Complex64| {
        let (s, c) = (w.sin(), w.cos());
        Ok((w - m * s / c, 1.0 - m / (c * c)))
    };
    out.field.insert(RootRecord {
        z: Complex64::new(0.0, 0.0),
        branches: vec![TRIVIAL_BRANCH],
        residual: 0.0,
        series_terms: 0,
        refined: false,
        converged: true,
    });
    for mut r in raw.field.roots {
        match newton(f, r.z, 1e-15, 20, Some(1e-3)) {
            Ok(n) => {
                r.z = n.z;
                r.residual = f(n.z)?.0.norm();
                out.field.insert(r);
            }
            Err(e) => out.diagnostics.push(format!("{}: tangent-form polish failed: {e}", r.branch())),
        }
    }
    out.field.sort_by_position();
    Ok(out)
}
