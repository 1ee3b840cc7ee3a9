use num_complex::Complex64;

use crate::engine::{solve_branches, BranchSpec, Equation, SolveOptions, Solution, Term, TermFunction};
use crate::error::{Error, Result};

/// Residual bound on returned roots of `x^x - m x + t`.
pub const SELFPOWER_RESIDUAL: f64 = 1e-9;

/// `x^x - m x + t`; term 1 is `x^x`, term 2 is `-m x`.
pub fn selfpower_equation(m: Complex64, t: Complex64) -> Result<Equation> {
    Equation::new(
        vec![
            Term::new(Complex64::new(1.0, 0.0), TermFunction::SelfPower),
            Term::new(-m, TermFunction::Power(Complex64::new(1.0, 0.0))),
        ],
        t,
    )
}

/// Inverse category of `x^x` that uses Lambert branch `h`.
fn category(h: i64) -> Result<u32> {
    match h {
        0 => Ok(1),
        -1 => Ok(2),
        1 => Ok(3),
        _ => Err(Error::InvalidInput(format!("Lambert branch {h} outside {{-1, 0, 1}}"))),
    }
}

/// Roots of `x^x - m x + t`.
///
/// Field 1 inverts `x^x` as `e^(W_h(log w + 2 pi i k))` around `w = -t` for
/// every `h` in `h_set` and `k` in `k_range`; field 2 expands on `x` around
/// `t/m`. Both are refined, merged and filtered to `|x^x - m x + t| <= 1e-9`.
pub fn selfpower_solve(
    m: Complex64,
    t: Complex64,
    k_range: (i64, i64),
    h_set: &[i64],
    terms: usize,
) -> Result<Solution> {
    let eq = selfpower_equation(m, t)?;
    let mut branches = Vec::new();
    for &h in h_set {
        let q = category(h)?;
        branches.extend((k_range.0..=k_range.1).map(|s| BranchSpec::new(1, q, s)));
    }
    if m != Complex64::new(0.0, 0.0) {
        branches.push(BranchSpec::new(2, 1, 0));
    }
    let opts = SolveOptions {
        terms,
        tol: 1e-13,
        damp: true,
        ..Default::default()
    };
    let mut sol = solve_branches(&eq, &branches, &opts);
    sol.field.roots.retain(|r| r.residual <= SELFPOWER_RESIDUAL);
    sol.field.sort_by_position();
    Ok(sol)
}
