use num_complex::Complex64;

use crate::engine::{
    lagrange_series, newton, solve_all, BranchSpec, Equation, RootRecord, SolveOptions, Solution, Term, TermFunction,
};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::oracle::{count_zeros_fn, Rectangle};
use crate::specialfn::log_branch;

/// Characteristic function `h(l) = l (1 - C e^(-l r)) - a - w e^(-l nu)` of a
/// neutral delay equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdeCharSpec {
    pub c: Complex64,
    pub a: Complex64,
    pub w: Complex64,
    pub r: f64,
    pub nu: f64,
}

impl DdeCharSpec {
    pub fn new(c: Complex64, a: Complex64, w: Complex64, r: f64, nu: f64) -> Result<Self> {
        if !(r >= 0.0 && nu >= 0.0 && r.is_finite() && nu.is_finite()) {
            return Err(Error::InvalidInput(format!("delays must be finite and >= 0, got r={r}, nu={nu}")));
        }
        Ok(Self { c, a, w, r, nu })
    }

    pub fn eval(&self, l: Complex64) -> Complex64 {
        l * (1.0 - self.c * (-l * self.r).exp()) - self.a - self.w * (-l * self.nu).exp()
    }

    pub fn derivative(&self, l: Complex64) -> Complex64 {
        let e = (-l * self.r).exp();
        1.0 - self.c * e * (1.0 - l * self.r) + self.w * self.nu * (-l * self.nu).exp()
    }

    /// `h` as an engine equation. Zero delays fold their term into the linear or constant part.
    pub fn equation(&self) -> Result<Equation> {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut linear = one;
        let mut constant = -self.a;
        let mut terms = Vec::new();
        if self.c != zero {
            if self.r == 0.0 {
                linear -= self.c;
            } else {
                terms.push(Term::new(-self.c, TermFunction::ZExpScaled(Complex64::new(-self.r, 0.0))));
            }
        }
        if self.w != zero {
            if self.nu == 0.0 {
                constant -= self.w;
            } else {
                terms.push(Term::new(-self.w, TermFunction::ExpScaled(Complex64::new(-self.nu, 0.0))));
            }
        }
        if linear != zero {
            terms.insert(0, Term::new(linear, TermFunction::Power(one)));
        }
        Equation::new(terms, constant)
    }
}

/// Category tag for roots from the neutral chain expansion.
pub const NEUTRAL_CHAIN_CATEGORY: u32 = 2;

/// Term index of `-C l e^(-l r)` in [`DdeCharSpec::equation`].
fn delayed_term_index(eq: &Equation) -> Option<usize> {
    eq.terms()
        .iter()
        .position(|t| matches!(t.func, TermFunction::ZExpScaled(_)))
        .map(|i| i + 1)
}

/// Series seed near `l_s = -(Log(1/C) + 2 pi i s) / r` for
/// `l (1 - C e^(-l r)) = mu (a + w e^(-l nu))`.
///
/// Dividing by `l` and inverting `e^(-l r)` around `1/C` leaves
/// `phi = mu (a + w e^(-l nu)) / (C l)`, which is small far from the origin.
fn neutral_chain_series(spec: &DdeCharSpec, s: i64, mu: f64, terms: usize) -> Result<(Complex64, usize, bool)> {
    let w0 = spec.c.inv();
    let branch = log_branch(w0, s)?;
    let out = lagrange_series(w0, terms, |w: &Jet| {
        let z = w.ln_with(branch)?.scale(Complex64::new(-1.0 / spec.r, 0.0));
        let mut num = Jet::constant(spec.a, w0, w.len());
        if spec.w != Complex64::new(0.0, 0.0) {
            num = &num + &z.scale(Complex64::new(-spec.nu, 0.0)).exp().scale(spec.w);
        }
        let phi = num.div_jet(&z.scale(spec.c / mu))?;
        Ok((z, phi))
    })?;
    let seed = if out.converged { out.sum } else { out.optimal };
    Ok((seed, out.terms_used(), out.converged))
}

const CONTINUATION_STEPS: usize = 64;

/// Chain root on winding `s`, refined on `h`.
///
/// When Newton cannot reach a root from the plain series, the forcing
/// `a + w e^(-l nu)` is damped by `mu = e^-(j+1)` until the series converges
/// and `mu` is carried back to 1 along a path bowed into the upper half
/// plane, which steps around the real collision of chain and origin roots.
fn neutral_chain_root(spec: &DdeCharSpec, s: i64, terms: usize, tol: f64) -> Result<(Complex64, usize, bool)> {
    let h = |l: Complex64| Ok((spec.eval(l), spec.derivative(l)));
    let (seed, used, converged) = neutral_chain_series(spec, s, 1.0, terms)?;
    let direct = newton(h, seed, tol, 100, Some(0.5));
    if let Ok(n) = direct {
        return Ok((n.z, used, converged));
    }
    for j in 1..=crate::engine::MAX_DAMPING {
        let mu0 = (-(j as f64 + 1.0)).exp();
        let (seed, used, converged) = neutral_chain_series(spec, s, mu0, terms)?;
        if !converged {
            continue;
        }
        let mut z = seed;
        for i in 1..=CONTINUATION_STEPS {
            let tau = i as f64 / CONTINUATION_STEPS as f64;
            let mu = Complex64::from_polar(mu0.powf(1.0 - tau), 0.5 * std::f64::consts::PI * (std::f64::consts::PI * tau).sin());
            let forced = |l: Complex64| {
                let force = spec.a + spec.w * (-l * spec.nu).exp();
                let dforce = -spec.w * spec.nu * (-l * spec.nu).exp();
                let unforced = l * (1.0 - spec.c * (-l * spec.r).exp());
                let dunforced = 1.0 - spec.c * (-l * spec.r).exp() * (1.0 - l * spec.r);
                Ok((unforced - mu * force, dunforced - mu * dforce))
            };
            z = newton(forced, z, tol, 100, None)?.z;
        }
        let n = newton(h, z, tol, 100, None)?;
        return Ok((n.z, used, false));
    }
    Err(direct.err().unwrap_or(Error::Divergence("neutral chain damping never converged".into())))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DdeResult {
    /// Engine roots inside `region`.
    pub solution: Solution,
    /// Argument-principle count over `region`.
    pub contour_count: i64,
    /// The rectangle actually used, after any nudge off a root.
    pub region: Rectangle,
}

/// Residual bound on returned roots.
pub const DDE_RESIDUAL: f64 = 1e-9;

const MAX_NUDGES: usize = 8;

fn nudged(region: Rectangle, step: usize) -> Result<Rectangle> {
    let d = 1e-3 * step as f64 * (region.re_max - region.re_min).max(region.im_max - region.im_min);
    Rectangle::new(region.re_min - d, region.re_max + d, region.im_min - d, region.im_max + d)
}

/// Characteristic roots in `region` from the engine's branch expansions over
/// windings `k_range`, checked against the argument-principle count.
///
/// Besides every branch of every term, the neutral chain `1 - C e^(-l r) = 0`
/// is expanded on its own; those roots carry category
/// [`NEUTRAL_CHAIN_CATEGORY`] on the delayed term. For real specs the
/// conjugate of every complex root is refined and added under the same branch.
///
/// A count mismatch is reported in the diagnostics rather than as an error.
pub fn dde_char_roots(spec: DdeCharSpec, region: Rectangle, k_range: (i64, i64)) -> Result<DdeResult> {
    let mut used = region;
    let mut notes = Vec::new();
    let h = |l: Complex64| Ok((spec.eval(l), spec.derivative(l)));
    let mut count = None;
    for step in 0..=MAX_NUDGES {
        if step > 0 {
            used = nudged(region, step)?;
        }
        match count_zeros_fn(h, used) {
            Ok(n) => {
                count = Some(n);
                break;
            }
            Err(Error::BoundaryTooClose { distance }) => {
                notes.push(format!("root {distance:.1e} from the boundary; region nudged"));
            }
            Err(e) => return Err(e),
        }
    }
    let contour_count = count.ok_or(Error::BoundaryTooClose { distance: 0.0 })?;

    let eq = spec.equation()?;
    let opts = SolveOptions {
        s_range: k_range,
        terms: 40,
        tol: 1e-13,
        reciprocal: false,
        ..Default::default()
    };
    let mut all = solve_all(&eq, &opts);
    if let Some(k) = delayed_term_index(&eq) {
        for s in k_range.0..=k_range.1 {
            let b = BranchSpec::new(k, NEUTRAL_CHAIN_CATEGORY, s);
            let found = neutral_chain_root(&spec, s, opts.terms, opts.tol)
                .and_then(|(z, used, converged)| RootRecord::new(&eq, z, b, used, true, converged));
            match found {
                Ok(r) => all.field.insert(r),
                Err(e) => all.diagnostics.push(format!("{b} (neutral chain): {e}")),
            }
        }
    }
    if eq.is_real() {
        for r in all.field.roots.clone() {
            if r.z.im.abs() <= 1e-12 * r.z.norm().max(1.0) {
                continue;
            }
            if let Ok(n) = newton(h, r.z.conj(), opts.tol, opts.max_newton, Some(0.5)) {
                let mut twin = r.clone();
                twin.z = n.z;
                twin.residual = n.residual;
                all.field.insert(twin);
            }
        }
    }
    let mut solution = Solution::empty(opts.dedup_tol);
    solution.diagnostics = notes;
    solution.diagnostics.extend(all.diagnostics);
    solution.unrescued = all.unrescued;
    for mut r in all.field.roots {
        if !used.contains(r.z) {
            continue;
        }
        let value = spec.eval(r.z).norm();
        if value > DDE_RESIDUAL {
            solution.diagnostics.push(format!("root {} dropped: |h| = {value:.2e}", r.z));
            continue;
        }
        let mult = eq.multiplicity(r.z, 1e-6);
        if mult > 1 {
            solution.diagnostics.push(format!("root {} has multiplicity {mult}", r.z));
        }
        r.residual = value;
        solution.field.insert(r);
    }
    solution.field.sort_by_position();
    let found = solution.field.len() as i64;
    if found != contour_count {
        solution
            .diagnostics
            .push(format!("engine found {found} roots, contour count is {contour_count}"));
    }
    Ok(DdeResult {
        solution,
        contour_count,
        region: used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn linear_limit() {
        let spec = DdeCharSpec::new(c(0.0), c(0.3), c(0.4), 1.0, 0.0).unwrap();
        let region = Rectangle::new(-5.0, 5.0, -5.0, 5.0).unwrap();
        let r = dde_char_roots(spec, region, (0, 0)).unwrap();
        assert_eq!(r.contour_count, 1);
        assert_eq!(r.solution.field.len(), 1);
        assert!((r.solution.field.roots[0].z - 0.7).norm() < 1e-14);
    }

    #[test]
    fn neutral_example_matches_contour_count() {
        let spec = DdeCharSpec::new(c(0.5), c(-1.0), c(0.5), 1.0, 0.5).unwrap();
        let region = Rectangle::new(-5.0, 5.0, -20.0, 20.0).unwrap();
        let r = dde_char_roots(spec, region, (-4, 4)).unwrap();
        assert!(r.contour_count > 0);
        assert_eq!(r.solution.field.len() as i64, r.contour_count, "{:?}", r.solution.diagnostics);
        for root in &r.solution.field.roots {
            assert!(spec.eval(root.z).norm() <= DDE_RESIDUAL);
        }
    }

    #[test]
    fn double_root_at_origin_is_flagged() {
        let spec = DdeCharSpec::new(c(1.0), c(0.0), c(0.0), 1.0, 0.0).unwrap();
        let region = Rectangle::new(-1.0, 1.0, -7.0, 7.0).unwrap();
        let r = dde_char_roots(spec, region, (-2, 2)).unwrap();
        assert!(r.solution.field.roots.iter().any(|x| x.z.norm() < 1e-6), "{:?}", r.solution);
        assert!(r.solution.diagnostics.iter().any(|d| d.contains("multiplicity 2")));
    }
}
