use num_complex::Complex64;

use super::convergence::{convergence_check, enumerate_branches};
use super::damping::damped_root;
use super::equation::Equation;
use super::lagrange::lagrange_series_for;
use super::newton::newton_iterations;
use super::root::{BranchSpec, RootField, RootRecord, DEDUP_TOL};
use crate::is_finite;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    /// Inclusive winding range.
    pub s_range: (i64, i64),
    /// Series terms `J`.
    pub terms: usize,
    /// Residual tolerance, relative to `max(1, |z|)`.
    pub tol: f64,
    pub max_newton: usize,
    /// Contour radius for the advisory convergence check.
    pub radius: f64,
    pub refine: bool,
    /// Also expand integer-power equations in `1/z`.
    pub reciprocal: bool,
    /// Retry diverged branches with [`damped_root`].
    pub damp: bool,
    pub dedup_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            s_range: (-3, 3),
            terms: 30,
            tol: 1e-10,
            max_newton: 100,
            radius: 1.0,
            refine: true,
            reciprocal: true,
            damp: false,
            dedup_tol: DEDUP_TOL,
        }
    }
}

/// What happened on one branch.
#[derive(Debug, Clone, PartialEq)]
pub enum BranchResult {
    /// Series converged, refinement (if any) succeeded.
    Root(RootRecord),
    /// Series diverged or overflowed but Newton reached a root from its seed.
    Rescued(RootRecord),
    /// Series diverged and no root came out of it.
    Diverged(String),
    /// Branch could not be expanded or refined at all.
    Failed(String),
}

/// `solve_all` output: the merged field plus per-branch notes.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub field: RootField,
    pub diagnostics: Vec<String>,
    /// Branches whose series diverged without a Newton rescue.
    pub unrescued: usize,
}

/// Expands, optionally refines, and classifies a single branch.
pub fn solve_branch(eq: &Equation, b: BranchSpec, opts: &SolveOptions) -> BranchResult {
    let series = match lagrange_series_for(eq, b, opts.terms) {
        Ok(s) => s,
        Err(e) => return BranchResult::Failed(format!("{b}: {e}")),
    };
    let seed = if series.converged { series.sum } else { series.optimal };
    let healthy = series.converged && !series.overflowed;
    if !is_finite(seed) {
        return BranchResult::Diverged(format!("{b}: non-finite series"));
    }
    if !opts.refine {
        if series.overflowed {
            return BranchResult::Diverged(format!("{b}: series overflowed after {} terms", series.terms_used()));
        }
        return match RootRecord::new(eq, seed, b, series.terms_used(), false, series.converged) {
            Ok(r) => BranchResult::Root(r),
            Err(e) => BranchResult::Failed(format!("{b}: {e}")),
        };
    }
    match newton_iterations(eq, seed, opts.tol, opts.max_newton) {
        Ok(out) => {
            let record = RootRecord {
                z: out.z,
                branches: vec![b],
                residual: out.residual,
                series_terms: series.terms_used(),
                refined: true,
                converged: series.converged,
            };
            if healthy {
                BranchResult::Root(record)
            } else {
                BranchResult::Rescued(record)
            }
        }
        Err(e) if healthy => BranchResult::Failed(format!("{b}: refinement failed: {e}")),
        Err(e) if opts.damp => match damped_root(eq, b, opts.terms, opts.tol) {
            Ok(r) => BranchResult::Rescued(r),
            Err(d) => BranchResult::Diverged(format!("{b}: series diverged, refinement failed: {e}; damping: {d}")),
        },
        Err(e) => BranchResult::Diverged(format!("{b}: series diverged, refinement failed: {e}")),
    }
}

/// Term indices with nonzero coefficient, smallest `|m_k|` first.
pub fn expansion_order(eq: &Equation) -> Vec<usize> {
    let mut ks: Vec<usize> = (1..=eq.terms().len())
        .filter(|&k| eq.terms()[k - 1].coef != Complex64::new(0.0, 0.0))
        .collect();
    ks.sort_by(|&a, &b| {
        eq.terms()[a - 1]
            .coef
            .norm()
            .total_cmp(&eq.terms()[b - 1].coef.norm())
            .then(a.cmp(&b))
    });
    ks
}

fn direct_branches(eq: &Equation, opts: &SolveOptions) -> Vec<BranchSpec> {
    expansion_order(eq)
        .into_iter()
        .flat_map(|k| enumerate_branches(eq, k, opts.s_range.0, opts.s_range.1))
        .collect()
}

fn merge(results: Vec<(BranchSpec, BranchResult)>, opts: &SolveOptions, out: &mut Solution) {
    let mut results = results;
    results.sort_by_key(|(b, _)| *b);
    for (b, result) in results {
        match result {
            BranchResult::Root(r) | BranchResult::Rescued(r) => {
                let keep = !opts.refine || r.residual <= opts.tol * r.z.norm().max(1.0);
                if keep {
                    if !r.converged {
                        out.diagnostics.push(format!("{b}: series not converged, kept after refinement"));
                    }
                    out.field.insert(r);
                } else {
                    out.diagnostics.push(format!("{b}: residual {:e} above tolerance", r.residual));
                }
            }
            BranchResult::Diverged(msg) => {
                out.unrescued += 1;
                out.diagnostics.push(msg);
            }
            BranchResult::Failed(msg) => out.diagnostics.push(msg),
        }
    }
}

/// Runs the given branches and merges them like [`solve_all`], without the
/// convergence advisory or the reciprocal pass.
pub fn solve_branches(eq: &Equation, branches: &[BranchSpec], opts: &SolveOptions) -> Solution {
    let mut out = Solution {
        field: RootField::new(opts.dedup_tol),
        diagnostics: Vec::new(),
        unrescued: 0,
    };
    let results = branches.iter().map(|&b| (b, solve_branch(eq, b, opts))).collect();
    merge(results, opts, &mut out);
    out
}

impl Solution {
    pub fn empty(dedup_tol: f64) -> Self {
        Self {
            field: RootField::new(dedup_tol),
            diagnostics: Vec::new(),
            unrescued: 0,
        }
    }

    /// Merges another solution's roots and notes into this one.
    pub fn absorb(&mut self, other: Solution) {
        self.field.extend(other.field);
        self.diagnostics.extend(other.diagnostics);
        self.unrescued += other.unrescued;
    }
}

/// Runs every branch of every term and merges the results.
///
/// Integer-power equations are also expanded in `y = 1/z` when
/// `opts.reciprocal` is set; those roots are refined on the original
/// equation and tagged as reciprocal branches.
pub fn solve_all(eq: &Equation, opts: &SolveOptions) -> Solution {
    let mut out = Solution {
        field: RootField::new(opts.dedup_tol),
        diagnostics: Vec::new(),
        unrescued: 0,
    };
    for k in expansion_order(eq) {
        match convergence_check(eq, k, 64, opts.radius) {
            Ok(r) if r.holds => {}
            Ok(r) => out.diagnostics.push(format!(
                "term {k}: convergence inequality fails at radius {} (margin {:.3e})",
                opts.radius, r.margin
            )),
            Err(e) => out.diagnostics.push(format!("term {k}: {e}")),
        }
    }
    let results = direct_branches(eq, opts)
        .into_iter()
        .map(|b| (b, solve_branch(eq, b, opts)))
        .collect();
    merge(results, opts, &mut out);

    if opts.reciprocal {
        if let Some(inv) = eq.reciprocal() {
            let results = direct_branches(&inv, opts)
                .into_iter()
                .map(|b| {
                    let tagged = BranchSpec::reciprocal(b.k, b.q, b.s);
                    (tagged, reciprocal_branch(eq, &inv, b, tagged, opts))
                })
                .collect();
            merge(results, opts, &mut out);
        }
    }
    complete_conjugates(eq, opts, &mut out);
    out
}

/// Adds the missing conjugate of every complex root of a real equation.
///
/// Conjugate pairs can come from windings on opposite ends of the range, so a
/// truncated range may find only one of them. The added root is refined when
/// `opts.refine` is set and carries its partner's branches.
pub fn complete_conjugates(eq: &Equation, opts: &SolveOptions, out: &mut Solution) {
    if !eq.is_real() {
        return;
    }
    let tol = out.field.dedup_tol;
    for r in out.field.roots.clone() {
        let target = r.z.conj();
        if out.field.roots.iter().any(|o| o.same_as(target, tol)) {
            continue;
        }
        let z = if opts.refine {
            match newton_iterations(eq, target, opts.tol, opts.max_newton) {
                Ok(n) => n.z,
                Err(e) => {
                    out.diagnostics.push(format!("{}: conjugate of {} not refined: {e}", r.branch(), r.z));
                    continue;
                }
            }
        } else {
            target
        };
        match RootRecord::new(eq, z, r.branch(), r.series_terms, opts.refine, r.converged) {
            Ok(mut c) if !opts.refine || c.residual <= opts.tol * c.z.norm().max(1.0) => {
                c.branches = r.branches.clone();
                out.diagnostics.push(format!("{}: conjugate of {} added", r.branch(), r.z));
                out.field.insert(c);
            }
            Ok(c) => out.diagnostics.push(format!("{}: conjugate {} has residual {:e}", r.branch(), c.z, c.residual)),
            Err(e) => out.diagnostics.push(format!("{}: conjugate of {}: {e}", r.branch(), r.z)),
        }
    }
}

fn reciprocal_branch(eq: &Equation, inv: &Equation, b: BranchSpec, tagged: BranchSpec, opts: &SolveOptions) -> BranchResult {
    let mapped = match solve_branch(inv, b, &SolveOptions { refine: false, ..opts.clone() }) {
        BranchResult::Root(r) => r,
        BranchResult::Rescued(r) => r,
        BranchResult::Diverged(m) => {
            // a divergent reciprocal expansion still leaves the direct pass
            return BranchResult::Failed(format!("1/z {m}"));
        }
        BranchResult::Failed(m) => return BranchResult::Failed(format!("1/z {m}")),
    };
    if mapped.z.norm() < 1e-300 {
        return BranchResult::Failed(format!("{tagged}: root at infinity"));
    }
    let z = mapped.z.inv();
    let record = |z: Complex64, refined: bool| {
        RootRecord::new(eq, z, tagged, mapped.series_terms, refined, mapped.converged)
    };
    if !opts.refine {
        return match record(z, false) {
            Ok(r) => BranchResult::Root(r),
            Err(e) => BranchResult::Failed(format!("{tagged}: {e}")),
        };
    }
    match newton_iterations(eq, z, opts.tol, opts.max_newton) {
        Ok(n) => match record(n.z, true) {
            Ok(r) if mapped.converged => BranchResult::Root(r),
            Ok(r) => BranchResult::Rescued(r),
            Err(e) => BranchResult::Failed(format!("{tagged}: {e}")),
        },
        Err(e) => BranchResult::Failed(format!("{tagged}: refinement failed: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{Term, TermFunction};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn golden_quadratic() {
        let eq = Equation::polynomial(&[c(-1.0), c(-1.0), c(1.0)]).unwrap();
        let opts = SolveOptions {
            s_range: (0, 0),
            ..Default::default()
        };
        let mut sol = solve_all(&eq, &opts);
        sol.field.sort_by_position();
        let v = sol.field.values();
        assert_eq!(v.len(), 2, "{:?}", sol.diagnostics);
        assert!((v[0] - (-0.6180339887498949)).norm() < 1e-10);
        assert!((v[1] - 1.618033988749895).norm() < 1e-10);
    }

    #[test]
    fn septic_has_seven_roots() {
        let eq = Equation::polynomial(&[c(7.0), c(0.0), c(0.0), c(3.0), c(0.0), c(0.0), c(0.0), c(1.0)]).unwrap();
        let sol = solve_all(&eq, &SolveOptions::default());
        assert_eq!(sol.field.len(), 7);
        for r in &sol.field.roots {
            assert!(r.residual <= 1e-10 * r.z.norm().max(1.0));
        }
    }

    #[test]
    fn sin_exp_has_real_root() {
        let eq = Equation::new(
            vec![Term::new(c(0.5), TermFunction::Sin), Term::new(c(-15.0), TermFunction::Exp)],
            c(std::f64::consts::PI),
        )
        .unwrap();
        let sol = solve_all(
            &eq,
            &SolveOptions {
                s_range: (-5, 0),
                ..Default::default()
            },
        );
        let real: Vec<_> = sol.field.roots.iter().filter(|r| r.z.im.abs() < 1e-9).collect();
        assert!(real.iter().any(|r| (r.z.re + 1.7340).abs() < 1e-3), "{:?}", sol.field.values());
        assert!(sol.field.roots.iter().any(|r| r.z.im.abs() > 1e-3));
    }

    #[test]
    fn conjugates_completed_at_range_edge() {
        let eq = Equation::new(
            vec![Term::new(c(0.5), TermFunction::Sin), Term::new(c(-15.0), TermFunction::Exp)],
            c(std::f64::consts::PI),
        )
        .unwrap();
        let sol = solve_all(
            &eq,
            &SolveOptions {
                s_range: (-8, 8),
                ..Default::default()
            },
        );
        assert!(sol.diagnostics.iter().any(|d| d.contains("conjugate of")));
        for r in &sol.field.roots {
            assert!(sol.field.roots.iter().any(|o| (o.z - r.z.conj()).norm() < 1e-8), "{}", r.z);
            assert!(r.residual <= 1e-10 * r.z.norm().max(1.0));
        }
    }
}
