//! Checks shared by the acceptance run and the property suites.
//!
//! Each check returns a one-line summary on success and the first violation
//! on failure.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use genroots::engine::{
    solve_all, solve_branches, BranchSpec, Equation, RootField, RootRecord, SolveOptions, Term, TermFunction,
    DEDUP_TOL,
};
use genroots::famous::{
    dde_char_roots, hypersphere_max, kepler_solve, zexpz_solve, DdeCharSpec, HypersphereKind, KeplerSpec, Registry,
    JUPITER_ECCENTRICITY, JUPITER_MEAN_ANOMALY,
};
use genroots::jet::Jet;
use genroots::oracle::{
    aberth_roots, argument_principle_count_fn, compare_root_sets, grid_newton_scan, Rectangle,
};
use genroots::specialfn::{digamma, gamma, lambert_w, BranchIndex};
use genroots::trinomial::{closed_term, quintic_bring_jerrard, roots_L1, roots_L2, Subfield, TrinomialSpec};
use genroots::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type Check = Result<String, String>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: f64, what: &str) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit, || {
        format!("{what} took {:.2} s, limit {limit} s", elapsed.as_secs_f64())
    })
}

pub const WIEN_CONSTANT: f64 = 4.965_114_231_744_276_303_7;

pub fn wien() -> Check {
    let start = Instant::now();
    let report = Registry::standard().run("wien", &Default::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let x = report
        .values
        .iter()
        .find(|(k, _)| k == "x")
        .map(|(_, v)| *v)
        .ok_or("no x in the wien report")?;
    ensure((x - WIEN_CONSTANT).abs() <= 1e-12, || format!("x = {x:.17}"))?;
    within(elapsed, 1.0, "wien")?;
    Ok(format!("x = {x:.17}, |dx| = {:.1e}, {:.3} s", (x - WIEN_CONSTANT).abs(), elapsed.as_secs_f64()))
}

pub fn kepler_jupiter() -> Check {
    let (m, e) = (JUPITER_MEAN_ANOMALY, JUPITER_ECCENTRICITY);
    ensure((m - 10.0 * PI / 11.8622).abs() == 0.0 && e == 0.04844, || "Jupiter constants changed".into())?;
    let r = kepler_solve(KeplerSpec::new(m, e).map_err(|x| x.to_string())?, 30).map_err(|x| x.to_string())?;
    let big_e = r.eccentric_anomaly;
    let residual = (big_e - e * big_e.sin() - m).abs();
    ensure((big_e - 2.6704).abs() <= 5e-4, || format!("E = {big_e}"))?;
    ensure(residual <= 1e-12, || format!("residual {residual:e}"))?;
    Ok(format!("E = {big_e:.12}, residual {residual:.1e}"))
}

/// `psi(n/2 + shift) - ln pi`, the stationarity condition of the measure.
fn digamma_condition(n: f64, shift: f64) -> f64 {
    digamma(n / 2.0 + shift).unwrap() - PI.ln()
}

pub fn hypersphere() -> Check {
    let mut lines = Vec::new();
    for (kind, name, shift, lo, hi, integer) in [
        (HypersphereKind::Surface, "surface", 0.0, 7.27218, 7.18109, 7),
        (HypersphereKind::Volume, "volume", 1.0, 5.27218, 5.18109, 5),
    ] {
        let r = hypersphere_max(kind).map_err(|e| e.to_string())?;
        let (a, b) = (r.lower_bound_root.root, r.upper_bound_root.root);
        ensure((a - lo).abs() <= 1e-4 && (b - hi).abs() <= 1e-4, || format!("{name}: bound roots {a}, {b}"))?;
        let g = digamma_condition(r.true_root, shift);
        ensure(g.abs() <= 1e-10, || format!("{name}: true root {} leaves psi residual {g:e}", r.true_root))?;
        let (l, u) = (a.min(b), a.max(b));
        ensure(l < r.true_root && r.true_root < u, || {
            format!("{name}: true root {} not inside ({l}, {u})", r.true_root)
        })?;
        ensure(r.integer_answer == integer, || format!("{name}: integer answer {}", r.integer_answer))?;
        lines.push(format!("{name} {b:.5} < {:.5} < {a:.5} -> {}", r.true_root, r.integer_answer));
    }
    Ok(lines.join("; "))
}

pub fn septic_coefficients() -> Vec<Complex64> {
    [7.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0, 1.0].iter().map(|&x| c(x, 0.0)).collect()
}

pub fn septic_trinomial() -> Check {
    let start = Instant::now();
    let spec = TrinomialSpec::real(3.0, 7.0, 3.0, 7.0).map_err(|e| e.to_string())?;
    let mut field = roots_L1(&spec, 40).field;
    field.extend(roots_L2(&spec, 40).field);
    let elapsed = start.elapsed();
    let oracle = aberth_roots(&septic_coefficients()).map_err(|e| e.to_string())?;
    let report = compare_root_sets(&field.values(), &oracle, 1e-8);
    ensure(report.is_bijection() && report.matched.len() == 7, || format!("{report:?}"))?;
    ensure(report.max_distance <= 1e-8, || format!("max distance {:e}", report.max_distance))?;
    within(elapsed, 5.0, "L1 u L2")?;
    Ok(format!("7/7 matched, max distance {:.1e}, {:.3} s", report.max_distance, elapsed.as_secs_f64()))
}

pub fn lambert_family() -> Check {
    let ts = [c(0.2, 0.0), c(1.0, 0.0), c(std::f64::consts::E, 0.0), c(-3.0, 0.0), c(2.0, 2.0)];
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for t in ts {
        for k in -1..=1 {
            let sol = zexpz_solve(t, (k, k), 30).map_err(|e| format!("t={t}, k={k}: {e}"))?;
            let w = lambert_w(k, t).map_err(|e| format!("W_{k}({t}): {e}"))?;
            ensure(sol.field.len() == 1, || format!("t={t}, k={k}: {} roots", sol.field.len()))?;
            let z = sol.field.roots[0].z;
            let d = (z - w).norm() / w.norm().max(1.0);
            let residual = (z * z.exp() - t).norm();
            ensure(d <= 1e-9, || format!("t={t}, k={k}: {z} vs W = {w}"))?;
            ensure(residual <= 1e-10, || format!("t={t}, k={k}: residual {residual:e}"))?;
            worst = worst.max(d);
            count += 1;
        }
    }
    Ok(format!("{count} (t, k) pairs, worst relative distance {worst:.1e}"))
}

pub fn quintic() -> Check {
    let roots = quintic_bring_jerrard(c(0.1, 0.0)).map_err(|e| e.to_string())?;
    let coeffs = [0.1, -1.0, 0.0, 0.0, 0.0, 1.0].map(|x| c(x, 0.0));
    let oracle = aberth_roots(&coeffs).map_err(|e| e.to_string())?;
    let report = compare_root_sets(&roots, &oracle, 1e-9);
    ensure(report.is_bijection() && report.matched.len() == 5, || format!("t=0.1: {report:?}"))?;
    let zero = quintic_bring_jerrard(c(0.0, 0.0)).map_err(|e| e.to_string())?;
    let expected = [c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)];
    let exact = compare_root_sets(&zero, &expected, 1e-12);
    ensure(exact.is_bijection(), || format!("t=0: {zero:?}"))?;
    Ok(format!("t=0.1 max distance {:.1e}; t=0 max distance {:.1e}", report.max_distance, exact.max_distance))
}

/// Random trinomial `x^r2 + m1 x^r1 + t` with integer `1 <= r1 < r2 <= 9`.
pub fn random_integer_trinomial(rng: &mut StdRng) -> TrinomialSpec {
    let r2 = rng.gen_range(2..=9);
    let r1 = rng.gen_range(1..r2);
    let coef = |rng: &mut StdRng| {
        let v = rng.gen_range(0.3..3.0);
        if rng.gen_bool(0.5) {
            v
        } else {
            -v
        }
    };
    let m1 = coef(rng);
    let t = coef(rng);
    TrinomialSpec::real(r1 as f64, r2 as f64, m1, t).unwrap()
}

/// Agreement of engine series terms with the closed Gamma-ratio terms.
#[derive(Debug, Default)]
pub struct TermAgreement {
    pub compared: usize,
    /// Terms off by more than `1e-11` relative to the larger of the two.
    pub strict_failures: usize,
    pub worst_relative: f64,
    /// Terms on branches whose series converged.
    pub converged_compared: usize,
    /// Of those, terms off by more than `1e-11` relative plus `1e-12` of `max(1, series scale)`.
    pub converged_failures: usize,
    pub first_failure: Option<String>,
    pub first_converged_failure: Option<String>,
}

/// Engine term `j` against `closed_term` for `j <= terms` on random integer
/// trinomials, both subfields, a random winding each.
pub fn term_agreement(specs: usize, terms: usize, seed: u64) -> Result<TermAgreement, String> {
    let mut rng = rng(seed);
    let mut out = TermAgreement::default();
    let zero = Complex64::new(0.0, 0.0);
    for n in 0..specs {
        let spec = random_integer_trinomial(&mut rng);
        let eq = spec.equation();
        for (which, k, r) in [(Subfield::L1, 1, spec.r1.re), (Subfield::L2, 2, spec.r2.re)] {
            let s = rng.gen_range(0..r as i64);
            let series = genroots::engine::lagrange_series_for(&eq, BranchSpec::new(k, 1, s), terms)
                .map_err(|e| format!("spec {n} {which:?}: {e}"))?;
            ensure(series.terms.len() == terms, || {
                format!("spec {n} {which:?} s={s}: overflow after {} terms", series.terms.len())
            })?;
            let scale = series.terms.iter().map(|t| t.norm()).fold(series.leading.norm().max(1.0), f64::max);
            for j in 1..=terms {
                let closed = closed_term(j, s, &spec, which).map_err(|e| format!("spec {n} j={j}: {e}"))?;
                let engine = series.terms[j - 1];
                let size = engine.norm().max(closed.norm());
                let err = (closed - engine).norm();
                out.compared += 1;
                if err > 1e-11 * size {
                    out.strict_failures += 1;
                    if closed != zero {
                        out.worst_relative = out.worst_relative.max(err / size);
                    }
                    out.first_failure.get_or_insert_with(|| {
                        format!("r1={}, r2={}, {which:?} s={s} j={j}: {engine} vs {closed}", spec.r1.re, spec.r2.re)
                    });
                }
                if series.converged {
                    out.converged_compared += 1;
                    if err > 1e-11 * size + 1e-12 * scale {
                        out.converged_failures += 1;
                        out.first_converged_failure.get_or_insert_with(|| {
                            format!(
                                "r1={}, r2={}, {which:?} s={s} j={j}: {engine} vs {closed}, scale {scale:.3e}",
                                spec.r1.re, spec.r2.re
                            )
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The strict relative comparison.
pub fn closed_form_agreement(specs: usize, terms: usize, seed: u64) -> Check {
    let a = term_agreement(specs, terms, seed)?;
    if a.strict_failures == 0 {
        return Ok(format!("{} terms within 1e-11 relative", a.compared));
    }
    Err(format!(
        "{}/{} terms exceed 1e-11 relative (worst {:.1e}, first {})",
        a.strict_failures,
        a.compared,
        a.worst_relative,
        a.first_failure.unwrap_or_default()
    ))
}

/// Terms of converged series, with an absolute floor at `1e-12` of `max(1, series scale)`.
pub fn closed_form_agreement_converged(specs: usize, terms: usize, seed: u64) -> Check {
    let a = term_agreement(specs, terms, seed)?;
    ensure(a.converged_compared > 0, || "no branch converged".into())?;
    ensure(a.converged_failures == 0, || {
        format!("{} of {} converged-branch terms: {a:?}", a.converged_failures, a.converged_compared)
    })?;
    Ok(format!(
        "all {} terms on converged branches within 1e-11 relative + 1e-12 of max(1, series scale)",
        a.converged_compared
    ))
}

pub fn sin_exp_equation() -> Equation {
    Equation::new(
        vec![Term::new(c(0.5, 0.0), TermFunction::Sin), Term::new(c(-15.0, 0.0), TermFunction::Exp)],
        c(PI, 0.0),
    )
    .unwrap()
}

pub fn sin_exp_showcase() -> Check {
    let eq = sin_exp_equation();
    let opts = SolveOptions::default();
    let l2 = solve_branches(&eq, &[BranchSpec::new(2, 1, 0)], &opts);
    let real: Vec<&RootRecord> = l2.field.roots.iter().filter(|r| r.z.im.abs() < 1e-12).collect();
    ensure(real.len() == 1, || format!("L2 s=0 gave {:?}", l2.field.values()))?;
    let root = real[0];
    let residual = eq.eval(root.z).map_err(|e| e.to_string())?.norm();
    ensure(residual <= 1e-10, || format!("L2 residual {residual:e}"))?;
    let region = Rectangle::new(-4.0, 1.0, -0.5, 0.5).unwrap();
    let scanned: Vec<Complex64> = grid_newton_scan(&eq, region, 101, 11, 1e-13)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|z| z.im.abs() < 1e-9)
        .collect();
    let cmp = compare_root_sets(&[root.z], &scanned, 1e-8);
    ensure(cmp.is_bijection(), || format!("real roots in scan {scanned:?} vs L2 {}", root.z))?;

    let windings: Vec<i64> = (-12..=0).collect();
    let family = |q: u32| {
        let branches: Vec<BranchSpec> = windings.iter().map(|&s| BranchSpec::new(1, q, s)).collect();
        solve_branches(&eq, &branches, &opts).field
    };
    let (l11, l12) = (family(1), family(2));
    let paired = l11
        .roots
        .iter()
        .filter(|r| r.residual <= 1e-10)
        .filter(|r| l12.roots.iter().any(|o| (o.z - r.z.conj()).norm() <= 1e-8))
        .count();
    ensure(paired >= 9, || format!("{paired} L1,1 roots have conjugates in L1,2: {:?}", l11.values()))?;
    Ok(format!(
        "L2 real root {:.15} (residual {residual:.1e}); {paired}/{} L1,1 roots conjugate-paired",
        root.z.re,
        l11.len()
    ))
}

pub fn dde_spec() -> DdeCharSpec {
    DdeCharSpec::new(c(0.5, 0.0), c(-1.0, 0.0), c(0.5, 0.0), 1.0, 0.5).unwrap()
}

/// Engine roots against an independent contour count of `h` on `region`.
pub fn dde_count(region: Rectangle, k_range: (i64, i64)) -> Check {
    let spec = dde_spec();
    let r = dde_char_roots(spec, region, k_range).map_err(|e| e.to_string())?;
    let h = |l: Complex64| Ok((spec.eval(l), spec.derivative(l)));
    let count = argument_principle_count_fn(h, r.region, 4000).map_err(|e| e.to_string())?;
    let found = r.solution.field.len() as i64;
    ensure(count == r.contour_count, || format!("independent count {count} vs reported {}", r.contour_count))?;
    ensure(found == count, || format!("{found} roots vs contour count {count}: {:?}", r.solution.field.values()))?;
    let worst = r.solution.field.roots.iter().map(|x| spec.eval(x.z).norm()).fold(0.0, f64::max);
    ensure(worst <= 1e-9, || format!("|h| = {worst:e}"))?;
    Ok(format!("{found} roots = contour count, max |h| {worst:.1e}"))
}

pub fn dde_example() -> Check {
    dde_count(Rectangle::new(-5.0, 5.0, -20.0, 20.0).unwrap(), (-4, 4))
}

/// Jet of the polynomial `p` (ascending coefficients) at `center`.
pub fn poly_jet(p: &[f64], center: f64, len: usize) -> Jet {
    let x = Jet::variable(c(center, 0.0), len);
    let mut acc = Jet::constant(c(0.0, 0.0), c(center, 0.0), len);
    for &a in p.iter().rev() {
        acc = acc.mul_jet(&x).add_scalar(c(a, 0.0));
    }
    acc
}

pub fn jet_convolution(samples: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    for _ in 0..samples {
        let poly = |rng: &mut StdRng| -> Vec<f64> {
            let n = rng.gen_range(1..=9);
            (0..n).map(|_| rng.gen_range(-8..=8) as f64).collect()
        };
        let (p, q) = (poly(&mut rng), poly(&mut rng));
        let center = rng.gen_range(-3..=3) as f64;
        let len = 17;
        let (jp, jq) = (poly_jet(&p, center, len), poly_jet(&q, center, len));
        let prod = jp.mul_jet(&jq);
        for k in 0..len {
            let conv: Complex64 = (0..=k).map(|i| jp.coeff(i) * jq.coeff(k - i)).sum();
            ensure(prod.coeff(k) == conv, || format!("p={p:?} q={q:?} k={k}: {} vs {conv}", prod.coeff(k)))?;
        }
        let mut pq = vec![0.0; p.len() + q.len() - 1];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                pq[i + j] += a * b;
            }
        }
        let direct = poly_jet(&pq, center, len);
        ensure(direct.coeffs() == prod.coeffs(), || format!("p={p:?} q={q:?}: jet of product differs"))?;
    }
    Ok(format!("{samples} polynomial pairs, exact"))
}

/// Random point with `|z| <= radius`, at least `gap` away from the poles of Gamma.
pub fn off_pole_point(rng: &mut StdRng, radius: f64, gap: f64) -> Complex64 {
    loop {
        let z = c(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius));
        let near_pole = z.re < 0.5 && (z.re - z.re.round()).abs() < gap && z.im.abs() < gap;
        if z.norm() <= radius && !near_pole && z.norm() > gap {
            return z;
        }
    }
}

pub fn gamma_recurrence(samples: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let z = off_pole_point(&mut rng, 20.0, 1e-3);
        let (g1, g) = (gamma(z + 1.0).map_err(|e| e.to_string())?, gamma(z).map_err(|e| e.to_string())?);
        let err = (g1 - z * g).norm() / g1.norm();
        ensure(err <= 1e-11, || format!("z = {z}: relative error {err:e}"))?;
        worst = worst.max(err);
    }
    Ok(format!("{samples} points, worst {worst:.1e}"))
}

pub fn gamma_reflection(samples: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let z = loop {
            let z = c(rng.gen_range(-10.0..10.0), rng.gen_range(-5.0..5.0));
            if (z.re - z.re.round()).abs() > 1e-3 || z.im.abs() > 1e-3 {
                break z;
            }
        };
        let g = gamma(z).map_err(|e| e.to_string())? * gamma(1.0 - z).map_err(|e| e.to_string())?;
        let v = g * (z * PI).sin() / PI;
        let err = (v - 1.0).norm();
        ensure(err <= 1e-10, || format!("z = {z}: {v}"))?;
        worst = worst.max(err);
    }
    Ok(format!("{samples} points, worst {worst:.1e}"))
}

fn random_term(rng: &mut StdRng) -> TermFunction {
    match rng.gen_range(0..7) {
        0 => TermFunction::Power(c(rng.gen_range(1..=9) as f64, 0.0)),
        1 => TermFunction::Power(c(rng.gen_range(0.2..4.0), rng.gen_range(-1.0..1.0))),
        2 => TermFunction::Exp,
        3 => TermFunction::Log,
        4 => TermFunction::Sin,
        5 => TermFunction::Cos,
        _ => TermFunction::ExpScaled(c(rng.gen_range(-3.0..3.0), rng.gen_range(-1.0..1.0))),
    }
}

/// `p(p^{-1}(w)) = w` on random terms, branches and arguments. Samples whose
/// branch is undefined at `w` are drawn again.
pub fn right_inverse(samples: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    let mut skipped = 0;
    let mut done = 0;
    while done < samples {
        let p = random_term(&mut rng);
        let q = rng.gen_range(1..=p.category_count());
        let s = rng.gen_range(-3..=3);
        let w = c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let z = match p.inverse(w, BranchIndex::new(q, s)) {
            Ok(z) => z,
            Err(_) => {
                skipped += 1;
                ensure(skipped <= samples, || "most samples fell outside the branch domains".into())?;
                continue;
            }
        };
        let back = p.eval(z).map_err(|e| format!("{p} at {z}: {e}"))?;
        let err = (back - w).norm() / w.norm().max(1.0);
        ensure(err <= 1e-12, || format!("{p}, q={q}, s={s}, w={w}: p(z) = {back}"))?;
        worst = worst.max(err);
        done += 1;
    }
    Ok(format!("{samples} samples ({skipped} redrawn), worst {worst:.1e}"))
}

/// Real-coefficient equations whose root fields must be closed under conjugation.
pub fn real_equations() -> Vec<(&'static str, Equation, SolveOptions)> {
    let poly = |a: &[f64]| Equation::polynomial(&a.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>()).unwrap();
    vec![
        ("x^7 + 3x^3 + 7", poly(&[7.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0, 1.0]), SolveOptions::default()),
        ("x^5 - x + 0.1", poly(&[0.1, -1.0, 0.0, 0.0, 0.0, 1.0]), SolveOptions { damp: true, ..Default::default() }),
        ("x^2 - x - 1", poly(&[-1.0, -1.0, 1.0]), SolveOptions::default()),
        ("sin z / 2 - 15 e^z + pi", sin_exp_equation(), SolveOptions { s_range: (-8, 8), ..Default::default() }),
    ]
}

pub fn conjugate_closure() -> Check {
    let mut lines = Vec::new();
    for (name, eq, opts) in real_equations() {
        let field = solve_all(&eq, &opts).field;
        for r in &field.roots {
            let partner = field.roots.iter().any(|o| (o.z - r.z.conj()).norm() <= field.dedup_tol.max(1e-8));
            ensure(partner, || format!("{name}: no conjugate for {}", r.z))?;
        }
        lines.push(format!("{name}: {}", field.len()));
    }
    Ok(format!("closed: {}", lines.join(", ")))
}

pub fn dedup_idempotence() -> Check {
    for (name, eq, opts) in real_equations() {
        let field = solve_all(&eq, &opts).field;
        let mut again = field.clone();
        again.extend(field.clone());
        let mut twice = RootField::new(field.dedup_tol);
        for r in field.roots.iter().chain(field.roots.iter()).cloned() {
            twice.insert(r);
        }
        ensure(again.values() == field.values() && twice.len() == field.len(), || {
            format!("{name}: {} roots became {} / {}", field.len(), again.len(), twice.len())
        })?;
    }
    let z = c(1.0, 1.0);
    let eq = Equation::polynomial(&[c(-2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
    let mut f = RootField::new(DEDUP_TOL);
    f.insert(RootRecord::new(&eq, z, BranchSpec::new(1, 1, 0), 0, false, true).unwrap());
    f.insert(RootRecord::new(&eq, z + 0.5 * DEDUP_TOL, BranchSpec::new(1, 1, 1), 0, false, true).unwrap());
    ensure(f.len() == 1 && f.roots[0].branches.len() == 2, || format!("near-duplicate not merged: {f:?}"))?;
    Ok("re-inserting every field is a no-op".into())
}

pub fn comparison_order_independence(trials: usize, seed: u64) -> Check {
    use rand::seq::SliceRandom;
    let mut rng = rng(seed);
    let key = |v: &[Complex64]| {
        let mut v: Vec<(u64, u64)> = v.iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect();
        v.sort();
        v
    };
    for _ in 0..trials {
        let truth: Vec<Complex64> = (0..8).map(|_| c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))).collect();
        let mut engine: Vec<Complex64> = truth.iter().take(6).map(|z| z + c(rng.gen_range(-1e-10..1e-10), 0.0)).collect();
        engine.push(c(10.0, 10.0));
        let mut oracle = truth.clone();
        let base = compare_root_sets(&engine, &oracle, 1e-8);
        engine.shuffle(&mut rng);
        oracle.shuffle(&mut rng);
        let other = compare_root_sets(&engine, &oracle, 1e-8);
        let pairs = |r: &genroots::oracle::ComparisonReport| {
            let mut v: Vec<_> = r.matched.iter().map(|(e, o, _)| (key(&[*e]), key(&[*o]))).collect();
            v.sort();
            v
        };
        ensure(
            pairs(&base) == pairs(&other)
                && key(&base.engine_only) == key(&other.engine_only)
                && key(&base.oracle_only) == key(&other.oracle_only)
                && base.max_distance == other.max_distance,
            || format!("{base:?} vs {other:?}"),
        )?;
        ensure(base.matched.len() == 6 && base.oracle_only.len() == 2 && base.engine_only.len() == 1, || {
            format!("{base:?}")
        })?;
    }
    Ok(format!("{trials} shuffled trials agree"))
}

/// The invariant battery run as one acceptance criterion.
pub fn invariants() -> Check {
    let checks: [(&str, fn() -> Check); 7] = [
        ("jet convolution", || jet_convolution(200, 11)),
        ("gamma recurrence", || gamma_recurrence(1000, 12)),
        ("gamma reflection", || gamma_reflection(1000, 13)),
        ("right inverses", || right_inverse(1000, 14)),
        ("conjugate closure", conjugate_closure),
        ("dedup idempotence", dedup_idempotence),
        ("comparison order", || comparison_order_independence(50, 15)),
    ];
    let mut passed = Vec::new();
    for (name, check) in checks {
        check().map_err(|e| format!("{name}: {e}"))?;
        passed.push(name);
    }
    Ok(format!("{} suites: {}", passed.len(), passed.join(", ")))
}
