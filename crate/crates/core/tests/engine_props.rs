mod common;

use genroots::engine::{
    complete_conjugates, enumerate_branches, expansion_order, newton_refine, solve_all, solve_branches, Solution,
    SolveOptions,
};
use genroots::oracle::compare_root_sets;

#[test]
fn kept_roots_meet_the_residual_tolerance() {
    for (name, eq, opts) in common::real_equations() {
        let sol = solve_all(&eq, &opts);
        assert!(!sol.field.is_empty(), "{name}");
        for r in &sol.field.roots {
            assert!(r.residual <= opts.tol * r.z.norm().max(1.0), "{name}: {r:?}");
        }
    }
}

#[test]
fn real_equations_close_under_conjugation() {
    common::conjugate_closure().unwrap();
}

#[test]
fn merging_is_idempotent() {
    common::dedup_idempotence().unwrap();
}

#[test]
fn refinement_is_idempotent() {
    for (name, eq, opts) in common::real_equations() {
        for r in solve_all(&eq, &opts).field.roots {
            let again = newton_refine(&eq, r.z, opts.tol, opts.max_newton).unwrap();
            assert!((again.z - r.z).norm() <= 1e-10 * r.z.norm().max(1.0), "{name}: {} -> {}", r.z, again.z);
        }
    }
}

#[test]
fn field_is_the_union_of_subfields() {
    let eq = common::sin_exp_equation();
    let opts = SolveOptions {
        s_range: (-4, 4),
        ..Default::default()
    };
    let whole = solve_all(&eq, &opts);
    let mut union = Solution::empty(opts.dedup_tol);
    for k in expansion_order(&eq) {
        let branches = enumerate_branches(&eq, k, opts.s_range.0, opts.s_range.1);
        union.absorb(solve_branches(&eq, &branches, &opts));
    }
    complete_conjugates(&eq, &opts, &mut union);
    let report = compare_root_sets(&whole.field.values(), &union.field.values(), 1e-8);
    assert!(report.is_bijection(), "{report:?}");
}

#[test]
fn comparison_ignores_order() {
    common::comparison_order_independence(200, 21).unwrap();
}
