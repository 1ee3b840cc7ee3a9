use num_complex::Complex64;

use super::scan::sort_points;

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    /// `(engine root, oracle root, distance)`, sorted by oracle root.
    pub matched: Vec<(Complex64, Complex64, f64)>,
    pub engine_only: Vec<Complex64>,
    pub oracle_only: Vec<Complex64>,
    pub max_distance: f64,
    /// Threshold used, relative to `max(1, |oracle root|)`.
    pub tol: f64,
}

impl ComparisonReport {
    /// Both sets agree root for root.
    pub fn is_bijection(&self) -> bool {
        self.engine_only.is_empty() && self.oracle_only.is_empty()
    }
}

fn key(z: Complex64) -> (f64, f64) {
    (z.re, z.im)
}

/// Greedy minimal-distance matching of two root sets.
///
/// Pairs are taken in order of increasing distance, ties broken by position,
/// so the report does not depend on input order. Pairs farther apart than
/// `tol * max(1, |oracle root|)` stay unmatched.
pub fn compare_root_sets(engine: &[Complex64], oracle: &[Complex64], tol: f64) -> ComparisonReport {
    let mut engine = engine.to_vec();
    let mut oracle = oracle.to_vec();
    sort_points(&mut engine);
    sort_points(&mut oracle);
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, e) in engine.iter().enumerate() {
        for (j, o) in oracle.iter().enumerate() {
            let d = (e - o).norm();
            if d <= tol * o.norm().max(1.0) {
                pairs.push((d, i, j));
            }
        }
    }
    pairs.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then_with(|| key(engine[a.1]).partial_cmp(&key(engine[b.1])).unwrap())
            .then_with(|| key(oracle[a.2]).partial_cmp(&key(oracle[b.2])).unwrap())
    });
    let mut used_e = vec![false; engine.len()];
    let mut used_o = vec![false; oracle.len()];
    let mut matched = Vec::new();
    for (d, i, j) in pairs {
        if !used_e[i] && !used_o[j] {
            used_e[i] = true;
            used_o[j] = true;
            matched.push((engine[i], oracle[j], d));
        }
    }
    matched.sort_by(|a, b| key(a.1).partial_cmp(&key(b.1)).unwrap());
    let max_distance = matched.iter().map(|m| m.2).fold(0.0, f64::max);
    ComparisonReport {
        matched,
        engine_only: engine.iter().zip(&used_e).filter(|(_, u)| !**u).map(|(z, _)| *z).collect(),
        oracle_only: oracle.iter().zip(&used_o).filter(|(_, u)| !**u).map(|(z, _)| *z).collect(),
        max_distance,
        tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts() -> Vec<Complex64> {
        vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 2.0), Complex64::new(0.0, -3.0)]
    }

    #[test]
    fn identical_sets() {
        let r = compare_root_sets(&pts(), &pts(), 1e-8);
        assert!(r.is_bijection());
        assert_eq!(r.max_distance, 0.0);
        assert_eq!(r.matched.len(), 3);
    }

    #[test]
    fn missing_root() {
        let r = compare_root_sets(&pts()[..2], &pts(), 1e-8);
        assert_eq!(r.oracle_only, vec![Complex64::new(0.0, -3.0)]);
        assert!(r.engine_only.is_empty());
    }

    #[test]
    fn order_independent() {
        let mut shuffled = pts();
        shuffled.reverse();
        let nudged: Vec<_> = pts().iter().map(|z| z + 1e-10).collect();
        assert_eq!(compare_root_sets(&nudged, &pts(), 1e-8), compare_root_sets(&nudged, &shuffled, 1e-8));
        let mut nudged_rev = nudged.clone();
        nudged_rev.rotate_left(1);
        assert_eq!(compare_root_sets(&nudged, &pts(), 1e-8), compare_root_sets(&nudged_rev, &shuffled, 1e-8));
    }
}
