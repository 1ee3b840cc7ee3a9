use std::fmt;

use num_complex::Complex64;

use super::equation::Equation;
use crate::error::Result;

/// Default relative distance under which two roots are the same root.
pub const DEDUP_TOL: f64 = 1e-8;

/// Branch of a subfield: term `k` (1-based), inverse category `q`, winding `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchSpec {
    pub k: usize,
    pub q: u32,
    pub s: i64,
    /// Found by expanding the equation in `1/z`.
    pub reciprocal: bool,
}

impl BranchSpec {
    pub fn new(k: usize, q: u32, s: i64) -> Self {
        Self {
            k,
            q,
            s,
            reciprocal: false,
        }
    }

    pub fn reciprocal(k: usize, q: u32, s: i64) -> Self {
        Self {
            reciprocal: true,
            ..Self::new(k, q, s)
        }
    }
}

impl fmt::Display for BranchSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.reciprocal { "1/z " } else { "" };
        write!(f, "{tag}L{},{} s={}", self.k, self.q, self.s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootRecord {
    pub z: Complex64,
    /// Every branch that produced this root, sorted.
    pub branches: Vec<BranchSpec>,
    /// `|sigma(z)|` for the owning equation.
    pub residual: f64,
    pub series_terms: usize,
    pub refined: bool,
    /// Whether the series passed its tail test.
    pub converged: bool,
}

impl RootRecord {
    pub fn new(
        eq: &Equation,
        z: Complex64,
        branch: BranchSpec,
        series_terms: usize,
        refined: bool,
        converged: bool,
    ) -> Result<Self> {
        Ok(Self {
            z,
            branches: vec![branch],
            residual: eq.eval(z)?.norm(),
            series_terms,
            refined,
            converged,
        })
    }

    /// The first branch that produced the root.
    pub fn branch(&self) -> BranchSpec {
        self.branches[0]
    }

    pub(crate) fn same_as(&self, z: Complex64, tol: f64) -> bool {
        (self.z - z).norm() <= tol * self.z.norm().max(z.norm()).max(1.0)
    }
}

/// Union of subfields with duplicates merged.
#[derive(Debug, Clone, PartialEq)]
pub struct RootField {
    pub roots: Vec<RootRecord>,
    pub dedup_tol: f64,
}

impl Default for RootField {
    fn default() -> Self {
        Self::new(DEDUP_TOL)
    }
}

impl RootField {
    pub fn new(dedup_tol: f64) -> Self {
        Self {
            roots: Vec::new(),
            dedup_tol,
        }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| r.z).collect()
    }

    /// Adds a record, merging it into an existing root within `dedup_tol`.
    ///
    /// The merged root keeps the smaller residual; branch lists are unioned.
    pub fn insert(&mut self, record: RootRecord) {
        self.insert_within(record, self.dedup_tol);
    }

    /// [`RootField::insert`] with an explicit merge tolerance, for roots
    /// that can only be located loosely (multiple roots).
    pub fn insert_within(&mut self, record: RootRecord, tol: f64) {
        if let Some(existing) = self.roots.iter_mut().find(|r| r.same_as(record.z, tol)) {
            let mut branches = std::mem::take(&mut existing.branches);
            branches.extend(record.branches.iter().copied());
            branches.sort();
            branches.dedup();
            if record.residual < existing.residual {
                *existing = record;
            }
            existing.branches = branches;
        } else {
            let mut record = record;
            record.branches.sort();
            self.roots.push(record);
        }
    }

    pub fn extend(&mut self, other: RootField) {
        for r in other.roots {
            self.insert(r);
        }
    }

    /// Roots ordered by real part, then imaginary part.
    pub fn sort_by_position(&mut self) {
        self.roots
            .sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(z: f64, residual: f64, b: BranchSpec) -> RootRecord {
        RootRecord {
            z: Complex64::new(z, 0.0),
            branches: vec![b],
            residual,
            series_terms: 1,
            refined: true,
            converged: true,
        }
    }

    #[test]
    fn merge_keeps_best_residual_and_all_branches() {
        let mut f = RootField::default();
        f.insert(record(1.0, 1e-12, BranchSpec::new(2, 1, 0)));
        f.insert(record(1.0 + 1e-10, 1e-14, BranchSpec::new(1, 1, 3)));
        f.insert(record(2.0, 1e-14, BranchSpec::new(1, 1, 0)));
        assert_eq!(f.len(), 2);
        assert_eq!(f.roots[0].residual, 1e-14);
        assert_eq!(f.roots[0].branches, vec![BranchSpec::new(1, 1, 3), BranchSpec::new(2, 1, 0)]);
    }
}
