use std::collections::BTreeMap;
use std::f64::consts::{E, PI};

use num_complex::Complex64;

use super::*;
use crate::engine::{BranchSpec, RootRecord, Solution};
use crate::error::{Error, Result};
use crate::oracle::Rectangle;

/// A named parameter a solver accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: &'static str,
    pub help: &'static str,
}

const fn param(name: &'static str, default: &'static str, help: &'static str) -> ParamSpec {
    ParamSpec { name, default, help }
}

/// String-valued parameters, parsed on demand by each solver.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params(BTreeMap<String, String>);

fn bad(name: &str, value: &str, want: &str) -> Error {
    Error::InvalidInput(format!("parameter {name}={value:?}: expected {want}"))
}

fn parse_real(name: &str, v: &str) -> Result<f64> {
    let v = v.trim();
    match v {
        "e" => Ok(E),
        "-e" => Ok(-E),
        "pi" => Ok(PI),
        _ => v.parse().map_err(|_| bad(name, v, "a real number")),
    }
}

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: &str, value: &str) -> &mut Self {
        self.0.insert(name.to_string(), value.to_string());
        self
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.0.get(name).map(String::as_str)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    fn raw<'a>(&'a self, spec: &'a ParamSpec) -> &'a str {
        self.get(spec.name).unwrap_or(spec.default)
    }

    /// A real number; `e` and `pi` are accepted.
    pub fn real(&self, spec: &ParamSpec) -> Result<f64> {
        parse_real(spec.name, self.raw(spec))
    }

    /// `re` or `re,im`.
    pub fn complex(&self, spec: &ParamSpec) -> Result<Complex64> {
        let v = self.raw(spec);
        match v.split_once(',') {
            Some((re, im)) => Ok(Complex64::new(parse_real(spec.name, re)?, parse_real(spec.name, im)?)),
            None => Ok(Complex64::new(parse_real(spec.name, v)?, 0.0)),
        }
    }

    pub fn count(&self, spec: &ParamSpec) -> Result<usize> {
        let v = self.raw(spec);
        v.trim().parse().map_err(|_| bad(spec.name, v, "a non-negative integer"))
    }

    /// Inclusive range `A:B`, or a single integer.
    pub fn range(&self, spec: &ParamSpec) -> Result<(i64, i64)> {
        let v = self.raw(spec);
        let int = |s: &str| s.trim().parse::<i64>().map_err(|_| bad(spec.name, v, "A:B with integers A <= B"));
        let (a, b) = match v.split_once(':') {
            Some((a, b)) => (int(a)?, int(b)?),
            None => (int(v)?, int(v)?),
        };
        if a > b {
            return Err(bad(spec.name, v, "A:B with A <= B"));
        }
        Ok((a, b))
    }

    /// Comma-separated integers.
    pub fn integers(&self, spec: &ParamSpec) -> Result<Vec<i64>> {
        let v = self.raw(spec);
        v.split(',')
            .map(|s| s.trim().parse().map_err(|_| bad(spec.name, v, "comma-separated integers")))
            .collect()
    }

    /// `re_min:re_max:im_min:im_max`.
    pub fn rectangle(&self, spec: &ParamSpec) -> Result<Rectangle> {
        let v = self.raw(spec);
        let parts: Vec<f64> = v
            .split(':')
            .map(|s| parse_real(spec.name, s))
            .collect::<Result<_>>()?;
        if parts.len() != 4 {
            return Err(bad(spec.name, v, "re_min:re_max:im_min:im_max"));
        }
        Rectangle::new(parts[0], parts[1], parts[2], parts[3])
    }
}

/// One cited constant checked against a fresh computation.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceCheck {
    pub label: String,
    pub expected: f64,
    pub actual: f64,
    pub tol: f64,
}

impl ReferenceCheck {
    pub fn new(label: &str, expected: f64, actual: f64, tol: f64) -> Self {
        Self {
            label: label.to_string(),
            expected,
            actual,
            tol,
        }
    }

    pub fn passed(&self) -> bool {
        (self.actual - self.expected).abs() <= self.tol
    }
}

/// Output of a named solver: roots, named scalars and notes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FamousReport {
    pub roots: Vec<RootRecord>,
    pub values: Vec<(String, f64)>,
    pub diagnostics: Vec<String>,
    pub unrescued: usize,
}

impl FamousReport {
    fn from_solution(sol: Solution) -> Self {
        Self {
            roots: sol.field.roots,
            values: Vec::new(),
            diagnostics: sol.diagnostics,
            unrescued: sol.unrescued,
        }
    }

    fn value(mut self, name: &str, v: f64) -> Self {
        self.values.push((name.to_string(), v));
        self
    }
}

/// A solver the registry can run by name.
pub trait FamousSolver: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn params(&self) -> &'static [ParamSpec];
    fn solve(&self, params: &Params) -> Result<FamousReport>;
    /// Recomputes the constants cited for this family; empty when none are.
    fn reference_checks(&self) -> Result<Vec<ReferenceCheck>> {
        Ok(Vec::new())
    }
}

struct Lambert;
struct Hypersphere;
struct Kepler;
struct Dde;
struct SelfPower;
struct PowerPq;
struct TanW;
struct Wien;

const LAMBERT: [ParamSpec; 3] = [
    param("t", "1", "right-hand side t of z e^z = t (re or re,im)"),
    param("k", "-1:1", "branch range A:B"),
    param("terms", "30", "series terms"),
];

impl FamousSolver for Lambert {
    fn name(&self) -> &'static str {
        "lambert"
    }
    fn summary(&self) -> &'static str {
        "z e^z = t on Lambert branches k"
    }
    fn params(&self) -> &'static [ParamSpec] {
        &LAMBERT
    }
    fn solve(&self, p: &Params) -> Result<FamousReport> {
        let sol = zexpz_solve(p.complex(&LAMBERT[0])?, p.range(&LAMBERT[1])?, p.count(&LAMBERT[2])?)?;
        Ok(FamousReport::from_solution(sol))
    }
}

const HYPERSPHERE: [ParamSpec; 1] = [param("kind", "surface", "surface or volume")];

fn hypersphere_kind(p: &Params) -> Result<HypersphereKind> {
    match p.raw(&HYPERSPHERE[0]) {
        "surface" => Ok(HypersphereKind::Surface),
        "volume" => Ok(HypersphereKind::Volume),
        other => Err(bad("kind", other, "surface or volume")),
    }
}

impl FamousSolver for Hypersphere {
    fn name(&self) -> &'static str {
        "hypersphere"
    }
    fn summary(&self) -> &'static str {
        "dimension of the largest unit hypersphere surface or volume"
    }
    fn params(&self) -> &'static [ParamSpec] {
        &HYPERSPHERE
    }
    fn solve(&self, p: &Params) -> Result<FamousReport> {
        let r = hypersphere_max(hypersphere_kind(p)?)?;
        Ok(FamousReport::default()
            .value("lower_bound_root", r.lower_bound_root.root)
            .value("upper_bound_root", r.upper_bound_root.root)
            .value("lower_bound_seed", r.lower_bound_root.seed)
            .value("upper_bound_seed", r.upper_bound_root.seed)
            .value("lower", r.lower)
            .value("upper", r.upper)
            .value("true_root", r.true_root)
            .value("integer_answer", r.integer_answer as f64))
    }
    fn reference_checks(&self) -> Result<Vec<ReferenceCheck>> {
        let s = hypersphere_max(HypersphereKind::Surface)?;
        let v = hypersphere_max(HypersphereKind::Volume)?;
        Ok(vec![
            ReferenceCheck::new("surface bound root, c = 1/2", 7.27218, s.lower_bound_root.root, 1e-4),
            ReferenceCheck::new("surface bound root, c = 0.56", 7.18109, s.upper_bound_root.root, 1e-4),
            ReferenceCheck::new("volume bound root, c = 1/2", 5.27218, v.lower_bound_root.root, 1e-4),
            ReferenceCheck::new("volume bound root, c = 0.56", 5.18109, v.upper_bound_root.root, 1e-4),
            ReferenceCheck::new("surface integer answer", 7.0, s.integer_answer as f64, 0.0),
            ReferenceCheck::new("volume integer answer", 5.0, v.integer_answer as f64, 0.0),
        ])
    }
}

/// Jupiter: one tenth of its 11.8622-year period after perihelion.
pub const JUPITER_MEAN_ANOMALY: f64 = 10.0 * PI / 11.8622;
pub const JUPITER_ECCENTRICITY: f64 = 0.04844;

const KEPLER: [ParamSpec; 4] = [
    param("M", "2.648406411618244", "mean anomaly (radians)"),
    param("e", "0.04844", "eccentricity"),
    param("terms", "30", "series terms"),
    param("arcsin", "off", "also expand the sine term on windings A:B"),
];

impl FamousSolver for Kepler {
    fn name(&self) -> &'static str {
        "kepler"
    }
    fn summary(&self) -> &'static str {
        "eccentric anomaly from M = E - e sin E"
    }
    fn params(&self) -> &'static [ParamSpec] {
        &KEPLER
    }
    fn solve(&self, p: &Params) -> Result<FamousReport> {
        let spec = KeplerSpec::new(p.real(&KEPLER[0])?, p.real(&KEPLER[1])?)?;
        let terms = p.count(&KEPLER[2])?;
        let r = kepler_solve(spec, terms)?;
        let eq = spec.equation()?;
        let mut root = RootRecord::new(
            &eq,
            Complex64::new(r.eccentric_anomaly, 0.0),
            BranchSpec::new(1, 1, 0),
            r.terms,
            true,
            r.converged,
        )?;
        root.residual = r.residual;
        let mut report = if p.raw(&KEPLER[3]) == "off" {
            FamousReport::default()
        } else {
            FamousReport::from_solution(kepler_arcsin_field(spec, p.range(&KEPLER[3])?, terms)?)
        };
        if !r.converged {
            report.diagnostics.push("series tail test failed; Newton from the smallest-term partial sum".into());
        }
        let mut field = crate::engine::RootField::default();
        field.insert(root);
        for x in report.roots.drain(..) {
            field.insert(x);
        }
        field.sort_by_position();
        report.roots = field.roots;
        Ok(report.value("E", r.eccentric_anomaly).value("series", r.series))
    }
    fn reference_checks(&self) -> Result<Vec<ReferenceCheck>> {
        let spec = KeplerSpec::new(JUPITER_MEAN_ANOMALY, JUPITER_ECCENTRICITY)?;
        let r = kepler_solve(spec, 30)?;
        Ok(vec![
            ReferenceCheck::new("Jupiter eccentric anomaly", 2.6704, r.eccentric_anomaly, 5e-4),
            ReferenceCheck::new("Jupiter Kepler residual", 0.0, r.residual, 1e-12),
        ])
    }
}

const DDE: [ParamSpec; 7] = [
    param("C", "0.5", "neutral coefficient C"),
    param("a", "-1", "coefficient a"),
    param("w", "0.5", "coefficient w"),
    param("r", "1", "neutral delay r"),
    param("nu", "0.5", "delay nu"),
    param("region", "-5:5:-20:20", "re_min:re_max:im_min:im_max"),
    param("k", "-4:4", "winding range A:B"),
];

impl FamousSolver for Dde {
    fn name(&self) -> &'static str {
        "dde"
    }
    fn summary(&self) -> &'static str {
        "characteristic roots of l (1 - C e^(-l r)) - a - w e^(-l nu)"
    }
    fn params(&self) -> &'static [ParamSpec] {
        &DDE
    }
    fn solve(&self, p: &Params) -> Result<FamousReport> {
        let spec = DdeCharSpec::new(
            p.complex(&DDE[0])?,
            p.complex(&DDE[1])?,
            p.complex(&DDE[2])?,
            p.real(&DDE[3])?,
            p.real(&DDE[4])?,
        )?;
        let r = dde_char_roots(spec, p.rectangle(&DDE[5])?, p.range(&DDE[6])?)?;
        let found = r.solution.field.len() as f64;
        Ok(FamousReport::from_solution(r.solution)
            .value("contour_count", r.contour_count as f64)
            .value("roots_found", found))
    }
}

const SELFPOWER: [ParamSpec; 5] = [
    param("m", "2", "coefficient m"),
    param("t", "1", "constant t"),
    param("k", "-1:1", "winding range A:B"),
    param("h", "-1,0,1", "Lambert branches"),
    param("terms", "30", "series terms"),
];

impl FamousSolver for SelfPower {
    fn name(&self) -> &'static str {
        "selfpower"
    }
    fn summary(&self) -> &'static str {
        "x^x - m x + t = 0"
    }
    fn params(&self) -> &'static [ParamSpec] {
        &SELFPOWER
    }
    fn solve(&self, p: &Params) -> Result<FamousReport> {
        let sol = selfpower_solve(
            p.complex(&SELFPOWER[0])?,
            p.complex(&SELFPOWER[1])?,
            p.range(&SELFPOWER[2])?,
            &p.integers(&SELFPOWER[3])?,
            p.count(&SELFPOWER[4])?,
        )?;
        Ok(FamousReport::from_solution(sol))
    }
}

const POWERPQ: [ParamSpec; 5] = [
    param("p", "3", "exponent p"),
    param("q", "7", "exponent q"),
    param("m", "3", "coefficient m"),
    param("t", "-7", "constant t"),
    param("terms", "40", "series terms"),
];

impl FamousSolver for PowerPq {
    fn name(&self) -> &'static str {
        "powerpq"
    }
    fn summary(&self) -> &'static str {
        "x^q - m x^p + t = 0 with real or complex exponents"
    }
    fn params(&self) -> &'static [ParamSpec] {
        &POWERPQ
    }
    fn solve(&self, p: &Params) -> Result<FamousReport> {
        let sol = power_pq_solve(
            p.complex(&POWERPQ[0])?,
            p.complex(&POWERPQ[1])?,
            p.complex(&POWERPQ[2])?,
            p.complex(&POWERPQ[3])?,
            p.count(&POWERPQ[4])?,
        )?;
        Ok(FamousReport::from_solution(sol))
    }
}

const TANW: [ParamSpec; 3] = [
    param("m", "1", "coefficient m in w = m tan w"),
    param("k", "-3:3", "winding range A:B"),
    param("terms", "30", "series terms"),
];

impl FamousSolver for TanW {
    fn name(&self) -> &'static str {
        "tanw"
    }
    fn summary(&self) -> &'static str {
        "w = m tan w"
    }
    fn params(&self) -> &'static [ParamSpec] {
        &TANW
    }
    fn solve(&self, p: &Params) -> Result<FamousReport> {
        let sol = tan_solve(p.complex(&TANW[0])?, p.range(&TANW[1])?, p.count(&TANW[2])?)?;
        Ok(FamousReport::from_solution(sol))
    }
}

impl FamousSolver for Wien {
    fn name(&self) -> &'static str {
        "wien"
    }
    fn summary(&self) -> &'static str {
        "5 - 5 e^-x - x = 0"
    }
    fn params(&self) -> &'static [ParamSpec] {
        &[]
    }
    fn solve(&self, _: &Params) -> Result<FamousReport> {
        let r = wien_solve()?;
        Ok(FamousReport {
            roots: r.field.roots,
            ..Default::default()
        }
        .value("x", r.root))
    }
    fn reference_checks(&self) -> Result<Vec<ReferenceCheck>> {
        let r = wien_solve()?;
        Ok(vec![ReferenceCheck::new("Wien root", 4.965_114_231_744_276_303_7, r.root, 1e-12)])
    }
}

/// Solvers by name.
pub struct Registry {
    solvers: Vec<Box<dyn FamousSolver>>,
}

impl Registry {
    pub fn empty() -> Self {
        Self { solvers: Vec::new() }
    }

    /// The eight built-in families.
    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Lambert));
        r.register(Box::new(Hypersphere));
        r.register(Box::new(Kepler));
        r.register(Box::new(Dde));
        r.register(Box::new(SelfPower));
        r.register(Box::new(PowerPq));
        r.register(Box::new(TanW));
        r.register(Box::new(Wien));
        r
    }

    /// Adds a solver, replacing one with the same name.
    pub fn register(&mut self, solver: Box<dyn FamousSolver>) {
        self.solvers.retain(|s| s.name() != solver.name());
        self.solvers.push(solver);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.solvers.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn FamousSolver> {
        self.solvers.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    /// Runs `name` after rejecting parameters it does not declare.
    pub fn run(&self, name: &str, params: &Params) -> Result<FamousReport> {
        let solver = self.get(name).ok_or_else(|| {
            Error::InvalidInput(format!("unknown solver {name:?}; known: {}", self.names().join(", ")))
        })?;
        for p in params.names() {
            if !solver.params().iter().any(|s| s.name == p) {
                return Err(Error::InvalidInput(format!("{name} has no parameter {p:?}")));
            }
        }
        solver.solve(params)
    }
}

impl Default for Registry {
    fn default() -> Self {
        Self::standard()
    }
}
