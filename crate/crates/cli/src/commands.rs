//! Subcommands. Exit codes: 0 success, 1 input error, 2 numerical quality failure.

use std::collections::BTreeMap;

use clap::{Parser, Subcommand, ValueEnum};
use genroots::engine::{solve_all, Equation, SolveOptions};
use genroots::famous::{Params, Registry};
use genroots::oracle::{aberth_roots, compare_root_sets, grid_newton_scan, Rectangle};
use genroots::{Complex64, Error};
use serde::Serialize;
use serde_json::Value;

use crate::document::{DocumentError, EquationDocument};
use crate::json::{real_value, to_canonical_string, Real};
use crate::report::{CheckEntry, CompareReport, ComparisonEntry, RootEntry, RootReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_QUALITY: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "genroots", version, about = "Root fields of sums of elementary functions by branch-resolved series inversion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, clap::Args)]
pub struct EngineArgs {
    /// Equation document: a path, `-` for standard input, or inline JSON.
    pub input: String,
    /// Inclusive winding range `A:B`.
    #[arg(long, default_value = "-3:3", allow_hyphen_values = true)]
    pub s_range: String,
    /// Series terms per branch.
    #[arg(long, default_value_t = 30)]
    pub terms: usize,
    /// Residual tolerance, relative to max(1, |z|).
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Radius of the convergence-inequality check.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Report raw series roots without Newton refinement.
    #[arg(long)]
    pub no_refine: bool,
    /// Retry diverged branches with coefficient damping.
    #[arg(long)]
    pub damp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an equation document on every branch of every term.
    Solve {
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run a named solver: lambert, hypersphere, kepler, dde, selfpower, powerpq, tanw, wien.
    ///
    /// Parameters follow the name as `--key value`; complex values are `re,im`,
    /// ranges `A:B`. `--paper-check` recomputes the cited constants.
    Famous {
        name: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Compare the engine with a grid Newton scan, and with Aberth for polynomials.
    Compare {
        #[command(flatten)]
        engine: EngineArgs,
        /// Scan rectangle `re_min:re_max:im_min:im_max`.
        #[arg(long, default_value = "-4:4:-4:4", allow_hyphen_values = true)]
        region: String,
        /// Scan lattice `NX:NY`.
        #[arg(long, default_value = "41:41")]
        grid: String,
        /// Matching distance between engine and oracle roots.
        #[arg(long, default_value_t = 1e-8)]
        match_tol: f64,
    },
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: Vec<String>,
    pub code: i32,
}

impl Outcome {
    fn input_error(msg: impl Into<String>) -> Self {
        Self {
            stdout: String::new(),
            stderr: vec![format!("error: {}", msg.into())],
            code: EXIT_INPUT,
        }
    }
}

struct Failure(Outcome);

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure(Outcome::input_error(e.0))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) => EXIT_INPUT,
            _ => EXIT_QUALITY,
        };
        Failure(Outcome {
            stdout: String::new(),
            stderr: vec![format!("error: {e}")],
            code,
        })
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn input(msg: String) -> Failure {
    Failure(Outcome::input_error(msg))
}

fn numbers<T: std::str::FromStr>(flag: &str, v: &str, n: usize) -> Run<Vec<T>> {
    let parts: Vec<T> = v
        .split(':')
        .map(|p| p.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| input(format!("--{flag} {v:?}: expected {n} colon-separated numbers")))?;
    if parts.len() != n {
        return Err(input(format!("--{flag} {v:?}: expected {n} colon-separated numbers")));
    }
    Ok(parts)
}

fn emit<T: Serialize>(value: &T) -> String {
    to_canonical_string(value).expect("reports serialize")
}

impl EngineArgs {
    fn options(&self) -> Run<SolveOptions> {
        let s = numbers::<i64>("s-range", &self.s_range, 2)?;
        if s[0] > s[1] {
            return Err(input(format!("--s-range {}: empty range", self.s_range)));
        }
        if self.terms == 0 {
            return Err(input("--terms must be at least 1".into()));
        }
        if !(self.tol > 0.0) || !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(input("--tol and --radius must be positive".into()));
        }
        Ok(SolveOptions {
            s_range: (s[0], s[1]),
            terms: self.terms,
            tol: self.tol,
            radius: self.radius,
            refine: !self.no_refine,
            damp: self.damp,
            ..Default::default()
        })
    }

    fn load(&self) -> Run<(EquationDocument, Equation, SolveOptions)> {
        let doc = EquationDocument::load(&self.input)?;
        let eq = doc.equation()?;
        Ok((doc, eq, self.options()?))
    }

    fn settings(&self, doc: &EquationDocument, opts: &SolveOptions) -> BTreeMap<String, Value> {
        BTreeMap::from([
            ("equation".into(), serde_json::to_value(doc).expect("document serializes")),
            ("s_range".into(), Value::from(vec![opts.s_range.0, opts.s_range.1])),
            ("terms".into(), Value::from(opts.terms)),
            ("tol".into(), real_value(opts.tol)),
            ("radius".into(), real_value(opts.radius)),
            ("refine".into(), Value::from(opts.refine)),
            ("damp".into(), Value::from(opts.damp)),
        ])
    }
}

fn cmd_solve(args: &EngineArgs, format: Format) -> Run<Outcome> {
    let (doc, eq, opts) = args.load()?;
    let sol = solve_all(&eq, &opts);
    let report = RootReport {
        command: "solve".into(),
        roots: sol.field.roots.iter().map(RootEntry::from).collect(),
        diagnostics: sol.diagnostics.clone(),
        unrescued: sol.unrescued,
        settings: args.settings(&doc, &opts),
        ..Default::default()
    };
    let loose = sol
        .field
        .roots
        .iter()
        .filter(|r| !(r.residual <= opts.tol * r.z.norm().max(1.0)))
        .count();
    let mut stderr = sol.diagnostics;
    if loose > 0 {
        stderr.push(format!("{loose} root(s) above the residual tolerance {:e}", opts.tol));
    }
    if sol.unrescued > 0 {
        stderr.push(format!("{} branch(es) diverged without rescue", sol.unrescued));
    }
    let stdout = match format {
        Format::Json => emit(&report),
        Format::Csv => report.to_csv().map_err(|e| input(e.to_string()))?,
    };
    let code = if loose > 0 || sol.unrescued > 0 { EXIT_QUALITY } else { EXIT_OK };
    Ok(Outcome { stdout, stderr, code })
}

fn cmd_famous(name: &str, raw: &[String]) -> Run<Outcome> {
    let registry = Registry::standard();
    let solver = registry
        .get(name)
        .ok_or_else(|| input(format!("unknown solver {name:?}; known: {}", registry.names().join(", "))))?;
    let mut params = Params::new();
    let mut reference_check = false;
    let mut format = Format::Json;
    let mut it = raw.iter();
    while let Some(flag) = it.next() {
        let Some(key) = flag.strip_prefix("--") else {
            return Err(input(format!("expected --name value, found {flag:?}")));
        };
        let (key, inline) = match key.split_once('=') {
            Some((k, v)) => (k, Some(v.to_string())),
            None => (key, None),
        };
        if key == "paper-check" {
            reference_check = true;
            continue;
        }
        let value = match inline.or_else(|| it.next().cloned()) {
            Some(v) => v,
            None => return Err(input(format!("--{key} needs a value"))),
        };
        if key == "format" {
            format = Format::from_str(&value, true).map_err(|e| input(format!("--format: {e}")))?;
        } else {
            params.set(key, &value);
        }
    }

    let out = registry.run(name, &params)?;
    let checks: Vec<CheckEntry> = if reference_check {
        solver.reference_checks()?.iter().map(CheckEntry::from).collect()
    } else {
        Vec::new()
    };
    let settings = solver
        .params()
        .iter()
        .map(|p| (p.name.to_string(), Value::from(params.get(p.name).unwrap_or(p.default))))
        .collect();
    let report = RootReport {
        command: format!("famous {name}"),
        roots: out.roots.iter().map(RootEntry::from).collect(),
        values: out.values.iter().map(|(k, v)| (k.clone(), Real(*v))).collect(),
        checks,
        diagnostics: out.diagnostics.clone(),
        unrescued: out.unrescued,
        settings,
    };
    let mut stderr = out.diagnostics;
    for c in &report.checks {
        stderr.push(format!(
            "{} {}: expected {} got {} (tol {:e})",
            if c.passed { "PASS" } else { "FAIL" },
            c.label,
            c.expected.0,
            c.actual.0,
            c.tol.0
        ));
    }
    let stdout = match format {
        Format::Json => emit(&report),
        Format::Csv => {
            stderr.extend(out.values.iter().map(|(k, v)| format!("{k} = {v}")));
            report.to_csv().map_err(|e| input(e.to_string()))?
        }
    };
    let code = if report.checks.iter().all(|c| c.passed) { EXIT_OK } else { EXIT_QUALITY };
    Ok(Outcome { stdout, stderr, code })
}

fn cmd_compare(args: &EngineArgs, region: &str, grid: &str, match_tol: f64) -> Run<Outcome> {
    let (doc, eq, opts) = args.load()?;
    let r = numbers::<f64>("region", region, 4)?;
    let rect = Rectangle::new(r[0], r[1], r[2], r[3])?;
    let g = numbers::<usize>("grid", grid, 2)?;
    if g[0] < 2 || g[1] < 2 {
        return Err(input(format!("--grid {grid}: need at least 2 nodes per side")));
    }
    if !(match_tol > 0.0) {
        return Err(input("--match-tol must be positive".into()));
    }

    let sol = solve_all(&eq, &opts);
    let engine = sol.field.values();
    let mut comparisons = Vec::new();
    let scanned = grid_newton_scan(&eq, rect, g[0], g[1], 1e-12)?;
    let inside: Vec<Complex64> = engine.iter().copied().filter(|z| rect.contains(*z)).collect();
    comparisons.push(ComparisonEntry::new("grid_newton_scan", &compare_root_sets(&inside, &scanned, match_tol)));
    if let Some(coeffs) = eq.polynomial_coefficients() {
        if coeffs.len() > 1 {
            let oracle = aberth_roots(&coeffs)?;
            comparisons.push(ComparisonEntry::new("aberth", &compare_root_sets(&engine, &oracle, match_tol)));
        }
    }

    let mut settings = args.settings(&doc, &opts);
    settings.insert("region".into(), Value::from(r.iter().map(|&x| real_value(x)).collect::<Vec<_>>()));
    settings.insert("grid".into(), Value::from(g.clone()));
    settings.insert("match_tol".into(), real_value(match_tol));
    let report = CompareReport {
        comparisons,
        diagnostics: sol.diagnostics.clone(),
        settings,
    };
    let mut stderr = sol.diagnostics;
    for c in &report.comparisons {
        stderr.push(format!(
            "{}: {} matched, {} engine-only, {} oracle-only",
            c.oracle,
            c.matched.len(),
            c.engine_only.len(),
            c.oracle_only.len()
        ));
    }
    let code = if report.comparisons.iter().all(ComparisonEntry::is_clean) { EXIT_OK } else { EXIT_INPUT };
    Ok(Outcome {
        stdout: emit(&report),
        stderr,
        code,
    })
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    stdout: text,
                    ..Default::default()
                }
            } else {
                Outcome {
                    stderr: vec![text.trim_end().to_string()],
                    code,
                    ..Default::default()
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Solve { engine, format } => cmd_solve(engine, *format),
        Command::Famous { name, args } => cmd_famous(name, args),
        Command::Compare {
            engine,
            region,
            grid,
            match_tol,
        } => cmd_compare(engine, region, grid, *match_tol),
    };
    result.unwrap_or_else(|Failure(o)| o)
}
