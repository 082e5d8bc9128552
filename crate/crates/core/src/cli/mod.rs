//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a verification failed, 3 numeric error.

pub mod json;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use crate::configs::{
    catalog, catalog_names, is_saturated_up_to, smith_normal_form, to_standard_form, validate_configuration,
    AffineExpr, CatalogEntry, ConfigError, IntMatrix, PointConfiguration,
};
use crate::evaluate::{classical_solution, euler_integral, Axis, EvalError, EvaluationResult, QuadratureSettings};
use crate::symmetry::{find_symmetries, PolytopeSymmetry, SymmetryError};
use crate::transforms::{induced_transformation, TransformError};
use crate::verify::{
    binomial_identities, f4_nonexistence_report, verify_binomial_identity, verify_pde, verify_pfaff,
    verify_quadric_multivaluedness, verify_symmetry_group, Evaluator, F4Report, IdentityReport, QuadricReport,
    SampleGrid, VerifyError, QUADRATURE_THRESHOLD, QUADRIC_BETA, SERIES_THRESHOLD,
};
use crate::{Coefficients, Params};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

const SEED: u64 = 7;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: line {line}, column {column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io(_) | CliError::Config(_) => EXIT_USAGE,
            CliError::Symmetry(_) | CliError::Transform(_) | CliError::Eval(_) => EXIT_NUMERIC,
            CliError::Verify(VerifyError::Config(_)) | CliError::Verify(VerifyError::InvalidGrid(_)) => EXIT_USAGE,
            CliError::Verify(_) => EXIT_NUMERIC,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "gkz", version, about = "A-hypergeometric configurations, symmetries and verified transformations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Relative quadrature tolerance (overrides GKZ_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct Source {
    /// File path or catalog name (file paths win).
    source: Option<String>,
    #[arg(long, conflicts_with_all = ["source", "input"])]
    catalog: Option<String>,
    #[arg(long, conflicts_with = "source")]
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Point {
    /// Comma-separated β entries; complex entries as `re:im`.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Comma-separated coefficients x; complex entries as `re:im`.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Comma-separated axes: positive, negative, real-line, unit-interval, unit-circle, ray:PHASE.
    #[arg(long)]
    cycle: Option<String>,
    /// Number of blocks in the standard form.
    #[arg(long, default_value_t = 1)]
    m: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List catalog names, or print one entry as configuration JSON.
    Catalog { name: Option<String> },
    /// Validate a configuration.
    Validate {
        #[command(flatten)]
        src: Source,
        /// Also test saturation up to this degree.
        #[arg(long)]
        degree_bound: Option<u32>,
    },
    /// Print ξ with ξA = (1, …, 1).
    Xi {
        #[command(flatten)]
        src: Source,
    },
    /// Block standard form with `m` blocks.
    StandardForm {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Enumerate the symmetry group TA = AP.
    Symmetries {
        #[command(flatten)]
        src: Source,
    },
    /// Induced linear transformations of the integral.
    Transforms {
        #[command(flatten)]
        src: Source,
    },
    /// Evaluate an Euler-type integral, or the classical series with `--classical`.
    Eval {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        point: Point,
        /// Classical parameter values, e.g. `a=0.3,b=0.5,c=1.7`.
        #[arg(long, allow_hyphen_values = true)]
        classical: Option<String>,
    },
    /// Run one verification.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        point: Point,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// N for binomial identities.
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// The Appell F4 non-existence report.
    F4Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Pfaff,
    Quadric,
    Binomial,
    Pde,
    Symmetries,
}

/// A configuration read from a file or the catalog.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedConfig {
    pub name: Option<String>,
    pub config: PointConfiguration,
    /// `β_i` as affine expressions, when given.
    pub params: Option<Vec<AffineExpr>>,
}

impl LoadedConfig {
    /// The catalog entry with this name and matrix, if any.
    pub fn catalog_entry(&self) -> Option<CatalogEntry> {
        let entry = catalog(self.name.as_deref()?).ok()?;
        (entry.config == self.config).then_some(entry)
    }

    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        if let Some(name) = &self.name {
            map.insert("name".into(), Value::from(name.as_str()));
        }
        map.insert("matrix".into(), json::matrix(self.config.matrix()));
        if let Some(params) = &self.params {
            let p = params.iter().enumerate().map(|(i, e)| (format!("beta{}", i + 1), Value::from(e.to_string())));
            map.insert("params".into(), Value::Object(p.collect()));
        }
        Value::Object(map)
    }
}

impl From<CatalogEntry> for LoadedConfig {
    fn from(e: CatalogEntry) -> Self {
        LoadedConfig { name: Some(e.name), config: e.config, params: Some(e.beta) }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    name: Option<String>,
    matrix: Vec<Vec<i64>>,
    params: Option<BTreeMap<String, String>>,
}

/// Parses configuration JSON; `origin` labels errors.
pub fn parse_config(text: &str, origin: &str) -> Result<LoadedConfig, CliError> {
    let file: ConfigFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let config = validate_configuration(&IntMatrix::from_rows(&file.matrix)?)?;
    let params = file
        .params
        .map(|p| -> Result<Vec<AffineExpr>, CliError> {
            let d = config.d();
            let expected: Vec<String> = (1..=d).map(|i| format!("beta{i}")).collect();
            let mut keys: Vec<&String> = p.keys().collect();
            keys.sort_by_key(|k| k.strip_prefix("beta").and_then(|s| s.parse::<usize>().ok()));
            if keys.len() != d || keys.iter().zip(&expected).any(|(k, e)| *k != e) {
                return Err(CliError::Usage(format!("{origin}: params must have keys beta1..beta{d}")));
            }
            expected.iter().map(|k| p[k].parse::<AffineExpr>().map_err(CliError::from)).collect()
        })
        .transpose()?;
    Ok(LoadedConfig { name: file.name, config, params })
}

/// Resolves a file path first, then a catalog name.
pub fn load_config(source: &str) -> Result<LoadedConfig, CliError> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        return parse_config(&text, source);
    }
    Ok(catalog(source)?.into())
}

fn resolve(src: &Source) -> Result<LoadedConfig, CliError> {
    match (&src.source, &src.catalog, &src.input) {
        (Some(s), None, None) => load_config(s),
        (None, Some(name), None) => Ok(catalog(name)?.into()),
        (None, None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            parse_config(&text, &path.display().to_string())
        }
        _ => Err(CliError::Usage("give exactly one of SOURCE, --catalog or --input".into())),
    }
}

fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Usage(format!("bad number `{s}`"));
    let (re, im) = s.trim().split_once(':').unwrap_or((s.trim(), "0"));
    Ok(Complex64::new(re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?))
}

fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, CliError> {
    s.split(',').map(parse_complex).collect()
}

fn parse_axis(s: &str) -> Result<Axis, CliError> {
    Ok(match s.trim() {
        "positive" => Axis::positive(),
        "negative" => Axis::NegativeAxis,
        "real-line" => Axis::RealLine,
        "unit-interval" => Axis::UnitInterval,
        "unit-circle" => Axis::UnitCircle,
        other => match other.strip_prefix("ray:").map(str::parse::<f64>) {
            Some(Ok(phase)) => Axis::rotated(phase),
            _ => return Err(CliError::Usage(format!("unknown axis `{other}`"))),
        },
    })
}

struct ResolvedPoint {
    beta: Params,
    x: Coefficients,
    cycle: Vec<Axis>,
}

fn resolve_point(point: &Point, config: &PointConfiguration) -> Result<ResolvedPoint, CliError> {
    let need = |o: &Option<String>, flag: &str| o.clone().ok_or_else(|| CliError::Usage(format!("{flag} is required")));
    let beta = Params::for_config(config, parse_complex_list(&need(&point.beta, "--beta")?)?)?;
    let x = Coefficients::for_config(config, parse_complex_list(&need(&point.x, "--x")?)?)?;
    let r = config.d() - point.m;
    let cycle = match &point.cycle {
        Some(c) => c.split(',').map(parse_axis).collect::<Result<Vec<_>, _>>()?,
        None => vec![Axis::positive(); r],
    };
    Ok(ResolvedPoint { beta, x, cycle })
}

/// `--tol`, then `GKZ_TOL`, then the default.
fn settings(tol: Option<f64>) -> Result<QuadratureSettings, CliError> {
    let env = std::env::var("GKZ_TOL").ok();
    let tol = match (tol, env) {
        (Some(t), _) => Some(t),
        (None, Some(s)) => {
            Some(s.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("GKZ_TOL=`{s}` is not a number")))?)
        }
        (None, None) => None,
    };
    let s = match tol {
        Some(t) => QuadratureSettings::default().with_rel_tol(t),
        None => QuadratureSettings::default(),
    };
    s.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(s)
}

/// What a command produced: a JSON document, and whether a verification failed.
pub struct Outcome {
    pub document: Value,
    pub text: Option<String>,
    pub passed: bool,
}

impl Outcome {
    fn data(document: Value) -> Self {
        Outcome { document, text: None, passed: true }
    }
}

fn report_line(r: &IdentityReport) -> String {
    format!(
        "{} max_residual={:.3e} threshold={:.0e} {}",
        if r.passed() { "PASS" } else { "FAIL" },
        r.max_residual,
        r.threshold,
        r.description
    )
}

fn report_outcome(r: IdentityReport) -> Outcome {
    Outcome { text: Some(report_line(&r) + "\n"), passed: r.passed(), document: json::report(&r) }
}

fn many_reports(rs: Vec<(String, IdentityReport)>) -> Outcome {
    let passed = rs.iter().all(|(_, r)| r.passed());
    let text = rs.iter().map(|(label, r)| format!("{label}: {}\n", report_line(r))).collect();
    let reports =
        rs.iter().map(|(label, r)| json::object([("label", Value::from(label.as_str())), ("report", json::report(r))]));
    let document = json::object([
        ("reports", Value::Array(reports.collect())),
        ("verdict", Value::from(if passed { "pass" } else { "fail" })),
    ]);
    Outcome { document, text: Some(text), passed }
}

fn symmetry_json(s: &PolytopeSymmetry) -> Value {
    let perm: Vec<i64> = s.perm().iter().map(|&k| k as i64).collect();
    json::object([("t", json::matrix(s.t())), ("perm", json::ints(&perm)), ("det", Value::from(s.det_sign()))])
}

fn quadric_json(q: &QuadricReport) -> Value {
    json::object([
        ("reversal_f1", json::report(&q.reversal_f1)),
        ("reversal_f2", json::report(&q.reversal_f2)),
        ("phase", json::report(&q.phase)),
        ("composed_factor", json::complex(q.composed_factor)),
        ("reference_factor", json::complex(q.reference_factor)),
        ("lattice_offset", q.lattice_offset.map(|k| json::ints(&k)).unwrap_or(Value::Null)),
        ("verdict", Value::from(q.verdict.as_str())),
        ("notes", json::strings(&q.notes)),
    ])
}

pub fn f4_json(r: &F4Report) -> Value {
    let sample = |s: &crate::verify::F4Sample| {
        json::object([
            ("y1", json::float(s.y1)),
            ("y2", json::float(s.y2)),
            ("lhs", json::complex(s.lhs)),
            ("term1", json::complex(s.term1)),
            ("term2", json::complex(s.term2)),
            ("residual", json::float(s.residual)),
        ])
    };
    let steps = r.steps.iter().map(|s| {
        json::object([
            ("name", Value::from(s.name.as_str())),
            ("passed", Value::from(s.passed)),
            ("detail", Value::from(s.detail.as_str())),
        ])
    });
    json::object([
        ("t", json::matrix(&r.t)),
        ("p", json::matrix(&r.p)),
        ("parameters", Value::Array(r.parameters.iter().map(|&v| json::float(v)).collect())),
        ("parameter_map", json::strings(&r.parameter_map)),
        ("k1", json::complex(r.k1)),
        ("k2", json::complex(r.k2)),
        ("fit_samples", Value::Array(r.fit_samples.iter().map(sample).collect())),
        ("check_samples", Value::Array(r.check_samples.iter().map(sample).collect())),
        ("max_residual", json::float(r.max_residual)),
        ("ratio_spread", json::float(r.ratio_spread)),
        ("single_term_residual", json::float(r.single_term_residual)),
        ("steps", Value::Array(steps.collect())),
        ("verdict", Value::from(r.verdict.as_str())),
        ("notes", json::strings(&r.notes)),
    ])
}

fn eval_json(r: &EvaluationResult<f64>) -> Value {
    json::object([
        ("value", json::complex(r.value)),
        ("error_estimate", json::float(r.error_estimate)),
        ("converged", Value::from(r.converged)),
        ("warnings", json::strings(&r.warnings)),
    ])
}

fn transforms_json(loaded: &LoadedConfig) -> Result<Value, CliError> {
    let group = find_symmetries(&loaded.config)?;
    let entry = loaded.catalog_entry();
    let d = loaded.config.d();
    let beta_names: Vec<AffineExpr> = match &loaded.params {
        Some(p) => p.clone(),
        None => (1..=d).map(|i| AffineExpr::variable(&format!("beta{i}"))).collect(),
    };
    let x_names: Vec<String> = (1..=loaded.config.n()).map(|j| format!("x{j}")).collect();
    let mut out = Vec::new();
    for s in group.elements() {
        let tr = induced_transformation(s);
        let beta_map: Vec<String> = (0..d)
            .map(|i| {
                s.t()
                    .row(i)
                    .iter()
                    .zip(&beta_names)
                    .fold(AffineExpr::default(), |acc, (&k, e)| acc.plus(&e.clone().scaled(k)))
                    .to_string()
            })
            .collect();
        let mut x_map = vec![String::new(); x_names.len()];
        for (j, &k) in s.perm().iter().enumerate() {
            x_map[k] = x_names[j].clone();
        }
        let sign = if tr.scale() < 0 { "-" } else { "" };
        let mut fields = vec![
            ("symmetry".to_string(), symmetry_json(s)),
            ("scale".to_string(), Value::from(tr.scale())),
            ("beta_map".to_string(), json::strings(&beta_map)),
            ("x_map".to_string(), json::strings(&x_map)),
            (
                "identity".to_string(),
                Value::from(format!("F(β; x) = {sign}F({}; {})", beta_map.join(", "), x_map.join(", "))),
            ),
        ];
        if let Some(e) = &entry {
            if let Ok(map) = e.parameter_map(s.t()) {
                let shown: Vec<String> =
                    e.parameter_names.iter().zip(&map).map(|(n, m)| format!("{n} -> {m}")).collect();
                fields.push(("classical_map".to_string(), json::strings(&shown)));
            }
        }
        out.push(Value::Object(fields.into_iter().collect()));
    }
    Ok(json::object([("order", Value::from(group.order())), ("transformations", Value::Array(out))]))
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Catalog { name: None } => Ok(Outcome::data(json::strings(&catalog_names()))),
        Command::Catalog { name: Some(name) } => Ok(Outcome::data(LoadedConfig::from(catalog(name)?).to_json())),
        Command::Validate { src, degree_bound } => {
            let loaded = resolve(src)?;
            let c = &loaded.config;
            let mut doc = json::object([
                ("valid", Value::from(true)),
                ("d", Value::from(c.d())),
                ("n", Value::from(c.n())),
                ("xi", json::ints(c.xi())),
                ("smith_factors", json::ints(&smith_normal_form(c.matrix()).invariant_factors())),
            ]);
            if let Some(bound) = degree_bound {
                doc["saturated_up_to_degree"] = Value::from(is_saturated_up_to(c.matrix(), *bound)?);
            }
            Ok(Outcome::data(doc))
        }
        Command::Xi { src } => Ok(Outcome::data(json::ints(resolve(src)?.config.xi()))),
        Command::StandardForm { src, m } => {
            let sf = to_standard_form(&resolve(src)?.config, *m)?;
            let blocks: Vec<Value> =
                sf.blocks().iter().map(|b| json::ints(&b.iter().map(|&j| j as i64).collect::<Vec<_>>())).collect();
            let exps: Vec<Value> = sf.exponents().iter().map(|e| json::ints(e)).collect();
            Ok(Outcome::data(json::object([
                ("m", Value::from(sf.m())),
                ("r", Value::from(sf.r())),
                ("unimodular", json::matrix(sf.unimodular())),
                ("transformed", json::matrix(sf.transformed())),
                ("blocks", Value::Array(blocks)),
                ("exponents", Value::Array(exps)),
            ])))
        }
        Command::Symmetries { src } => {
            let group = find_symmetries(&resolve(src)?.config)?;
            group.certify()?;
            Ok(Outcome::data(json::object([
                ("order", Value::from(group.order())),
                ("elements", Value::Array(group.elements().iter().map(symmetry_json).collect())),
            ])))
        }
        Command::Transforms { src } => Ok(Outcome::data(transforms_json(&resolve(src)?)?)),
        Command::Eval { src, point, classical } => {
            let loaded = resolve(src)?;
            let result = match classical {
                Some(values) => {
                    let entry = loaded
                        .catalog_entry()
                        .ok_or_else(|| CliError::Usage("--classical needs a catalog configuration".into()))?;
                    let mut map = BTreeMap::new();
                    for kv in values.split(',') {
                        let (k, v) = kv
                            .split_once('=')
                            .ok_or_else(|| CliError::Usage(format!("expected name=value, got `{kv}`")))?;
                        map.insert(k.trim().to_string(), parse_complex(v)?);
                    }
                    let x = parse_complex_list(
                        point.x.as_deref().ok_or_else(|| CliError::Usage("--x is required".into()))?,
                    )?;
                    classical_solution(&entry, &map, &Coefficients::for_config(&loaded.config, x)?)?
                }
                None => {
                    let p = resolve_point(point, &loaded.config)?;
                    let sf = to_standard_form(&loaded.config, point.m)?;
                    euler_integral(&sf, &p.beta, &p.x, &p.cycle, &settings(cli.tol)?)?
                }
            };
            Ok(Outcome { passed: true, text: None, document: eval_json(&result.require_converged()?) })
        }
        Command::Verify { check, src, point, samples, degree } => {
            let s = settings(cli.tol)?;
            let n = (*samples).max(2);
            match check {
                Check::Pfaff => Ok(report_outcome(verify_pfaff(n, SEED)?)),
                Check::Quadric => {
                    let q = verify_quadric_multivaluedness(n.min(5), &s)?;
                    let text = [&q.reversal_f1, &q.reversal_f2, &q.phase]
                        .iter()
                        .map(|r| report_line(r) + "\n")
                        .collect::<String>()
                        + &format!(
                            "composed factor matches the reference one up to exp(2πi<k,β>) with k = {:?}\n",
                            q.lattice_offset
                        );
                    Ok(Outcome { passed: q.verdict.as_str() == "pass", text: Some(text), document: quadric_json(&q) })
                }
                Check::Binomial => {
                    let name = src.source.clone().or(src.catalog.clone()).unwrap_or_else(|| "quadric".into());
                    let case = binomial_identities(&name, *degree)?;
                    Ok(report_outcome(verify_binomial_identity(&case, &s)?))
                }
                Check::Pde => {
                    let loaded = resolve(src)?;
                    let p = resolve_point(point, &loaded.config)?;
                    let sf = to_standard_form(&loaded.config, point.m)?;
                    Ok(report_outcome(verify_pde(&sf, &p.beta, &p.x, &p.cycle, &s)?))
                }
                Check::Symmetries => {
                    let loaded = resolve(src)?;
                    let entry = loaded
                        .catalog_entry()
                        .ok_or_else(|| CliError::Usage("symmetry verification needs a catalog configuration".into()))?;
                    let (grid, evaluator, threshold) = if entry.name == "quadric" {
                        let cycle = vec![Axis::positive()];
                        (
                            SampleGrid::quadric_positive(QUADRIC_BETA, n, SEED),
                            Evaluator::Integral { cycle, settings: s },
                            QUADRATURE_THRESHOLD,
                        )
                    } else {
                        (SampleGrid::classical_for(&entry, n, SEED)?, Evaluator::Classical, SERIES_THRESHOLD)
                    };
                    let reports = verify_symmetry_group(&entry, &grid, &evaluator, threshold)?;
                    Ok(many_reports(
                        reports
                            .into_iter()
                            .map(|(sym, r)| (format!("T={:?} perm={:?}", sym.t().to_rows(), sym.perm()), r))
                            .collect(),
                    ))
                }
            }
        }
        Command::F4Report => {
            let r = f4_nonexistence_report()?;
            let mut text: String = r
                .steps
                .iter()
                .map(|s| format!("{} {}: {}\n", if s.passed { "PASS" } else { "FAIL" }, s.name, s.detail))
                .collect();
            text.push_str(&format!("verdict: {}\n", r.verdict));
            Ok(Outcome { passed: r.reproduced(), text: Some(text), document: f4_json(&r) })
        }
    }
}

/// Runs the command line `argv` (including the program name), writing to the given streams.
pub fn run_with<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t > 0.0) {
            let _ = writeln!(stderr, "error: --tol must be a positive number");
            return EXIT_USAGE;
        }
    }
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let body = match (cli.format, &outcome.text) {
        (Format::Text, Some(t)) => t.clone(),
        _ => json::to_text(&outcome.document),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, body),
        None => stdout.write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_USAGE;
    }
    if outcome.passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Serializes a report for `emit`: JSON document or a one-line text summary.
pub fn emit_report(report: &IdentityReport, format: Format) -> String {
    match format {
        Format::Json => json::to_text(&json::report(report)),
        Format::Text => report_line(report) + "\n",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("gkz").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn xi_of_quadric() {
        let (code, out, _) = call(&["xi", "--catalog", "quadric"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "[1, 0]");
    }

    #[test]
    fn square_symmetries() {
        let (code, out, _) = call(&["symmetries", "square"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["order"], 8);
        assert_eq!(v["elements"].as_array().unwrap().len(), 8);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["xi"]).0, EXIT_USAGE);
        assert_eq!(call(&["xi", "no_such_thing"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "pfaff", "--tol", "-1"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_config("{\"matrix\": [[1, 1],\n [0, 1]", "cfg.json").unwrap_err();
        match err {
            CliError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lattice_error_carries_factors() {
        let err = parse_config("{\"matrix\": [[2, 0], [0, 2]]}", "x").unwrap_err();
        assert!(
            matches!(err, CliError::Config(ConfigError::LatticeNotSpanned { ref factors }) if factors == &vec![2, 2])
        );
        assert_eq!(err.exit_code(), EXIT_USAGE);
    }

    #[test]
    fn catalog_round_trip() {
        for name in catalog_names() {
            let loaded: LoadedConfig = catalog(&name).unwrap().into();
            let text = json::to_text(&loaded.to_json());
            assert_eq!(parse_config(&text, "rt").unwrap(), loaded, "{name}");
        }
    }

    #[test]
    fn params_keys_checked() {
        assert!(parse_config("{\"matrix\": [[1,1,1],[0,1,2]], \"params\": {\"beta1\": \"a\"}}", "p").is_err());
        assert!(parse_config(
            "{\"matrix\": [[1,1,1],[0,1,2]], \"params\": {\"beta1\": \"a\", \"beta2\": \"b c\"}}",
            "p"
        )
        .is_err());
        let ok =
            parse_config("{\"matrix\": [[1,1,1],[0,1,2]], \"params\": {\"beta2\": \"-b\", \"beta1\": \"a-1\"}}", "p")
                .unwrap();
        assert_eq!(ok.params.unwrap()[1].to_string(), "-b");
    }

    #[test]
    fn pfaff_text_report() {
        let (code, out, _) = call(&["verify", "pfaff", "--samples", "4", "--format", "text"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("PASS max_residual="), "{out}");
    }

    #[test]
    fn eval_quadric_on_real_line() {
        let (code, out, err) = call(&["eval", "quadric", "--beta=-0.7,-0.2", "--x=2,1,3", "--cycle", "real-line"]);
        assert_eq!(code, 0, "{err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["converged"], true);
    }

    #[test]
    fn deterministic_output() {
        let a = call(&["transforms", "square"]).1;
        let b = call(&["transforms", "square"]).1;
        assert_eq!(a, b);
        assert!(a.contains("classical_map"));
    }
}
