//! `rankone` command implementations.
//!
//! Every command produces a [`Report`]: a JSON document echoing the parsed
//! inputs, the verdict payload, wall-clock timing and the seed. Re-running
//! the embedded command line with the embedded seed reproduces `verdict`
//! byte for byte.

use std::fmt;
use std::fs::File;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rankone_core::cauchy::{self, DEFAULT_INDEPENDENCE_TOL};
use rankone_core::classify::{self, ClassifyError, FitOptions, SampleSet};
use rankone_core::entrywise::{self, EntrywiseError, EvalError};
use rankone_core::{
    CandidateFunction, CauchyError, Complex64, ConeSpec, HermitianMatrix, PowerFamilyMember, Region,
    ToleranceProfile, WitnessCertificate,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const DEFAULT_SEED: u64 = 1;
/// Overrides [`DEFAULT_SEED`] when `--seed` is absent.
pub const SEED_ENV: &str = "RANKONE_SEED";

#[derive(Debug, Parser)]
#[command(name = "rankone", version, about = "Rank-one preserver checks and classifiers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Search for a matrix in P_n^1(domain) whose entrywise image leaves P_n^k.
    Check(CheckArgs),
    /// Fit a power family to sampled values.
    Classify(ClassifyArgs),
    /// Solve one of the four Cauchy equations from samples.
    Cauchy(CauchyArgs),
    /// Linear independence of power-family members on a grid.
    Independence(IndependenceArgs),
    /// Re-check a report's certificate and replay its command line.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Tolerances {
    /// Eigenvalue floor, relative to max(1, spectral scale).
    #[arg(long, default_value_t = rankone_core::cones::DEFAULT_PSD_TOL)]
    pub psd_tol: f64,
    /// Rank cutoff, relative to max(1, spectral scale).
    #[arg(long, default_value_t = rankone_core::cones::DEFAULT_RANK_TOL)]
    pub rank_tol: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CheckArgs {
    /// phi:c:a, psi:c:a, cpow:c:a:b, const:c, zero, affine:a:b, exp:b, log:b, abs, table:PATH
    #[arg(long = "fn")]
    pub function: String,
    /// lo,hi (open), [lo,hi], (lo,hi], disc:R, annulus:r:R, circle+interval:lo,hi
    #[arg(long, allow_hyphen_values = true)]
    pub domain: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub out_k: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Sweep the whole witness grid before any random draw.
    #[arg(long)]
    pub witness_first: bool,
    #[command(flatten)]
    pub tol: Tolerances,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassifyMode {
    Real,
    Complex,
    Rank2,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FitArgs {
    /// Relative acceptance threshold for fit residuals.
    #[arg(long, default_value_t = classify::DEFAULT_FIT_TOL)]
    pub tol: f64,
    /// Relative tolerance when matching products or sums to sampled points.
    #[arg(long, default_value_t = classify::DEFAULT_MATCH_TOL)]
    pub match_tol: f64,
}

impl FitArgs {
    fn options(&self) -> FitOptions {
        FitOptions {
            tol: self.tol,
            match_tol: self.match_tol,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ClassifyArgs {
    /// CSV with header; rows `x,value` or `re_x,im_x,re_v,im_v`.
    #[arg(long)]
    pub samples: PathBuf,
    #[arg(long, value_enum, default_value_t = ClassifyMode::Real)]
    pub mode: ClassifyMode,
    /// Domain of the sampled map; defaults to the closed hull of the points.
    #[arg(long, allow_hyphen_values = true)]
    pub domain: Option<String>,
    #[command(flatten)]
    pub fit: FitArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum EquationArg {
    /// K(x+y) = K(x) + K(y)
    A,
    /// K(xy) = K(x) K(y)
    B,
    /// K(x+y) = K(x) K(y)
    C,
    /// K(xy) = K(x) + K(y)
    D,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CauchyArgs {
    #[arg(long)]
    pub samples: PathBuf,
    #[arg(long, value_enum)]
    pub equation: EquationArg,
    #[arg(long, allow_hyphen_values = true)]
    pub domain: Option<String>,
    #[command(flatten)]
    pub fit: FitArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IndependenceArgs {
    /// Comma-separated members, e.g. `const:1,phi:1:0.5,psi:1:0.5`.
    #[arg(long, allow_hyphen_values = true)]
    pub members: String,
    /// `lo,hi` for evenly spaced interior points (0 excluded), or `circle`.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    /// Independent iff σ_min > threshold · σ_max.
    #[arg(long, default_value_t = DEFAULT_INDEPENDENCE_TOL)]
    pub threshold: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    pub report: PathBuf,
}

/// Failure classes, mapped to exit codes 1 and 2.
#[derive(Debug)]
pub enum CliError {
    Input(anyhow::Error),
    Numerical(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(e) => write!(f, "input error: {e:#}"),
            CliError::Numerical(e) => write!(f, "numerical failure: {e:#}"),
        }
    }
}

impl std::error::Error for CliError {}

fn input(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Input(e.into())
}

fn entrywise_err(e: EntrywiseError) -> CliError {
    match e {
        EntrywiseError::NonFiniteValue { .. } | EntrywiseError::Evaluation { .. } => {
            CliError::Numerical(e.into())
        }
        other => CliError::Input(other.into()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub argv: Vec<String>,
    pub inputs: Value,
    pub verdict: Value,
    /// Wall-clock seconds.
    pub timing: f64,
    pub seed: Option<u64>,
}

impl Report {
    /// The verdict as canonical JSON text, for byte comparisons.
    pub fn verdict_bytes(&self) -> String {
        serde_json::to_string(&self.verdict).expect("verdict serializes")
    }

    pub fn summary(&self) -> String {
        let status = self
            .verdict
            .get("status")
            .and_then(Value::as_str)
            .unwrap_or("done");
        format!("{}: {status} ({:.3} s)", self.command, self.timing)
    }
}

/// A scalar map given on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    Member(PowerFamilyMember),
    Affine { a: f64, b: f64 },
    Exp { beta: f64 },
    Log { beta: f64 },
    Abs,
    Table { path: PathBuf },
}

fn num(s: &str) -> anyhow::Result<f64> {
    let v: f64 = s.trim().parse().with_context(|| format!("`{s}` is not a number"))?;
    if !v.is_finite() {
        bail!("`{s}` is not finite");
    }
    Ok(v)
}

impl FromStr for FunctionSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let s = s.trim();
        let parts: Vec<&str> = s.split(':').collect();
        match parts[..] {
            ["affine", a, b] => Ok(Self::Affine { a: num(a)?, b: num(b)? }),
            ["exp", b] => Ok(Self::Exp { beta: num(b)? }),
            ["log", b] => Ok(Self::Log { beta: num(b)? }),
            ["abs"] => Ok(Self::Abs),
            ["table", ..] => Ok(Self::Table {
                path: PathBuf::from(&s["table:".len()..]),
            }),
            _ => s
                .parse::<PowerFamilyMember>()
                .map(Self::Member)
                .with_context(|| format!("unknown function `{s}`")),
        }
    }
}

impl FunctionSpec {
    pub fn candidate(&self, domain: &Region) -> anyhow::Result<CandidateFunction> {
        let d = domain.clone();
        Ok(match *self {
            Self::Member(m) => CandidateFunction::from_member(m, d),
            Self::Affine { a, b } => CandidateFunction::real(format!("affine:{a}:{b}"), d, move |x| a * x + b),
            Self::Exp { beta } => CandidateFunction::real(format!("exp:{beta}"), d, move |x| (beta * x).exp()),
            Self::Log { beta } => CandidateFunction::real_fallible(format!("log:{beta}"), d, move |x| {
                if x > 0.0 {
                    Ok(beta * x.ln())
                } else {
                    Err(EvalError(format!("log undefined at {x}")))
                }
            }),
            Self::Abs => CandidateFunction::real("abs", d, f64::abs),
            Self::Table { ref path } => {
                let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
                let table = SampleSet::from_csv(file, Some(domain.clone()))?;
                let label = format!("table:{}", path.display());
                let lookup = move |z: Complex64| {
                    table
                        .value_at(z)
                        .ok_or_else(|| EvalError(format!("{z} is not a tabulated point")))
                };
                if domain.is_real() {
                    CandidateFunction::real_fallible(label, d, move |x| lookup(Complex64::new(x, 0.0)).map(|v| v.re))
                } else {
                    CandidateFunction::complex_fallible(label, d, lookup)
                }
            }
        })
    }
}

fn parse_domain(s: &str) -> Result<Region, CliError> {
    s.parse::<Region>().map_err(|e| input(anyhow!("domain `{s}`: {e}")))
}

fn tolerance(t: &Tolerances) -> Result<ToleranceProfile, CliError> {
    ToleranceProfile::new(t.psd_tol, t.rank_tol).map_err(input)
}

fn resolve_seed(seed: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| input(anyhow!("{SEED_ENV}=`{v}`: {e}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Row-major rows of `"re"` / `"im"` strings with 17 significant digits.
pub fn matrix_decimal(m: &HermitianMatrix) -> Value {
    let n = m.n();
    let fmt = |x: f64| format!("{x:.16e}");
    let rows = |part: fn(Complex64) -> f64| -> Vec<Vec<String>> {
        (0..n).map(|i| (0..n).map(|j| fmt(part(m.get(i, j)))).collect()).collect()
    };
    json!({ "re": rows(|z| z.re), "im": rows(|z| z.im) })
}

/// Parses [`matrix_decimal`] output back into a Hermitian matrix.
pub fn matrix_from_decimal(v: &Value) -> anyhow::Result<HermitianMatrix> {
    let grab = |key: &str| -> anyhow::Result<Vec<Vec<f64>>> {
        let rows = v
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| anyhow!("matrix is missing `{key}`"))?;
        rows.iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| anyhow!("row is not an array"))?
                    .iter()
                    .map(|x| {
                        x.as_str()
                            .ok_or_else(|| anyhow!("entry is not a string"))?
                            .parse::<f64>()
                            .map_err(Into::into)
                    })
                    .collect()
            })
            .collect()
    };
    let (re, im) = (grab("re")?, grab("im")?);
    let n = re.len();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let r = re[i].get(j).ok_or_else(|| anyhow!("ragged matrix"))?;
            let c = im.get(i).and_then(|row| row.get(j)).ok_or_else(|| anyhow!("ragged matrix"))?;
            entries.push(Complex64::new(*r, *c));
        }
    }
    Ok(HermitianMatrix::from_rows(n, &entries)?)
}

fn with_certificate(mut verdict: Value, cert: Option<&WitnessCertificate>) -> Value {
    if let (Some(cert), Some(obj)) = (cert, verdict.as_object_mut()) {
        obj.insert("matrix_decimal".into(), matrix_decimal(&cert.matrix));
    }
    verdict
}

fn cmd_check(a: &CheckArgs) -> Result<(Value, Option<u64>), CliError> {
    let domain = parse_domain(&a.domain)?;
    let spec: FunctionSpec = a.function.parse().map_err(input)?;
    let f = spec.candidate(&domain).map_err(input)?;
    let cone = ConeSpec::rank_one(a.n, domain).map_err(input)?;
    let tol = tolerance(&a.tol)?;
    let seed = resolve_seed(a.seed)?;
    let verdict = if a.witness_first {
        let cert = entrywise::find_violation(&f, &cone, a.trials, seed, &tol).map_err(entrywise_err)?;
        let status = if cert.is_some() { "violation" } else { "no_violation_found" };
        let v = json!({ "status": status, "certificate": cert, "budget": a.trials, "seed": seed });
        with_certificate(v, cert.as_ref())
    } else {
        let v = entrywise::check_preserver(&f, &cone, a.out_k, a.trials, seed, &tol).map_err(entrywise_err)?;
        let json = serde_json::to_value(&v).map_err(|e| CliError::Numerical(e.into()))?;
        with_certificate(json, v.certificate())
    };
    Ok((verdict, Some(seed)))
}

fn load_samples(path: &Path, domain: Option<&str>) -> Result<SampleSet, CliError> {
    let domain = domain.map(parse_domain).transpose()?;
    let file = File::open(path).map_err(|e| input(anyhow!("opening {}: {e}", path.display())))?;
    SampleSet::from_csv(file, domain).map_err(|e| input(anyhow!("{}: {e}", path.display())))
}

/// Rejections that are answers about the samples rather than bad input.
fn classify_rejection(e: &ClassifyError) -> Option<&'static str> {
    match e {
        ClassifyError::NotInFamily { .. } => Some("not_in_family"),
        ClassifyError::Rank2Exception { .. } => Some("rank2_exception"),
        ClassifyError::NotEquivariant { .. } => Some("not_equivariant"),
        ClassifyError::Inconsistent(_) => Some("inconsistent"),
        _ => None,
    }
}

fn rejected(kind: &str, reason: impl fmt::Display) -> Value {
    json!({ "status": "rejected", "kind": kind, "reason": reason.to_string() })
}

fn to_value<T: Serialize>(status: &str, payload: &T) -> Result<Value, CliError> {
    let payload = serde_json::to_value(payload).map_err(|e| CliError::Numerical(e.into()))?;
    Ok(json!({ "status": status, "result": payload }))
}

fn cmd_classify(a: &ClassifyArgs) -> Result<Value, CliError> {
    let s = load_samples(&a.samples, a.domain.as_deref())?;
    let opts = a.fit.options();
    let res = match a.mode {
        ClassifyMode::Real => classify::fit_real_power(&s, &opts).map(|r| to_value("classified", &r)),
        ClassifyMode::Complex => classify::fit_complex_power(&s, &opts).map(|r| to_value("classified", &r)),
        ClassifyMode::Rank2 => classify::fit_rank2_exception(&s, &opts).map(|r| to_value("classified", &r)),
    };
    match res {
        Ok(v) => v,
        Err(e) => match classify_rejection(&e) {
            Some(kind) => Ok(rejected(kind, e)),
            None => Err(input(e)),
        },
    }
}

fn cmd_cauchy(a: &CauchyArgs) -> Result<Value, CliError> {
    let s = load_samples(&a.samples, a.domain.as_deref())?;
    let opts = a.fit.options();
    let res = match a.equation {
        EquationArg::A => cauchy::classify_additive(&s, &opts),
        EquationArg::B => cauchy::classify_multiplicative(&s, &opts),
        EquationArg::C => cauchy::classify_exponential(&s, &opts),
        EquationArg::D => cauchy::classify_logarithmic(&s, &opts),
    };
    match res {
        Ok(v) => to_value("classified", &v),
        Err(CauchyError::NotSatisfied { .. }) | Err(CauchyError::Inconsistent(_)) => {
            let e = res.unwrap_err();
            let kind = if matches!(e, CauchyError::Inconsistent(_)) {
                "inconsistent"
            } else {
                "not_satisfied"
            };
            Ok(rejected(kind, e))
        }
        Err(CauchyError::Classify(e)) => match classify_rejection(&e) {
            Some(kind) => Ok(rejected(kind, e)),
            None => Err(input(e)),
        },
        Err(e) => Err(input(e)),
    }
}

/// Evenly spaced interior points of `lo,hi` with 0 removed, or points on
/// the unit circle.
pub fn independence_grid(spec: &str, count: usize) -> anyhow::Result<Vec<Complex64>> {
    if count == 0 {
        bail!("grid needs at least one point");
    }
    if spec.trim() == "circle" {
        return Ok((0..count)
            .map(|k| Complex64::from_polar(1.0, -std::f64::consts::PI + (k as f64 + 0.5) * 2.0 * std::f64::consts::PI / count as f64))
            .collect());
    }
    let region: Region = spec.parse()?;
    let iv = *region
        .as_interval()
        .ok_or_else(|| anyhow!("grid `{spec}` must be a real interval or `circle`"))?;
    if !(iv.lo().is_finite() && iv.hi().is_finite()) || iv.is_degenerate() {
        bail!("grid interval `{spec}` must be bounded and nondegenerate");
    }
    let h = (iv.hi() - iv.lo()) / count as f64;
    Ok((0..count)
        .map(|k| iv.lo() + (k as f64 + 0.5) * h)
        .filter(|&x| x != 0.0)
        .map(|x| Complex64::new(x, 0.0))
        .collect())
}

fn cmd_independence(a: &IndependenceArgs) -> Result<Value, CliError> {
    let members = a
        .members
        .split(',')
        .map(|m| m.trim().parse::<PowerFamilyMember>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(input)?;
    let grid = independence_grid(&a.grid, a.points).map_err(input)?;
    let r = cauchy::dedekind_independence(&members, &grid, a.threshold).map_err(input)?;
    let status = if r.independent { "independent" } else { "dependent" };
    to_value(status, &r)
}

fn cmd_verify(a: &VerifyArgs) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(&a.report)
        .map_err(|e| input(anyhow!("reading {}: {e}", a.report.display())))?;
    let report: Report = serde_json::from_str(&text).map_err(|e| input(anyhow!("parsing report: {e}")))?;
    let mut argv = report.argv.clone();
    if let Some(seed) = report.seed {
        argv = strip_flag_value(&report.argv, "--seed");
        argv.push(format!("--seed={seed}"));
    }
    let cli = Cli::try_parse_from(&argv).map_err(|e| input(anyhow!("embedded command line: {e}")))?;
    if matches!(cli.command, Command::Verify(_)) {
        return Err(input(anyhow!("a verify report cannot be replayed")));
    }

    let mut certificate_rechecks = Value::Null;
    if let (Command::Check(args), Some(cert_json)) = (&cli.command, report.verdict.get("certificate")) {
        if !cert_json.is_null() {
            let cert: WitnessCertificate = serde_json::from_value(cert_json.clone())
                .map_err(|e| input(anyhow!("certificate: {e}")))?;
            let decimal_ok = match report.verdict.get("matrix_decimal") {
                Some(m) => matrix_from_decimal(m).map_err(input)? == cert.matrix,
                None => false,
            };
            let domain = parse_domain(&args.domain)?;
            let spec: FunctionSpec = args.function.parse().map_err(input)?;
            let f = spec.candidate(&domain).map_err(input)?;
            let ok = cert.recheck(&f).map_err(entrywise_err)?;
            certificate_rechecks = Value::Bool(ok && decimal_ok);
        }
    }
    let replay = execute(cli, argv)?;
    let same = replay.verdict_bytes() == report.verdict_bytes();
    let ok = same && certificate_rechecks != Value::Bool(false);
    Ok(json!({
        "status": if ok { "verified" } else { "mismatch" },
        "verdict_reproduced": same,
        "certificate_rechecks": certificate_rechecks,
    }))
}

fn strip_flag_value(argv: &[String], flag: &str) -> Vec<String> {
    let mut out = Vec::with_capacity(argv.len());
    let mut skip = false;
    for a in argv {
        if skip {
            skip = false;
            continue;
        }
        if a == flag {
            skip = true;
            continue;
        }
        if a.starts_with(&format!("{flag}=")) {
            continue;
        }
        out.push(a.clone());
    }
    out
}

/// Runs a parsed command; `argv` is recorded in the report.
pub fn execute(cli: Cli, argv: Vec<String>) -> Result<Report, CliError> {
    let start = Instant::now();
    let inputs = serde_json::to_value(&cli.command).map_err(|e| CliError::Numerical(e.into()))?;
    let (name, verdict, seed) = match &cli.command {
        Command::Check(a) => {
            let (v, seed) = cmd_check(a)?;
            ("check", v, seed)
        }
        Command::Classify(a) => ("classify", cmd_classify(a)?, None),
        Command::Cauchy(a) => ("cauchy", cmd_cauchy(a)?, None),
        Command::Independence(a) => ("independence", cmd_independence(a)?, None),
        Command::Verify(a) => ("verify", cmd_verify(a)?, None),
    };
    Ok(Report {
        command: name.into(),
        argv,
        inputs,
        verdict,
        timing: start.elapsed().as_secs_f64(),
        seed,
    })
}

/// Parses `argv` (program name first) and runs it. Help and version
/// requests surface as `clap` errors inside [`CliError::Input`].
pub fn run<I, S>(argv: I) -> Result<Report, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&argv).map_err(|e| input(anyhow!("{e}")))?;
    execute(cli, argv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_specs_parse() {
        assert_eq!("affine:1:1".parse::<FunctionSpec>().unwrap(), FunctionSpec::Affine { a: 1.0, b: 1.0 });
        assert_eq!("exp:2.3".parse::<FunctionSpec>().unwrap(), FunctionSpec::Exp { beta: 2.3 });
        assert_eq!("abs".parse::<FunctionSpec>().unwrap(), FunctionSpec::Abs);
        assert_eq!(
            "phi:1:2".parse::<FunctionSpec>().unwrap(),
            FunctionSpec::Member(PowerFamilyMember::phi(1.0, 2.0).unwrap())
        );
        assert_eq!(
            "table:/tmp/a:b.csv".parse::<FunctionSpec>().unwrap(),
            FunctionSpec::Table { path: "/tmp/a:b.csv".into() }
        );
        assert!("sin".parse::<FunctionSpec>().is_err());
        assert!("affine:1".parse::<FunctionSpec>().is_err());
    }

    #[test]
    fn candidates_evaluate() {
        let d: Region = "0,10".parse().unwrap();
        let f = "affine:2:1".parse::<FunctionSpec>().unwrap().candidate(&d).unwrap();
        assert_eq!(f.eval(Complex64::new(3.0, 0.0)).unwrap().re, 7.0);
        let f = "log:2".parse::<FunctionSpec>().unwrap().candidate(&d).unwrap();
        assert!((f.eval(Complex64::new(std::f64::consts::E, 0.0)).unwrap().re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn decimal_matrix_round_trips() {
        let m = HermitianMatrix::outer(&[Complex64::new(0.1, 0.3), Complex64::new(1.0 / 3.0, 0.0)]).unwrap();
        assert_eq!(matrix_from_decimal(&matrix_decimal(&m)).unwrap(), m);
    }

    #[test]
    fn seed_flag_is_stripped() {
        let argv: Vec<String> = ["rankone", "check", "--seed", "4", "--n", "3"].iter().map(|s| s.to_string()).collect();
        assert_eq!(strip_flag_value(&argv, "--seed"), ["rankone", "check", "--n", "3"]);
    }

    #[test]
    fn independence_grid_skips_zero() {
        let g = independence_grid("-1,1", 5).unwrap();
        assert_eq!(g.len(), 4);
        assert!(g.iter().all(|z| z.re != 0.0));
        assert_eq!(independence_grid("circle", 8).unwrap().len(), 8);
    }
}
