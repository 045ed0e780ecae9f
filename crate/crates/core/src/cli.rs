//! `laxcheck` command-line front end.
//!
//! Every subcommand writes a CSV or JSON artifact to `--output` (or stdout)
//! only when all of its internal checks pass. Otherwise nothing is written
//! and a one-line JSON failure record goes to stderr.
//!
//! Exit codes:
//!
//! | code | meaning                                  |
//! |------|------------------------------------------|
//! | 0    | all checks passed, artifact written      |
//! | 1    | a check failed                           |
//! | 2    | unknown or malformed problem selection   |
//! | 3    | grid too small (`N < 3`)                 |
//! | 4    | output path not writable                 |
//! | 5    | any other configuration or usage error   |

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::fit::{serialize_sig17, serialize_sig17_opt, sig17};
use crate::grid::{BVProblem, Grid, GridNorm};
use crate::laxcheck::refinement_study;
use crate::spectral::{
    analytic_eigenpair, cross_orthogonality_sum, orthonormality_check, sine_square_sum, stability_summary,
    verify_eigenpair,
};
use crate::taylor::{check_sample, consistency_bound, default_dx_ladder, truncation_order_fit};
use crate::tridiag::{TridiagonalOperator, MIN_SCHEME_N};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_BAD_PROBLEM: i32 = 2;
pub const EXIT_GRID_TOO_SMALL: i32 = 3;
pub const EXIT_UNWRITABLE: i32 = 4;
pub const EXIT_CONFIG: i32 = 5;

/// Tolerance on the Taylor cancellation identity.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Tolerance on `sine_square_sum - 1` and `cross_orthogonality_sum`.
pub const TRIG_TOL: f64 = 1e-11;
/// Tolerance on `||S^T S - I||_max`.
pub const ORTHONORMALITY_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "laxcheck", version, about = "Consistency, stability and convergence checks for the central second-difference scheme")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form eigenpairs of A(a, b, c) with residuals.
    Eigen(EigenArgs),
    /// Spectral stability bound 1/|lambda_min| <= L^2/4 over a list of N.
    Stability(StabilityArgs),
    /// Taylor-Lagrange remainder bounds and truncation order at a point.
    Consistency(ConsistencyArgs),
    /// Refinement study of local and global errors with the Lax chain check.
    Converge(ConvergeArgs),
    /// Orthonormality and trigonometric identities over a list of N.
    Identities(IdentitiesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Artifact path; stdout when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    #[arg(long)]
    pub n: usize,
    /// Sub-diagonal.
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    /// Diagonal.
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    /// Super-diagonal.
    #[arg(long, allow_hyphen_values = true)]
    pub c: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[arg(long = "L", alias = "length", allow_hyphen_values = true)]
    pub length: f64,
    /// `a,b,c` or `a..b` (doubling).
    #[arg(long)]
    pub n_list: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ConsistencyArgs {
    /// zero | constant_rhs | sine[:k=<int>] | poly:c0,c1,...
    #[arg(long)]
    pub problem: String,
    #[arg(long = "L", alias = "length", allow_hyphen_values = true)]
    pub length: f64,
    #[arg(long)]
    pub x: f64,
    /// Comma-separated geometric step ladder; halving ladder when omitted.
    #[arg(long, value_delimiter = ',')]
    pub dx_list: Option<Vec<f64>>,
    /// Length of the default ladder.
    #[arg(long, default_value_t = 6)]
    pub levels: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long)]
    pub problem: String,
    #[arg(long = "L", alias = "length", allow_hyphen_values = true)]
    pub length: f64,
    /// `a,b,c` or `a..b` (n -> 2n+1, so h halves exactly).
    #[arg(long)]
    pub n_list: String,
    /// max | l1 | l2 | l2h
    #[arg(long, default_value = "l2h")]
    pub norm: GridNorm,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct IdentitiesArgs {
    #[arg(long)]
    pub n_list: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Range expansion for `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    /// `n -> 2n`
    Doubling,
    /// `n -> 2n + 1`
    HalvingStep,
}

/// Parse `a,b,c` or `a..b`.
pub fn parse_n_list(s: &str, ladder: Ladder) -> Result<Vec<usize>, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| format!("invalid N `{}`: {e}", t.trim()))
    };
    if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if lo == 0 {
            return Err("range start must be positive".into());
        }
        if hi < lo {
            return Err(format!("empty range {lo}..{hi}"));
        }
        let mut out = vec![];
        let mut n = lo;
        while n <= hi {
            out.push(n);
            n = match ladder {
                Ladder::Doubling => 2 * n,
                Ladder::HalvingStep => 2 * n + 1,
            };
        }
        return Ok(out);
    }
    let out = s.split(',').map(parse).collect::<Result<Vec<_>, _>>()?;
    if out.is_empty() {
        return Err("empty N list".into());
    }
    Ok(out)
}

/// A non-zero outcome: exit code plus a message for the failure record.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    messages: Vec<String>,
}

impl Failure {
    fn config(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CONFIG,
            kind: "config",
            messages: vec![msg.into()],
        }
    }

    fn checks(messages: Vec<String>) -> Self {
        Failure {
            code: EXIT_CHECK_FAILED,
            kind: "check",
            messages,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::UnknownProblem(_) | Error::InvalidProblem { .. } => (EXIT_BAD_PROBLEM, "problem"),
            Error::GridTooSmall { .. } => (EXIT_GRID_TOO_SMALL, "grid"),
            Error::LevelFailed { source, .. } if matches!(**source, Error::GridTooSmall { .. }) => {
                (EXIT_GRID_TOO_SMALL, "grid")
            }
            _ => (EXIT_CONFIG, "config"),
        };
        Failure {
            code,
            kind,
            messages: vec![e.to_string()],
        }
    }
}

#[derive(Serialize)]
struct FailureRecord<'a> {
    status: &'static str,
    subcommand: &'a str,
    exit_code: i32,
    kind: &'static str,
    failures: &'a [String],
}

fn check_grid_sizes(ns: &[usize]) -> Result<(), Failure> {
    match ns.iter().find(|&&n| n < MIN_SCHEME_N) {
        Some(&n) => Err(Error::GridTooSmall { n, min: MIN_SCHEME_N }.into()),
        None => Ok(()),
    }
}

fn n_list(s: &str, ladder: Ladder) -> Result<Vec<usize>, Failure> {
    let ns = parse_n_list(s, ladder).map_err(Failure::config)?;
    check_grid_sizes(&ns)?;
    Ok(ns)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("artifact serializes");
    s.push('\n');
    s
}

fn csv_row(fields: &[String]) -> String {
    let mut s = fields.join(",");
    s.push('\n');
    s
}

// ---- eigen ----

#[derive(Serialize)]
struct EigenRow {
    m: usize,
    #[serde(serialize_with = "serialize_sig17")]
    lambda: f64,
    #[serde(serialize_with = "serialize_sig17")]
    residual: f64,
    #[serde(serialize_with = "serialize_sig17")]
    threshold: f64,
    verified: bool,
}

#[derive(Serialize)]
struct EigenArtifact {
    n: usize,
    #[serde(serialize_with = "serialize_sig17")]
    a: f64,
    #[serde(serialize_with = "serialize_sig17")]
    b: f64,
    #[serde(serialize_with = "serialize_sig17")]
    c: f64,
    pairs: Vec<EigenRow>,
    /// Only for symmetric operators.
    #[serde(serialize_with = "serialize_sig17_opt")]
    orthonormality: Option<f64>,
}

fn eigen(args: &EigenArgs) -> Result<String, Failure> {
    check_grid_sizes(&[args.n])?;
    let op = TridiagonalOperator::new(args.n, args.a, args.b, args.c)?;
    let mut pairs = Vec::with_capacity(args.n);
    let mut failures = vec![];
    for m in 1..=args.n {
        let pair = analytic_eigenpair(&op, m)?;
        let r = verify_eigenpair(&op, &pair)?;
        if !r.verified {
            failures.push(format!(
                "eigenpair m = {m}: residual {} > {}",
                sig17(r.residual),
                sig17(r.threshold)
            ));
        }
        pairs.push(EigenRow {
            m,
            lambda: pair.lambda,
            residual: r.residual,
            threshold: r.threshold,
            verified: r.verified,
        });
    }
    let orthonormality = if op.is_symmetric() {
        let o = orthonormality_check(&op)?.max();
        if o > ORTHONORMALITY_TOL {
            failures.push(format!("orthonormality residual {} > {ORTHONORMALITY_TOL:e}", sig17(o)));
        }
        Some(o)
    } else {
        None
    };
    if !failures.is_empty() {
        return Err(Failure::checks(failures));
    }
    Ok(match args.out.format {
        Format::Json => to_json(&EigenArtifact {
            n: args.n,
            a: args.a,
            b: args.b,
            c: args.c,
            pairs,
            orthonormality,
        }),
        Format::Csv => {
            let mut s = String::from("m,lambda,residual,threshold,verified\n");
            for p in &pairs {
                s += &csv_row(&[
                    p.m.to_string(),
                    sig17(p.lambda),
                    sig17(p.residual),
                    sig17(p.threshold),
                    p.verified.to_string(),
                ]);
            }
            s
        }
    })
}

// ---- stability ----

#[derive(Serialize)]
struct StabilityRow {
    #[serde(rename = "N")]
    n: usize,
    #[serde(serialize_with = "serialize_sig17")]
    h: f64,
    #[serde(serialize_with = "serialize_sig17")]
    lambda_min: f64,
    #[serde(serialize_with = "serialize_sig17")]
    inv_norm: f64,
    #[serde(serialize_with = "serialize_sig17")]
    bound: f64,
    satisfied: bool,
}

#[derive(Serialize)]
struct StabilityArtifact {
    #[serde(rename = "L", serialize_with = "serialize_sig17")]
    length: f64,
    /// `L^2 / pi^2`, the limit of `inv_norm` as `N` grows.
    #[serde(serialize_with = "serialize_sig17")]
    limit: f64,
    rows: Vec<StabilityRow>,
}

fn stability(args: &StabilityArgs) -> Result<String, Failure> {
    let ns = n_list(&args.n_list, Ladder::Doubling)?;
    let mut rows = Vec::with_capacity(ns.len());
    let mut failures = vec![];
    for n in ns {
        let s = stability_summary(n, args.length)?;
        if !s.satisfied {
            failures.push(format!(
                "N = {n}: 1/|lambda_min| = {} exceeds L^2/4 = {}",
                sig17(s.inv_norm),
                sig17(s.bound)
            ));
        }
        rows.push(StabilityRow {
            n,
            h: s.h,
            lambda_min: s.lambda_min,
            inv_norm: s.inv_norm,
            bound: s.bound,
            satisfied: s.satisfied,
        });
    }
    if !failures.is_empty() {
        return Err(Failure::checks(failures));
    }
    Ok(match args.out.format {
        Format::Json => to_json(&StabilityArtifact {
            length: args.length,
            limit: args.length * args.length / (std::f64::consts::PI * std::f64::consts::PI),
            rows,
        }),
        Format::Csv => {
            let mut s = String::from("N,h,lambda_min,inv_norm,bound,satisfied\n");
            for r in &rows {
                s += &csv_row(&[
                    r.n.to_string(),
                    sig17(r.h),
                    sig17(r.lambda_min),
                    sig17(r.inv_norm),
                    sig17(r.bound),
                    r.satisfied.to_string(),
                ]);
            }
            s
        }
    })
}

// ---- consistency ----

#[derive(Serialize)]
struct SampleRow {
    #[serde(serialize_with = "serialize_sig17")]
    dx: f64,
    #[serde(serialize_with = "serialize_sig17")]
    tau: f64,
    #[serde(rename = "F", serialize_with = "serialize_sig17")]
    forward: f64,
    #[serde(rename = "G", serialize_with = "serialize_sig17")]
    backward: f64,
    forward_ok: bool,
    backward_ok: bool,
    triangle_ok: bool,
    stencil_ok: bool,
    tight_ok: bool,
    #[serde(serialize_with = "serialize_sig17")]
    identity_residual: f64,
}

#[derive(Serialize)]
struct ConsistencyArtifact {
    problem: String,
    #[serde(rename = "L", serialize_with = "serialize_sig17")]
    length: f64,
    #[serde(rename = "M", serialize_with = "serialize_sig17")]
    forward_constant: f64,
    #[serde(rename = "K", serialize_with = "serialize_sig17")]
    backward_constant: f64,
    fit: crate::taylor::OrderFit,
    samples: Vec<SampleRow>,
}

fn consistency(args: &ConsistencyArgs) -> Result<String, Failure> {
    let p = BVProblem::parse(&args.problem, args.length)?;
    let bound = consistency_bound(&p, args.x)?;
    let dx_list = match &args.dx_list {
        Some(l) => l.clone(),
        None => default_dx_ladder(&p, args.x, args.levels)?,
    };
    let fit = truncation_order_fit(&p, args.x, &dx_list)?;
    let mut samples = Vec::with_capacity(dx_list.len());
    let mut failures = vec![];
    for &dx in &dx_list {
        let c = check_sample(&p, &bound, dx)?;
        if !c.all_ok() {
            failures.push(format!("dx = {}: a remainder or stencil bound failed", sig17(dx)));
        }
        if c.identity_residual > IDENTITY_TOL {
            failures.push(format!(
                "dx = {}: cancellation identity residual {} > {IDENTITY_TOL:e}",
                sig17(dx),
                sig17(c.identity_residual)
            ));
        }
        samples.push(SampleRow {
            dx,
            tau: c.tau,
            forward: c.forward,
            backward: c.backward,
            forward_ok: c.forward_ok,
            backward_ok: c.backward_ok,
            triangle_ok: c.triangle_ok,
            stencil_ok: c.stencil_ok,
            tight_ok: c.tight_ok,
            identity_residual: c.identity_residual,
        });
    }
    if !failures.is_empty() {
        return Err(Failure::checks(failures));
    }
    Ok(match args.out.format {
        Format::Json => to_json(&ConsistencyArtifact {
            problem: p.name().to_string(),
            length: args.length,
            forward_constant: bound.forward.constant,
            backward_constant: bound.backward.constant,
            fit,
            samples,
        }),
        Format::Csv => {
            let mut s = String::from(
                "dx,tau,F,G,forward_ok,backward_ok,triangle_ok,stencil_ok,tight_ok,identity_residual\n",
            );
            for r in &samples {
                s += &csv_row(&[
                    sig17(r.dx),
                    sig17(r.tau),
                    sig17(r.forward),
                    sig17(r.backward),
                    r.forward_ok.to_string(),
                    r.backward_ok.to_string(),
                    r.triangle_ok.to_string(),
                    r.stencil_ok.to_string(),
                    r.tight_ok.to_string(),
                    sig17(r.identity_residual),
                ]);
            }
            s
        }
    })
}

// ---- converge ----

fn converge(args: &ConvergeArgs) -> Result<String, Failure> {
    let p = BVProblem::parse(&args.problem, args.length)?;
    let ns = n_list(&args.n_list, Ladder::HalvingStep)?;
    let report = refinement_study(&p, &ns, args.norm)?;
    let failures: Vec<String> = report
        .rows
        .iter()
        .filter(|r| r.chain_ok == Some(false))
        .map(|r| {
            format!(
                "N = {}: global {} exceeds K * local with K = {}",
                r.n,
                sig17(r.global_error),
                r.k_bound.map_or_else(|| "NA".into(), sig17)
            )
        })
        .collect();
    if !failures.is_empty() {
        return Err(Failure::checks(failures));
    }
    Ok(match args.out.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    })
}

// ---- identities ----

#[derive(Serialize)]
struct IdentityRow {
    #[serde(rename = "N")]
    n: usize,
    /// `max_i |sine_square_sum(i) - 1|`
    #[serde(serialize_with = "serialize_sig17")]
    sine_square_dev: f64,
    /// `max_{i != j} |cross_orthogonality_sum(i, j)|`
    #[serde(serialize_with = "serialize_sig17")]
    cross_max: f64,
    #[serde(serialize_with = "serialize_sig17")]
    orthonormality: f64,
    ok: bool,
}

fn identities(args: &IdentitiesArgs) -> Result<String, Failure> {
    let ns = n_list(&args.n_list, Ladder::Doubling)?;
    let mut rows = Vec::with_capacity(ns.len());
    let mut failures = vec![];
    for n in ns {
        let mut sq = 0.0f64;
        let mut cross = 0.0f64;
        for i in 1..=n {
            sq = sq.max((sine_square_sum(i, n)? - 1.0).abs());
            for j in (1..=n).filter(|&j| j != i) {
                cross = cross.max(cross_orthogonality_sum(i, j, n)?.abs());
            }
        }
        let op = TridiagonalOperator::scheme(&Grid::new(n, 1.0)?)?;
        let orth = orthonormality_check(&op)?.max();
        let ok = sq <= TRIG_TOL && cross <= TRIG_TOL && orth <= ORTHONORMALITY_TOL;
        if !ok {
            failures.push(format!(
                "N = {n}: sine-square deviation {}, cross sum {}, orthonormality {}",
                sig17(sq),
                sig17(cross),
                sig17(orth)
            ));
        }
        rows.push(IdentityRow {
            n,
            sine_square_dev: sq,
            cross_max: cross,
            orthonormality: orth,
            ok,
        });
    }
    if !failures.is_empty() {
        return Err(Failure::checks(failures));
    }
    Ok(match args.out.format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut s = String::from("N,sine_square_dev,cross_max,orthonormality,ok\n");
            for r in &rows {
                s += &csv_row(&[
                    r.n.to_string(),
                    sig17(r.sine_square_dev),
                    sig17(r.cross_max),
                    sig17(r.orthonormality),
                    r.ok.to_string(),
                ]);
            }
            s
        }
    })
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eigen(_) => "eigen",
            Command::Stability(_) => "stability",
            Command::Consistency(_) => "consistency",
            Command::Converge(_) => "converge",
            Command::Identities(_) => "identities",
        }
    }

    fn output(&self) -> &OutputArgs {
        match self {
            Command::Eigen(a) => &a.out,
            Command::Stability(a) => &a.out,
            Command::Consistency(a) => &a.out,
            Command::Converge(a) => &a.out,
            Command::Identities(a) => &a.out,
        }
    }

    fn artifact(&self) -> Result<String, Failure> {
        match self {
            Command::Eigen(a) => eigen(a),
            Command::Stability(a) => stability(a),
            Command::Consistency(a) => consistency(a),
            Command::Converge(a) => converge(a),
            Command::Identities(a) => identities(a),
        }
    }
}

fn write_artifact(path: Option<&PathBuf>, body: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    let unwritable = |e: std::io::Error, target: String| Failure {
        code: EXIT_UNWRITABLE,
        kind: "output",
        messages: vec![format!("cannot write {target}: {e}")],
    };
    match path {
        Some(p) => fs::write(p, body).map_err(|e| unwritable(e, p.display().to_string())),
        None => stdout
            .write_all(body.as_bytes())
            .map_err(|e| unwritable(e, "stdout".into())),
    }
}

/// Execute a parsed command.
pub fn execute(cmd: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = cmd
        .artifact()
        .and_then(|body| write_artifact(cmd.output().output.as_ref(), &body, stdout));
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let record = FailureRecord {
                status: "fail",
                subcommand: cmd.name(),
                exit_code: f.code,
                kind: f.kind,
                failures: &f.messages,
            };
            let _ = writeln!(stderr, "{}", serde_json::to_string(&record).expect("record serializes"));
            f.code
        }
    }
}

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.command, stdout, stderr),
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_CONFIG
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("laxcheck").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn n_list_grammar() {
        assert_eq!(parse_n_list("3,5,9", Ladder::Doubling).unwrap(), vec![3, 5, 9]);
        assert_eq!(parse_n_list("4..64", Ladder::Doubling).unwrap(), vec![4, 8, 16, 32, 64]);
        assert_eq!(parse_n_list("7..63", Ladder::HalvingStep).unwrap(), vec![7, 15, 31, 63]);
        assert_eq!(parse_n_list("4..4096", Ladder::Doubling).unwrap().len(), 11);
        assert!(parse_n_list("0..8", Ladder::Doubling).is_err());
        assert!(parse_n_list("8..4", Ladder::Doubling).is_err());
        assert!(parse_n_list("3,x", Ladder::Doubling).is_err());
    }

    #[test]
    fn exit_codes() {
        let (c, _, e) = run_capture(&["converge", "--problem", "cubic", "--L", "1", "--n-list", "7,15,31"]);
        assert_eq!(c, EXIT_BAD_PROBLEM);
        assert!(e.contains("\"status\":\"fail\""));
        let (c, _, _) = run_capture(&["converge", "--problem", "sine", "--L", "1", "--n-list", "2,7,15"]);
        assert_eq!(c, EXIT_GRID_TOO_SMALL);
        let (c, _, _) = run_capture(&["eigen", "--n", "2", "--a", "1", "--b", "-2", "--c", "1"]);
        assert_eq!(c, EXIT_GRID_TOO_SMALL);
        let (c, _, _) = run_capture(&["stability", "--L", "1", "--n-list", "4..16", "--bogus"]);
        assert_eq!(c, EXIT_CONFIG);
        let (c, out, _) = run_capture(&["--help"]);
        assert_eq!(c, EXIT_OK);
        assert!(out.contains("converge"));
    }

    #[test]
    fn eigen_three_by_three() {
        let (c, out, _) = run_capture(&["eigen", "--n", "3", "--a", "1", "--b", "-2", "--c", "1", "--format", "csv"]);
        assert_eq!(c, 0);
        let lambdas: Vec<f64> = out
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect();
        let s2 = 2f64.sqrt();
        for (got, want) in lambdas.iter().zip([-2.0 + s2, -2.0, -2.0 - s2]) {
            assert!((got - want).abs() < 1e-14);
        }
    }
}
