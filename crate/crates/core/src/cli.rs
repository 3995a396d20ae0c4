//! Command-line front end.
//!
//! Exit status: 0 success, 1 usage error, 2 numeric or domain failure,
//! 3 corpus checks failed. Output is assembled in memory and written only
//! once a command has succeeded, so a failing command never leaves partial
//! CSV behind.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::adaptive::{adaptive_integrate, AdaptiveError, AdaptiveResult, DEFAULT_MAX_EVALS};
use crate::composite::{composite_corrected_trapezoid_fd, composite_rule, UniformPartition};
use crate::error::Error;
use crate::expr::Expression;
use crate::harness::{
    builtin_corpus, convergence_table_with_norm, derivative_norm_with_constants, find_entry,
    run_corpus, CorpusEntry, NormSource, Smoothness, DEFAULT_RESOLUTION,
};
use crate::kernels::{kernel_for, optimize_monic_quadratic, Exponent, Interval, RuleKind, DEFAULT_GRID};
use crate::numeric::integrate_relative;

#[derive(Debug, Parser)]
#[command(name = "quadbound", version, about = "Quadrature rules with a-priori error bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply a (composite) rule once and print value and bound
    Integrate(IntegrateArgs),
    /// Convergence table as CSV
    Converge(ConvergeArgs),
    /// Print a rule's error kernel and one of its norms
    Kernel(KernelArgs),
    /// Minimise the L1 norm over monic quadratics with roots in [a, b]
    Optimize(OptimizeArgs),
    /// Bound-driven adaptive bisection
    Adaptive(AdaptiveArgs),
    /// Run the built-in corpus checks
    Corpus(CorpusArgs),
}

#[derive(Debug, Args)]
struct Range {
    /// Left endpoint
    #[arg(long, allow_hyphen_values = true)]
    from: f64,
    /// Right endpoint
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
}

#[derive(Debug, Args)]
struct IntegrateArgs {
    #[arg(long)]
    rule: RuleKind,
    #[arg(long)]
    function: String,
    #[command(flatten)]
    range: Range,
    /// Number of subintervals
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Replace endpoint derivatives by one-sided differences with this step
    /// (corrected trapezoid only)
    #[arg(long)]
    fd_step: Option<f64>,
    /// Use this value for the derivative sup norm instead of sampling
    #[arg(long)]
    norm: Option<f64>,
}

#[derive(Debug, Args)]
struct ConvergeArgs {
    #[arg(long)]
    rule: RuleKind,
    #[arg(long)]
    function: String,
    #[command(flatten)]
    range: Range,
    /// Comma-separated subinterval counts
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
    #[arg(long)]
    norm: Option<f64>,
    /// Write the CSV here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct KernelArgs {
    #[arg(long)]
    rule: RuleKind,
    #[command(flatten)]
    range: Range,
    /// Norm exponent: a number >= 1 or `inf`
    #[arg(long, default_value = "1")]
    s: Exponent,
}

#[derive(Debug, Args)]
struct OptimizeArgs {
    #[command(flatten)]
    range: Range,
    /// Grid points per axis for the certificate
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    /// Also print the grid certificate
    #[arg(long)]
    certificate: bool,
}

#[derive(Debug, Args)]
struct AdaptiveArgs {
    #[arg(long)]
    rule: RuleKind,
    #[arg(long)]
    function: String,
    #[command(flatten)]
    range: Range,
    #[arg(long)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_EVALS)]
    max_evals: usize,
    /// Write the partition CSV here instead of after the summary
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CorpusArgs {
    /// Simpson panels per kernel piece in the residual checks
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    resolution: usize,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numeric(String),
    Harness(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Numeric(_) => 2,
            Failure::Harness(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numeric(m) | Failure::Harness(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e.to_string())
    }
}

/// Output of a successful command: text for stdout plus files to write.
#[derive(Default)]
struct Output {
    stdout: String,
    stderr: String,
    files: Vec<(PathBuf, String)>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    let result = dispatch(cli.command);
    let (output, code) = match result {
        Ok(output) => (output, 0),
        Err((partial, failure)) => {
            let mut output = partial.unwrap_or_default();
            let _ = writeln!(output.stderr, "error: {}", failure.message());
            (output, failure.code())
        }
    };
    for (path, contents) in &output.files {
        if let Err(e) = std::fs::write(path, contents) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    let _ = out.write_all(output.stdout.as_bytes());
    let _ = err.write_all(output.stderr.as_bytes());
    code
}

type CmdResult = Result<Output, (Option<Output>, Failure)>;

fn fail(f: Failure) -> (Option<Output>, Failure) {
    (None, f)
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Integrate(a) => integrate(a),
        Command::Converge(a) => converge(a),
        Command::Kernel(a) => kernel(a),
        Command::Optimize(a) => optimize(a),
        Command::Adaptive(a) => adaptive(a),
        Command::Corpus(a) => corpus(a),
    }
}

fn interval(range: &Range) -> Result<Interval, (Option<Output>, Failure)> {
    Interval::new(range.from, range.to).map_err(|e| fail(Failure::Usage(e.to_string())))
}

fn function(text: &str) -> Result<Expression, (Option<Output>, Failure)> {
    text.parse::<Expression>()
        .map_err(|e| fail(Failure::Usage(format!("cannot parse function {text:?}: {e}"))))
}

fn numeric<T>(r: crate::Result<T>) -> Result<T, (Option<Output>, Failure)> {
    r.map_err(|e| fail(e.into()))
}

fn resolve_norm(
    f: &Expression,
    m: u32,
    iv: Interval,
    supplied: Option<f64>,
) -> Result<(f64, NormSource), (Option<Output>, Failure)> {
    match supplied {
        Some(v) if v.is_finite() && v >= 0.0 => Ok((v, NormSource::Supplied)),
        Some(v) => Err(fail(Failure::Usage(format!("--norm must be finite and non-negative, got {v}")))),
        None => numeric(derivative_norm_with_constants(f, m, iv)),
    }
}

fn source_name(src: NormSource) -> &'static str {
    match src {
        NormSource::Constant => "exact",
        NormSource::Sampled => "sampled",
        NormSource::Supplied => "supplied",
    }
}

fn integrate(a: IntegrateArgs) -> CmdResult {
    let iv = interval(&a.range)?;
    let f = function(&a.function)?;
    if a.n == 0 {
        return Err(fail(Failure::Usage("--n must be at least 1".into())));
    }
    if a.rule == RuleKind::Simpson && !a.n.is_multiple_of(2) && a.n != 1 {
        return Err(fail(Failure::Usage(format!("simpson needs an even --n, got {}", a.n))));
    }
    if a.fd_step.is_some() && a.rule != RuleKind::CorrectedTrapezoid {
        return Err(fail(Failure::Usage("--fd-step applies to corrected-trapezoid only".into())));
    }
    let m = a.rule.derivative_order();
    let (norm, src) = resolve_norm(&f, m, iv, a.norm)?;
    let est = if a.rule == RuleKind::Simpson && a.n == 1 {
        numeric(crate::rules::simpson(&f, iv, norm))?
    } else {
        let grid = numeric(UniformPartition::new(iv, a.n))?;
        match a.fd_step {
            Some(h) => numeric(composite_corrected_trapezoid_fd(&f, &grid, norm, h))?,
            None => numeric(composite_rule(a.rule, &f, &grid, norm))?,
        }
    };
    let mut o = Output::default();
    let s = &mut o.stdout;
    let _ = writeln!(s, "rule={}", a.rule);
    let _ = writeln!(s, "n={}", a.n);
    let _ = writeln!(s, "value={}", est.value);
    let _ = writeln!(s, "bound={}", est.error_bound);
    let _ = writeln!(s, "norm={norm}");
    let _ = writeln!(s, "norm_source={}", source_name(src));
    let _ = writeln!(s, "evaluations={}", est.evaluations);
    if est.derivative_evaluations > 0 {
        let _ = writeln!(s, "derivative_evaluations={}", est.derivative_evaluations);
    }
    if let Some(entry) = find_entry(&a.function, iv) {
        let _ = writeln!(s, "exact={}", entry.exact);
        let _ = writeln!(s, "true_error={}", entry.abs_error(est.value));
    }
    Ok(o)
}

fn reference_entry(text: &str, f: &Expression, iv: Interval) -> Result<CorpusEntry, (Option<Output>, Failure)> {
    if let Some(entry) = find_entry(text, iv) {
        return Ok(entry);
    }
    let g = |x: f64| f.eval(x).unwrap_or(f64::NAN);
    let exact = integrate_relative(&g, iv.a(), iv.b(), 1e-13);
    if !exact.is_finite() {
        return Err(fail(Failure::Numeric(format!("{text} cannot be evaluated on {iv}"))));
    }
    Ok(CorpusEntry::new(text, iv, exact, Smoothness::Analytic, "adaptive Simpson reference"))
}

fn converge(a: ConvergeArgs) -> CmdResult {
    let iv = interval(&a.range)?;
    let f = function(&a.function)?;
    if a.n_list.contains(&0) {
        return Err(fail(Failure::Usage("--n-list entries must be at least 1".into())));
    }
    if a.rule == RuleKind::Simpson && a.n_list.iter().any(|n| n % 2 != 0) {
        return Err(fail(Failure::Usage("simpson needs even entries in --n-list".into())));
    }
    if let Some(v) = a.norm {
        if !(v.is_finite() && v >= 0.0) {
            return Err(fail(Failure::Usage(format!("--norm must be finite and non-negative, got {v}"))));
        }
    }
    let entry = reference_entry(&a.function, &f, iv)?;
    let table = numeric(convergence_table_with_norm(a.rule, &entry, &a.n_list, a.norm))?;
    let mut o = Output::default();
    if let Some(w) = &table.warning {
        let _ = writeln!(o.stderr, "warning: {w}");
    }
    match a.output {
        Some(path) => o.files.push((path, table.to_csv())),
        None => o.stdout = table.to_csv(),
    }
    Ok(o)
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn kernel(a: KernelArgs) -> CmdResult {
    let iv = interval(&a.range)?;
    let k = kernel_for(a.rule, iv);
    let norm = numeric(k.s_norm(a.s))?;
    let mut o = Output::default();
    let s = &mut o.stdout;
    let _ = writeln!(s, "rule={}", a.rule);
    let _ = writeln!(s, "derivative_order={}", k.derivative_order());
    let _ = writeln!(s, "factorial={}", k.factorial());
    let _ = writeln!(s, "breakpoints={}", join(&k.breakpoints()));
    for (i, piece) in k.pieces().iter().enumerate() {
        let _ = writeln!(s, "piece{i}=[{},{}] coefficients={}", piece.lo, piece.hi, join(piece.poly.coeffs()));
    }
    let _ = writeln!(s, "s={}", a.s);
    let _ = writeln!(s, "norm={norm}");
    Ok(o)
}

fn optimize(a: OptimizeArgs) -> CmdResult {
    let iv = interval(&a.range)?;
    if a.grid == 0 {
        return Err(fail(Failure::Usage("--grid must be at least 1".into())));
    }
    let opt = optimize_monic_quadratic(iv, a.grid);
    let mut o = Output::default();
    let _ = writeln!(o.stdout, "alpha={} gamma={} min={}", opt.alpha, opt.gamma, opt.min_value);
    if a.certificate {
        let c = opt.certificate;
        let _ = writeln!(
            o.stdout,
            "grid={0}x{0} points={1} grid_min={2} certified={3}",
            c.resolution + 1,
            c.points_checked,
            c.grid_min,
            opt.is_certified(1e-9)
        );
    }
    Ok(o)
}

fn adaptive_report(r: &AdaptiveResult, exact: Option<f64>, csv_inline: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "rule={}", r.estimate.rule);
    let _ = writeln!(s, "value={}", r.estimate.value);
    let _ = writeln!(s, "bound={}", r.estimate.error_bound);
    let _ = writeln!(s, "subintervals={}", r.partition.len());
    let _ = writeln!(s, "evaluations={}", r.estimate.evaluations);
    let _ = writeln!(s, "converged={}", r.converged);
    if let Some(exact) = exact {
        let _ = writeln!(s, "true_error={}", (exact - r.estimate.value).abs());
    }
    if csv_inline {
        s.push('\n');
        s.push_str(&r.partition.to_csv());
    }
    s
}

fn adaptive(a: AdaptiveArgs) -> CmdResult {
    let iv = interval(&a.range)?;
    let f = function(&a.function)?;
    if !(a.tol.is_finite() && a.tol > 0.0) {
        return Err(fail(Failure::Usage(format!("--tol must be positive, got {}", a.tol))));
    }
    if !RuleKind::CLASSICAL.contains(&a.rule) {
        return Err(fail(Failure::Usage(format!("adaptive supports the four classical rules, not {}", a.rule))));
    }
    let exact = find_entry(&a.function, iv).map(|e| e.exact);
    let build = |r: &AdaptiveResult| {
        let mut o = Output { stdout: adaptive_report(r, exact, a.output.is_none()), ..Output::default() };
        if let Some(path) = &a.output {
            o.files.push((path.clone(), r.partition.to_csv()));
        }
        o
    };
    match adaptive_integrate(a.rule, &f, iv, a.tol, a.max_evals) {
        Ok(r) => Ok(build(&r)),
        Err(AdaptiveError::Budget(r)) => {
            let msg = format!("tolerance {} not reached within {} evaluations", a.tol, a.max_evals);
            Err((Some(build(&r)), Failure::Numeric(msg)))
        }
        Err(AdaptiveError::Failed(e)) => Err(fail(e.into())),
    }
}

fn corpus(a: CorpusArgs) -> CmdResult {
    if a.resolution < 2 {
        return Err(fail(Failure::Usage("--resolution must be at least 2".into())));
    }
    let corpus = builtin_corpus();
    let report = numeric(run_corpus(&corpus, a.resolution))?;
    let mut o = Output::default();
    let _ = writeln!(o.stdout, "{} entries", corpus.len());
    let _ = writeln!(o.stdout, "{report}");
    if report.all_passed() {
        Ok(o)
    } else {
        let n = report.failures().count();
        Err((Some(o), Failure::Harness(format!("{n} corpus checks failed"))))
    }
}
