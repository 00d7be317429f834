//! Command-line front end: list cases, run verifications, dump samples, benchmark.

pub mod bench;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use qsource::engine::{self, Case, CaseReport, Group, PointReport, Sample, SamplingConfig};
use qsource::{FieldKind, Params, Regime, C64, Q};

use report::{Format, RunInfo};

#[derive(Parser, Debug)]
#[command(
    name = "qsource",
    version,
    about = "Verify source-function identities and their determinant forms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the case registry.
    List(Selection),
    /// Run the selected cases and write a report.
    Verify(VerifyArgs),
    /// Dump sampled parameter sets.
    Sample(SampleArgs),
    /// Time subset sums against each determinant family.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Elliptic,
    Trig,
    Rational,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Complex,
    Exact,
}

impl From<FieldArg> for FieldKind {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Complex => FieldKind::Complex,
            FieldArg::Exact => FieldKind::Exact,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Selection {
    /// Case id glob; may be repeated.
    #[arg(long = "case")]
    pub cases: Vec<String>,
    #[arg(long, value_enum, default_value_t = RegimeArg::All)]
    pub regime: RegimeArg,
    /// Run every selected case in this field; a case without it is a usage error.
    #[arg(long, value_enum)]
    pub field: Option<FieldArg>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub select: Selection,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Points per case (default: each case's own count).
    #[arg(long)]
    pub points: Option<usize>,
    /// Match tolerance in the complex field (default: each case's own).
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long = "tol-singular", default_value_t = 1e-3)]
    pub tol_singular: f64,
    /// Upper bound on n and m.
    #[arg(long)]
    pub nmax: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Leave timings out of the report.
    #[arg(long = "no-timings")]
    pub no_timings: bool,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub regime: RegimeArg,
    #[arg(long, value_enum, default_value_t = FieldArg::Exact)]
    pub field: FieldArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub points: usize,
    #[arg(short, long, default_value_t = 2)]
    pub n: usize,
    #[arg(short, long, default_value_t = 2)]
    pub m: usize,
    #[arg(long = "tol-singular", default_value_t = 1e-3)]
    pub tol_singular: f64,
    /// Sample the Λ-extended trigonometric parameters.
    #[arg(long)]
    pub lambda: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = vec![8usize, 10, 12])]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Minimum measured time per entry, in milliseconds.
    #[arg(long = "min-ms", default_value_t = 30)]
    pub min_ms: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::List(sel) => {
            let cases = engine::registry();
            let chosen = select(&cases, &sel)?;
            let mut out = std::io::stdout().lock();
            for c in chosen {
                let fields: Vec<&str> = c.fields().iter().map(|f| f.name()).collect();
                let crit = c.criterion.map_or("-".to_string(), |k| k.to_string());
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    c.id,
                    fields.join(","),
                    crit,
                    c.anchor
                )?;
            }
            Ok(0)
        }
        Command::Verify(args) => verify(args),
        Command::Sample(args) => sample(args),
        Command::Bench(args) => {
            if args.sizes.is_empty()
                || args
                    .sizes
                    .iter()
                    .any(|&n| n == 0 || n > qsource::source::MAX_SUBSET)
            {
                return Err(CliError::Usage(format!(
                    "bench sizes must lie in 1..={}",
                    qsource::source::MAX_SUBSET
                )));
            }
            let rows = bench::run_bench(&args.sizes, args.seed, args.min_ms);
            let text = bench::render(&rows, args.format);
            write_output(args.out.as_ref(), &text)?;
            Ok(0)
        }
    }
}

fn group_matches(g: Group, r: RegimeArg) -> bool {
    match r {
        RegimeArg::All => true,
        RegimeArg::Elliptic => g == Group::Elliptic,
        RegimeArg::Trig => g == Group::Trig,
        RegimeArg::Rational => g == Group::Rational,
    }
}

/// Applies the case globs, regime and field filters. Globs matching nothing are an error.
pub fn select<'a>(cases: &'a [Case], sel: &Selection) -> Result<Vec<&'a Case>, CliError> {
    let mut patterns = Vec::new();
    for g in &sel.cases {
        let p = glob::Pattern::new(g)
            .map_err(|e| CliError::Usage(format!("bad case pattern {g:?}: {e}")))?;
        if !cases.iter().any(|c| p.matches(&c.id)) {
            return Err(CliError::Usage(format!("unknown case {g:?}")));
        }
        patterns.push(p);
    }
    let chosen: Vec<&Case> = cases
        .iter()
        .filter(|c| patterns.is_empty() || patterns.iter().any(|p| p.matches(&c.id)))
        .filter(|c| group_matches(c.group, sel.regime))
        .filter(|c| sel.field.map_or(true, |f| c.supports(f.into())))
        .collect();
    if chosen.is_empty() {
        return Err(CliError::Usage("no case matches the selection".into()));
    }
    Ok(chosen)
}

fn write_output(path: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn verify(args: VerifyArgs) -> Result<i32, CliError> {
    let config = SamplingConfig {
        master_seed: args.seed,
        points: args.points,
        tol_singular: args.tol_singular,
        tol_match: args.tol,
        field: args.select.field.map(Into::into),
        nmax: args.nmax,
        ..SamplingConfig::default()
    };
    config
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let cases = engine::registry();
    let chosen = select(&cases, &args.select)?;
    let reports = run_cases(&chosen, &config);
    let info = RunInfo::new(&config, &args.select, !args.no_timings);
    let text = report::render(&info, &reports, args.format);
    write_output(args.out.as_ref(), &text)?;
    Ok(if reports.iter().all(|(r, _)| r.pass) {
        0
    } else {
        1
    })
}

/// Runs every (case, point) pair in parallel and reassembles reports in registry order.
pub fn run_cases(chosen: &[&Case], config: &SamplingConfig) -> Vec<(CaseReport, u128)> {
    let jobs: Vec<(usize, FieldKind, usize)> = chosen
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| {
            let field = engine::resolve_field(c, config).unwrap_or_else(|_| c.default_field());
            (0..engine::resolve_points(c, config)).map(move |i| (ci, field, i))
        })
        .collect();
    let results: Vec<(usize, PointReport, u128)> = jobs
        .par_iter()
        .map(|&(ci, field, i)| {
            let t = Instant::now();
            let p = engine::run_point(chosen[ci], config, field, i);
            (ci, p, t.elapsed().as_micros())
        })
        .collect();
    chosen
        .iter()
        .enumerate()
        .map(|(ci, c)| {
            let field = engine::resolve_field(c, config).unwrap_or_else(|_| c.default_field());
            let tol = engine::resolve_tol(c, field, config);
            let mut micros = 0u128;
            let mut pts = Vec::new();
            for (k, p, us) in &results {
                if *k == ci {
                    micros += us;
                    pts.push(p.clone());
                }
            }
            (CaseReport::assemble(c, field, tol, pts), micros / 1000)
        })
        .collect()
}

fn regime_of(r: RegimeArg, lambda: bool) -> Result<Regime, CliError> {
    Ok(match r {
        RegimeArg::Elliptic => Regime::Elliptic,
        RegimeArg::Trig if lambda => Regime::TrigLambda,
        RegimeArg::Trig => Regime::Trig,
        RegimeArg::Rational => Regime::Rational,
        RegimeArg::All => return Err(CliError::Usage("sample needs a single regime".into())),
    })
}

fn sample(args: SampleArgs) -> Result<i32, CliError> {
    let regime = regime_of(args.regime, args.lambda)?;
    if regime == Regime::Elliptic && args.field == FieldArg::Exact {
        return Err(CliError::Usage(
            "elliptic parameters need --field complex".into(),
        ));
    }
    let config = SamplingConfig {
        master_seed: args.seed,
        tol_singular: args.tol_singular,
        ..SamplingConfig::default()
    };
    config
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut lines = String::new();
    for i in 0..args.points {
        let v = match args.field {
            FieldArg::Exact => sample_json::<Q>(regime, &config, i, args.n, args.m),
            FieldArg::Complex => sample_json::<C64>(regime, &config, i, args.n, args.m),
        }
        .map_err(|e| CliError::Usage(e.to_string()))?;
        lines.push_str(&v.to_string());
        lines.push('\n');
    }
    write_output(args.out.as_ref(), &lines)?;
    Ok(0)
}

const SAMPLE_NAMESPACE: &str = "sample";

fn sample_json<S: Sample>(
    regime: Regime,
    config: &SamplingConfig,
    index: usize,
    n: usize,
    m: usize,
) -> qsource::Result<serde_json::Value> {
    let p: Params<S> = engine::sample_params(regime, config, SAMPLE_NAMESPACE, index, n, m)?;
    let r = |x: &S| serde_json::Value::String(x.render());
    let rv = |x: &[S]| serde_json::Value::Array(x.iter().map(r).collect());
    let mut obj = serde_json::Map::new();
    obj.insert("index".into(), index.into());
    obj.insert(
        "seed".into(),
        engine::point_seed(config.master_seed, SAMPLE_NAMESPACE, index).into(),
    );
    obj.insert("regime".into(), regime.name().into());
    match &p {
        Params::Elliptic(e) => {
            obj.insert("p".into(), r(&e.p));
            obj.insert("q".into(), r(&e.q));
            obj.insert("lambda".into(), r(&e.lambda));
        }
        Params::Trig(t) => {
            obj.insert("q".into(), r(&t.q));
            if let Some(l) = &t.lambda {
                obj.insert("lambda".into(), r(l));
            }
        }
        Params::Rational(rp) => {
            obj.insert("c".into(), r(&rp.c));
        }
    }
    obj.insert("z".into(), r(p.z()));
    obj.insert("u".into(), rv(p.u()));
    obj.insert("v".into(), rv(p.v()));
    Ok(serde_json::Value::Object(obj))
}
