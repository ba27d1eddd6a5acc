//! Command-line surface.
//!
//! Exit codes: 0 success, 1 verification or consistency failure, 2 invalid
//! input data, 3 usage error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use convexcount_core::search::{
    generate, AnnealConfig, Consistency, GeneratorKind, GeneratorSpec, SearchError,
};
use convexcount_core::{search::published_minimum, Placement};
use serde::Serialize;
use serde_json::json;

use crate::bench::{render_table, run_bench, BenchEngine};
use crate::format::{load_placement, save_placement, save_placement_with_comments, LoadError};
use crate::parallel::{minimize_parallel, resolve_threads};
use crate::report::{
    analyze, render_text, BoundSection, Engine, IdentitiesSection, ReportError, RunReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "convexcount",
    version,
    about = "Exact convex-position subset counting for planar point placements"
)]
pub struct Cli {
    /// Worker threads [default: $GEO_THREADS, else all cores]
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Parabola,
    Random,
    Convex,
    Grid,
}

impl From<Kind> for GeneratorKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Parabola => GeneratorKind::Parabola,
            Kind::Random => GeneratorKind::RandomDisc,
            Kind::Convex => GeneratorKind::Convex,
            Kind::Grid => GeneratorKind::GridPerturbed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a placement file.
    Gen {
        #[arg(long, value_enum, default_value = "random")]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coordinate bound [default: 1000000]
        #[arg(long)]
        bound: Option<i64>,
        /// Output file [default: stdout]
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count 4- and 5-point subset types and print the full report.
    Count {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        engine: Engine,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Verify every planar-point identity exactly.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate the pentagon lower-bound chain.
    Bound {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Search for placements with few convex pentagons.
    Minimize {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = convexcount_core::search::DEFAULT_ITERATIONS)]
        iters: u64,
        #[arg(long, default_value_t = convexcount_core::search::DEFAULT_RESTARTS)]
        restarts: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Initial temperature [default: 2]
        #[arg(long)]
        temp: Option<f64>,
        /// Per-proposal cooling factor [default: decays to 0.02 over the run]
        #[arg(long)]
        cooling: Option<f64>,
        /// Coordinate bound of the search box [default: 100000]
        #[arg(long)]
        bound: Option<i64>,
        /// Best placement file [default: appended to stdout]
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Time the counting engines against each other.
    Bench {
        /// Comma-separated sizes
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "naive,regions"
        )]
        engines: Vec<BenchEngine>,
        #[arg(long, default_value_t = 3)]
        repeat: usize,
        #[arg(long, value_enum, default_value = "random")]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A failed command: exit code plus message for stderr.
struct Failure(i32, String);

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(EXIT_INVALID_INPUT, format!("io error: {e}"))
    }
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        Failure(EXIT_FAILURE, e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let threads = resolve_threads(cli.threads);
    let result = match cli.command {
        Command::Gen {
            kind,
            n,
            seed,
            bound,
            output,
        } => cmd_gen(kind, n, seed, bound, output.as_deref(), out),
        Command::Count {
            file,
            engine,
            format,
        } => cmd_count(&file, engine, format, threads, out),
        Command::Verify { file, format } => cmd_verify(&file, format, threads, out),
        Command::Bound { file, format } => cmd_bound(&file, format, threads, out),
        Command::Minimize {
            n,
            iters,
            restarts,
            seed,
            temp,
            cooling,
            bound,
            output,
            format,
        } => {
            let mut cfg = AnnealConfig::with_budget(n, iters, restarts, seed);
            if let Some(t) = temp {
                cfg.initial_temperature = t;
            }
            if let Some(c) = cooling {
                cfg.cooling = c;
            }
            if let Some(b) = bound {
                cfg.coord_bound = b;
                cfg.local_side = (b / 8).max(2);
            }
            cmd_minimize(&cfg, output.as_deref(), format, threads, out)
        }
        Command::Bench {
            n,
            engines,
            repeat,
            kind,
            seed,
        } => cmd_bench(&n, &engines, repeat, kind, seed, threads, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn load(path: &Path) -> Result<Placement, Failure> {
    let file = File::open(path)
        .map_err(|e| Failure(EXIT_INVALID_INPUT, format!("{}: {e}", path.display())))?;
    load_placement(io::BufReader::new(file))
        .map_err(|e: LoadError| Failure(EXIT_INVALID_INPUT, format!("{}: {e}", path.display())))
}

fn emit<S: Serialize>(value: &S, format: Format, out: &mut dyn Write) -> io::Result<()> {
    let v = serde_json::to_value(value).expect("report serializes");
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")),
        Format::Text => out.write_all(render_text(&v).as_bytes()),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure(EXIT_INVALID_INPUT, format!("{}: {e}", path.display())))
}

fn cmd_gen(
    kind: Kind,
    n: usize,
    seed: u64,
    bound: Option<i64>,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let mut spec = GeneratorSpec::new(kind.into(), n, seed);
    if let Some(b) = bound {
        spec = spec.with_bound(b);
    }
    let p = generate(&spec).map_err(|e| match e {
        SearchError::InvalidSpec(_) => Failure(EXIT_USAGE, e.to_string()),
        other => Failure(EXIT_INVALID_INPUT, other.to_string()),
    })?;
    match output {
        Some(path) => {
            let mut w = create(path)?;
            save_placement(&p, &mut w)?;
            w.flush()?;
        }
        None => save_placement(&p, out)?,
    }
    Ok(EXIT_OK)
}

fn cmd_count(
    path: &Path,
    engine: Engine,
    format: Format,
    threads: usize,
    out: &mut dyn Write,
) -> CmdResult {
    let t = Instant::now();
    let p = load(path)?;
    let parse_ms = t.elapsed().as_secs_f64() * 1e3;
    let mut a = analyze(&p, engine, threads)?;
    a.timings.parse_ms = parse_ms;
    let report = RunReport::new(&p, &a);
    match format {
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Text => out.write_all(report.to_text().as_bytes())?,
    }
    Ok(if a.identities.pass {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

fn cmd_verify(path: &Path, format: Format, threads: usize, out: &mut dyn Write) -> CmdResult {
    let p = load(path)?;
    let a = analyze(&p, Engine::Auto, threads)?;
    emit(
        &json!({ "n": p.len(), "identities": IdentitiesSection::from(&a.identities) }),
        format,
        out,
    )?;
    Ok(if a.identities.pass {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

fn cmd_bound(path: &Path, format: Format, threads: usize, out: &mut dyn Write) -> CmdResult {
    let p = load(path)?;
    if p.len() < 5 {
        return Err(Failure(
            EXIT_INVALID_INPUT,
            format!("pentagon bounds need n >= 5, got n = {}", p.len()),
        ));
    }
    let a = analyze(&p, Engine::Regions, threads)?;
    let bound = a.bound.as_ref().map(BoundSection::from);
    emit(&json!({ "n": p.len(), "bound": bound }), format, out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct MinimizeSummary {
    n: usize,
    seed: u64,
    best_count: u64,
    iterations: u64,
    published_minimum: Option<u64>,
    consistency: String,
    restarts: Vec<RestartSummary>,
}

#[derive(Serialize)]
struct RestartSummary {
    restart: u32,
    seed: u64,
    initial_count: u64,
    best_count: u64,
    accepted: u64,
    rejected_invalid: u64,
    improvements: usize,
}

fn consistency_label(c: &Consistency) -> String {
    match c {
        Consistency::Consistent => "consistent".to_owned(),
        Consistency::PublishedBoundViolated {
            n,
            published,
            found,
        } => {
            format!("VIOLATION: found {found} pentagons at n = {n}, below the proven minimum {published}")
        }
        Consistency::RecountMismatch { reported, recount } => {
            format!("VIOLATION: reported {reported} pentagons, recount gives {recount}")
        }
    }
}

fn cmd_minimize(
    cfg: &AnnealConfig,
    output: Option<&Path>,
    format: Format,
    threads: usize,
    out: &mut dyn Write,
) -> CmdResult {
    let result = minimize_parallel(cfg, threads).map_err(|e| match e {
        SearchError::InvalidSpec(_) => Failure(EXIT_USAGE, e.to_string()),
        SearchError::IncrementalMismatch { .. } => Failure(EXIT_FAILURE, e.to_string()),
        other => Failure(EXIT_INVALID_INPUT, other.to_string()),
    })?;
    let summary = MinimizeSummary {
        n: cfg.n,
        seed: cfg.seed,
        best_count: result.best_count,
        iterations: result.iterations,
        published_minimum: published_minimum(cfg.n),
        consistency: consistency_label(&result.consistency),
        restarts: result
            .restarts
            .iter()
            .map(|t| RestartSummary {
                restart: t.restart,
                seed: t.seed,
                initial_count: t.initial_count,
                best_count: t.best_count,
                accepted: t.accepted,
                rejected_invalid: t.rejected_invalid,
                improvements: t.improvements.len(),
            })
            .collect(),
    };
    emit(&summary, format, out)?;
    let comments = [format!(
        "minimize n={} seed={} iters={} restarts={} pentagons={}",
        cfg.n, cfg.seed, cfg.iterations, cfg.restarts, result.best_count
    )];
    match output {
        Some(path) => {
            let mut w = create(path)?;
            save_placement_with_comments(&result.best, &comments, &mut w)?;
            w.flush()?;
        }
        None => save_placement_with_comments(&result.best, &comments, out)?,
    }
    Ok(if result.consistency.is_ok() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

fn cmd_bench(
    sizes: &[usize],
    engines: &[BenchEngine],
    repeat: usize,
    kind: Kind,
    seed: u64,
    threads: usize,
    out: &mut dyn Write,
) -> CmdResult {
    if repeat == 0 || engines.is_empty() {
        return Err(Failure(
            EXIT_USAGE,
            "need at least one engine and --repeat >= 1".to_owned(),
        ));
    }
    let b = run_bench(sizes, engines, repeat, kind.into(), seed, threads).map_err(|e| match e {
        crate::bench::BenchError::Generate(SearchError::InvalidSpec(_)) => {
            Failure(EXIT_USAGE, e.to_string())
        }
        other => Failure(EXIT_INVALID_INPUT, other.to_string()),
    })?;
    out.write_all(render_table(&b).as_bytes())?;
    Ok(if b.mismatches.is_empty() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}
