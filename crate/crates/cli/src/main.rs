//! `sr-qsd`: eigenvalues, quasi-stationary pdf/cdf tables, bounds, gap and
//! detection-delay reports, and Monte Carlo validation, as CSV or JSON.

mod commands;
mod table;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sr_qsd::bounds::Target;
use sr_qsd::exec::{init_thread_pool, Execution};
use sr_qsd::grid::GridKind;
use sr_qsd::specfun::{QuadratureSpec, RootSpec};

use commands::{McOverrides, Settings};
use table::Format;

#[derive(Debug, Parser)]
#[command(name = "sr-qsd", version, about = "Quasi-stationary distribution of the Shiryaev-Roberts diffusion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalue, classic bracket, analytic bounds and residual per A.
    Lambda,
    /// Grid table of q_A with pdf bounds and signed errors.
    Pdf,
    /// Grid table of Q_A and H with cdf bounds and signed errors.
    Cdf,
    /// Grid table of every bound, pdf and cdf.
    Bounds,
    /// x*, its elementary upper bound, grid sup of Q_A - H and the sup bounds.
    Gap,
    /// Worst-case detection delay and its upper bounds.
    Sadd,
    /// Monte Carlo KS checks against Q_A (and H with --unrestricted).
    Validate,
}

#[derive(Debug, Args)]
struct Opts {
    /// Absorbing threshold; repeat for several.
    #[arg(long = "A", global = true, value_name = "A", allow_negative_numbers = true)]
    thresholds: Vec<f64>,
    #[arg(long, global = true, default_value_t = 256)]
    grid_points: usize,
    #[arg(long, global = true, default_value = "log", value_parser = parse_grid_kind)]
    grid_kind: GridKind,
    /// Comma-separated bound names (l1, u1, ..., L1, U5, ...); all when omitted.
    #[arg(long, global = true, value_delimiter = ',')]
    bounds: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Monte Carlo paths per run.
    #[arg(long, global = true, default_value_t = 10_000)]
    paths: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Time step of killed runs [default: 1e-3].
    #[arg(long, global = true)]
    dt: Option<f64>,
    /// Horizon of killed runs [default: 5A].
    #[arg(long, global = true)]
    t_end: Option<f64>,
    /// Headstart of killed runs.
    #[arg(long, global = true, default_value_t = 0.0)]
    r0: f64,
    /// Also run the unrestricted KS and martingale checks.
    #[arg(long, global = true)]
    unrestricted: bool,

    #[arg(long, global = true)]
    abs_tol: Option<f64>,
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    #[arg(long, global = true)]
    max_subdivisions: Option<usize>,
    #[arg(long, global = true)]
    x_tol: Option<f64>,
    #[arg(long, global = true)]
    f_tol: Option<f64>,
    /// Evaluate on one thread regardless of QSD_SR_THREADS.
    #[arg(long, global = true)]
    sequential: bool,
}

fn parse_grid_kind(s: &str) -> Result<GridKind, String> {
    s.parse().map_err(|e: sr_qsd::Error| e.to_string())
}

#[derive(Debug)]
pub enum CliError {
    Core(sr_qsd::Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<sr_qsd::Error> for CliError {
    fn from(e: sr_qsd::Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "output: {e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numeric() => 2,
            _ => 1,
        }
    }
}

fn settings(o: &Opts) -> Settings {
    let q = QuadratureSpec::default();
    let r = RootSpec::default();
    Settings {
        thresholds: o.thresholds.clone(),
        grid_points: o.grid_points,
        grid_kind: o.grid_kind,
        bounds: o.bounds.clone(),
        quad: QuadratureSpec {
            abs_tol: o.abs_tol.unwrap_or(q.abs_tol),
            rel_tol: o.rel_tol.unwrap_or(q.rel_tol),
            max_subdivisions: o.max_subdivisions.unwrap_or(q.max_subdivisions),
        },
        root: RootSpec {
            x_tol: o.x_tol.unwrap_or(r.x_tol),
            f_tol: o.f_tol.unwrap_or(r.f_tol),
            ..r
        },
        exec: if o.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        },
        mc: McOverrides {
            paths: o.paths,
            seed: o.seed,
            dt: o.dt,
            t_end: o.t_end,
            r0: o.r0,
            unrestricted: o.unrestricted,
        },
    }
}

fn threads_from_env() -> Result<(), CliError> {
    let Ok(v) = std::env::var("QSD_SR_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("QSD_SR_THREADS must be a positive integer, got {v:?}")))?;
    Ok(init_thread_pool(n)?)
}

fn run(cli: Cli) -> Result<(), CliError> {
    threads_from_env()?;
    let s = settings(&cli.opts);
    s.quad.validate()?;
    s.root.validate()?;
    let table = match cli.command {
        Command::Lambda => commands::lambda(&s)?,
        Command::Pdf => commands::grid_table(&s, Some(Target::Pdf))?,
        Command::Cdf => commands::grid_table(&s, Some(Target::Cdf))?,
        Command::Bounds => commands::grid_table(&s, None)?,
        Command::Gap => commands::gap(&s)?,
        Command::Sadd => commands::sadd(&s)?,
        Command::Validate => commands::validate(&s)?,
    };
    let text = table.render(cli.opts.format);
    match &cli.opts.output {
        Some(path) => std::fs::write(path, text).map_err(CliError::Io),
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(text.as_bytes()).map_err(CliError::Io)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sr-qsd: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
