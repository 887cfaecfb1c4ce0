use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use regulab::commands::{self, CliError, CliResult, Method, Outcome, Settings, Target};
use regulab::grid::Grid;
use regulab::report::Report;
use regulab_core::lfunctions::parse_overrides;
use regulab_core::par::Execution;
use regulab_core::Family;

/// Verify Mahler measure, period and regulator identities numerically.
#[derive(Debug, Parser)]
#[command(name = "regulab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Tolerance used for every record.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,

    /// Emit the report as JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit the records as CSV.
    #[arg(long, global = true)]
    csv: bool,

    /// Worker threads (default: all cores). With 1 thread everything runs sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mahler measure of a family member.
    Mahler {
        #[arg(long)]
        family: Family,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "grid")]
        alpha: Option<f64>,
        /// Parameter grid start:end:step, inclusive.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "alpha")]
        grid: Option<Grid>,
        #[arg(long, value_enum, default_value_t = Method::Jensen)]
        method: Method,
    },
    /// Run one verification campaign.
    Verify {
        #[arg(value_enum)]
        target: Target,
        /// Parameter grid start:end:step, inclusive.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<Grid>,
        /// Restrict `table1` to one row.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<i64>,
        /// Plain-text `p a_p` lines for bad primes.
        #[arg(long)]
        ap_overrides: Option<PathBuf>,
    },
    /// Compare 2 pi m(P_a) with the elliptic dilogarithm of (x)<>(y).
    Regulator {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "grid")]
        alpha: Option<f64>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "alpha")]
        grid: Option<Grid>,
    },
}

fn points(alpha: Option<f64>, grid: Option<Grid>, fallback: Option<&str>) -> CliResult<Vec<f64>> {
    if let Some(a) = alpha {
        if !a.is_finite() {
            return Err(CliError::Usage(format!("alpha {a} is not finite")));
        }
        return Ok(Grid::single(a).points());
    }
    match (grid, fallback) {
        (Some(g), _) => Ok(g.points()),
        (None, Some(f)) => Ok(f.parse::<Grid>().map_err(CliError::Usage)?.points()),
        (None, None) => Ok(Vec::new()),
    }
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    let exec = match cli.threads {
        Some(0) => return Err(CliError::Usage("--threads must be at least 1".into())),
        Some(1) => Execution::Sequential,
        Some(n) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            Execution::Parallel
        }
        None => Execution::Parallel,
    };
    let mut settings = Settings {
        tol: cli.tol,
        exec,
        overrides: Default::default(),
    };
    match &cli.command {
        Command::Mahler {
            family,
            alpha,
            grid,
            method,
        } => commands::mahler(*family, &points(*alpha, *grid, None)?, *method, &settings),
        Command::Verify {
            target,
            grid,
            alpha,
            ap_overrides,
        } => {
            if let Some(path) = ap_overrides {
                settings.overrides = parse_overrides(&std::fs::read_to_string(path)?)?;
            }
            let pts = points(None, *grid, commands::default_grid(*target))?;
            commands::verify(*target, &pts, *alpha, &settings)
        }
        Command::Regulator { alpha, grid } => commands::regulator(&points(*alpha, *grid, None)?, &settings),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::iter::once("regulab".to_string()).chain(std::env::args().skip(1)).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    let report = Report::new(echo, outcome.params, outcome.records, start.elapsed().as_secs_f64());
    let mut out = io::stdout().lock();
    let written = if cli.json {
        report.write_json(&mut out)
    } else if cli.csv {
        report.write_csv(&mut out)
    } else {
        report.write_table(&mut out)
    };
    if let Err(e) = written.and_then(|_| out.flush()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if let Some(bad) = report.first_failure() {
        eprintln!("first failing record: {} (residual {:.3e} > tol {:.1e})", bad.name, bad.residual, bad.tol);
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
