use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ftsc_cli::runner::{run_file, run_standard_suite, Outcome, Overrides};
use ftsc_cli::scenario::{Format, Operation};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

/// Fuzzy calculus on time scales: gH derivatives, Aumann diamond-alpha
/// integrals and a residual-based verification harness, driven by JSON
/// scenario files.
#[derive(Parser)]
#[command(name = "ftsc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Level resolution M (fuzzy numbers carry M+1 stacked intervals).
    #[arg(long, global = true, env = "FTSC_LEVELS")]
    levels: Option<usize>,

    /// Single diamond-alpha weight; overrides the scenario's alpha settings.
    #[arg(long, global = true, env = "FTSC_ALPHA")]
    alpha: Option<f64>,

    /// Comma-separated alpha grid; overridden by --alpha.
    #[arg(long, global = true, env = "FTSC_ALPHA_GRID", value_delimiter = ',')]
    alpha_grid: Option<Vec<f64>>,

    /// Output format.
    #[arg(long, global = true, env = "FTSC_FORMAT", value_enum)]
    format: Option<FormatArg>,

    /// Directory for per-level endpoint curve CSVs of the scenario functions.
    #[arg(long, global = true, env = "FTSC_EMIT_PLOTS")]
    emit_plots: Option<PathBuf>,

    /// Pass tolerance for verification residuals.
    #[arg(long, global = true, env = "FTSC_TOL")]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Delta, nabla and diamond-alpha gH derivatives at the scenario points.
    Derive { scenario: PathBuf },
    /// Aumann diamond-alpha integral over the scenario window.
    Integrate { scenario: PathBuf },
    /// Run identity checks: a scenario file, or the built-in suite.
    Verify {
        /// Built-in suite name (only "standard").
        #[arg(long)]
        suite: Option<String>,
        scenario: Option<PathBuf>,
    },
    /// One-step integrals around the scenario points, cross-checked against
    /// their closed forms.
    LocalSteps { scenario: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let overrides = Overrides {
        levels: cli.levels,
        alpha: cli.alpha,
        alpha_grid: cli.alpha_grid,
        format: cli.format.map(Format::from),
        emit_plots: cli.emit_plots,
        tol: cli.tol,
    };
    let outcome: Outcome = match &cli.command {
        Command::Derive { scenario } => run_file(Operation::Derive, scenario, &overrides),
        Command::Integrate { scenario } => run_file(Operation::Integrate, scenario, &overrides),
        Command::LocalSteps { scenario } => run_file(Operation::LocalSteps, scenario, &overrides),
        Command::Verify { suite, scenario } => match (suite, scenario) {
            (Some(name), None) if name == "standard" => run_standard_suite(&overrides),
            (Some(name), None) => ftsc_cli::runner::schema_outcome(format!(
                "unknown suite \"{name}\"; available: standard"
            )),
            (None, Some(path)) => run_file(Operation::Verify, path, &overrides),
            _ => ftsc_cli::runner::schema_outcome(
                "verify needs either --suite standard or a scenario file".to_string(),
            ),
        },
    };
    print!("{}", outcome.stdout);
    ExitCode::from(outcome.exit_code as u8)
}
