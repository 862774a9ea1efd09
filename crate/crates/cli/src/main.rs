//! `ewm`: run simulations, evaluate dispersive norms and scattering residuals,
//! run the verification suites and sweep parameter grids.

mod commands;
mod failure;
mod overrides;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use failure::Failure;

#[derive(Debug, Parser)]
#[command(name = "ewm", version, about = "Radial Einstein-wave map simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by commands that build a run configuration.
#[derive(Debug, clap::Args)]
struct ConfigArgs {
    /// Config file of `section.key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override one key, e.g. `--set grid.n_points=513`. Dotted flags such as
    /// `--grid.n_points 513` are accepted too. Later assignments win.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evolve one configuration and write its diagnostics.
    Run {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Output directory.
        #[arg(long, short, default_value = "ewm-out")]
        out: PathBuf,
    },
    /// X-norm breakdown and Y-norm bounds of a snapshot directory.
    Norms {
        /// Directory of `NNNNNN.ewm` snapshots.
        dir: PathBuf,
        /// Run config (defaults to `run.cfg` next to the snapshot directory).
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, short, default_value = "norms.csv")]
        out: PathBuf,
    },
    /// Scattering residual table for a snapshot directory.
    Scatter {
        dir: PathBuf,
        /// Comma-separated list of T0 values.
        #[arg(long, value_delimiter = ',', required = true)]
        t0: Vec<f64>,
        /// Stencil order for the backward free flow.
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, short, default_value = "scatter.csv")]
        out: PathBuf,
    },
    /// Run a verification suite and print its table on stderr.
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Run every combination of a parameter grid in parallel.
    Sweep {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Amplitudes; defaults to the configured one.
        #[arg(long, value_delimiter = ',')]
        eps: Vec<f64>,
        /// Problem modes, e.g. `full,problem_ii`.
        #[arg(long, value_delimiter = ',')]
        modes: Vec<String>,
        /// Values of grid.n_points.
        #[arg(long, value_delimiter = ',')]
        resolutions: Vec<usize>,
        #[arg(long, short, default_value = "sweep.csv")]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Propagator,
    Morawetz,
    Lp,
    Constraints,
    All,
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Run { cfg, out } => {
            let c = overrides::build(cfg.config.as_deref(), &cfg.set)?;
            commands::run(&c, &out)
        }
        Command::Norms { dir, config, out } => commands::norms(&dir, config.as_deref(), &out),
        Command::Scatter {
            dir,
            t0,
            order,
            out,
        } => commands::scatter(&dir, &t0, order, &out),
        Command::Verify { suite } => verify::run_suite(suite),
        Command::Sweep {
            cfg,
            eps,
            modes,
            resolutions,
            out,
        } => {
            let c = overrides::build(cfg.config.as_deref(), &cfg.set)?;
            let modes = modes
                .iter()
                .map(|m| m.parse())
                .collect::<Result<Vec<_>, String>>()
                .map_err(Failure::Invalid)?;
            commands::sweep(&c, &eps, &modes, &resolutions, &out)
        }
    }
}

fn main() -> ExitCode {
    let args = overrides::rewrite_dotted(std::env::args_os());
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
