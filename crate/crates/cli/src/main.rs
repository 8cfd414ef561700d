//! `quartics` command line: per-curve reports, pencil sweeps and the
//! verification suite.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use quartics_cli::commands::{self, cmd_report, cmd_sweep, cmd_verify};
use quartics_cli::{OutputFormat, RunConfig};

const EXIT_USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "quartics",
    version,
    about = "Weierstrass points, orbits and signatures of smooth plane quartics",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 singular input curve, \
                  3 numerical inconsistency, 64 usage error.\n\
                  QUARTICS_CONFIG names a default JSON config file."
)]
struct Cli {
    /// JSON config file (overrides QUARTICS_CONFIG).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(flatten)]
    overrides: Overrides,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Overrides {
    /// Relative residual target for Newton polishing.
    #[arg(long, global = true)]
    polish_tol: Option<f64>,

    /// Distance under which near-coincident points merge.
    #[arg(long, global = true)]
    cluster_eps: Option<f64>,

    /// Relative modulus under which polynomial coefficients are dropped.
    #[arg(long, global = true)]
    coeff_drop: Option<f64>,

    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full Weierstrass/orbit/signature verdict for one curve (JSON).
    Report {
        /// Pencil parameter t as RE [IM].
        #[arg(long, num_args = 1..=2, value_names = ["RE", "IM"], allow_negative_numbers = true)]
        pencil: Option<Vec<f64>>,

        /// Named curve: fermat, klein, picard or c3.
        #[arg(long)]
        named: Option<String>,

        /// Output format: json or text.
        #[arg(long)]
        format: Option<OutputFormat>,
    },

    /// CSV stream of verdicts over a parameter grid.
    Sweep {
        /// Linspace grid RE_FROM:RE_TO:N[,IM_FROM:IM_TO:M].
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,

        /// Whitespace-separated points re[:im].
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
    },

    /// Run the verification suite (one pass/fail line per criterion).
    Verify {
        /// Only run criteria whose name contains this substring.
        #[arg(long)]
        only: Option<String>,
    },
}

fn build_config(cli: &Cli) -> Result<RunConfig, String> {
    let path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os("QUARTICS_CONFIG").map(PathBuf::from));
    let mut config = match path {
        Some(p) => RunConfig::load(&p)?,
        None => RunConfig::default(),
    };
    if let Some(v) = cli.overrides.polish_tol {
        config.polish_tol = v;
    }
    if let Some(v) = cli.overrides.cluster_eps {
        config.cluster_eps = v;
    }
    if let Some(v) = cli.overrides.coeff_drop {
        config.coeff_drop_tol = v;
    }
    if let Some(v) = cli.overrides.workers {
        config.workers = v;
    }
    config.validate()?;
    Ok(config)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // keep exit code 2 reserved for singular curves
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            e.print().expect("stderr");
            return if is_help {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_USAGE)
            };
        }
    };
    let mut config = match build_config(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let outcome = match &cli.command {
        Command::Report {
            pencil,
            named,
            format,
        } => {
            if let Some(f) = format {
                config.format = *f;
            }
            match commands::parse_curve(pencil.as_deref(), named.as_deref()) {
                Ok(curve) => cmd_report(&curve, &config),
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(EXIT_USAGE);
                }
            }
        }
        Command::Sweep { grid, points } => {
            let parsed = match (grid, points) {
                (Some(g), None) => commands::parse_grid(g),
                (None, Some(p)) => commands::parse_points(p),
                _ => Err("specify exactly one of --grid or --points".into()),
            };
            match parsed {
                Ok(ts) => cmd_sweep(&ts, &config),
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(EXIT_USAGE);
                }
            }
        }
        Command::Verify { only } => cmd_verify(only.as_deref(), &config),
    };
    if !outcome.stdout.is_empty() {
        println!("{}", outcome.stdout);
    }
    ExitCode::from(outcome.exit_code.clamp(0, 255) as u8)
}
