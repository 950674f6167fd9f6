use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use drp_caustics::commands;
use drp_caustics::config::{parse_config, RunConfig};
use drp_caustics::dispersion::Backend;
use drp_caustics::Result;

#[derive(Parser)]
#[command(
    version,
    about = "DRP scheme synthesis, dispersion and spurious-caustic analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Configuration file (`key = value` lines with `[section]` headers).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory; overrides `out` in the configuration.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true)]
    backend: Option<Backend>,

    /// Stencil half-width.
    #[arg(long, global = true)]
    m: Option<usize>,

    /// Courant number.
    #[arg(long, global = true)]
    sigma: Option<f64>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Optimized stencil coefficients.
    Synth,
    /// Phase, damping and group velocity over the Brillouin interval.
    Dispersion,
    /// Stationary points of the group velocity and the f1/f2 curves.
    Caustics,
    /// Explicit time stepping of the two-packet initial condition.
    Simulate,
    /// Analytic two-packet error model.
    Errormodel,
    /// Published claims against computed values.
    Discrepancy,
}

fn run(cli: &Cli) -> Result<Vec<PathBuf>> {
    let mut cfg = match &cli.config {
        Some(path) => parse_config(&std::fs::read_to_string(path)?)?,
        None => RunConfig::default(),
    };
    if let Some(m) = cli.m {
        cfg.m = m;
    }
    if let Some(sigma) = cli.sigma {
        cfg.sigma = sigma;
    }
    if let Some(backend) = cli.backend {
        cfg.backend = backend;
    }
    cfg.validate()?;
    let out = cli
        .out
        .clone()
        .or_else(|| cfg.out.clone())
        .unwrap_or_else(|| PathBuf::from("out"));

    match cli.command {
        Command::Synth => commands::cmd_synth(cfg.m, &out),
        Command::Dispersion => commands::cmd_dispersion(&cfg, &out),
        Command::Caustics => commands::cmd_caustics(&cfg, &out),
        Command::Simulate => commands::cmd_simulate(&cfg, &out),
        Command::Errormodel => commands::cmd_errormodel(&cfg, &out),
        Command::Discrepancy => commands::cmd_discrepancy(&cfg, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
