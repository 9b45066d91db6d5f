//! `lumen`: scans, decay runs and acceptance checks for the spontaneous
//! emission field engine.
//!
//! Exit codes: 0 when every executed check passes, 1 when a check fails,
//! 2 for invalid input, 3 for numerical or I/O failure.

// Guards are written `!(x > 0.0)` on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod error;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lumen_core::oracle::GridPreset;
use lumen_core::CouplingModel;

use crate::config::{Longitudinal, Overrides, RunConfig};
use crate::error::{CliError, CliResult};
use crate::report::Output;

#[derive(Debug, Parser)]
#[command(name = "lumen", version, about = "Near/far field of a decaying two-level atom")]
struct Cli {
    /// JSON run configuration (or a previous report bundle); flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Transition preset: hydrogen-paper or hydrogen-literature.
    #[arg(long, global = true)]
    preset: Option<String>,

    /// Atom-field coupling: er-dip, ap-dip or ap-exact.
    #[arg(long, global = true)]
    coupling: Option<CouplingModel>,

    /// Source of the instantaneous longitudinal field of the A.p dipole.
    #[arg(long, global = true, value_enum)]
    longitudinal: Option<Longitudinal>,

    /// Comma list of near, mid, far.
    #[arg(long, global = true)]
    zones: Option<String>,

    /// `r=min:max:n[:log],t=min:max:n[:log],dirs=n` in units of c/ω₀ and 1/ω₀.
    #[arg(long, global = true)]
    grid: Option<String>,

    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for randomized check points.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analytic field scans and near-field energy.
    #[command(subcommand)]
    Fields(FieldsCommand),
    /// Mode-sum reference: decay runs and field reconstruction.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Green kernel tables.
    #[command(subcommand)]
    Kernels(KernelsCommand),
    /// Run every acceptance check and write verify-all.json.
    VerifyAll,
}

#[derive(Debug, Subcommand)]
enum FieldsCommand {
    /// Evaluate the analytic field on the grid and check causal confinement.
    Scan,
    /// Remanent near-field energy outside r_min.
    Energy {
        /// `auto-geomean` or a radius in metres.
        #[arg(long)]
        rmin: Option<String>,
        /// Report how many excitations accumulate this energy (eV).
        #[arg(long)]
        threshold_ev: Option<f64>,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Integrate the discretized mode equations and fit the decay.
    Decay {
        #[arg(long)]
        grid_preset: Option<GridPreset>,
        /// Simulated span in units of 1/Γ.
        #[arg(long)]
        t_max_gamma: Option<f64>,
    },
    /// Rebuild ψ from the k-space integral and compare with the analytic field.
    Reconstruct {
        /// Skip points with |t − r| below this gap.
        #[arg(long)]
        cone_gap: Option<f64>,
    },
    /// Compare two field datasets point by point.
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// RMS relative tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Debug, Subcommand)]
enum KernelsCommand {
    /// Print the symbolic Green kernels.
    Dump {
        #[arg(long, default_value = "all")]
        model: String,
    },
}

fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("LUMEN_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Usage(format!("LUMEN_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size the worker pool: {e}")))
}

fn run(cli: Cli) -> CliResult<bool> {
    configure_threads()?;
    let overrides = Overrides {
        preset: cli.preset,
        coupling: cli.coupling,
        longitudinal: cli.longitudinal,
        zones: cli.zones,
        grid: cli.grid,
        out: cli.out,
        seed: cli.seed,
    };
    let mut cfg = RunConfig::resolve(cli.config.as_deref(), overrides)?;
    let mut text = None;
    // Subcommand flags land in the config so the bundle echoes them.
    let out: Output = match cli.command {
        Command::Fields(FieldsCommand::Scan) => commands::scan(&cfg)?,
        Command::Fields(FieldsCommand::Energy { rmin, threshold_ev }) => {
            if let Some(r) = rmin {
                cfg.rmin = r;
                cfg.validate()?;
            }
            commands::energy(&cfg, threshold_ev)?
        }
        Command::Oracle(OracleCommand::Decay { grid_preset, t_max_gamma }) => {
            if let Some(g) = grid_preset {
                cfg.decay.grid = g;
            }
            if let Some(t) = t_max_gamma {
                cfg.decay.t_max_gamma = t;
            }
            cfg.validate()?;
            commands::decay(&cfg)?
        }
        Command::Oracle(OracleCommand::Reconstruct { cone_gap }) => {
            if let Some(g) = cone_gap {
                cfg.cone_gap = g;
                cfg.validate()?;
            }
            commands::reconstruct(&cfg)?
        }
        Command::Oracle(OracleCommand::Compare { a, b, tol }) => commands::compare_files(&cfg, &a, &b, tol)?,
        Command::Kernels(KernelsCommand::Dump { model }) => {
            let (o, t) = commands::kernels_dump(&model)?;
            text = Some(t);
            o
        }
        Command::VerifyAll => verify::verify_all(&cfg)?,
    };
    let summary = out.commit(&cfg)?;
    if let Some(t) = text {
        print!("{t}");
    }
    for c in &out.checks {
        println!(
            "{:<28} {}  measured {:.3e} (tolerance {:.3e}){}",
            c.name,
            if c.passed { "PASS" } else { "FAIL" },
            c.measured,
            c.tolerance,
            c.note.as_ref().map_or(String::new(), |n| format!("  {n}"))
        );
    }
    println!("wrote {}", summary.display());
    Ok(out.passed())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("lumen: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
