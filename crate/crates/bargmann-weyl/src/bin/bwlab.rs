//! Command line front end for the experiment runners.
//!
//! ```text
//! bwlab <verify|norm-sweep|gevrey-fit|decomp-check|compose> \
//!     --config <path> --out <dir> [--seed <u64>] [--threads <k>]
//! ```
//!
//! Exit status: 0 success, 1 invariant failure, 2 configuration error,
//! 3 numerical conditioning error.

use std::path::PathBuf;
use std::process::ExitCode;

use bargmann_weyl::lab::{run, write_outputs, ExperimentConfig};
use bargmann_weyl::Error;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bwlab", version = bargmann_weyl::lab::VERSION, about = "Experiments on weighted Bargmann spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the numbered verification suite.
    Verify(Common),
    /// Operator norms on perturbed weights across the h-grid.
    NormSweep(Common),
    /// Decay-rate fits of windowed Fourier transforms.
    GevreyFit(Common),
    /// Cross-check of the three quantization routes.
    DecompCheck(Common),
    /// Evaluate a # b by the direct and Fourier routes.
    Compose(Common),
}

#[derive(Args)]
struct Common {
    /// TOML experiment file.
    #[arg(long)]
    config: PathBuf,
    /// Directory receiving the CSV and JSON outputs.
    #[arg(long)]
    out: PathBuf,
    /// Overrides the seed in the configuration.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (0 uses every core).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn execute(name: &str, args: &Common) -> Result<bool, Error> {
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build_global()
        .map_err(|e| Error::Config(format!("cannot start {} worker threads: {e}", args.threads)))?;
    let (report, table) = run(name, &cfg)?;
    let (csv, json) = write_outputs(&args.out, &cfg, name, &table, &report)?;
    if !report.warnings.is_empty() {
        log::warn!("{} warning(s) recorded in {}", report.warnings.len(), json.display());
    }
    println!("{}", table.render().trim_end());
    println!("wrote {} and {}", csv.display(), json.display());
    Ok(report.passed)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let (name, args) = match &cli.command {
        Command::Verify(a) => ("verify", a),
        Command::NormSweep(a) => ("norm-sweep", a),
        Command::GevreyFit(a) => ("gevrey-fit", a),
        Command::DecompCheck(a) => ("decomp-check", a),
        Command::Compose(a) => ("compose", a),
    };
    match execute(name, args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("bwlab {name}: invariant check failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("bwlab {name}: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
