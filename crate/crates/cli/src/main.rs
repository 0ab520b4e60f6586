use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use dexspace::config::{load_config, Preset, RunConfig};
use dexspace::kinematics::LinkLengths;
use dexspace::run::{run_subcommand, ErrorRecord, Subcommand};
use dexspace::Error;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    /// Joint-space samples mapped to tip positions (cloud.csv).
    Sample,
    /// Scored cloud plus fitted slice boundaries.
    Workspace,
    /// Reachable and dexterous volume report (volume.json).
    Volume,
    /// Link-length sweep (sweep.csv, selection.json).
    Optimize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PresetArg {
    Fast,
    Paper,
}

/// Monte Carlo workspace analysis for a PRRRR wrist.
#[derive(Debug, Parser)]
#[command(name = "dexspace", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,

    /// JSON run configuration.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Link lengths a1,a3,a5 in mm when no config file is given.
    #[arg(long, value_name = "A1,A3,A5", value_delimiter = ',', conflicts_with = "config")]
    xi: Option<Vec<f64>>,

    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,

    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Cloud sample count; overrides config and preset.
    #[arg(long)]
    samples: Option<usize>,

    /// Sample budgets for unset counts.
    #[arg(long, value_enum, default_value = "paper")]
    preset: PresetArg,

    /// Worker threads (defaults to all cores).
    #[arg(long, env = "DEXSPACE_THREADS")]
    threads: Option<usize>,
}

fn build_config(cli: &Cli) -> Result<RunConfig, Error> {
    let mut cfg = match (&cli.config, &cli.xi) {
        (Some(path), _) => load_config(path)?,
        (None, Some(xi)) => match xi.as_slice() {
            &[a1, a3, a5] => RunConfig::for_design(LinkLengths::from_mm(a1, a3, a5), 0),
            _ => return Err(Error::InvalidConfig(format!("--xi takes 3 values, got {}", xi.len()))),
        },
        (None, None) => RunConfig::for_design(LinkLengths::from_mm(3.0, 8.0, 34.0), 0),
    };
    cfg.apply_preset(match cli.preset {
        PresetArg::Fast => Preset::Fast,
        PresetArg::Paper => Preset::Paper,
    });
    if let Some(seed) = cli.seed {
        cfg.set_seed(seed);
    }
    if let Some(n) = cli.samples {
        cfg.set_samples(n);
    }
    if let Some(out) = &cli.out {
        cfg.output_dir = out.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<String, Error> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidConfig(format!("threads: {e}")))?;
    }
    let cfg = build_config(cli)?;
    let cmd = match cli.command {
        Command::Sample => Subcommand::Sample,
        Command::Workspace => Subcommand::Workspace,
        Command::Volume => Subcommand::Volume,
        Command::Optimize => Subcommand::Optimize,
    };
    let out = run_subcommand(cmd, &cfg)?;
    let mut summary = out.summary;
    for f in &out.files {
        summary.push_str(&format!("\n  {}", cfg.output_dir.join(f).display()));
    }
    Ok(summary)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let record = ErrorRecord::from(&e);
            eprintln!("{}", serde_json::to_string(&record).expect("error record serializes"));
            ExitCode::FAILURE
        }
    }
}
