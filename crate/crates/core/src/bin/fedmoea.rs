use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fedmoea::harness::{self, ExperimentConfig, SweepParameter};

#[derive(Parser)]
#[command(
    name = "fedmoea",
    version,
    about = "Federated data-driven multi-objective optimization experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run repeated experiments and write CSV/JSON results.
    Run(Settings),
    /// Repeat an experiment for several values of lambda or pf.
    Sweep {
        /// Parameter to vary: lambda or pf.
        #[arg(long)]
        parameter: String,
        /// Comma-separated values.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
        #[command(flatten)]
        settings: Settings,
    },
}

#[derive(Args)]
struct Settings {
    /// key = value file applied before the flags below.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    objectives: Option<usize>,
    #[arg(long)]
    dims: Option<usize>,
    /// nsga2, rvea or auto.
    #[arg(long)]
    optimizer: Option<String>,
    #[arg(long)]
    clients: Option<usize>,
    #[arg(long)]
    participation: Option<f64>,
    #[arg(long)]
    failure_prob: Option<f64>,
    #[arg(long)]
    rounds: Option<usize>,
    #[arg(long)]
    per_round: Option<usize>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    /// Record wall-clock milliseconds in the CSV.
    #[arg(long)]
    timing: bool,
    /// Any other config key, as key=value; may be repeated.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    extra: Vec<String>,
}

impl Settings {
    fn resolve(&self) -> fedmoea::Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(p) => ExperimentConfig::from_file(p)?,
            None => ExperimentConfig::default(),
        };
        let flags: [(&str, Option<String>); 13] = [
            ("problem", self.problem.clone()),
            ("objectives", self.objectives.map(|v| v.to_string())),
            ("dims", self.dims.map(|v| v.to_string())),
            ("optimizer", self.optimizer.clone()),
            ("clients", self.clients.map(|v| v.to_string())),
            ("participation", self.participation.map(|v| v.to_string())),
            ("failure_prob", self.failure_prob.map(|v| v.to_string())),
            ("rounds", self.rounds.map(|v| v.to_string())),
            ("per_round", self.per_round.map(|v| v.to_string())),
            ("runs", self.runs.map(|v| v.to_string())),
            ("seed", self.seed.map(|v| v.to_string())),
            ("workers", self.workers.map(|v| v.to_string())),
            ("out", self.out.as_ref().map(|p| p.display().to_string())),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                cfg.set(k, &v)?;
            }
        }
        for kv in &self.extra {
            let (k, v) = kv.split_once('=').ok_or_else(|| {
                fedmoea::Error::Config(format!("--set expects KEY=VALUE, got '{kv}'"))
            })?;
            cfg.set(k, v)?;
        }
        if self.timing {
            cfg.timing = true;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> fedmoea::Result<()> {
    match cli.command {
        Command::Run(settings) => {
            let cfg = settings.resolve()?;
            let result = harness::run_experiment(&cfg)?;
            println!(
                "{} {:.4e} ({:.1e}) over {} runs",
                cfg.stem(),
                result.mean_igd(),
                result.std_igd(),
                cfg.runs
            );
            if let Some(dir) = &cfg.out {
                let files = harness::write_outputs(dir, &result)?;
                println!("wrote {}", files.records.display());
            }
        }
        Command::Sweep {
            parameter,
            values,
            settings,
        } => {
            let param: SweepParameter = parameter.parse()?;
            let cfg = settings.resolve()?;
            let result = harness::sweep(&cfg, param, &values)?;
            for row in &result.rows {
                println!(
                    "{}={} {} {:.4e} ({:.1e})",
                    row.parameter,
                    row.value,
                    cfg.stem(),
                    row.mean_igd,
                    row.std_igd
                );
            }
            if let Some(dir) = &cfg.out {
                std::fs::create_dir_all(dir)?;
                let path = dir.join(format!("sweep_{}_{}.csv", param.name(), cfg.stem()));
                harness::write_sweep_csv(std::fs::File::create(&path)?, &result.rows)?;
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
