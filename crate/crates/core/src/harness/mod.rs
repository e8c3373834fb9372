//! Experiment runner: repeated seeded runs of the federated loop on a DTLZ
//! problem, IGD bookkeeping and CSV/JSON output.

mod config;
mod output;

pub use config::ExperimentConfig;
pub use output::{
    read_records_csv, write_events_jsonl, write_outputs, write_records_csv, write_sweep_csv,
    EventLine, OutputFiles, RunSummary, Summary,
};

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::federation::{Federation, RoundState};
use crate::metrics::{igd, nondominated_filter};

/// One row of a convergence profile. Iteration 0 is the initial design.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub run: usize,
    pub iter: usize,
    pub fes: usize,
    /// IGD of the non-dominated part of everything evaluated so far.
    pub igd: f64,
    /// Wall-clock milliseconds since the run started; 0 unless timing is on.
    pub ms: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub run: usize,
    pub seed: u64,
    pub records: Vec<ConvergenceRecord>,
    pub events: Vec<RoundState>,
}

impl RunResult {
    pub fn final_igd(&self) -> f64 {
        self.records.last().map_or(f64::NAN, |r| r.igd)
    }

    pub fn final_fes(&self) -> usize {
        self.records.last().map_or(0, |r| r.fes)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    /// Ordered by run id.
    pub runs: Vec<RunResult>,
}

impl ExperimentResult {
    pub fn final_igds(&self) -> Vec<f64> {
        self.runs.iter().map(RunResult::final_igd).collect()
    }

    pub fn mean_igd(&self) -> f64 {
        let v = self.final_igds();
        v.iter().sum::<f64>() / v.len() as f64
    }

    /// Sample standard deviation (`n - 1` denominator); 0 for a single run.
    pub fn std_igd(&self) -> f64 {
        let v = self.final_igds();
        if v.len() < 2 {
            return 0.0;
        }
        let mean = self.mean_igd();
        (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (v.len() - 1) as f64).sqrt()
    }

    /// All convergence records, run by run.
    pub fn records(&self) -> Vec<ConvergenceRecord> {
        self.runs
            .iter()
            .flat_map(|r| r.records.iter().cloned())
            .collect()
    }
}

fn archive_igd(fed: &Federation, reference: &[Vec<f64>]) -> Result<f64> {
    igd(&nondominated_filter(&fed.archive_objectives()), reference)
}

/// One run with seed `config.seed + run`.
pub fn run_single(
    config: &ExperimentConfig,
    run: usize,
    reference: &[Vec<f64>],
) -> Result<RunResult> {
    let start = Instant::now();
    let ms = |t: &Instant| {
        if config.timing {
            t.elapsed().as_millis() as u64
        } else {
            0
        }
    };
    let seed = config.seed.wrapping_add(run as u64);
    let mut fed = Federation::new(config.build_problem()?, config.federation_config()?, seed)?;
    let mut records = vec![ConvergenceRecord {
        run,
        iter: 0,
        fes: fed.fes(),
        igd: archive_igd(&fed, reference)?,
        ms: ms(&start),
    }];
    let mut events = Vec::with_capacity(config.rounds);
    for _ in 0..config.rounds {
        let state = fed.run_round()?;
        records.push(ConvergenceRecord {
            run,
            iter: state.round,
            fes: state.fes,
            igd: archive_igd(&fed, reference)?,
            ms: ms(&start),
        });
        events.push(state);
    }
    Ok(RunResult {
        run,
        seed,
        records,
        events,
    })
}

/// Validates the configuration, then executes every run (in parallel up to
/// `workers`) and returns them ordered by run id.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let reference = config
        .build_problem()?
        .sample_pareto_front(config.reference_size)?;
    let runs = with_workers(config.workers, || {
        (0..config.runs)
            .into_par_iter()
            .map(|run| run_single(config, run, &reference))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(ExperimentResult {
        config: config.clone(),
        runs,
    })
}

fn with_workers<T: Send>(
    workers: Option<usize>,
    f: impl FnOnce() -> Result<T> + Send,
) -> Result<T> {
    match workers {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("cannot start {n} workers: {e}")))?
            .install(f),
    }
}

/// The parameter varied by [`sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    Participation,
    FailureProb,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::Participation => "lambda",
            SweepParameter::FailureProb => "pf",
        }
    }

    fn apply(self, config: &mut ExperimentConfig, value: f64) {
        match self {
            SweepParameter::Participation => config.participation = value,
            SweepParameter::FailureProb => config.failure_prob = value,
        }
    }
}

impl std::str::FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "lambda" | "participation" => Ok(SweepParameter::Participation),
            "pf" | "p_f" | "failure_prob" => Ok(SweepParameter::FailureProb),
            other => Err(Error::Config(format!(
                "cannot sweep '{other}'; use lambda or pf"
            ))),
        }
    }
}

/// One line of the combined sweep table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub parameter: String,
    pub value: f64,
    pub problem: String,
    #[serde(rename = "M")]
    pub objectives: usize,
    pub d: usize,
    pub optimizer: String,
    pub mean_igd: f64,
    pub std_igd: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub experiments: Vec<ExperimentResult>,
}

/// Runs one experiment per value. Every value is validated before the first run.
pub fn sweep(
    config: &ExperimentConfig,
    parameter: SweepParameter,
    values: &[f64],
) -> Result<SweepResult> {
    if values.is_empty() {
        return Err(Error::Config("sweep needs at least one value".into()));
    }
    let configs: Vec<ExperimentConfig> = values
        .iter()
        .map(|&v| {
            let mut c = config.clone();
            parameter.apply(&mut c, v);
            c.validate().map(|_| c)
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(values.len());
    let mut experiments = Vec::with_capacity(values.len());
    for (c, &v) in configs.iter().zip(values) {
        let result = run_experiment(c)?;
        rows.push(SweepRow {
            parameter: parameter.name().to_string(),
            value: v,
            problem: c.problem.to_string(),
            objectives: c.objectives,
            d: c.dims,
            optimizer: c.optimizer().to_string(),
            mean_igd: result.mean_igd(),
            std_igd: result.std_igd(),
        });
        experiments.push(result);
    }
    Ok(SweepResult { rows, experiments })
}
