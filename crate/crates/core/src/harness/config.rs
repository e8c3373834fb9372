use std::path::{Path, PathBuf};

use crate::benchmarks::{Family, Problem, DEFAULT_REFERENCE_SIZE};
use crate::error::{Error, Result};
use crate::federation::{participant_count, FederationConfig};
use crate::infill::DEFAULT_MAX_RESTARTS;
use crate::moea::{MoeaConfig, Optimizer};
use crate::surrogate::{center_cap, Kernel, TrainConfig};

/// Everything needed to reproduce one experiment.
///
/// Optional fields fall back to rules derived from the problem size:
/// `optimizer` to NSGA-II for up to three objectives and RVEA beyond,
/// `centers` to `floor(sqrt(M + d)) + 3`, `data_cap` to `11d - 1 + 25`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub problem: Family,
    pub objectives: usize,
    pub dims: usize,
    pub optimizer: Option<Optimizer>,
    pub clients: usize,
    pub participation: f64,
    pub failure_prob: f64,
    pub epochs: usize,
    pub lr: f64,
    pub batch: usize,
    pub per_round: usize,
    pub rounds: usize,
    pub centers: Option<usize>,
    pub data_cap: Option<usize>,
    pub runs: usize,
    pub seed: u64,
    pub alpha: f64,
    pub kernel: Kernel,
    pub max_restarts: usize,
    pub reference_size: usize,
    /// Parallel runs; `None` uses every available core.
    pub workers: Option<usize>,
    /// Record wall-clock milliseconds. Off by default so that output files are
    /// byte-identical between executions.
    pub timing: bool,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            problem: Family::Dtlz2,
            objectives: 3,
            dims: 10,
            optimizer: None,
            clients: 10,
            participation: 0.9,
            failure_prob: 0.03,
            epochs: 20,
            lr: 0.06,
            batch: 1,
            per_round: 5,
            rounds: 24,
            centers: None,
            data_cap: None,
            runs: 20,
            seed: 0,
            alpha: 2.0,
            kernel: Kernel::Squared,
            max_restarts: DEFAULT_MAX_RESTARTS,
            reference_size: DEFAULT_REFERENCE_SIZE,
            workers: None,
            timing: false,
            out: None,
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("invalid value '{value}' for '{key}'")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim().to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => Err(Error::Config(format!(
            "invalid value '{value}' for '{key}'"
        ))),
    }
}

fn optional<T: std::str::FromStr>(key: &str, value: &str) -> Result<Option<T>> {
    match value.trim() {
        "" | "auto" => Ok(None),
        v => parse(key, v).map(Some),
    }
}

impl ExperimentConfig {
    pub fn new(problem: Family, objectives: usize, dims: usize) -> Self {
        Self {
            problem,
            objectives,
            dims,
            ..Self::default()
        }
    }

    /// Sets one field by name. Keys match the CLI flags with dashes or
    /// underscores; a few short aliases (`M`, `d`, `lambda`, `pf`) are accepted.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let k = key.trim().replace('-', "_");
        match k.as_str() {
            "problem" => {
                self.problem = value
                    .parse()
                    .map_err(|_| Error::Config(format!("unknown problem '{value}'")))?
            }
            "objectives" | "M" | "m_objectives" => self.objectives = parse(key, value)?,
            "dims" | "d" | "dimensions" => self.dims = parse(key, value)?,
            "optimizer" => {
                self.optimizer = match value.trim() {
                    "" | "auto" => None,
                    v => Some(v.parse().map_err(|e: Error| Error::Config(e.to_string()))?),
                }
            }
            "clients" | "N" => self.clients = parse(key, value)?,
            "participation" | "lambda" => self.participation = parse(key, value)?,
            "failure_prob" | "pf" | "p_f" => self.failure_prob = parse(key, value)?,
            "epochs" | "E" => self.epochs = parse(key, value)?,
            "lr" | "eta" | "learning_rate" => self.lr = parse(key, value)?,
            "batch" | "B" => self.batch = parse(key, value)?,
            "per_round" | "m" => self.per_round = parse(key, value)?,
            "rounds" | "R" => self.rounds = parse(key, value)?,
            "centers" | "q" => self.centers = optional(key, value)?,
            "data_cap" | "l" => self.data_cap = optional(key, value)?,
            "runs" => self.runs = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "alpha" => self.alpha = parse(key, value)?,
            "kernel" => {
                self.kernel = value
                    .parse()
                    .map_err(|e: Error| Error::Config(e.to_string()))?
            }
            "max_restarts" => self.max_restarts = parse(key, value)?,
            "reference_size" => self.reference_size = parse(key, value)?,
            "workers" => self.workers = optional(key, value)?,
            "timing" => self.timing = parse_bool(key, value)?,
            "out" => self.out = Some(PathBuf::from(value.trim())),
            _ => return Err(Error::Config(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines. Blank lines and `#` comments are ignored.
    pub fn apply_str(&mut self, text: &str) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            self.set(k, v)
                .map_err(|e| Error::Config(format!("line {}: {e}", n + 1)))?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_str(&std::fs::read_to_string(path)?)?;
        Ok(cfg)
    }

    pub fn optimizer(&self) -> Optimizer {
        self.optimizer
            .unwrap_or_else(|| Optimizer::default_for(self.objectives))
    }

    pub fn initial_size(&self) -> usize {
        11 * self.dims - 1
    }

    pub fn data_cap(&self) -> usize {
        self.data_cap.unwrap_or(self.initial_size() + 25)
    }

    pub fn centers(&self) -> usize {
        self.centers
            .unwrap_or_else(|| center_cap(self.objectives, self.dims))
            .min(self.initial_size())
    }

    pub fn build_problem(&self) -> Result<Problem> {
        Problem::new(self.problem, self.objectives, self.dims)
            .map_err(|e| Error::Config(e.to_string()))
    }

    /// Checks every field; called before any run starts.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        self.build_problem()?;
        if self.clients == 0 {
            return bad("clients must be >= 1".into());
        }
        participant_count(self.clients, self.participation)
            .map_err(|e| Error::Config(e.to_string()))?;
        if !(0.0..1.0).contains(&self.failure_prob) {
            return bad(format!(
                "failure_prob must be in [0, 1), got {}",
                self.failure_prob
            ));
        }
        if self.epochs == 0 {
            return bad("epochs must be >= 1".into());
        }
        if !(self.lr > 0.0 && self.lr.is_finite()) {
            return bad(format!("lr must be positive, got {}", self.lr));
        }
        if self.batch != 1 {
            return bad(format!("only batch = 1 is supported, got {}", self.batch));
        }
        if self.per_round == 0 {
            return bad("per_round must be >= 1".into());
        }
        if self.runs == 0 {
            return bad("runs must be >= 1".into());
        }
        if self.centers == Some(0) {
            return bad("centers must be >= 1".into());
        }
        if self.data_cap() < self.initial_size() {
            return bad(format!(
                "data_cap {} is smaller than the initial design ({})",
                self.data_cap(),
                self.initial_size()
            ));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return bad(format!("alpha must be >= 0, got {}", self.alpha));
        }
        if self.reference_size < self.objectives {
            return bad(format!("reference_size must be >= {}", self.objectives));
        }
        if self.workers == Some(0) {
            return bad("workers must be >= 1".into());
        }
        self.moea_config()?;
        Ok(())
    }

    pub fn moea_config(&self) -> Result<MoeaConfig> {
        MoeaConfig::for_problem(self.optimizer(), self.objectives, self.dims)
            .map_err(|e| Error::Config(e.to_string()))
    }

    pub fn federation_config(&self) -> Result<FederationConfig> {
        Ok(FederationConfig {
            clients: self.clients,
            participation: self.participation,
            failure_prob: self.failure_prob,
            per_round: self.per_round,
            train: TrainConfig {
                centers: self.centers(),
                epochs: self.epochs,
                lr: self.lr,
                batch: self.batch,
                kernel: self.kernel,
            },
            data_cap: self.data_cap(),
            alpha: self.alpha,
            max_restarts: self.max_restarts,
            moea: self.moea_config()?,
        })
    }

    /// `dtlz2_m3_d10_nsga2`, used to name output files.
    pub fn stem(&self) -> String {
        format!(
            "{}_m{}_d{}_{}",
            self.problem,
            self.objectives,
            self.dims,
            self.optimizer()
        )
    }
}
