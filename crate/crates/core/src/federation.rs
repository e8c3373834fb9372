//! Simulated federated system: clients that own private data and train
//! local RBFNs, and a server that aggregates them by sorted averaging and
//! searches the federated acquisition for new candidates.
//!
//! Only models and candidate decision vectors cross the client/server
//! boundary. The server API accepts [`Upload`]s, which carry a model and a
//! sample count and nothing else.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acquisition::{Acquisition, FederatedLcb};
use crate::benchmarks::Problem;
use crate::error::{Error, Result};
use crate::infill::{select_candidates, InfillReport, REDUNDANCY_THRESHOLD};
use crate::metrics::squared_distance;
use crate::moea::{select_by_fronts, MoeaConfig};
use crate::sampling::latin_hypercube;
use crate::surrogate::{center_cap, fit_local, Dataset, RbfnModel, TrainConfig};

/// Tolerance on the sum of aggregation weights.
const WEIGHT_SUM_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Sorted averaging

/// Reorders `(center, spread, weight row)` triples by ascending distance of
/// the center from the origin. Ties fall back to the first differing
/// coordinate, then to the original position.
pub fn sort_centers(model: &RbfnModel) -> RbfnModel {
    let norms: Vec<f64> = model
        .centers
        .iter()
        .map(|c| c.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..model.num_centers()).collect();
    order.sort_by(|&a, &b| {
        norms[a]
            .total_cmp(&norms[b])
            .then_with(|| lex(&model.centers[a], &model.centers[b]))
            .then(a.cmp(&b))
    });
    RbfnModel {
        centers: order.iter().map(|&i| model.centers[i].clone()).collect(),
        spreads: order.iter().map(|&i| model.spreads[i]).collect(),
        weights: order.iter().map(|&i| model.weights[i].clone()).collect(),
        biases: model.biases.clone(),
        kernel: model.kernel,
    }
}

fn lex(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

/// Weighted average of center-sorted models, entrywise over `c`, `delta`, `w`, `b`.
///
/// The models are combined in a canonical order (sorted by their
/// serialized parameters) so that the result does not depend on the order
/// of the input list.
pub fn sorted_average(models: &[(RbfnModel, f64)]) -> Result<RbfnModel> {
    let Some((first, _)) = models.first() else {
        return Err(Error::Empty("models to aggregate"));
    };
    let shape = first.shape();
    for (m, _) in models {
        if m.shape() != shape {
            return Err(Error::ShapeMismatch(format!(
                "cannot average {:?} with {:?}",
                m.shape(),
                shape
            )));
        }
        if m.kernel != first.kernel {
            return Err(Error::ShapeMismatch("models use different kernels".into()));
        }
    }
    let total: f64 = models.iter().map(|(_, p)| p).sum();
    if (total - 1.0).abs() > WEIGHT_SUM_TOL || models.iter().any(|(_, p)| *p < 0.0) {
        return Err(Error::WeightsNotNormalized(total));
    }

    let mut sorted: Vec<(RbfnModel, f64)> =
        models.iter().map(|(m, p)| (sort_centers(m), *p)).collect();
    sorted.sort_by(|(a, pa), (b, pb)| canonical_cmp(a, b).then(pa.total_cmp(pb)));

    let (q, d, m) = shape;
    let mut centers = vec![vec![0.0; d]; q];
    let mut spreads = vec![0.0; q];
    let mut weights = vec![vec![0.0; m]; q];
    let mut biases = vec![0.0; m];
    let axpy = |acc: &mut [f64], src: &[f64], p: f64| {
        for (a, s) in acc.iter_mut().zip(src) {
            *a += p * s;
        }
    };
    for (model, p) in &sorted {
        for i in 0..q {
            axpy(&mut centers[i], &model.centers[i], *p);
            axpy(&mut weights[i], &model.weights[i], *p);
        }
        axpy(&mut spreads, &model.spreads, *p);
        axpy(&mut biases, &model.biases, *p);
    }
    Ok(RbfnModel {
        centers,
        spreads,
        weights,
        biases,
        kernel: first.kernel,
    })
}

fn canonical_cmp(a: &RbfnModel, b: &RbfnModel) -> Ordering {
    let flat = |m: &RbfnModel| -> Vec<f64> {
        m.centers
            .iter()
            .flatten()
            .chain(&m.spreads)
            .chain(m.weights.iter().flatten())
            .chain(&m.biases)
            .copied()
            .collect()
    };
    lex(&flat(a), &flat(b))
}

/// `p_k = |D_k| / sum |D_k|`.
pub fn aggregation_weights(sizes: &[usize]) -> Result<Vec<f64>> {
    let total: usize = sizes.iter().sum();
    if total == 0 {
        return Err(Error::Empty("client datasets"));
    }
    Ok(sizes.iter().map(|&n| n as f64 / total as f64).collect())
}

// ---------------------------------------------------------------------------
// Participation, delivery, truncation

/// `ceil(lambda * N)` distinct client ids drawn uniformly, returned sorted.
pub fn select_participants<R: Rng + ?Sized>(
    clients: usize,
    ratio: f64,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let count = participant_count(clients, ratio)?;
    let mut ids = rand::seq::index::sample(rng, clients, count).into_vec();
    ids.sort_unstable();
    Ok(ids)
}

pub fn participant_count(clients: usize, ratio: f64) -> Result<usize> {
    if !(ratio > 0.0 && ratio <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "participation ratio must be in (0, 1], got {ratio}"
        )));
    }
    // Guard against 0.9 * 10 = 9.000000000000002.
    let count = (ratio * clients as f64 - 1e-9).ceil().max(0.0) as usize;
    if count == 0 {
        return Err(Error::InvalidParameter(format!(
            "ratio {ratio} of {clients} clients selects nobody"
        )));
    }
    Ok(count.min(clients))
}

/// Keeps whole non-domination fronts of the objective values, then fills
/// from the overflowing front by descending crowding distance. Row order of
/// the survivors is preserved.
pub fn truncate_dataset(data: &Dataset, cap: usize) -> Result<Dataset> {
    if cap == 0 {
        return Err(Error::InvalidParameter("data cap must be >= 1".into()));
    }
    if data.len() <= cap {
        return Ok(data.clone());
    }
    let mut keep = select_by_fronts(&data.y, cap)?;
    keep.sort_unstable();
    Ok(Dataset {
        x: keep.iter().map(|&i| data.x[i].clone()).collect(),
        y: keep.iter().map(|&i| data.y[i].clone()).collect(),
    })
}

/// One client with its private data, its local model and its own random stream.
#[derive(Debug, Clone)]
pub struct ClientState {
    pub id: usize,
    dataset: Dataset,
    model: RbfnModel,
    rng: ChaCha8Rng,
}

impl ClientState {
    /// Builds a client and trains its first local model.
    pub fn new(id: usize, dataset: Dataset, train: &TrainConfig, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = fit_local(&dataset, train, &mut rng)?;
        Ok(Self {
            id,
            dataset,
            model,
            rng,
        })
    }

    pub fn dataset(&self) -> &Dataset {
        &self.dataset
    }

    pub fn model(&self) -> &RbfnModel {
        &self.model
    }

    /// The only thing a client sends to the server.
    pub fn upload(&self) -> Upload {
        Upload {
            client_id: self.id,
            model: self.model.clone(),
            samples: self.dataset.len(),
        }
    }
}

/// Outcome of dispatching candidates to one client.
#[derive(Debug, Clone, PartialEq)]
pub struct Delivery {
    pub delivered: bool,
    /// Candidates with their true objective values, empty on failure.
    pub evaluated: Vec<(Vec<f64>, Vec<f64>)>,
}

/// Dispatches candidates to a client.
///
/// With probability `1 - p_f` the client evaluates them with the true
/// objectives, appends them (skipping rows already present within the
/// redundancy threshold) and truncates its data to `cap`. The client then
/// retrains its local model whether or not the delivery succeeded.
pub fn deliver(
    candidates: &[Vec<f64>],
    client: &mut ClientState,
    failure_prob: f64,
    problem: &Problem,
    train: &TrainConfig,
    cap: usize,
) -> Result<Delivery> {
    if !(0.0..1.0).contains(&failure_prob) {
        return Err(Error::InvalidParameter(format!(
            "failure probability must be in [0, 1), got {failure_prob}"
        )));
    }
    let delivered = client.rng.gen::<f64>() >= failure_prob;
    let mut evaluated = Vec::new();
    if delivered {
        for x in candidates {
            let f = problem.evaluate(x)?;
            let t2 = REDUNDANCY_THRESHOLD * REDUNDANCY_THRESHOLD;
            if !client.dataset.x.iter().any(|r| squared_distance(r, x) < t2) {
                client.dataset.push(x.clone(), f.clone());
            }
            evaluated.push((x.clone(), f));
        }
        client.dataset = truncate_dataset(&client.dataset, cap)?;
    }
    client.model = fit_local(&client.dataset, train, &mut client.rng)?;
    Ok(Delivery {
        delivered,
        evaluated,
    })
}

// ---------------------------------------------------------------------------
// Server

/// A local model and the size of the dataset it was trained on.
#[derive(Debug, Clone, PartialEq)]
pub struct Upload {
    pub client_id: usize,
    pub model: RbfnModel,
    pub samples: usize,
}

#[derive(Debug, Clone)]
pub struct ServerState {
    global_model: Option<RbfnModel>,
    uploaded: Vec<Upload>,
    /// Every decision vector the server knows to have been evaluated: the
    /// shared initial design plus all dispatched candidates.
    dispatched: Vec<Vec<f64>>,
    rng: ChaCha8Rng,
}

impl ServerState {
    pub fn new(initial_design: Vec<Vec<f64>>, seed: u64) -> Self {
        Self {
            global_model: None,
            uploaded: Vec::new(),
            dispatched: initial_design,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn receive(&mut self, upload: Upload) -> Result<()> {
        if let Some(first) = self.uploaded.first() {
            if first.model.shape() != upload.model.shape() {
                return Err(Error::ShapeMismatch(format!(
                    "client {} uploaded {:?}, expected {:?}",
                    upload.client_id,
                    upload.model.shape(),
                    first.model.shape()
                )));
            }
        }
        self.uploaded.push(upload);
        Ok(())
    }

    pub fn uploaded(&self) -> &[Upload] {
        &self.uploaded
    }

    pub fn global_model(&self) -> Option<&RbfnModel> {
        self.global_model.as_ref()
    }

    /// Sorted averaging of this round's uploads with size-proportional weights.
    pub fn aggregate(&mut self) -> Result<&RbfnModel> {
        let sizes: Vec<usize> = self.uploaded.iter().map(|u| u.samples).collect();
        let weights = aggregation_weights(&sizes)?;
        let pairs: Vec<(RbfnModel, f64)> = self
            .uploaded
            .iter()
            .zip(weights)
            .map(|(u, p)| (u.model.clone(), p))
            .collect();
        Ok(self.global_model.insert(sorted_average(&pairs)?))
    }

    fn clear_round(&mut self) {
        self.uploaded.clear();
    }
}

/// Acquisition used when a round has a single upload: the ensemble variance
/// is undefined, so only the global mean is optimized.
struct GlobalMean<'a>(&'a RbfnModel);

impl Acquisition for GlobalMean<'_> {
    fn dims(&self) -> usize {
        self.0.input_dim()
    }

    fn objectives(&self) -> usize {
        self.0.output_dim()
    }

    fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        self.0.predict_unchecked(x)
    }
}

// ---------------------------------------------------------------------------
// Whole simulation

#[derive(Debug, Clone, PartialEq)]
pub struct FederationConfig {
    pub clients: usize,
    pub participation: f64,
    pub failure_prob: f64,
    pub per_round: usize,
    pub train: TrainConfig,
    /// Maximum rows a client keeps.
    pub data_cap: usize,
    pub alpha: f64,
    pub max_restarts: usize,
    pub moea: MoeaConfig,
}

/// What happened in one communication round.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundState {
    pub round: usize,
    pub participants: Vec<usize>,
    /// Delivery success per participant, aligned with `participants`.
    pub delivery: Vec<bool>,
    pub candidates: Vec<Vec<f64>>,
    /// Unique true evaluations so far.
    pub fes: usize,
    pub moea_runs: usize,
    pub padded: usize,
}

/// Clients, server and the record of every true evaluation.
pub struct Federation {
    problem: Problem,
    config: FederationConfig,
    clients: Vec<ClientState>,
    server: ServerState,
    archive: Vec<(Vec<f64>, Vec<f64>)>,
    round: usize,
}

impl Federation {
    /// Samples the `11d - 1` point design, gives it to every client and trains
    /// the first local models.
    pub fn new(problem: Problem, config: FederationConfig, seed: u64) -> Result<Self> {
        let initial = 11 * problem.dims - 1;
        let mut master = ChaCha8Rng::seed_from_u64(seed);
        let design = latin_hypercube(initial, problem.dims, &mut master)?;
        Self::with_design(problem, config, design, &mut master)
    }

    fn with_design(
        problem: Problem,
        mut config: FederationConfig,
        design: Vec<Vec<f64>>,
        master: &mut ChaCha8Rng,
    ) -> Result<Self> {
        if config.clients == 0 {
            return Err(Error::InvalidParameter("need at least one client".into()));
        }
        participant_count(config.clients, config.participation)?;
        let y = design
            .iter()
            .map(|x| problem.evaluate(x))
            .collect::<Result<Vec<_>>>()?;
        let data = Dataset::new(design.clone(), y.clone())?;
        // One q for every client so uploads always share a shape.
        config.train.centers = config
            .train
            .centers
            .min(center_cap(problem.objectives, problem.dims))
            .min(data.len())
            .max(1);
        let seeds: Vec<u64> = (0..config.clients).map(|_| master.gen()).collect();
        let server_seed: u64 = master.gen();
        let train = config.train;
        let clients = seeds
            .into_par_iter()
            .enumerate()
            .map(|(id, s)| ClientState::new(id, data.clone(), &train, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            problem,
            clients,
            server: ServerState::new(design.clone(), server_seed),
            archive: design.into_iter().zip(y).collect(),
            round: 0,
            config,
        })
    }

    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    pub fn config(&self) -> &FederationConfig {
        &self.config
    }

    pub fn clients(&self) -> &[ClientState] {
        &self.clients
    }

    pub fn server(&self) -> &ServerState {
        &self.server
    }

    /// Unique true evaluations so far.
    pub fn fes(&self) -> usize {
        self.archive.len()
    }

    pub fn archive(&self) -> &[(Vec<f64>, Vec<f64>)] {
        &self.archive
    }

    pub fn archive_objectives(&self) -> Vec<Vec<f64>> {
        self.archive.iter().map(|(_, f)| f.clone()).collect()
    }

    /// One communication round: participants upload, the server aggregates
    /// and searches the acquisition, the new candidates are dispatched to the
    /// participants, who evaluate them and retrain.
    pub fn run_round(&mut self) -> Result<RoundState> {
        self.round += 1;
        let cfg = &self.config;
        let participants =
            select_participants(cfg.clients, cfg.participation, &mut self.server.rng)?;

        self.server.clear_round();
        for &id in &participants {
            self.server.receive(self.clients[id].upload())?;
        }
        let global = self.server.aggregate()?.clone();
        let locals: Vec<RbfnModel> = self
            .server
            .uploaded
            .iter()
            .map(|u| u.model.clone())
            .collect();

        let (candidates, report): (Vec<Vec<f64>>, InfillReport) = if locals.len() >= 2 {
            let af = FederatedLcb::new(global.clone(), locals, cfg.alpha)?;
            select_candidates(
                &af,
                &cfg.moea,
                cfg.per_round,
                cfg.max_restarts,
                &self.server.dispatched,
                &mut self.server.rng,
            )?
        } else {
            let af = GlobalMean(&global);
            select_candidates(
                &af,
                &cfg.moea,
                cfg.per_round,
                cfg.max_restarts,
                &self.server.dispatched,
                &mut self.server.rng,
            )?
        };
        self.server.dispatched.extend(candidates.iter().cloned());

        let problem = self.problem;
        let (p_f, train, cap) = (cfg.failure_prob, cfg.train, cfg.data_cap);
        let mut targets: Vec<&mut ClientState> = self
            .clients
            .iter_mut()
            .filter(|c| participants.binary_search(&c.id).is_ok())
            .collect();
        let outcomes: Vec<Delivery> = targets
            .par_iter_mut()
            .map(|c| deliver(&candidates, c, p_f, &problem, &train, cap))
            .collect::<Result<_>>()?;

        for (x, f) in outcomes.iter().flat_map(|o| &o.evaluated) {
            if !self.archive.iter().any(|(a, _)| a == x) {
                self.archive.push((x.clone(), f.clone()));
            }
        }
        Ok(RoundState {
            round: self.round,
            participants,
            delivery: outcomes.iter().map(|o| o.delivered).collect(),
            candidates,
            fes: self.archive.len(),
            moea_runs: report.moea_runs,
            padded: report.padded,
        })
    }
}
