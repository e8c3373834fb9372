//! Radial basis function network surrogate.
//!
//! Centers come from K-means, spreads from the largest distance between
//! centers, and only the output weights and biases are trained, by plain
//! per-sample SGD on the half squared error.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::metrics::{distance, squared_distance};

const KMEANS_MAX_ITERS: usize = 100;
const INIT_WEIGHT_RANGE: f64 = 0.1;

/// Shape of the Gaussian exponent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    /// `exp(-||x - c||^2 / (2 delta^2))`.
    #[default]
    Squared,
    /// `exp(-||x - c|| / (2 delta^2))`, the unsquared norm.
    Printed,
}

impl std::str::FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "squared" => Ok(Kernel::Squared),
            "printed" => Ok(Kernel::Printed),
            other => Err(Error::InvalidParameter(format!("unknown kernel '{other}'"))),
        }
    }
}

/// Training data held by one client.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub x: Vec<Vec<f64>>,
    pub y: Vec<Vec<f64>>,
}

impl Dataset {
    pub fn new(x: Vec<Vec<f64>>, y: Vec<Vec<f64>>) -> Result<Self> {
        check_dim(x.len(), y.len())?;
        Ok(Self { x, y })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn push(&mut self, x: Vec<f64>, y: Vec<f64>) {
        self.x.push(x);
        self.y.push(y);
    }
}

/// `[w, delta, c, b]`: weights `q x M`, spreads `q`, centers `q x d`, biases `M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RbfnModel {
    pub centers: Vec<Vec<f64>>,
    pub spreads: Vec<f64>,
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<f64>,
    #[serde(default, skip_serializing_if = "is_default_kernel")]
    pub kernel: Kernel,
}

fn is_default_kernel(k: &Kernel) -> bool {
    *k == Kernel::Squared
}

impl RbfnModel {
    /// Builds a model after checking that all parts agree on `q`, `d` and `M`.
    pub fn new(
        centers: Vec<Vec<f64>>,
        spreads: Vec<f64>,
        weights: Vec<Vec<f64>>,
        biases: Vec<f64>,
    ) -> Result<Self> {
        let model = Self {
            centers,
            spreads,
            weights,
            biases,
            kernel: Kernel::Squared,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn with_kernel(mut self, kernel: Kernel) -> Self {
        self.kernel = kernel;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let q = self.centers.len();
        if q == 0 {
            return Err(Error::Empty("RBFN centers"));
        }
        let d = self.centers[0].len();
        let m = self.biases.len();
        if self.centers.iter().any(|c| c.len() != d) {
            return Err(Error::ShapeMismatch("ragged centers".into()));
        }
        if self.spreads.len() != q || self.weights.len() != q {
            return Err(Error::ShapeMismatch(format!(
                "{q} centers but {} spreads and {} weight rows",
                self.spreads.len(),
                self.weights.len()
            )));
        }
        if self.weights.iter().any(|w| w.len() != m) {
            return Err(Error::ShapeMismatch(
                "weight rows must have M entries".into(),
            ));
        }
        if self.spreads.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
            return Err(Error::InvalidParameter(
                "spreads must be positive and finite".into(),
            ));
        }
        let finite = self.centers.iter().flatten().all(|v| v.is_finite())
            && self.weights.iter().flatten().all(|v| v.is_finite())
            && self.biases.iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParameter(
                "model has non-finite entries".into(),
            ));
        }
        Ok(())
    }

    pub fn num_centers(&self) -> usize {
        self.centers.len()
    }

    pub fn input_dim(&self) -> usize {
        self.centers[0].len()
    }

    pub fn output_dim(&self) -> usize {
        self.biases.len()
    }

    /// `(q, d, M)`.
    pub fn shape(&self) -> (usize, usize, usize) {
        (self.num_centers(), self.input_dim(), self.output_dim())
    }

    /// Hidden-layer activations `Phi(x)`.
    pub fn activations(&self, x: &[f64]) -> Vec<f64> {
        self.centers
            .iter()
            .zip(&self.spreads)
            .map(|(c, &s)| {
                let r2 = squared_distance(x, c);
                let r = match self.kernel {
                    Kernel::Squared => r2,
                    Kernel::Printed => r2.sqrt(),
                };
                (-r / (2.0 * s * s)).exp()
            })
            .collect()
    }

    pub fn predict(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.input_dim(), x.len())?;
        Ok(self.predict_unchecked(x))
    }

    pub(crate) fn predict_unchecked(&self, x: &[f64]) -> Vec<f64> {
        let phi = self.activations(x);
        self.output(&phi)
    }

    fn output(&self, phi: &[f64]) -> Vec<f64> {
        let mut y = self.biases.clone();
        for (p, w) in phi.iter().zip(&self.weights) {
            for (yj, wj) in y.iter_mut().zip(w) {
                *yj += p * wj;
            }
        }
        y
    }

    /// Half squared error `0.5 * sum_j (y_hat_j - y_j)^2` summed over the data.
    pub fn loss(&self, data: &Dataset) -> f64 {
        data.x
            .iter()
            .zip(&data.y)
            .map(|(x, y)| {
                let yh = self.predict_unchecked(x);
                0.5 * yh.iter().zip(y).map(|(a, b)| (a - b).powi(2)).sum::<f64>()
            })
            .sum()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let model: Self = serde_json::from_str(s)?;
        model.validate()?;
        Ok(model)
    }
}

/// Center cap `floor(sqrt(M + d)) + 3`.
pub fn center_cap(objectives: usize, dims: usize) -> usize {
    ((objectives + dims) as f64).sqrt().floor() as usize + 3
}

/// Lloyd's K-means started from `q` distinct data rows chosen at random.
///
/// Runs until assignments stop changing or 100 iterations. A cluster that
/// empties is moved onto the point farthest from its current center.
pub fn kmeans_centers<R: Rng + ?Sized>(
    x: &[Vec<f64>],
    q: usize,
    rng: &mut R,
) -> Result<Vec<Vec<f64>>> {
    kmeans(x, q, rng).map(|(centers, _)| centers)
}

pub(crate) fn kmeans<R: Rng + ?Sized>(
    x: &[Vec<f64>],
    q: usize,
    rng: &mut R,
) -> Result<(Vec<Vec<f64>>, Vec<usize>)> {
    if q == 0 {
        return Err(Error::InvalidParameter("K-means needs q >= 1".into()));
    }
    if x.len() < q {
        return Err(Error::InvalidParameter(format!(
            "K-means needs at least q = {q} points, got {}",
            x.len()
        )));
    }
    let d = x[0].len();
    let mut centers: Vec<Vec<f64>> = rand::seq::index::sample(rng, x.len(), q)
        .into_iter()
        .map(|i| x[i].clone())
        .collect();
    let mut assign = vec![usize::MAX; x.len()];
    for _ in 0..KMEANS_MAX_ITERS {
        let mut changed = false;
        for (i, p) in x.iter().enumerate() {
            let best = nearest(p, &centers);
            if assign[i] != best {
                assign[i] = best;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        let mut sums = vec![vec![0.0; d]; q];
        let mut counts = vec![0usize; q];
        for (p, &a) in x.iter().zip(&assign) {
            counts[a] += 1;
            for (s, v) in sums[a].iter_mut().zip(p) {
                *s += v;
            }
        }
        for k in 0..q {
            if counts[k] > 0 {
                centers[k] = sums[k].iter().map(|s| s / counts[k] as f64).collect();
            }
        }
        if counts.contains(&0) {
            let mut dist: Vec<f64> = x
                .iter()
                .zip(&assign)
                .map(|(p, &a)| squared_distance(p, &centers[a]))
                .collect();
            for k in 0..q {
                if counts[k] == 0 {
                    let far = (0..x.len())
                        .max_by(|&a, &b| dist[a].total_cmp(&dist[b]))
                        .expect("non-empty data");
                    centers[k] = x[far].clone();
                    // Each empty cluster takes a different point.
                    dist[far] = f64::NEG_INFINITY;
                    assign[far] = usize::MAX;
                }
            }
        }
    }
    // Final assignment consistent with the returned centers.
    for (i, p) in x.iter().enumerate() {
        assign[i] = nearest(p, &centers);
    }
    Ok((centers, assign))
}

pub(crate) fn nearest(p: &[f64], centers: &[Vec<f64>]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (k, c) in centers.iter().enumerate() {
        let dist = squared_distance(p, c);
        if dist < best_d {
            best_d = dist;
            best = k;
        }
    }
    best
}

/// `d_max / sqrt(2q)` for every center, or 1 when there is a single center
/// or all centers coincide.
pub fn set_spreads(centers: &[Vec<f64>]) -> Vec<f64> {
    let q = centers.len();
    let mut d_max: f64 = 0.0;
    for i in 0..q {
        for j in i + 1..q {
            d_max = d_max.max(distance(&centers[i], &centers[j]));
        }
    }
    let spread = if q <= 1 || d_max == 0.0 {
        1.0
    } else {
        d_max / (2.0 * q as f64).sqrt()
    };
    vec![spread; q]
}

/// Batch-size-one SGD on the weights and biases; centers and spreads stay fixed.
pub fn sgd_train<R: Rng + ?Sized>(
    model: &RbfnModel,
    data: &Dataset,
    epochs: usize,
    lr: f64,
    rng: &mut R,
) -> Result<RbfnModel> {
    if data.is_empty() {
        return Err(Error::Empty("training dataset"));
    }
    if !(lr >= 0.0 && lr.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "learning rate must be >= 0, got {lr}"
        )));
    }
    for (x, y) in data.x.iter().zip(&data.y) {
        check_dim(model.input_dim(), x.len())?;
        check_dim(model.output_dim(), y.len())?;
    }
    let mut out = model.clone();
    // Activations do not depend on the trained parameters.
    let phis: Vec<Vec<f64>> = data.x.iter().map(|x| model.activations(x)).collect();
    let mut order: Vec<usize> = (0..data.len()).collect();
    for _ in 0..epochs {
        order.shuffle(rng);
        for &i in &order {
            sgd_step(&mut out, &phis[i], &data.y[i], lr);
        }
    }
    Ok(out)
}

/// One update `w -= lr * Phi^T (y_hat - y)`, `b -= lr * (y_hat - y)`.
pub(crate) fn sgd_step(model: &mut RbfnModel, phi: &[f64], y: &[f64], lr: f64) {
    let residual: Vec<f64> = model
        .output(phi)
        .iter()
        .zip(y)
        .map(|(a, b)| a - b)
        .collect();
    for (p, w) in phi.iter().zip(model.weights.iter_mut()) {
        for (wj, r) in w.iter_mut().zip(&residual) {
            *wj -= lr * p * r;
        }
    }
    for (bj, r) in model.biases.iter_mut().zip(&residual) {
        *bj -= lr * r;
    }
}

/// Hyperparameters of local training.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub centers: usize,
    pub epochs: usize,
    pub lr: f64,
    pub batch: usize,
    pub kernel: Kernel,
}

impl TrainConfig {
    pub fn new(centers: usize) -> Self {
        Self {
            centers,
            epochs: 20,
            lr: 0.06,
            batch: 1,
            kernel: Kernel::Squared,
        }
    }
}

/// K-means centers, max-distance spreads, random weights, mean biases, then SGD.
pub fn fit_local<R: Rng + ?Sized>(
    data: &Dataset,
    cfg: &TrainConfig,
    rng: &mut R,
) -> Result<RbfnModel> {
    if data.is_empty() {
        return Err(Error::Empty("training dataset"));
    }
    if cfg.batch != 1 {
        return Err(Error::InvalidParameter(format!(
            "only batch size 1 is supported, got {}",
            cfg.batch
        )));
    }
    let q = cfg.centers.min(data.len()).max(1);
    let centers = kmeans_centers(&data.x, q, rng)?;
    let spreads = set_spreads(&centers);
    let m = data.y[0].len();
    let weights: Vec<Vec<f64>> = (0..q)
        .map(|_| {
            (0..m)
                .map(|_| rng.gen_range(-INIT_WEIGHT_RANGE..INIT_WEIGHT_RANGE))
                .collect()
        })
        .collect();
    let n = data.len() as f64;
    let biases: Vec<f64> = (0..m)
        .map(|j| data.y.iter().map(|y| y[j]).sum::<f64>() / n)
        .collect();
    let init = RbfnModel {
        centers,
        spreads,
        weights,
        biases,
        kernel: cfg.kernel,
    };
    sgd_train(&init, data, cfg.epochs, cfg.lr, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn random_model(r: &mut ChaCha8Rng, q: usize, d: usize, m: usize) -> RbfnModel {
        RbfnModel::new(
            (0..q).map(|_| (0..d).map(|_| r.gen()).collect()).collect(),
            (0..q).map(|_| r.gen_range(0.3..1.5)).collect(),
            (0..q)
                .map(|_| (0..m).map(|_| r.gen_range(-1.0..1.0)).collect())
                .collect(),
            (0..m).map(|_| r.gen_range(-1.0..1.0)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn kernel_peak_at_center() {
        let m = RbfnModel::new(
            vec![vec![0.0, 0.0]],
            vec![1.0],
            vec![vec![1.0, 1.0, 1.0]],
            vec![0.0; 3],
        )
        .unwrap();
        assert_eq!(m.predict(&[0.0, 0.0]).unwrap(), vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn far_away_prediction_is_bias() {
        let m = random_model(&mut rng(1), 4, 3, 2);
        let y = m.predict(&[1e3, 1e3, 1e3]).unwrap();
        assert_eq!(y, m.biases);
    }

    #[test]
    fn two_center_forward_pass_by_hand() {
        let m = RbfnModel::new(
            vec![vec![0.0, 0.0], vec![1.0, 1.0]],
            vec![0.5, 2.0],
            vec![vec![2.0], vec![-1.0]],
            vec![0.25],
        )
        .unwrap();
        let x = [0.5, 0.0];
        // ||x - c1||^2 = 0.25, ||x - c2||^2 = 1.25
        let phi1 = (-0.25_f64 / (2.0 * 0.25)).exp();
        let phi2 = (-1.25_f64 / (2.0 * 4.0)).exp();
        let expected = phi1 * 2.0 - phi2 + 0.25;
        assert!((m.predict(&x).unwrap()[0] - expected).abs() < 1e-15);

        let printed = m.clone().with_kernel(Kernel::Printed);
        let phi1 = (-0.5_f64 / (2.0 * 0.25)).exp();
        let phi2 = (-1.25_f64.sqrt() / (2.0 * 4.0)).exp();
        assert!((printed.predict(&x).unwrap()[0] - (2.0 * phi1 - phi2 + 0.25)).abs() < 1e-15);
    }

    #[test]
    fn predict_rejects_wrong_dimension() {
        let m = random_model(&mut rng(2), 2, 3, 2);
        assert!(m.predict(&[0.1, 0.2]).is_err());
    }

    #[test]
    fn kmeans_two_pairs() {
        let x = vec![
            vec![0.0, 0.0],
            vec![0.0, 0.1],
            vec![5.0, 5.0],
            vec![5.0, 5.1],
        ];
        let mut c = kmeans_centers(&x, 2, &mut rng(3)).unwrap();
        c.sort_by(|a, b| a[0].total_cmp(&b[0]));
        assert!((c[0][0]).abs() < 1e-12 && (c[0][1] - 0.05).abs() < 1e-12);
        assert!((c[1][0] - 5.0).abs() < 1e-12 && (c[1][1] - 5.05).abs() < 1e-12);
    }

    #[test]
    fn kmeans_with_q_equal_n_returns_points() {
        let mut r = rng(4);
        let x: Vec<Vec<f64>> = (0..7).map(|_| (0..3).map(|_| r.gen()).collect()).collect();
        let mut c = kmeans_centers(&x, 7, &mut r).unwrap();
        let mut sorted = x.clone();
        c.sort_by(|a, b| a[0].total_cmp(&b[0]));
        sorted.sort_by(|a, b| a[0].total_cmp(&b[0]));
        assert_eq!(c, sorted);
    }

    #[test]
    fn kmeans_beats_random_centers() {
        let mut r = rng(5);
        let x: Vec<Vec<f64>> = (0..50)
            .map(|_| (0..10).map(|_| r.gen()).collect())
            .collect();
        let wcss = |c: &[Vec<f64>]| -> f64 {
            x.iter()
                .map(|p| {
                    c.iter()
                        .map(|cc| squared_distance(p, cc))
                        .fold(f64::INFINITY, f64::min)
                })
                .sum()
        };
        let fitted = wcss(&kmeans_centers(&x, 8, &mut r).unwrap());
        for _ in 0..10 {
            let random: Vec<Vec<f64>> = rand::seq::index::sample(&mut r, 50, 8)
                .into_iter()
                .map(|i| x[i].clone())
                .collect();
            assert!(fitted <= wcss(&random));
        }
    }

    #[test]
    fn kmeans_needs_enough_points() {
        assert!(kmeans_centers(&[vec![0.0]], 2, &mut rng(0)).is_err());
    }

    #[test]
    fn spreads() {
        assert_eq!(set_spreads(&[vec![0.3, 0.3]]), vec![1.0]);
        assert_eq!(
            set_spreads(&[vec![0.0, 0.0], vec![2.0, 0.0]]),
            vec![1.0, 1.0]
        );
        assert_eq!(set_spreads(&[vec![0.5], vec![0.5]]), vec![1.0, 1.0]);

        let mut r = rng(6);
        let c: Vec<Vec<f64>> = (0..5).map(|_| (0..4).map(|_| r.gen()).collect()).collect();
        let mut dmax: f64 = 0.0;
        for a in &c {
            for b in &c {
                let d2: f64 = a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum();
                dmax = dmax.max(d2.sqrt());
            }
        }
        for s in set_spreads(&c) {
            assert!((s - dmax / 10f64.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_residual_leaves_model_unchanged() {
        let mut r = rng(7);
        let m = random_model(&mut r, 3, 2, 2);
        let x: Vec<Vec<f64>> = (0..10).map(|_| (0..2).map(|_| r.gen()).collect()).collect();
        let y = x.iter().map(|p| m.predict(p).unwrap()).collect();
        let data = Dataset::new(x, y).unwrap();
        let trained = sgd_train(&m, &data, 5, 0.06, &mut r).unwrap();
        for (a, b) in trained
            .weights
            .iter()
            .flatten()
            .zip(m.weights.iter().flatten())
        {
            assert!((a - b).abs() < 1e-12);
        }
        for (a, b) in trained.biases.iter().zip(&m.biases) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_epochs_and_zero_lr_are_identity() {
        let mut r = rng(8);
        let m = random_model(&mut r, 3, 2, 2);
        let data = Dataset::new(vec![vec![0.2, 0.7]], vec![vec![3.0, -1.0]]).unwrap();
        assert_eq!(sgd_train(&m, &data, 0, 0.06, &mut r).unwrap(), m);
        assert_eq!(sgd_train(&m, &data, 10, 0.0, &mut r).unwrap(), m);
    }

    #[test]
    fn sgd_errors() {
        let mut r = rng(9);
        let m = random_model(&mut r, 2, 2, 1);
        assert!(sgd_train(&m, &Dataset::default(), 1, 0.1, &mut r).is_err());
        let data = Dataset::new(vec![vec![0.2, 0.7]], vec![vec![3.0]]).unwrap();
        assert!(sgd_train(&m, &data, 1, -0.1, &mut r).is_err());
    }

    #[test]
    fn training_does_not_mutate_dataset() {
        let mut r = rng(10);
        let x: Vec<Vec<f64>> = (0..12).map(|_| (0..3).map(|_| r.gen()).collect()).collect();
        let y: Vec<Vec<f64>> = x.iter().map(|p| vec![p[0] + p[1], p[2]]).collect();
        let data = Dataset::new(x, y).unwrap();
        let copy = data.clone();
        fit_local(&data, &TrainConfig::new(4), &mut r).unwrap();
        assert_eq!(data, copy);
    }

    #[test]
    fn single_sample_fit() {
        let data = Dataset::new(vec![vec![0.4, 0.6]], vec![vec![2.0, -3.0]]).unwrap();
        let mut cfg = TrainConfig::new(6);
        cfg.epochs = 200;
        let m = fit_local(&data, &cfg, &mut rng(11)).unwrap();
        assert_eq!(m.num_centers(), 1);
        assert_eq!(m.centers[0], vec![0.4, 0.6]);
        let y = m.predict(&[0.4, 0.6]).unwrap();
        assert!((y[0] - 2.0).abs() < 1e-6 && (y[1] + 3.0).abs() < 1e-6);
    }

    #[test]
    fn training_reduces_error_on_linear_target() {
        let mut r = rng(12);
        let x: Vec<Vec<f64>> = (0..30).map(|_| (0..4).map(|_| r.gen()).collect()).collect();
        let y: Vec<Vec<f64>> = x.iter().map(|p| vec![1.0 + 2.0 * p[0] - p[3]]).collect();
        let data = Dataset::new(x, y).unwrap();
        let mut cfg = TrainConfig::new(8);
        cfg.epochs = 0;
        let before = fit_local(&data, &cfg, &mut rng(13)).unwrap().loss(&data);
        cfg.epochs = 200;
        let after = fit_local(&data, &cfg, &mut rng(13)).unwrap().loss(&data);
        assert!(after < before, "{after} >= {before}");
    }

    #[test]
    fn several_empty_clusters_in_one_pass() {
        // Duplicated rows make several initial centers coincide, so all but
        // one of them lose every point on the first pass.
        let mut x = vec![vec![0.0, 0.0]; 12];
        x.extend([vec![1.0, 1.0], vec![2.0, 2.0], vec![3.0, 3.0]]);
        for seed in 0..50 {
            let (centers, assign) = kmeans(&x, 4, &mut rng(seed)).unwrap();
            assert_eq!(centers.len(), 4);
            assert!(assign.iter().all(|&a| a < 4));
        }
    }

    #[test]
    fn center_cap_uses_floor() {
        assert_eq!(center_cap(3, 10), 6);
        assert_eq!(center_cap(3, 80), 12);
        assert_eq!(center_cap(20, 30), 10);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let m = random_model(&mut rng(14), 3, 2, 2);
        let back = RbfnModel::from_json(&m.to_json().unwrap()).unwrap();
        assert_eq!(back, m);
        let bad = r#"{"centers":[[0.0]],"spreads":[0.0],"weights":[[1.0]],"biases":[0.0]}"#;
        assert!(RbfnModel::from_json(bad).is_err());
        let ragged =
            r#"{"centers":[[0.0],[1.0]],"spreads":[1.0],"weights":[[1.0]],"biases":[0.0]}"#;
        assert!(RbfnModel::from_json(ragged).is_err());
    }
}
