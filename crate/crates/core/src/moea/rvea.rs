//! Reference-vector-guided evolutionary algorithm.
//!
//! Selection assigns each individual to the reference vector with the
//! smallest angle (after translating by the ideal point) and keeps, per
//! occupied vector, the individual with the smallest angle-penalized
//! distance. Reference vectors are rescaled to the population's objective
//! ranges every `ceil(fr * generations)` generations.

use rand::Rng;

use super::operators::Variation;
use super::{evaluate, initial_population, Individual, Population};
use crate::acquisition::Acquisition;
use crate::benchmarks::binomial;
use crate::error::{Error, Result};
use crate::sampling::simplex_lattice;

/// Unit-norm reference directions in the non-negative orthant.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceVectorSet {
    initial: Vec<Vec<f64>>,
    vectors: Vec<Vec<f64>>,
    /// Smallest angle from each vector to any other.
    gammas: Vec<f64>,
}

impl ReferenceVectorSet {
    pub fn from_vectors(raw: Vec<Vec<f64>>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Empty("reference vectors"));
        }
        let initial: Vec<Vec<f64>> = raw.into_iter().map(normalize).collect::<Result<_>>()?;
        let gammas = min_angles(&initial);
        Ok(Self {
            vectors: initial.clone(),
            initial,
            gammas,
        })
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn objectives(&self) -> usize {
        self.vectors[0].len()
    }

    /// Rescales the initial vectors by the objective ranges of `objs`.
    pub fn adapt(&mut self, objs: &[Vec<f64>]) {
        if objs.is_empty() {
            return;
        }
        let m = self.objectives();
        let mut lo = vec![f64::INFINITY; m];
        let mut hi = vec![f64::NEG_INFINITY; m];
        for f in objs {
            for k in 0..m {
                lo[k] = lo[k].min(f[k]);
                hi[k] = hi[k].max(f[k]);
            }
        }
        let scale: Vec<f64> = lo
            .iter()
            .zip(&hi)
            .map(|(a, b)| (b - a).max(1e-12))
            .collect();
        self.vectors = self
            .initial
            .iter()
            .map(|v| {
                let scaled: Vec<f64> = v.iter().zip(&scale).map(|(a, s)| a * s).collect();
                normalize(scaled).unwrap_or_else(|_| v.clone())
            })
            .collect();
        self.gammas = min_angles(&self.vectors);
    }
}

fn normalize(v: Vec<f64>) -> Result<Vec<f64>> {
    let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if !(norm > 0.0 && norm.is_finite()) || v.iter().any(|&a| a < 0.0) {
        return Err(Error::InvalidParameter(
            "reference vectors must be non-zero and non-negative".into(),
        ));
    }
    Ok(v.into_iter().map(|a| a / norm).collect())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn min_angles(vs: &[Vec<f64>]) -> Vec<f64> {
    if vs.len() < 2 {
        return vec![1.0; vs.len()];
    }
    vs.iter()
        .enumerate()
        .map(|(i, v)| {
            let best_cos = vs
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, u)| dot(v, u))
                .fold(f64::NEG_INFINITY, f64::max);
            best_cos.clamp(-1.0, 1.0).acos().max(1e-12)
        })
        .collect()
}

/// Two-layer simplex-lattice directions: `h_outer` divisions on the simplex,
/// plus (when `h_inner > 0`) an inner layer shrunk halfway to the centroid.
pub fn generate_reference_vectors(
    objectives: usize,
    h_outer: usize,
    h_inner: usize,
) -> Result<ReferenceVectorSet> {
    if objectives < 2 || h_outer == 0 {
        return Err(Error::InvalidParameter(format!(
            "cannot build reference vectors for M={objectives}, H1={h_outer}"
        )));
    }
    let mut points = simplex_lattice(objectives, h_outer);
    if h_inner > 0 {
        let shift = 1.0 / (2.0 * objectives as f64);
        points.extend(
            simplex_lattice(objectives, h_inner)
                .into_iter()
                .map(|p| p.into_iter().map(|v| v / 2.0 + shift).collect()),
        );
    }
    let expected = points.len();
    let mut unit: Vec<Vec<f64>> = Vec::with_capacity(expected);
    for p in points {
        let u = normalize(p)?;
        if !unit
            .iter()
            .any(|w| w.iter().zip(&u).all(|(a, b)| (a - b).abs() < 1e-12))
        {
            unit.push(u);
        }
    }
    if unit.len() != expected {
        return Err(Error::InvalidParameter(format!(
            "divisions ({h_outer}, {h_inner}) give {} distinct vectors instead of {expected}",
            unit.len()
        )));
    }
    ReferenceVectorSet::from_vectors(unit)
}

/// Number of reference vectors used for `m` objectives.
pub fn default_reference_count(m: usize) -> usize {
    match m {
        2 => 100,
        3 => 105,
        4 => 120,
        5 => 126,
        6..=10 => 275,
        _ => 420,
    }
}

/// Largest two-layer lattice with at most `target` vectors.
pub fn divisions_for(m: usize, target: usize) -> (usize, usize) {
    let mut h1 = 1;
    while binomial(h1 + m, m - 1) <= target {
        h1 += 1;
    }
    let mut h2 = 0;
    if h1 < m {
        while binomial(h1 + m - 1, m - 1) + binomial(h2 + m, m - 1) <= target {
            h2 += 1;
        }
    }
    (h1, h2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RveaConfig {
    pub refvecs: ReferenceVectorSet,
    pub generations: usize,
    /// APD penalty exponent.
    pub alpha: f64,
    /// Reference vector adaptation frequency, as a fraction of `generations`.
    pub fr: f64,
    pub variation: Variation,
}

impl RveaConfig {
    pub fn new(objectives: usize, dims: usize) -> Result<Self> {
        let (h1, h2) = divisions_for(objectives, default_reference_count(objectives));
        Ok(Self {
            refvecs: generate_reference_vectors(objectives, h1, h2)?,
            generations: 50,
            alpha: 2.0,
            fr: 0.1,
            variation: Variation::new(dims),
        })
    }
}

/// Angle-penalized distance selection; returns one index per occupied
/// reference vector, in reference-vector order.
///
/// `progress` is `t / t_max` in `[0, 1]`.
pub fn apd_select(
    objs: &[Vec<f64>],
    refvecs: &ReferenceVectorSet,
    progress: f64,
    alpha: f64,
) -> Vec<usize> {
    if objs.is_empty() {
        return Vec::new();
    }
    let m = objs[0].len();
    let mut ideal = vec![f64::INFINITY; m];
    for f in objs {
        for k in 0..m {
            ideal[k] = ideal[k].min(f[k]);
        }
    }
    let nv = refvecs.len();
    let mut best: Vec<Option<(f64, usize)>> = vec![None; nv];
    for (i, f) in objs.iter().enumerate() {
        let t: Vec<f64> = f.iter().zip(&ideal).map(|(a, z)| a - z).collect();
        let norm = t.iter().map(|a| a * a).sum::<f64>().sqrt();
        let (j, cos) = if norm > 0.0 {
            refvecs
                .vectors
                .iter()
                .enumerate()
                .map(|(j, v)| (j, dot(&t, v) / norm))
                .fold((0, f64::NEG_INFINITY), |acc, cur| {
                    if cur.1 > acc.1 {
                        cur
                    } else {
                        acc
                    }
                })
        } else {
            (0, 1.0)
        };
        let theta = cos.clamp(-1.0, 1.0).acos();
        let penalty = m as f64 * progress.powf(alpha) * theta / refvecs.gammas[j];
        let apd = (1.0 + penalty) * norm;
        match best[j] {
            Some((b, _)) if b <= apd => {}
            _ => best[j] = Some((apd, i)),
        }
    }
    best.into_iter().flatten().map(|(_, i)| i).collect()
}

/// RVEA on the acquisition, population size equal to the number of reference vectors.
pub fn rvea_optimize<A: Acquisition + ?Sized, R: Rng + ?Sized>(
    af: &A,
    cfg: &RveaConfig,
    rng: &mut R,
) -> Result<Population> {
    if cfg.refvecs.is_empty() {
        return Err(Error::Empty("reference vectors"));
    }
    if cfg.refvecs.objectives() != af.objectives() {
        return Err(Error::DimensionMismatch {
            expected: af.objectives(),
            got: cfg.refvecs.objectives(),
        });
    }
    let n = cfg.refvecs.len();
    let mut refvecs = cfg.refvecs.clone();
    let mut pop = initial_population(af, n, rng)?;
    let period = ((cfg.fr * cfg.generations as f64).ceil() as usize).max(1);
    for gen in 1..=cfg.generations {
        let mut offspring: Vec<Individual> = Vec::with_capacity(n + 1);
        while offspring.len() < n {
            let a = rng.gen_range(0..pop.len());
            let b = rng.gen_range(0..pop.len());
            let (c1, c2) = cfg.variation.offspring(&pop[a].x, &pop[b].x, rng);
            offspring.push(evaluate(af, c1));
            offspring.push(evaluate(af, c2));
        }
        offspring.truncate(n);
        pop.extend(offspring);
        let objs: Vec<Vec<f64>> = pop.iter().map(|i| i.f.clone()).collect();
        let progress = gen as f64 / cfg.generations as f64;
        let keep = apd_select(&objs, &refvecs, progress, cfg.alpha);
        let mut slots: Vec<Option<Individual>> = pop.into_iter().map(Some).collect();
        pop = keep
            .into_iter()
            .map(|i| slots[i].take().expect("unique index"))
            .collect();
        if gen % period == 0 {
            let objs: Vec<Vec<f64>> = pop.iter().map(|i| i.f.clone()).collect();
            refvecs.adapt(&objs);
        }
    }
    Ok(Population {
        individuals: pop,
        generation: cfg.generations,
    })
}
