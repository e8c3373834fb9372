#![allow(dead_code)]

use std::cmp::Ordering;

use fedmoea::RbfnModel;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_model<R: Rng>(rng: &mut R, q: usize, d: usize, m: usize) -> RbfnModel {
    RbfnModel::new(
        (0..q)
            .map(|_| (0..d).map(|_| rng.gen()).collect())
            .collect(),
        (0..q).map(|_| rng.gen_range(0.2..1.5)).collect(),
        (0..q)
            .map(|_| (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect(),
        (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect(),
    )
    .unwrap()
}

/// Same model with its `(center, spread, weight row)` triples shuffled.
pub fn permute_rows<R: Rng>(model: &RbfnModel, rng: &mut R) -> RbfnModel {
    let mut order: Vec<usize> = (0..model.num_centers()).collect();
    order.shuffle(rng);
    RbfnModel {
        centers: order.iter().map(|&i| model.centers[i].clone()).collect(),
        spreads: order.iter().map(|&i| model.spreads[i]).collect(),
        weights: order.iter().map(|&i| model.weights[i].clone()).collect(),
        biases: model.biases.clone(),
        kernel: model.kernel,
    }
}

/// Random objective vectors. Half the time coordinates are small integers so
/// that ties and duplicates are common.
pub fn random_points<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<Vec<f64>> {
    let discrete = rng.gen_bool(0.5);
    (0..n)
        .map(|_| {
            (0..m)
                .map(|_| {
                    if discrete {
                        rng.gen_range(0..4) as f64
                    } else {
                        rng.gen()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn brute_dominates(a: &[f64], b: &[f64]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

/// Fronts by repeatedly peeling off the points no remaining point dominates.
pub fn brute_fronts(points: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let mut remaining: Vec<usize> = (0..points.len()).collect();
    let mut fronts = Vec::new();
    while !remaining.is_empty() {
        let front: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| {
                !remaining
                    .iter()
                    .any(|&j| brute_dominates(&points[j], &points[i]))
            })
            .collect();
        remaining.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    fronts
}

pub fn brute_rank(points: &[Vec<f64>]) -> Vec<usize> {
    let mut rank = vec![0; points.len()];
    for (r, front) in brute_fronts(points).iter().enumerate() {
        for &i in front {
            rank[i] = r;
        }
    }
    rank
}

pub fn lex(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

/// Non-dominated points, each distinct vector once, in lexicographic order.
pub fn brute_nondominated(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = points
        .iter()
        .filter(|p| !points.iter().any(|q| brute_dominates(q, p)))
        .cloned()
        .collect();
    out.sort_by(|a, b| lex(a, b));
    out.dedup();
    out
}

pub fn brute_igd(solutions: &[Vec<f64>], reference: &[Vec<f64>]) -> f64 {
    let mut total = 0.0;
    for r in reference {
        let mut best = f64::INFINITY;
        for s in solutions {
            let d = r
                .iter()
                .zip(s)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            best = best.min(d);
        }
        total += best;
    }
    total / reference.len() as f64
}

/// Every column hits each of the `n` strata exactly once.
pub fn is_stratified(design: &[Vec<f64>], n: usize, d: usize) -> bool {
    if design.len() != n || design.iter().any(|r| r.len() != d) {
        return false;
    }
    (0..d).all(|j| {
        let mut seen = vec![false; n];
        design.iter().all(|row| {
            let v = row[j];
            if !(0.0..1.0).contains(&v) {
                return false;
            }
            let s = ((v * n as f64).floor() as usize).min(n - 1);
            !std::mem::replace(&mut seen[s], true)
        })
    })
}

/// Central finite-difference gradient of the half squared error of `model`
/// on one sample, with respect to weights (row-major) then biases.
pub fn fd_gradient(model: &RbfnModel, x: &[f64], y: &[f64], h: f64) -> Vec<f64> {
    let loss = |m: &RbfnModel| -> f64 {
        m.predict(x)
            .unwrap()
            .iter()
            .zip(y)
            .map(|(a, b)| 0.5 * (a - b) * (a - b))
            .sum()
    };
    let mut grad = Vec::new();
    for i in 0..model.num_centers() {
        for j in 0..model.output_dim() {
            let mut plus = model.clone();
            let mut minus = model.clone();
            plus.weights[i][j] += h;
            minus.weights[i][j] -= h;
            grad.push((loss(&plus) - loss(&minus)) / (2.0 * h));
        }
    }
    for j in 0..model.output_dim() {
        let mut plus = model.clone();
        let mut minus = model.clone();
        plus.biases[j] += h;
        minus.biases[j] -= h;
        grad.push((loss(&plus) - loss(&minus)) / (2.0 * h));
    }
    grad
}

/// Gradient implied by one SGD step: `(theta - theta') / lr`.
pub fn sgd_gradient(before: &RbfnModel, after: &RbfnModel, lr: f64) -> Vec<f64> {
    let w = before
        .weights
        .iter()
        .flatten()
        .zip(after.weights.iter().flatten())
        .map(|(a, b)| (a - b) / lr);
    let b = before
        .biases
        .iter()
        .zip(&after.biases)
        .map(|(a, b)| (a - b) / lr);
    w.chain(b).collect()
}

pub fn relative_error(a: &[f64], b: &[f64]) -> f64 {
    let diff = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt();
    let scale = a
        .iter()
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(b.iter().map(|x| x * x).sum::<f64>().sqrt());
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}
