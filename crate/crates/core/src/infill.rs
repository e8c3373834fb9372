//! Picks the `m` solutions sent to clients for true evaluation.

use rand::Rng;

use crate::acquisition::Acquisition;
use crate::error::{Error, Result};
use crate::metrics::squared_distance;
use crate::moea::MoeaConfig;
use crate::sampling::latin_hypercube;
use crate::surrogate::kmeans;

/// Two solutions closer than this are treated as the same point.
pub const REDUNDANCY_THRESHOLD: f64 = 1e-6;

pub const DEFAULT_MAX_RESTARTS: usize = 5;

/// Greedy scan in input order, dropping any point within `threshold` of one
/// already kept.
pub fn remove_redundant(points: &[Vec<f64>], threshold: f64) -> Vec<Vec<f64>> {
    let mut kept: Vec<Vec<f64>> = Vec::new();
    for p in points {
        if !is_near_any(p, &kept, threshold) {
            kept.push(p.clone());
        }
    }
    kept
}

fn is_near_any(p: &[f64], set: &[Vec<f64>], threshold: f64) -> bool {
    let t2 = threshold * threshold;
    set.iter().any(|q| squared_distance(p, q) < t2)
}

/// How candidates were produced, for logging.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InfillReport {
    pub moea_runs: usize,
    pub survivors: usize,
    /// Candidates replaced or added as random points.
    pub padded: usize,
}

/// Runs the optimizer on `af`, removes redundant solutions (restarting the
/// optimizer while fewer than `m` remain), clusters the survivors into `m`
/// groups and returns the survivor nearest each cluster mean.
///
/// Any candidate within the redundancy threshold of a point in `evaluated`
/// is replaced by a random point, and missing candidates are padded the same way.
pub fn select_candidates<A: Acquisition + ?Sized, R: Rng + ?Sized>(
    af: &A,
    moea: &MoeaConfig,
    m: usize,
    max_restarts: usize,
    evaluated: &[Vec<f64>],
    rng: &mut R,
) -> Result<(Vec<Vec<f64>>, InfillReport)> {
    if m == 0 {
        return Err(Error::InvalidParameter("need m >= 1 candidates".into()));
    }
    let mut report = InfillReport::default();
    let mut survivors: Vec<Vec<f64>> = Vec::new();
    loop {
        let pop = moea.run(af, rng)?;
        report.moea_runs += 1;
        for x in pop.decisions() {
            if !is_near_any(&x, &survivors, REDUNDANCY_THRESHOLD) {
                survivors.push(x);
            }
        }
        if survivors.len() >= m || report.moea_runs > max_restarts {
            break;
        }
    }
    report.survivors = survivors.len();

    let mut chosen = cluster_representatives(&survivors, m, rng)?;
    chosen.retain(|x| !is_near_any(x, evaluated, REDUNDANCY_THRESHOLD));
    while chosen.len() < m {
        let x = latin_hypercube(1, af.dims(), rng)?.remove(0);
        if !is_near_any(&x, evaluated, REDUNDANCY_THRESHOLD)
            && !is_near_any(&x, &chosen, REDUNDANCY_THRESHOLD)
        {
            chosen.push(x);
            report.padded += 1;
        }
    }
    Ok((chosen, report))
}

/// K-means with `min(m, n)` clusters; the member nearest each mean represents it.
pub fn cluster_representatives<R: Rng + ?Sized>(
    points: &[Vec<f64>],
    m: usize,
    rng: &mut R,
) -> Result<Vec<Vec<f64>>> {
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let k = m.min(points.len());
    let (centers, assign) = kmeans(points, k, rng)?;
    let mut out = Vec::with_capacity(k);
    for (c, center) in centers.iter().enumerate() {
        let best = points
            .iter()
            .enumerate()
            .filter(|(i, _)| assign[*i] == c)
            .min_by(|(_, a), (_, b)| {
                squared_distance(a, center).total_cmp(&squared_distance(b, center))
            })
            .map(|(i, _)| i);
        if let Some(i) = best {
            out.push(points[i].clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identical_points_collapse() {
        let pts = vec![vec![0.2, 0.4]; 10];
        assert_eq!(remove_redundant(&pts, REDUNDANCY_THRESHOLD).len(), 1);
    }

    #[test]
    fn points_beyond_threshold_survive() {
        let pts = vec![vec![0.5, 0.5], vec![0.5 + 2e-6, 0.5]];
        assert_eq!(remove_redundant(&pts, REDUNDANCY_THRESHOLD).len(), 2);
    }

    #[test]
    fn exactly_m_distinct_points_are_returned_unchanged() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pts: Vec<Vec<f64>> = (0..5)
            .map(|_| (0..3).map(|_| rng.gen()).collect())
            .collect();
        let mut out = cluster_representatives(&pts, 5, &mut rng).unwrap();
        let mut expected = pts.clone();
        out.sort_by(|a, b| a[0].total_cmp(&b[0]));
        expected.sort_by(|a, b| a[0].total_cmp(&b[0]));
        assert_eq!(out, expected);
    }

    #[test]
    fn single_cluster_picks_point_nearest_centroid() {
        let pts = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.4, 0.1],
            vec![0.0, 1.0],
        ];
        // Centroid (0.35, 0.275).
        let out = cluster_representatives(&pts, 1, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert_eq!(out, vec![vec![0.4, 0.1]]);
    }
}
