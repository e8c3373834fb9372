//! DTLZ test problems and samplers of their true Pareto fronts.
//!
//! All instances use the box `[0, 1]^d` and `k = d - M + 1` distance
//! variables. The first `M - 1` variables are position variables.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::metrics::nondominated_filter;
use crate::sampling::simplex_lattice;

/// Bias exponent applied to the position variables of DTLZ4.
pub const DTLZ4_ALPHA: f64 = 100.0;

/// Default size of the reference set used for IGD.
pub const DEFAULT_REFERENCE_SIZE: usize = 10_000;

/// Largest full grid evaluated when sampling the DTLZ7 front.
const DTLZ7_MAX_GRID: usize = 200_000;

/// Disjoint intervals of each DTLZ7 position variable whose image is
/// non-dominated.
const DTLZ7_INTERVALS: [(f64, f64); 2] = [(0.0, 0.251_412), (0.631_627, 0.859_401)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Dtlz1,
    Dtlz2,
    Dtlz3,
    Dtlz4,
    Dtlz5,
    Dtlz6,
    Dtlz7,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Dtlz1,
        Family::Dtlz2,
        Family::Dtlz3,
        Family::Dtlz4,
        Family::Dtlz5,
        Family::Dtlz6,
        Family::Dtlz7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Dtlz1 => "dtlz1",
            Family::Dtlz2 => "dtlz2",
            Family::Dtlz3 => "dtlz3",
            Family::Dtlz4 => "dtlz4",
            Family::Dtlz5 => "dtlz5",
            Family::Dtlz6 => "dtlz6",
            Family::Dtlz7 => "dtlz7",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown problem '{s}'")))
    }
}

/// A DTLZ instance with `objectives` objectives and `dims` decision variables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Problem {
    pub family: Family,
    pub objectives: usize,
    pub dims: usize,
}

impl Problem {
    pub fn new(family: Family, objectives: usize, dims: usize) -> Result<Self> {
        if objectives < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 objectives, got {objectives}"
            )));
        }
        if dims < objectives {
            return Err(Error::InvalidParameter(format!(
                "decision dimension {dims} must be >= objective count {objectives}"
            )));
        }
        Ok(Self {
            family,
            objectives,
            dims,
        })
    }

    /// Number of distance variables, `d - M + 1`.
    pub fn distance_vars(&self) -> usize {
        self.dims - self.objectives + 1
    }

    /// Value of every distance variable that minimizes `g`.
    pub fn optimal_distance_value(&self) -> f64 {
        match self.family {
            Family::Dtlz6 | Family::Dtlz7 => 0.0,
            _ => 0.5,
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dims, x.len())?;
        for (index, &value) in x.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::OutOfBounds { index, value });
            }
        }
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &[f64]) -> Vec<f64> {
        let m = self.objectives;
        let (pos, dist) = x.split_at(m - 1);
        match self.family {
            Family::Dtlz1 => linear_front(pos, rastrigin_g(dist)),
            Family::Dtlz2 => spherical_front(&half_pi_angles(pos), sphere_g(dist)),
            Family::Dtlz3 => spherical_front(&half_pi_angles(pos), rastrigin_g(dist)),
            Family::Dtlz4 => {
                let biased: Vec<f64> = pos.iter().map(|v| v.powf(DTLZ4_ALPHA)).collect();
                spherical_front(&half_pi_angles(&biased), sphere_g(dist))
            }
            Family::Dtlz5 => {
                let g = sphere_g(dist);
                spherical_front(&degenerate_angles(pos, g), g)
            }
            Family::Dtlz6 => {
                let g: f64 = dist.iter().map(|v| v.powf(0.1)).sum();
                spherical_front(&degenerate_angles(pos, g), g)
            }
            Family::Dtlz7 => {
                let g = 1.0 + 9.0 / dist.len() as f64 * dist.iter().sum::<f64>();
                disconnected_front(pos, g)
            }
        }
    }

    /// Samples up to `n` points of the true Pareto front.
    ///
    /// DTLZ1-4 use a simplex lattice (the largest one with at most `n`
    /// points), DTLZ5/6 an evenly spaced parameterization of the degenerate
    /// arc, DTLZ7 a grid over the position variables restricted to the
    /// non-dominated intervals and filtered for dominance.
    pub fn sample_pareto_front(&self, n: usize) -> Result<Vec<Vec<f64>>> {
        let m = self.objectives;
        if n < m {
            return Err(Error::InvalidParameter(format!(
                "need at least {m} reference points, got {n}"
            )));
        }
        let points = match self.family {
            Family::Dtlz1 => lattice_for(m, n)
                .into_iter()
                .map(|p| p.into_iter().map(|v| 0.5 * v).collect())
                .collect(),
            Family::Dtlz2 | Family::Dtlz3 | Family::Dtlz4 => lattice_for(m, n)
                .into_iter()
                .map(|p| {
                    let norm = p.iter().map(|v| v * v).sum::<f64>().sqrt();
                    p.into_iter().map(|v| v / norm).collect()
                })
                .collect(),
            Family::Dtlz5 | Family::Dtlz6 => (0..n)
                .map(|i| {
                    let t = i as f64 / (n - 1) as f64;
                    let mut theta = vec![FRAC_PI_4; m - 1];
                    theta[0] = t * FRAC_PI_2;
                    spherical_front(&theta, 0.0)
                })
                .collect(),
            Family::Dtlz7 => self.dtlz7_front(n),
        };
        Ok(points)
    }

    fn dtlz7_front(&self, n: usize) -> Vec<Vec<f64>> {
        let vars = self.objectives - 1;
        let per_var = (n as f64).powf(1.0 / vars as f64).ceil().max(2.0) as usize;
        let total: f64 = DTLZ7_INTERVALS.iter().map(|(a, b)| b - a).sum();
        let map = |u: f64| -> f64 {
            // u in [0,1] spread over the union of intervals, by length.
            let (a0, b0) = DTLZ7_INTERVALS[0];
            let (a1, b1) = DTLZ7_INTERVALS[1];
            let split = (b0 - a0) / total;
            if u <= split {
                a0 + u / split * (b0 - a0)
            } else {
                a1 + (u - split) / (1.0 - split) * (b1 - a1)
            }
        };
        let grid_size = per_var.checked_pow(vars as u32).unwrap_or(usize::MAX);
        let positions: Vec<Vec<f64>> = if grid_size <= DTLZ7_MAX_GRID {
            let axis: Vec<f64> = (0..per_var)
                .map(|i| map(i as f64 / (per_var - 1) as f64))
                .collect();
            let mut out = Vec::with_capacity(grid_size);
            let mut idx = vec![0usize; vars];
            loop {
                out.push(idx.iter().map(|&i| axis[i]).collect());
                let mut j = 0;
                while j < vars {
                    idx[j] += 1;
                    if idx[j] < per_var {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
                if j == vars {
                    break;
                }
            }
            out
        } else {
            // Too many objectives for a full grid: fixed-seed uniform sample
            // over the same intervals.
            let mut rng = ChaCha8Rng::seed_from_u64(0x0d71_2007);
            (0..n)
                .map(|_| (0..vars).map(|_| map(rng.gen::<f64>())).collect())
                .collect()
        };
        let front: Vec<Vec<f64>> = positions
            .iter()
            .map(|p| disconnected_front(p, 1.0))
            .collect();
        nondominated_filter(&front)
    }
}

fn lattice_for(m: usize, n: usize) -> Vec<Vec<f64>> {
    let mut h = 1;
    while binomial(h + 1 + m - 1, m - 1) <= n {
        h += 1;
    }
    simplex_lattice(m, h)
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.min(usize::MAX as u128) as usize
}

fn sphere_g(dist: &[f64]) -> f64 {
    dist.iter().map(|v| (v - 0.5).powi(2)).sum()
}

fn rastrigin_g(dist: &[f64]) -> f64 {
    let s: f64 = dist
        .iter()
        .map(|v| (v - 0.5).powi(2) - (20.0 * PI * (v - 0.5)).cos())
        .sum();
    100.0 * (dist.len() as f64 + s)
}

fn half_pi_angles(pos: &[f64]) -> Vec<f64> {
    pos.iter().map(|v| v * FRAC_PI_2).collect()
}

fn degenerate_angles(pos: &[f64], g: f64) -> Vec<f64> {
    pos.iter()
        .enumerate()
        .map(|(i, &v)| {
            if i == 0 {
                v * FRAC_PI_2
            } else {
                PI / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * v)
            }
        })
        .collect()
}

/// `f_1 = 0.5 (1+g) x_1 ... x_{M-1}`, `f_i = 0.5 (1+g) x_1 ... x_{M-i} (1 - x_{M-i+1})`.
fn linear_front(pos: &[f64], g: f64) -> Vec<f64> {
    let m = pos.len() + 1;
    (0..m)
        .map(|i| {
            let keep = m - 1 - i;
            let mut f = 0.5 * (1.0 + g);
            f *= pos[..keep].iter().product::<f64>();
            if i > 0 {
                f *= 1.0 - pos[keep];
            }
            f
        })
        .collect()
}

/// `f_1 = (1+g) prod cos(theta_j)`, `f_i = (1+g) cos(theta_1) ... cos(theta_{M-i}) sin(theta_{M-i+1})`.
fn spherical_front(theta: &[f64], g: f64) -> Vec<f64> {
    let m = theta.len() + 1;
    (0..m)
        .map(|i| {
            let keep = m - 1 - i;
            let mut f = 1.0 + g;
            f *= theta[..keep].iter().map(|t| t.cos()).product::<f64>();
            if i > 0 {
                f *= theta[keep].sin();
            }
            f
        })
        .collect()
}

fn disconnected_front(pos: &[f64], g: f64) -> Vec<f64> {
    let m = pos.len() + 1;
    let h = m as f64
        - pos
            .iter()
            .map(|&f| f / (1.0 + g) * (1.0 + (3.0 * PI * f).sin()))
            .sum::<f64>();
    let mut out = pos.to_vec();
    out.push((1.0 + g) * h);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(family: Family, m: usize, d: usize) -> Problem {
        Problem::new(family, m, d).unwrap()
    }

    #[test]
    fn dtlz2_center_point_is_on_unit_sphere() {
        let f = p(Family::Dtlz2, 3, 10).evaluate(&[0.5; 10]).unwrap();
        assert!((f[0] - 0.5).abs() < 1e-12);
        assert!((f[1] - 0.5).abs() < 1e-12);
        assert!((f[2] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((f.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dtlz1_center_point_is_on_linear_front() {
        let f = p(Family::Dtlz1, 3, 10).evaluate(&[0.5; 10]).unwrap();
        assert!((f[0] - 0.125).abs() < 1e-12);
        assert!((f[1] - 0.125).abs() < 1e-12);
        assert!((f[2] - 0.25).abs() < 1e-12);
    }

    #[test]
    fn dtlz7_matches_hand_transcription() {
        // Step-by-step evaluation of the published DTLZ7 formula at x = 0.3.
        // k = 8, g = 1 + 9/8 * 2.4 = 3.7, h = 3 - 2 * 0.3/4.7 * (1 + sin(0.9 pi)).
        let g = 3.7_f64;
        let term = 0.3 / (1.0 + g) * (1.0 + (0.9 * PI).sin());
        let h = 3.0 - 2.0 * term;
        let expected = [0.3, 0.3, (1.0 + g) * h];
        assert!((expected[2] - 13.314_589_803_375_03).abs() < 1e-9);
        let f = p(Family::Dtlz7, 3, 10).evaluate(&[0.3; 10]).unwrap();
        for (a, b) in f.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn evaluate_rejects_bad_input() {
        let prob = p(Family::Dtlz2, 3, 5);
        assert!(matches!(
            prob.evaluate(&[0.5; 4]),
            Err(Error::DimensionMismatch {
                expected: 5,
                got: 4
            })
        ));
        assert!(matches!(
            prob.evaluate(&[0.5, 0.5, 1.2, 0.5, 0.5]),
            Err(Error::OutOfBounds { index: 2, .. })
        ));
        assert!(Problem::new(Family::Dtlz2, 5, 4).is_err());
        assert!(Problem::new(Family::Dtlz2, 1, 4).is_err());
    }

    #[test]
    fn optimal_distance_variables_land_on_front() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for family in Family::ALL.into_iter().filter(|f| *f != Family::Dtlz7) {
            for (m, d) in [(2, 6), (3, 10), (5, 12)] {
                let prob = p(family, m, d);
                for _ in 0..20 {
                    let mut x: Vec<f64> = (0..d).map(|_| rng.gen()).collect();
                    for v in &mut x[m - 1..] {
                        *v = prob.optimal_distance_value();
                    }
                    let f = prob.evaluate(&x).unwrap();
                    let identity = match family {
                        Family::Dtlz1 => f.iter().sum::<f64>() - 0.5,
                        _ => f.iter().map(|v| v * v).sum::<f64>() - 1.0,
                    };
                    assert!(identity.abs() < 1e-12, "{family} M={m}: {identity}");
                }
            }
        }
    }

    #[test]
    fn evaluate_is_bit_deterministic() {
        let prob = p(Family::Dtlz3, 4, 9);
        let x = [0.1, 0.9, 0.33, 0.0, 1.0, 0.25, 0.5, 0.75, 0.123];
        assert_eq!(prob.evaluate(&x).unwrap(), prob.evaluate(&x).unwrap());
    }

    #[test]
    fn linear_and_spherical_fronts_satisfy_identities() {
        let f1 = p(Family::Dtlz1, 3, 10).sample_pareto_front(500).unwrap();
        assert!(!f1.is_empty() && f1.len() <= 500);
        for q in &f1 {
            assert!((q.iter().sum::<f64>() - 0.5).abs() < 1e-12);
        }
        for family in [
            Family::Dtlz2,
            Family::Dtlz3,
            Family::Dtlz4,
            Family::Dtlz5,
            Family::Dtlz6,
        ] {
            for q in p(family, 3, 10).sample_pareto_front(500).unwrap() {
                assert!((q.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn reference_set_size_for_three_objectives() {
        let front = p(Family::Dtlz2, 3, 10)
            .sample_pareto_front(DEFAULT_REFERENCE_SIZE)
            .unwrap();
        // H = 139 gives C(141, 2) = 9870 <= 10000 < C(142, 2).
        assert_eq!(front.len(), 9870);
    }

    #[test]
    fn degenerate_front_lies_on_arc() {
        for q in p(Family::Dtlz5, 4, 10).sample_pareto_front(50).unwrap() {
            // f_1 = f_2 on the degenerate arc.
            assert!((q[0] - q[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn too_few_reference_points_is_an_error() {
        assert!(p(Family::Dtlz2, 3, 10).sample_pareto_front(2).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("zdt1".parse::<Family>().is_err());
        assert_eq!("DTLZ5".parse::<Family>().unwrap(), Family::Dtlz5);
    }
}
