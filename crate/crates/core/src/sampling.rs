//! Space-filling designs: Latin hypercube samples in `[0, 1]^d` and
//! Das-Dennis simplex lattices.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// Plain Latin hypercube design of `n` points in `[0, 1)^d`.
///
/// Each dimension gets an independent permutation of the `n` strata and a
/// uniform offset inside each stratum.
pub fn latin_hypercube<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<Vec<Vec<f64>>> {
    if n == 0 {
        return Err(Error::Empty("latin hypercube sample count"));
    }
    if d == 0 {
        return Err(Error::Empty("latin hypercube dimension"));
    }
    let mut points = vec![vec![0.0; d]; n];
    let mut strata: Vec<usize> = (0..n).collect();
    let width = 1.0 / n as f64;
    for j in 0..d {
        strata.shuffle(rng);
        for (point, &s) in points.iter_mut().zip(&strata) {
            let v = (s as f64 + rng.gen::<f64>()) * width;
            // Guard the upper stratum edge against rounding up to 1.0.
            point[j] = v.min(next_below((s + 1) as f64 * width));
        }
    }
    Ok(points)
}

fn next_below(x: f64) -> f64 {
    f64::from_bits(x.to_bits() - 1)
}

/// All points of the simplex `{p >= 0, sum p = 1}` in `m` dimensions whose
/// coordinates are multiples of `1/h`. There are `C(h + m - 1, m - 1)` of them.
pub fn simplex_lattice(m: usize, h: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    if h == 0 {
        out.push(vec![1.0 / m as f64; m]);
        return out;
    }
    let mut current = vec![0usize; m];
    fill_lattice(&mut current, 0, h, h, &mut out);
    out
}

fn fill_lattice(current: &mut [usize], pos: usize, left: usize, h: usize, out: &mut Vec<Vec<f64>>) {
    let m = current.len();
    if pos == m - 1 {
        current[pos] = left;
        out.push(current.iter().map(|&c| c as f64 / h as f64).collect());
        return;
    }
    for c in 0..=left {
        current[pos] = c;
        fill_lattice(current, pos + 1, left - c, h, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn strata_ok(points: &[Vec<f64>]) -> bool {
        let n = points.len();
        let d = points[0].len();
        (0..d).all(|j| {
            let mut hits = vec![0usize; n];
            for p in points {
                let b = (n as f64 * p[j]).floor() as usize;
                if b >= n {
                    return false;
                }
                hits[b] += 1;
            }
            hits.iter().all(|&h| h == 1)
        })
    }

    #[test]
    fn single_point_spans_domain() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pts = latin_hypercube(1, 3, &mut rng).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].iter().all(|v| (0.0..1.0).contains(v)));
    }

    #[test]
    fn four_points_one_per_quarter() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pts = latin_hypercube(4, 2, &mut rng).unwrap();
        for j in 0..2 {
            let mut col: Vec<f64> = pts.iter().map(|p| p[j]).collect();
            col.sort_by(f64::total_cmp);
            for (i, v) in col.iter().enumerate() {
                assert!(*v >= i as f64 * 0.25 && *v < (i + 1) as f64 * 0.25);
            }
        }
    }

    #[test]
    fn initial_design_for_ten_dims_is_stratified() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts = latin_hypercube(109, 10, &mut rng).unwrap();
        assert!(strata_ok(&pts));
    }

    #[test]
    fn seed_determinism() {
        let a = latin_hypercube(20, 5, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = latin_hypercube(20, 5, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_requests_fail() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(latin_hypercube(0, 3, &mut rng).is_err());
        assert!(latin_hypercube(3, 0, &mut rng).is_err());
    }

    #[test]
    fn lattice_counts() {
        assert_eq!(simplex_lattice(3, 13).len(), 105);
        assert_eq!(simplex_lattice(5, 5).len(), 126);
        assert_eq!(simplex_lattice(10, 3).len(), 220);
        for p in simplex_lattice(4, 6) {
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    proptest::proptest! {
        #[test]
        fn stratification_holds(n in 1usize..200, d in 1usize..80, seed in proptest::prelude::any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pts = latin_hypercube(n, d, &mut rng).unwrap();
            proptest::prop_assert!(strata_ok(&pts));
        }
    }
}
