//! Pareto dominance, non-dominated filtering and inverted generational distance.

use crate::error::{check_dim, Error, Result};

/// `true` if `a` is no worse than `b` everywhere and strictly better somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
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

/// Points not dominated by any other input point. Exact duplicates are kept once;
/// survivors keep their input order.
pub fn nondominated_filter(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    nondominated_indices(points)
        .into_iter()
        .map(|i| points[i].clone())
        .collect()
}

/// Indices of [`nondominated_filter`]'s survivors.
pub fn nondominated_indices(points: &[Vec<f64>]) -> Vec<usize> {
    // Scanning in lexicographic order means a point can only be dominated by
    // points that come earlier, so each candidate is checked against the
    // current front only.
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| lex_cmp(&points[a], &points[b]).then(a.cmp(&b)));
    let mut front: Vec<usize> = Vec::new();
    for &i in &order {
        let p = &points[i];
        let covered = front
            .iter()
            .any(|&j| dominates(&points[j], p) || points[j] == *p);
        if !covered {
            front.push(i);
        }
    }
    front.sort_unstable();
    front
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

/// Mean over reference points of the distance to the closest solution.
pub fn igd(solutions: &[Vec<f64>], reference: &[Vec<f64>]) -> Result<f64> {
    if solutions.is_empty() {
        return Err(Error::Empty("IGD solution set"));
    }
    if reference.is_empty() {
        return Err(Error::Empty("IGD reference set"));
    }
    let m = reference[0].len();
    for s in solutions {
        check_dim(m, s.len())?;
    }
    for r in reference {
        check_dim(m, r.len())?;
    }
    let total: f64 = reference
        .iter()
        .map(|r| {
            solutions
                .iter()
                .map(|s| squared_distance(r, s))
                .fold(f64::INFINITY, f64::min)
                .sqrt()
        })
        .sum();
    Ok(total / reference.len() as f64)
}

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    squared_distance(a, b).sqrt()
}
