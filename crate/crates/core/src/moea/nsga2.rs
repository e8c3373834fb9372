use std::cmp::Ordering;

use rand::Rng;

use super::dominance::{crowding_distance, fast_nondominated_sort};
use super::operators::Variation;
use super::{evaluate, initial_population, Individual, Population};
use crate::acquisition::Acquisition;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nsga2Config {
    pub pop_size: usize,
    pub generations: usize,
    pub variation: Variation,
}

impl Nsga2Config {
    /// Population 50, 50 generations.
    pub fn new(dims: usize) -> Self {
        Self {
            pop_size: 50,
            generations: 50,
            variation: Variation::new(dims),
        }
    }
}

/// Rank (front index) and crowding distance of every individual.
fn rank_and_crowd(pop: &[Individual]) -> Result<(Vec<usize>, Vec<f64>)> {
    let objs: Vec<Vec<f64>> = pop.iter().map(|i| i.f.clone()).collect();
    let fronts = fast_nondominated_sort(&objs)?;
    let mut rank = vec![0; pop.len()];
    let mut crowd = vec![0.0; pop.len()];
    for (r, front) in fronts.iter().enumerate() {
        let pts: Vec<Vec<f64>> = front.iter().map(|&i| objs[i].clone()).collect();
        for (&i, c) in front.iter().zip(crowding_distance(&pts)) {
            rank[i] = r;
            crowd[i] = c;
        }
    }
    Ok((rank, crowd))
}

fn better(rank: &[usize], crowd: &[f64], a: usize, b: usize) -> Ordering {
    rank[a]
        .cmp(&rank[b])
        .then_with(|| crowd[b].total_cmp(&crowd[a]))
}

fn tournament<R: Rng + ?Sized>(rank: &[usize], crowd: &[f64], rng: &mut R) -> usize {
    let n = rank.len();
    let a = rng.gen_range(0..n);
    let b = rng.gen_range(0..n);
    match better(rank, crowd, a, b) {
        Ordering::Less => a,
        Ordering::Greater => b,
        Ordering::Equal => {
            if rng.gen_bool(0.5) {
                a
            } else {
                b
            }
        }
    }
}

/// Keeps `size` individuals: whole fronts first, then the most crowded-apart
/// members of the front that overflows.
pub(crate) fn environmental_selection(
    pool: Vec<Individual>,
    size: usize,
) -> Result<Vec<Individual>> {
    if pool.len() <= size {
        return Ok(pool);
    }
    let objs: Vec<Vec<f64>> = pool.iter().map(|i| i.f.clone()).collect();
    let keep = select_by_fronts(&objs, size)?;
    let mut slots: Vec<Option<Individual>> = pool.into_iter().map(Some).collect();
    Ok(keep
        .into_iter()
        .map(|i| slots[i].take().expect("unique index"))
        .collect())
}

/// Indices of the `size` points kept by front-then-crowding truncation.
pub(crate) fn select_by_fronts(objs: &[Vec<f64>], size: usize) -> Result<Vec<usize>> {
    let mut keep = Vec::with_capacity(size);
    for front in fast_nondominated_sort(objs)? {
        if keep.len() + front.len() <= size {
            keep.extend_from_slice(&front);
            if keep.len() == size {
                break;
            }
            continue;
        }
        let pts: Vec<Vec<f64>> = front.iter().map(|&i| objs[i].clone()).collect();
        let crowd = crowding_distance(&pts);
        let mut order: Vec<usize> = (0..front.len()).collect();
        order.sort_by(|&a, &b| crowd[b].total_cmp(&crowd[a]).then(a.cmp(&b)));
        let room = size - keep.len();
        keep.extend(order.into_iter().take(room).map(|w| front[w]));
        break;
    }
    Ok(keep)
}

/// NSGA-II on the acquisition, starting from a fresh Latin hypercube population.
pub fn nsga2_optimize<A: Acquisition + ?Sized, R: Rng + ?Sized>(
    af: &A,
    cfg: &Nsga2Config,
    rng: &mut R,
) -> Result<Population> {
    if cfg.pop_size < 2 {
        return Err(Error::InvalidParameter(
            "NSGA-II population must be >= 2".into(),
        ));
    }
    let mut pop = initial_population(af, cfg.pop_size, rng)?;
    for _ in 0..cfg.generations {
        let (rank, crowd) = rank_and_crowd(&pop)?;
        let mut offspring = Vec::with_capacity(cfg.pop_size + 1);
        while offspring.len() < cfg.pop_size {
            let a = tournament(&rank, &crowd, rng);
            let b = tournament(&rank, &crowd, rng);
            let (c1, c2) = cfg.variation.offspring(&pop[a].x, &pop[b].x, rng);
            offspring.push(evaluate(af, c1));
            offspring.push(evaluate(af, c2));
        }
        offspring.truncate(cfg.pop_size);
        pop.extend(offspring);
        pop = environmental_selection(pop, cfg.pop_size)?;
    }
    Ok(Population {
        individuals: pop,
        generation: cfg.generations,
    })
}
