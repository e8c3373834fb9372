//! Simulated binary crossover and polynomial mutation on `[0, 1]^d`.

use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Variation {
    pub crossover_eta: f64,
    pub crossover_prob: f64,
    pub mutation_eta: f64,
    pub mutation_prob: f64,
}

impl Variation {
    /// Distribution indices 20/20, crossover probability 1, mutation probability `1/d`.
    pub fn new(dims: usize) -> Self {
        Self {
            crossover_eta: 20.0,
            crossover_prob: 1.0,
            mutation_eta: 20.0,
            mutation_prob: 1.0 / dims.max(1) as f64,
        }
    }

    pub fn offspring<R: Rng + ?Sized>(
        &self,
        p1: &[f64],
        p2: &[f64],
        rng: &mut R,
    ) -> (Vec<f64>, Vec<f64>) {
        let (c1, c2) = sbx_crossover(p1, p2, self.crossover_eta, self.crossover_prob, rng);
        (
            polynomial_mutation(&c1, self.mutation_eta, self.mutation_prob, rng),
            polynomial_mutation(&c2, self.mutation_eta, self.mutation_prob, rng),
        )
    }
}

fn spread_factor(u: f64, eta: f64) -> f64 {
    if u <= 0.5 {
        (2.0 * u).powf(1.0 / (eta + 1.0))
    } else {
        (1.0 / (2.0 * (1.0 - u))).powf(1.0 / (eta + 1.0))
    }
}

/// SBX with explicit uniform draws, one per variable and no variable skipping.
pub fn sbx_with_draws(p1: &[f64], p2: &[f64], eta: f64, draws: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut c1 = Vec::with_capacity(p1.len());
    let mut c2 = Vec::with_capacity(p1.len());
    for ((&a, &b), &u) in p1.iter().zip(p2).zip(draws) {
        let beta = spread_factor(u, eta);
        let (x1, x2) = blend(a, b, beta);
        c1.push(x1);
        c2.push(x2);
    }
    (c1, c2)
}

fn blend(a: f64, b: f64, beta: f64) -> (f64, f64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (a - b);
    (
        (mid + beta * half).clamp(0.0, 1.0),
        (mid - beta * half).clamp(0.0, 1.0),
    )
}

/// Simulated binary crossover.
///
/// With probability `1 - prob` the parents are copied. Otherwise each
/// variable is recombined with probability 0.5 using a spread factor drawn
/// with distribution index `eta`, and the two children are swapped at random.
pub fn sbx_crossover<R: Rng + ?Sized>(
    p1: &[f64],
    p2: &[f64],
    eta: f64,
    prob: f64,
    rng: &mut R,
) -> (Vec<f64>, Vec<f64>) {
    if rng.gen::<f64>() >= prob {
        return (p1.to_vec(), p2.to_vec());
    }
    let mut c1 = Vec::with_capacity(p1.len());
    let mut c2 = Vec::with_capacity(p1.len());
    for (&a, &b) in p1.iter().zip(p2) {
        let u: f64 = rng.gen();
        let mut beta = spread_factor(u, eta);
        if rng.gen_bool(0.5) {
            beta = -beta;
        }
        if rng.gen_bool(0.5) {
            beta = 1.0;
        }
        let (x1, x2) = blend(a, b, beta);
        c1.push(x1);
        c2.push(x2);
    }
    (c1, c2)
}

/// Bounded polynomial mutation on `[0, 1]`, each variable with probability `prob`.
pub fn polynomial_mutation<R: Rng + ?Sized>(
    x: &[f64],
    eta: f64,
    prob: f64,
    rng: &mut R,
) -> Vec<f64> {
    x.iter()
        .map(|&v| {
            if prob <= 0.0 || rng.gen::<f64>() >= prob {
                return v;
            }
            let u: f64 = rng.gen();
            let power = 1.0 / (eta + 1.0);
            let delta = if u < 0.5 {
                let d1 = v;
                (2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1).powf(eta + 1.0)).powf(power) - 1.0
            } else {
                let d2 = 1.0 - v;
                1.0 - (2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2).powf(eta + 1.0)).powf(power)
            };
            (v + delta).clamp(0.0, 1.0)
        })
        .collect()
}
