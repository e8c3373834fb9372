//! Evolutionary optimizers run on the acquisition function: NSGA-II for
//! two or three objectives, RVEA for many objectives.

mod dominance;
mod nsga2;
mod operators;
mod rvea;

pub use dominance::{crowding_distance, fast_nondominated_sort};
pub(crate) use nsga2::select_by_fronts;
pub use nsga2::{nsga2_optimize, Nsga2Config};
pub use operators::{polynomial_mutation, sbx_crossover, sbx_with_draws, Variation};
pub use rvea::{
    apd_select, default_reference_count, divisions_for, generate_reference_vectors, rvea_optimize,
    ReferenceVectorSet, RveaConfig,
};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::acquisition::Acquisition;
use crate::error::{Error, Result};
use crate::sampling::latin_hypercube;

/// A decision vector with its acquisition values.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub x: Vec<f64>,
    pub f: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Population {
    pub individuals: Vec<Individual>,
    pub generation: usize,
}

impl Population {
    pub fn len(&self) -> usize {
        self.individuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.individuals.is_empty()
    }

    pub fn decisions(&self) -> Vec<Vec<f64>> {
        self.individuals.iter().map(|i| i.x.clone()).collect()
    }

    pub fn objectives(&self) -> Vec<Vec<f64>> {
        self.individuals.iter().map(|i| i.f.clone()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Optimizer {
    Nsga2,
    Rvea,
}

impl Optimizer {
    /// NSGA-II for up to three objectives, RVEA beyond.
    pub fn default_for(objectives: usize) -> Self {
        if objectives <= 3 {
            Optimizer::Nsga2
        } else {
            Optimizer::Rvea
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Optimizer::Nsga2 => "nsga2",
            Optimizer::Rvea => "rvea",
        }
    }
}

impl std::fmt::Display for Optimizer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Optimizer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "nsga2" | "nsga-ii" => Ok(Optimizer::Nsga2),
            "rvea" => Ok(Optimizer::Rvea),
            other => Err(Error::InvalidParameter(format!(
                "unknown optimizer '{other}'"
            ))),
        }
    }
}

/// Optimizer choice plus its settings.
#[derive(Debug, Clone, PartialEq)]
pub enum MoeaConfig {
    Nsga2(Nsga2Config),
    Rvea(RveaConfig),
}

impl MoeaConfig {
    pub fn for_problem(optimizer: Optimizer, objectives: usize, dims: usize) -> Result<Self> {
        Ok(match optimizer {
            Optimizer::Nsga2 => MoeaConfig::Nsga2(Nsga2Config::new(dims)),
            Optimizer::Rvea => MoeaConfig::Rvea(RveaConfig::new(objectives, dims)?),
        })
    }

    pub fn run<A: Acquisition + ?Sized, R: Rng + ?Sized>(
        &self,
        af: &A,
        rng: &mut R,
    ) -> Result<Population> {
        match self {
            MoeaConfig::Nsga2(cfg) => nsga2_optimize(af, cfg, rng),
            MoeaConfig::Rvea(cfg) => rvea_optimize(af, cfg, rng),
        }
    }
}

pub(crate) fn initial_population<A: Acquisition + ?Sized, R: Rng + ?Sized>(
    af: &A,
    size: usize,
    rng: &mut R,
) -> Result<Vec<Individual>> {
    if af.objectives() < 2 {
        return Err(Error::InvalidParameter(
            "optimizers need at least 2 objectives".into(),
        ));
    }
    Ok(latin_hypercube(size, af.dims(), rng)?
        .into_iter()
        .map(|x| evaluate(af, x))
        .collect())
}

pub(crate) fn evaluate<A: Acquisition + ?Sized>(af: &A, x: Vec<f64>) -> Individual {
    let f = af.evaluate(&x);
    Individual { x, f }
}
