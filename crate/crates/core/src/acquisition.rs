//! Federated lower confidence bound.
//!
//! The aggregated server model supplies the predicted mean; the spread of
//! the uploaded local models around it supplies the uncertainty.

use crate::error::{check_dim, Error, Result};
use crate::surrogate::RbfnModel;

/// Exploration weight used in all experiments.
pub const DEFAULT_ALPHA: f64 = 2.0;

/// A vector-valued function on `[0, 1]^d` that an optimizer minimizes.
pub trait Acquisition: Sync {
    fn dims(&self) -> usize;
    fn objectives(&self) -> usize;
    /// Objective vector at `x`; `x` has length [`Acquisition::dims`].
    fn evaluate(&self, x: &[f64]) -> Vec<f64>;
}

#[derive(Debug, Clone)]
pub struct FederatedLcb {
    global: RbfnModel,
    locals: Vec<RbfnModel>,
    alpha: f64,
}

impl FederatedLcb {
    pub fn new(global: RbfnModel, locals: Vec<RbfnModel>, alpha: f64) -> Result<Self> {
        if locals.len() < 2 {
            return Err(Error::InsufficientModels {
                needed: 2,
                got: locals.len(),
            });
        }
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "alpha must be >= 0, got {alpha}"
            )));
        }
        let (_, d, m) = global.shape();
        for local in &locals {
            let (_, ld, lm) = local.shape();
            if ld != d || lm != m {
                return Err(Error::ShapeMismatch(format!(
                    "local model maps R^{ld} -> R^{lm}, global maps R^{d} -> R^{m}"
                )));
            }
        }
        Ok(Self {
            global,
            locals,
            alpha,
        })
    }

    pub fn global(&self) -> &RbfnModel {
        &self.global
    }

    pub fn locals(&self) -> &[RbfnModel] {
        &self.locals
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mean(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.global.predict(x)
    }

    /// Per-objective sample variance of the local predictions around the mean.
    pub fn variance(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.global.input_dim(), x.len())?;
        let mean = self.global.predict_unchecked(x);
        Ok(self.variance_around(x, &mean))
    }

    fn variance_around(&self, x: &[f64], mean: &[f64]) -> Vec<f64> {
        let mut acc = vec![0.0; mean.len()];
        for local in &self.locals {
            for ((a, p), f) in acc.iter_mut().zip(local.predict_unchecked(x)).zip(mean) {
                *a += (p - f) * (p - f);
            }
        }
        let denom = (self.locals.len() - 1) as f64;
        acc.into_iter().map(|a| a / denom).collect()
    }

    /// `mean_j(x) - alpha * sqrt(variance_j(x))` for every objective.
    pub fn lcb(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.global.input_dim(), x.len())?;
        Ok(self.lcb_unchecked(x))
    }

    fn lcb_unchecked(&self, x: &[f64]) -> Vec<f64> {
        let mean = self.global.predict_unchecked(x);
        let var = self.variance_around(x, &mean);
        mean.iter()
            .zip(var)
            .map(|(f, v)| f - self.alpha * v.sqrt())
            .collect()
    }
}

impl Acquisition for FederatedLcb {
    fn dims(&self) -> usize {
        self.global.input_dim()
    }

    fn objectives(&self) -> usize {
        self.global.output_dim()
    }

    fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        self.lcb_unchecked(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant_model(values: &[f64]) -> RbfnModel {
        RbfnModel::new(
            vec![vec![0.5, 0.5]],
            vec![1.0],
            vec![vec![0.0; values.len()]],
            values.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn identical_locals_have_zero_variance() {
        let g = constant_model(&[1.0, 2.0]);
        let af = FederatedLcb::new(g.clone(), vec![g.clone(), g.clone(), g.clone()], 2.0).unwrap();
        assert_eq!(af.variance(&[0.1, 0.9]).unwrap(), vec![0.0, 0.0]);
        assert_eq!(af.lcb(&[0.1, 0.9]).unwrap(), af.mean(&[0.1, 0.9]).unwrap());
    }

    #[test]
    fn two_point_deviation() {
        let delta = 0.3;
        let g = constant_model(&[1.0, 5.0]);
        let lo = constant_model(&[1.0 - delta, 5.0]);
        let hi = constant_model(&[1.0 + delta, 5.0]);
        let af = FederatedLcb::new(g, vec![lo, hi], 2.0).unwrap();
        let v = af.variance(&[0.0, 0.0]).unwrap();
        assert!((v[0] - 2.0 * delta * delta).abs() < 1e-15);
        assert_eq!(v[1], 0.0);
    }

    #[test]
    fn lcb_arithmetic() {
        // f = 1.0, s = 0.25 from two locals at 1 +- 0.25/sqrt(2).
        let off = 0.25 / 2f64.sqrt();
        let g = constant_model(&[1.0]);
        let af = FederatedLcb::new(
            g,
            vec![constant_model(&[1.0 - off]), constant_model(&[1.0 + off])],
            2.0,
        )
        .unwrap();
        assert!((af.lcb(&[0.0, 0.0]).unwrap()[0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn alpha_zero_is_mean() {
        let g = constant_model(&[1.0]);
        let af = FederatedLcb::new(
            g,
            vec![constant_model(&[3.0]), constant_model(&[-2.0])],
            0.0,
        )
        .unwrap();
        assert_eq!(af.lcb(&[0.0, 0.0]).unwrap(), vec![1.0]);
    }

    #[test]
    fn needs_two_locals() {
        let g = constant_model(&[1.0]);
        assert!(matches!(
            FederatedLcb::new(g.clone(), vec![g.clone()], 2.0),
            Err(Error::InsufficientModels { needed: 2, got: 1 })
        ));
        assert!(FederatedLcb::new(g.clone(), vec![g.clone(), g.clone()], -1.0).is_err());
        let wrong = constant_model(&[1.0, 2.0]);
        assert!(FederatedLcb::new(g.clone(), vec![g, wrong], 2.0).is_err());
    }
}
