//! One level of a hierarchical discrete generative model.

use serde::Serialize;

use crate::categorical::Categorical;
use crate::error::{InferenceError, Result};
use crate::inference::{bayes_posterior, model_evidence};
use crate::matrix::{precision_weighted_likelihood, StochasticMatrix};
use crate::preference::floored_ln;

/// Likelihood, transition, prior and precision for one level of a model.
///
/// The transition matrix defaults to the identity (a single decision
/// timestep); it is kept explicit so multi-step extensions stay possible.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerativeLevel {
    likelihood: StochasticMatrix,
    transition: StochasticMatrix,
    prior: Categorical,
    precision: f64,
}

impl GenerativeLevel {
    pub fn new(
        likelihood: StochasticMatrix,
        transition: StochasticMatrix,
        prior: Categorical,
        precision: f64,
    ) -> Result<Self> {
        if !precision.is_finite() || precision < 0.0 {
            return Err(InferenceError::NegativePrecision(precision));
        }
        if likelihood.n_cols() != prior.len() {
            return Err(InferenceError::DimensionMismatch(format!(
                "likelihood has {} states, prior has {}",
                likelihood.n_cols(),
                prior.len()
            )));
        }
        if transition.n_rows() != prior.len() || transition.n_cols() != prior.len() {
            return Err(InferenceError::DimensionMismatch(format!(
                "transition is {}x{}, prior has {} states",
                transition.n_rows(),
                transition.n_cols(),
                prior.len()
            )));
        }
        Ok(Self {
            likelihood,
            transition,
            prior,
            precision,
        })
    }

    /// Builds a level whose likelihood is the precision-weighted version of
    /// `base`, with an identity transition.
    pub fn from_base(base: &StochasticMatrix, precision: f64, prior: Categorical) -> Result<Self> {
        let likelihood = precision_weighted_likelihood(base, precision)?;
        let transition = StochasticMatrix::identity(prior.len());
        Self::new(likelihood, transition, prior, precision)
    }

    pub fn likelihood(&self) -> &StochasticMatrix {
        &self.likelihood
    }

    pub fn transition(&self) -> &StochasticMatrix {
        &self.transition
    }

    pub fn prior(&self) -> &Categorical {
        &self.prior
    }

    pub fn precision(&self) -> f64 {
        self.precision
    }

    /// Exact posterior over this level's states given an observation.
    pub fn posterior(&self, observation: usize) -> Result<Categorical> {
        bayes_posterior(&self.prior, &self.likelihood, observation)
    }

    /// Marginal probability of the observation under this level.
    pub fn evidence(&self, observation: usize) -> Result<f64> {
        model_evidence(&self.prior, &self.likelihood, observation)
    }

    /// Log model evidence in nats (floored inside the logarithm).
    pub fn log_evidence(&self, observation: usize) -> Result<f64> {
        Ok(floored_ln(self.evidence(observation)?))
    }
}
