//! Exact Bayesian updating and variational free energy for discrete models.

use crate::categorical::{normalized, Categorical};
use crate::error::{InferenceError, Result};
use crate::matrix::StochasticMatrix;

fn check_dims(prior: &Categorical, likelihood: &StochasticMatrix, observation: usize) -> Result<()> {
    if likelihood.n_cols() != prior.len() {
        return Err(InferenceError::DimensionMismatch(format!(
            "likelihood has {} states, prior has {}",
            likelihood.n_cols(),
            prior.len()
        )));
    }
    if observation >= likelihood.n_rows() {
        return Err(InferenceError::OutcomeOutOfRange {
            index: observation,
            outcomes: likelihood.n_rows(),
        });
    }
    Ok(())
}

/// Exact posterior `p(s|o)` proportional to `likelihood(o, s) * prior(s)`.
///
/// Labels of the prior carry over to the posterior.
pub fn bayes_posterior(
    prior: &Categorical,
    likelihood: &StochasticMatrix,
    observation: usize,
) -> Result<Categorical> {
    check_dims(prior, likelihood, observation)?;
    let weights: Vec<f64> = prior
        .probs()
        .iter()
        .enumerate()
        .map(|(s, &p)| likelihood.entry(observation, s) * p)
        .collect();
    let probs = normalized(weights)?;
    match prior.labels() {
        Some(labels) => Categorical::new(probs)?.relabeled(labels.to_vec()),
        None => Categorical::new(probs),
    }
}

/// Marginal probability of the observation: `p(o) = sum_s p(o|s) p(s)`.
pub fn model_evidence(
    prior: &Categorical,
    likelihood: &StochasticMatrix,
    observation: usize,
) -> Result<f64> {
    check_dims(prior, likelihood, observation)?;
    Ok(prior
        .probs()
        .iter()
        .enumerate()
        .map(|(s, &p)| likelihood.entry(observation, s) * p)
        .sum())
}

/// Variational free energy of an approximate posterior `q` given one
/// observation: `F = sum_s q(s) ln(q(s) / (p(o|s) p(s)))` with `0 ln 0 := 0`.
///
/// Returns `f64::INFINITY` when `q` puts mass on a state the generative
/// model rules out; that sentinel is part of the contract, not a failure.
pub fn variational_free_energy(
    q: &Categorical,
    prior: &Categorical,
    likelihood: &StochasticMatrix,
    observation: usize,
) -> Result<f64> {
    check_dims(prior, likelihood, observation)?;
    if q.len() != prior.len() {
        return Err(InferenceError::DimensionMismatch(format!(
            "q has {} states, prior has {}",
            q.len(),
            prior.len()
        )));
    }
    let mut total = 0.0;
    for (s, &qs) in q.probs().iter().enumerate() {
        if qs == 0.0 {
            continue;
        }
        let joint = likelihood.entry(observation, s) * prior.prob(s);
        if joint == 0.0 {
            return Ok(f64::INFINITY);
        }
        total += qs * (qs / joint).ln();
    }
    Ok(total)
}
