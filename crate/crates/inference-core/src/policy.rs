//! Expected free energy and softmax policy selection.

use crate::categorical::{kl_divergence, softmax, Categorical};
use crate::error::{InferenceError, Result};
use crate::inference::bayes_posterior;
use crate::matrix::StochasticMatrix;
use crate::preference::{LogPreference, PreferenceNormalization};

/// Expected information gain of observing through `likelihood` given current
/// state beliefs: `sum_o q(o) KL(q(s|o) || q(s))`.
pub fn epistemic_value(likelihood: &StochasticMatrix, q_states: &Categorical) -> Result<f64> {
    let q_obs = likelihood.predict(q_states)?;
    let mut total = 0.0;
    for (o, &qo) in q_obs.probs().iter().enumerate() {
        if qo == 0.0 {
            continue;
        }
        let posterior = bayes_posterior(q_states, likelihood, o)?;
        total += qo * kl_divergence(&posterior, q_states)?;
    }
    Ok(total)
}

/// Expected log-preference satisfaction: `sum_o q(o) ln p(o|C)`.
pub fn pragmatic_value(
    likelihood: &StochasticMatrix,
    q_states: &Categorical,
    preference: &LogPreference,
    normalization: PreferenceNormalization,
) -> Result<f64> {
    if preference.len() != likelihood.n_rows() {
        return Err(InferenceError::DimensionMismatch(format!(
            "likelihood has {} outcomes, preference has {}",
            likelihood.n_rows(),
            preference.len()
        )));
    }
    let q_obs = likelihood.predict(q_states)?;
    let logs = preference.log_outcome_preference(normalization);
    Ok(q_obs
        .probs()
        .iter()
        .zip(&logs)
        .map(|(&qo, &lp)| qo * lp)
        .sum())
}

/// Expected free energy of acting through `likelihood`:
/// `G = -(epistemic value) - (pragmatic value)`.
///
/// Uses the softmax reading of `p(o|C)`; see
/// [`expected_free_energy_with`] for the raw-log-preference variant.
pub fn expected_free_energy(
    likelihood: &StochasticMatrix,
    q_states: &Categorical,
    preference: &LogPreference,
) -> Result<f64> {
    expected_free_energy_with(
        likelihood,
        q_states,
        preference,
        PreferenceNormalization::Softmax,
    )
}

/// Expected free energy with an explicit choice of preference normalization.
pub fn expected_free_energy_with(
    likelihood: &StochasticMatrix,
    q_states: &Categorical,
    preference: &LogPreference,
    normalization: PreferenceNormalization,
) -> Result<f64> {
    let epistemic = epistemic_value(likelihood, q_states)?;
    let pragmatic = pragmatic_value(likelihood, q_states, preference, normalization)?;
    Ok(-epistemic - pragmatic)
}

/// Policy posterior `softmax(-gamma * G)`: lower expected free energy means
/// strictly higher selection probability whenever `gamma > 0`.
pub fn policy_posterior(efe: &[f64], gamma: f64) -> Result<Categorical> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(InferenceError::NegativePrecision(gamma));
    }
    softmax(efe, -gamma)
}
