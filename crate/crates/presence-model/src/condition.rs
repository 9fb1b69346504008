//! Running one simulation condition through the full inference pipeline.

use serde::Serialize;

use inference_core::{
    bayes_posterior, expected_free_energy_with, floored_ln, model_evidence, policy_posterior,
    Categorical, LogPreference,
};

use crate::error::{ModelError, Result};
use crate::model::{ModelVariant, Observation, PresenceModelSpec, POLICIES};

/// One row of the simulation table: an observation plus parameter overrides
/// applied on top of the model defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulationCondition {
    pub variant: ModelVariant,
    pub observation: Observation,
    pub zeta_1_1: f64,
    pub zeta_2: f64,
    pub prior_weight_a: f64,
    pub gamma: f64,
}

impl SimulationCondition {
    pub fn new(variant: ModelVariant, observation: Observation) -> Self {
        Self {
            variant,
            observation,
            zeta_1_1: 0.2,
            zeta_2: 0.2,
            prior_weight_a: 0.5,
            gamma: 1.0,
        }
    }

    pub fn model(&self) -> Result<PresenceModelSpec> {
        PresenceModelSpec::build(self.variant, self.zeta_1_1, self.zeta_2, self.prior_weight_a)?
            .with_gamma(self.gamma)
    }

    /// Builds the model for this condition and runs the pipeline.
    pub fn run(&self) -> Result<ConditionResult> {
        run_model(&self.model()?, self.observation)
    }
}

impl Default for SimulationCondition {
    fn default() -> Self {
        Self::new(ModelVariant::Original, Observation::DirectGaze)
    }
}

/// Everything the pipeline produces for one condition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionResult {
    pub variant: ModelVariant,
    pub observation: Observation,
    /// Posterior over {attentive, unconcerned}.
    pub q_1_1: Categorical,
    /// Model evidence of the gaze observation, `p(o)`.
    pub evidence: f64,
    /// The presence metric: `ln p(o)` in nats.
    pub presence: f64,
    /// Posterior over the Level 2 contexts.
    pub q_2: Categorical,
    /// Context-mixed log preference over group reactions.
    pub context_log_pref: LogPreference,
    /// Expected free energy per policy, ordered as [express, withhold].
    pub efe: Vec<f64>,
    /// Softmax policy posterior over [express, withhold].
    pub policy: Categorical,
    /// Probability of expressing an opinion (first policy entry).
    pub p_express: f64,
}

/// Level 1-1: posterior over attention states plus the presence metric
/// (log model evidence of the gaze observation).
pub fn infer_level_1_1(
    model: &PresenceModelSpec,
    observation: Observation,
) -> Result<(Categorical, f64)> {
    let posterior = bayes_posterior(model.prior_1_1(), model.a_1_1(), observation.index())?;
    let evidence = model_evidence(model.prior_1_1(), model.a_1_1(), observation.index())?;
    Ok((posterior, floored_ln(evidence)))
}

/// Level 2: context posterior given the Level 1-1 beliefs, treating them as
/// soft evidence through the context likelihood:
/// `q(s2) ∝ prior(s2) * sum_s11 q(s11) p(s11 | s2)`.
pub fn infer_level_2(model: &PresenceModelSpec, q_1_1: &Categorical) -> Result<Categorical> {
    if q_1_1.len() != model.a_2().n_rows() {
        return Err(ModelError::Inference(
            inference_core::InferenceError::DimensionMismatch(format!(
                "level 2 expects {} attention states, got {}",
                model.a_2().n_rows(),
                q_1_1.len()
            )),
        ));
    }
    let weights: Vec<f64> = (0..model.a_2().n_cols())
        .map(|s2| {
            let soft_evidence: f64 = q_1_1
                .probs()
                .iter()
                .enumerate()
                .map(|(s11, &q)| q * model.a_2().entry(s11, s2))
                .sum();
            model.prior_2().prob(s2) * soft_evidence
        })
        .collect();
    let sum: f64 = weights.iter().sum();
    if !sum.is_finite() || sum <= 0.0 {
        return Err(ModelError::Inference(
            inference_core::InferenceError::DegenerateEvidence,
        ));
    }
    let mut probs: Vec<f64> = weights.iter().map(|w| w / sum).collect();
    // Pin the largest entry so the posterior sums to one exactly.
    let pivot = probs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap_or(0);
    let rest: f64 = probs
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != pivot)
        .map(|(_, &p)| p)
        .sum();
    probs[pivot] = 1.0 - rest;
    let labels = model.variant().context_labels();
    Ok(Categorical::with_labels(
        probs,
        labels.iter().map(|s| s.to_string()).collect(),
    )?)
}

/// Mixes the per-context preference columns by the context posterior.
pub fn context_preference(
    model: &PresenceModelSpec,
    q_2: &Categorical,
) -> Result<LogPreference> {
    Ok(model.pref_matrix().mix(q_2)?)
}

/// Runs the whole pipeline for one observation:
/// Level 1-1 inference, Level 2 inference, context preference, expected free
/// energy of expressing, and the softmax policy posterior.
pub fn run_model(model: &PresenceModelSpec, observation: Observation) -> Result<ConditionResult> {
    let (q_1_1, presence) = infer_level_1_1(model, observation)?;
    let evidence = model_evidence(model.prior_1_1(), model.a_1_1(), observation.index())?;
    let q_2 = infer_level_2(model, &q_1_1)?;
    let context_log_pref = context_preference(model, &q_2)?;
    let g_express = expected_free_energy_with(
        model.a_1_2(),
        model.prior_1_2(),
        &context_log_pref,
        model.preference_normalization(),
    )?;
    let efe = vec![g_express, model.null_policy_efe()];
    let policy = policy_posterior(&efe, model.gamma())?
        .relabeled(POLICIES.iter().map(|s| s.to_string()).collect())?;
    let p_express = policy.prob(0);
    Ok(ConditionResult {
        variant: model.variant(),
        observation,
        q_1_1,
        evidence,
        presence,
        q_2,
        context_log_pref,
        efe,
        policy,
        p_express,
    })
}
