//! The three-level generative model of a remote participant's presence.
//!
//! Level 1-1 infers whether a high-status member is attentive from their
//! gaze; the log evidence of that inference is the presence metric. Level 2
//! infers the social context (inclusion in the original variant, being
//! monitored in the modified variant) from the Level 1-1 beliefs. Level 1-2
//! selects between expressing and withholding an opinion, with a prior
//! preference that depends on the inferred context.

use serde::{Deserialize, Serialize};

use inference_core::{
    precision_weighted_likelihood, Categorical, ContextPreferenceMatrix, GenerativeLevel,
    PreferenceNormalization, StochasticMatrix,
};

use crate::error::{ModelError, Result};

/// Which Level 2 reading of an attentive gaze the model uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelVariant {
    /// Attention signals inclusion; disagreement is penalized when excluded.
    #[default]
    Original,
    /// Attention signals being monitored; disagreement is penalized when
    /// monitored.
    Modified,
}

impl ModelVariant {
    pub fn context_labels(self) -> [&'static str; 2] {
        match self {
            ModelVariant::Original => ["included", "excluded"],
            ModelVariant::Modified => ["monitored", "not_monitored"],
        }
    }

    /// Context-dependent log preference over Level 1-2 observations:
    /// rows are observations (agreement, disagreement), columns contexts.
    pub fn default_preference_matrix(self) -> ContextPreferenceMatrix {
        let rows = match self {
            ModelVariant::Original => vec![vec![0.0, 0.0], vec![0.0, -1.0]],
            ModelVariant::Modified => vec![vec![0.0, 0.0], vec![-1.0, 0.0]],
        };
        ContextPreferenceMatrix::new(rows).expect("fixed preference table")
    }
}

impl std::fmt::Display for ModelVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelVariant::Original => write!(f, "original"),
            ModelVariant::Modified => write!(f, "modified"),
        }
    }
}

impl std::str::FromStr for ModelVariant {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "original" => Ok(ModelVariant::Original),
            "modified" => Ok(ModelVariant::Modified),
            other => Err(ModelError::InvalidParameter(format!(
                "unknown model variant '{other}' (expected original or modified)"
            ))),
        }
    }
}

/// The gaze observation a low-status member receives at Level 1-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observation {
    DirectGaze,
    AvertedGaze,
}

impl Observation {
    pub fn index(self) -> usize {
        match self {
            Observation::DirectGaze => 0,
            Observation::AvertedGaze => 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Observation::DirectGaze => Observation::AvertedGaze,
            Observation::AvertedGaze => Observation::DirectGaze,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Observation::DirectGaze => "direct_gaze",
            Observation::AvertedGaze => "averted_gaze",
        }
    }
}

impl std::fmt::Display for Observation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Observation {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" | "direct_gaze" => Ok(Observation::DirectGaze),
            "averted" | "averted_gaze" => Ok(Observation::AvertedGaze),
            other => Err(ModelError::InvalidParameter(format!(
                "unknown observation '{other}' (expected direct or averted)"
            ))),
        }
    }
}

pub const LEVEL_1_1_STATES: [&str; 2] = ["attentive", "unconcerned"];
pub const LEVEL_1_2_STATES: [&str; 2] = ["agreement", "disagreement"];
pub const POLICIES: [&str; 2] = ["express", "withhold"];

fn labeled(probs: Vec<f64>, labels: [&str; 2]) -> Result<Categorical> {
    Ok(Categorical::with_labels(
        probs,
        labels.iter().map(|s| s.to_string()).collect(),
    )?)
}

/// Fully populated model: variant, precisions, priors, likelihoods,
/// context preference table and policy precision.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PresenceModelSpec {
    variant: ModelVariant,
    zeta_1_1: f64,
    zeta_2: f64,
    prior_1_1: Categorical,
    prior_2: Categorical,
    prior_1_2: Categorical,
    a_1_1: StochasticMatrix,
    a_2: StochasticMatrix,
    a_1_2: StochasticMatrix,
    pref_matrix: ContextPreferenceMatrix,
    gamma: f64,
    preference_normalization: PreferenceNormalization,
    null_policy_efe: f64,
}

impl PresenceModelSpec {
    /// Builds a model from the four headline parameters; everything else
    /// takes its documented default (uniform deeper priors, the fixed
    /// Level 1-2 likelihood, gamma = 1, softmax preference reading,
    /// zero-energy withhold policy).
    pub fn build(
        variant: ModelVariant,
        zeta_1_1: f64,
        zeta_2: f64,
        prior_weight_a: f64,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&prior_weight_a) || !prior_weight_a.is_finite() {
            return Err(ModelError::InvalidParameter(format!(
                "prior weight a = {prior_weight_a} outside [0, 1]"
            )));
        }
        for (name, value) in [("zeta_1_1", zeta_1_1), ("zeta_2", zeta_2)] {
            if !value.is_finite() || value < 0.0 {
                return Err(ModelError::InvalidParameter(format!(
                    "{name} = {value} must be a non-negative real"
                )));
            }
        }
        let identity = StochasticMatrix::identity(2);
        let context_labels = variant.context_labels();
        Ok(Self {
            variant,
            zeta_1_1,
            zeta_2,
            prior_1_1: labeled(vec![prior_weight_a, 1.0 - prior_weight_a], LEVEL_1_1_STATES)?,
            prior_2: labeled(vec![0.5, 0.5], context_labels)?,
            prior_1_2: labeled(vec![0.5, 0.5], LEVEL_1_2_STATES)?,
            a_1_1: precision_weighted_likelihood(&identity, zeta_1_1)?,
            a_2: precision_weighted_likelihood(&identity, zeta_2)?,
            a_1_2: StochasticMatrix::new(vec![vec![0.8, 0.2], vec![0.2, 0.8]])?,
            pref_matrix: variant.default_preference_matrix(),
            gamma: 1.0,
            preference_normalization: PreferenceNormalization::Softmax,
            null_policy_efe: 0.0,
        })
    }

    pub fn variant(&self) -> ModelVariant {
        self.variant
    }

    pub fn zeta_1_1(&self) -> f64 {
        self.zeta_1_1
    }

    pub fn zeta_2(&self) -> f64 {
        self.zeta_2
    }

    pub fn prior_1_1(&self) -> &Categorical {
        &self.prior_1_1
    }

    pub fn prior_2(&self) -> &Categorical {
        &self.prior_2
    }

    pub fn prior_1_2(&self) -> &Categorical {
        &self.prior_1_2
    }

    /// Precision-weighted gaze likelihood `p(o | attention state)`.
    pub fn a_1_1(&self) -> &StochasticMatrix {
        &self.a_1_1
    }

    /// Precision-weighted context likelihood `p(attention state | context)`.
    pub fn a_2(&self) -> &StochasticMatrix {
        &self.a_2
    }

    /// Feedback likelihood `p(observed group reaction | group opinion)`.
    pub fn a_1_2(&self) -> &StochasticMatrix {
        &self.a_1_2
    }

    pub fn pref_matrix(&self) -> &ContextPreferenceMatrix {
        &self.pref_matrix
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn preference_normalization(&self) -> PreferenceNormalization {
        self.preference_normalization
    }

    /// Expected free energy assigned to the withhold policy.
    pub fn null_policy_efe(&self) -> f64 {
        self.null_policy_efe
    }

    pub fn with_gamma(mut self, gamma: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(ModelError::InvalidParameter(format!(
                "gamma = {gamma} must be a non-negative real"
            )));
        }
        self.gamma = gamma;
        Ok(self)
    }

    pub fn with_preference_normalization(mut self, mode: PreferenceNormalization) -> Self {
        self.preference_normalization = mode;
        self
    }

    pub fn with_null_policy_efe(mut self, efe: f64) -> Result<Self> {
        if !efe.is_finite() {
            return Err(ModelError::InvalidParameter(format!(
                "null policy EFE = {efe} must be finite"
            )));
        }
        self.null_policy_efe = efe;
        Ok(self)
    }

    pub fn with_prior_2(mut self, probs: Vec<f64>) -> Result<Self> {
        self.prior_2 = labeled(probs, self.variant.context_labels())?;
        Ok(self)
    }

    pub fn with_prior_1_2(mut self, probs: Vec<f64>) -> Result<Self> {
        self.prior_1_2 = labeled(probs, LEVEL_1_2_STATES)?;
        Ok(self)
    }

    pub fn with_a_1_2(mut self, rows: Vec<Vec<f64>>) -> Result<Self> {
        let a = StochasticMatrix::new(rows)?;
        if a.n_rows() != 2 || a.n_cols() != 2 {
            return Err(ModelError::InvalidParameter(
                "a_1_2 must be a 2x2 table".into(),
            ));
        }
        self.a_1_2 = a;
        Ok(self)
    }

    pub fn with_pref_matrix(mut self, rows: Vec<Vec<f64>>) -> Result<Self> {
        let m = ContextPreferenceMatrix::new(rows)?;
        if m.n_observations() != 2 || m.n_contexts() != 2 {
            return Err(ModelError::InvalidParameter(
                "pref_matrix must be a 2x2 table".into(),
            ));
        }
        self.pref_matrix = m;
        Ok(self)
    }

    /// Level 1-1 as a generative level (gaze observation model).
    pub fn level_1_1(&self) -> Result<GenerativeLevel> {
        Ok(GenerativeLevel::new(
            self.a_1_1.clone(),
            StochasticMatrix::identity(2),
            self.prior_1_1.clone(),
            self.zeta_1_1,
        )?)
    }

    /// Level 2 as a generative level (context model over attention states).
    pub fn level_2(&self) -> Result<GenerativeLevel> {
        Ok(GenerativeLevel::new(
            self.a_2.clone(),
            StochasticMatrix::identity(2),
            self.prior_2.clone(),
            self.zeta_2,
        )?)
    }

    /// Loads a model from a JSON document; every field is optional and
    /// unknown keys are rejected. See `docs/model-config.md` for the schema.
    pub fn from_json(text: &str) -> Result<Self> {
        let config: PresenceModelConfig = serde_json::from_str(text)
            .map_err(|e| ModelError::InvalidConfig(e.to_string()))?;
        config.build()
    }
}

impl Default for PresenceModelSpec {
    fn default() -> Self {
        Self::build(ModelVariant::Original, 0.2, 0.2, 0.5).expect("defaults are valid")
    }
}

/// JSON-facing view of [`PresenceModelSpec`] with every field optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresenceModelConfig {
    pub variant: Option<ModelVariant>,
    pub zeta_1_1: Option<f64>,
    pub zeta_2: Option<f64>,
    /// Either a full two-entry prior ...
    pub prior_1_1: Option<Vec<f64>>,
    /// ... or just its first entry `a` (the prior is `[a, 1-a]`).
    pub prior_weight_a: Option<f64>,
    pub prior_2: Option<Vec<f64>>,
    pub prior_1_2: Option<Vec<f64>>,
    pub a_1_2: Option<Vec<Vec<f64>>>,
    pub pref_matrix: Option<Vec<Vec<f64>>>,
    pub gamma: Option<f64>,
    pub preference_normalization: Option<PreferenceNormalization>,
    pub null_policy_efe: Option<f64>,
}

impl PresenceModelConfig {
    pub fn build(&self) -> Result<PresenceModelSpec> {
        let prior_weight_a = match (&self.prior_1_1, self.prior_weight_a) {
            (Some(_), Some(_)) => {
                return Err(ModelError::InvalidConfig(
                    "give either prior_1_1 or prior_weight_a, not both".into(),
                ))
            }
            (Some(probs), None) => {
                if probs.len() != 2 {
                    return Err(ModelError::InvalidConfig(
                        "prior_1_1 must have exactly two entries".into(),
                    ));
                }
                // Validates non-negativity and normalization.
                Categorical::new(probs.clone())?;
                probs[0]
            }
            (None, Some(a)) => a,
            (None, None) => 0.5,
        };
        let mut model = PresenceModelSpec::build(
            self.variant.unwrap_or_default(),
            self.zeta_1_1.unwrap_or(0.2),
            self.zeta_2.unwrap_or(0.2),
            prior_weight_a,
        )?;
        if let Some(probs) = &self.prior_2 {
            model = model.with_prior_2(probs.clone())?;
        }
        if let Some(probs) = &self.prior_1_2 {
            model = model.with_prior_1_2(probs.clone())?;
        }
        if let Some(rows) = &self.a_1_2 {
            model = model.with_a_1_2(rows.clone())?;
        }
        if let Some(rows) = &self.pref_matrix {
            model = model.with_pref_matrix(rows.clone())?;
        }
        if let Some(gamma) = self.gamma {
            model = model.with_gamma(gamma)?;
        }
        if let Some(mode) = self.preference_normalization {
            model = model.with_preference_normalization(mode);
        }
        if let Some(efe) = self.null_policy_efe {
            model = model.with_null_policy_efe(efe)?;
        }
        Ok(model)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_build_reproduces_published_likelihood() {
        let m = PresenceModelSpec::build(ModelVariant::Original, 0.2, 0.2, 0.5).unwrap();
        assert!((m.a_1_1().entry(0, 0) - 0.691).abs() < 1e-3);
        assert!((m.a_1_1().entry(1, 0) - 0.309).abs() < 1e-3);
        assert!((m.a_1_1().entry(0, 1) - 0.309).abs() < 1e-3);
        assert!((m.a_1_1().entry(1, 1) - 0.691).abs() < 1e-3);
    }

    #[test]
    fn zero_precision_build_is_uniform() {
        let m = PresenceModelSpec::build(ModelVariant::Original, 0.0, 0.2, 0.5).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(m.a_1_1().entry(r, c), 0.5);
            }
        }
    }

    #[test]
    fn modified_variant_swaps_the_penalized_context() {
        let m = PresenceModelSpec::build(ModelVariant::Modified, 0.2, 0.2, 0.5).unwrap();
        assert_eq!(m.pref_matrix().rows()[0], vec![0.0, 0.0]);
        assert_eq!(m.pref_matrix().rows()[1], vec![-1.0, 0.0]);
        assert_eq!(m.prior_2().labels().unwrap()[0], "monitored");
    }

    #[test]
    fn prior_weight_range_checked() {
        assert!(PresenceModelSpec::build(ModelVariant::Original, 0.2, 0.2, 1.2).is_err());
        assert!(PresenceModelSpec::build(ModelVariant::Original, 0.2, 0.2, -0.1).is_err());
        assert!(PresenceModelSpec::build(ModelVariant::Original, -0.2, 0.2, 0.5).is_err());
    }

    #[test]
    fn config_roundtrip_with_defaults() {
        let m = PresenceModelSpec::from_json("{}").unwrap();
        assert_eq!(m, PresenceModelSpec::default());
    }

    #[test]
    fn config_overrides_apply() {
        let m = PresenceModelSpec::from_json(
            r#"{
                "variant": "modified",
                "zeta_1_1": 0.4,
                "prior_weight_a": 0.8,
                "gamma": 2.0,
                "preference_normalization": "raw",
                "null_policy_efe": 0.25
            }"#,
        )
        .unwrap();
        assert_eq!(m.variant(), ModelVariant::Modified);
        assert_eq!(m.zeta_1_1(), 0.4);
        assert_eq!(m.prior_1_1().prob(0), 0.8);
        assert_eq!(m.gamma(), 2.0);
        assert_eq!(
            m.preference_normalization(),
            PreferenceNormalization::Raw
        );
        assert_eq!(m.null_policy_efe(), 0.25);
    }

    #[test]
    fn config_rejects_unknown_keys_and_conflicts() {
        assert!(PresenceModelSpec::from_json(r#"{"zeta_9": 1.0}"#).is_err());
        assert!(PresenceModelSpec::from_json(
            r#"{"prior_1_1": [0.5, 0.5], "prior_weight_a": 0.5}"#
        )
        .is_err());
        assert!(PresenceModelSpec::from_json(r#"{"prior_1_1": [0.5, 0.4, 0.1]}"#).is_err());
    }

    #[test]
    fn observation_parsing() {
        assert_eq!(
            "direct".parse::<Observation>().unwrap(),
            Observation::DirectGaze
        );
        assert_eq!(
            "averted_gaze".parse::<Observation>().unwrap(),
            Observation::AvertedGaze
        );
        assert!("sideways".parse::<Observation>().is_err());
        assert_eq!(Observation::DirectGaze.flipped(), Observation::AvertedGaze);
    }
}
