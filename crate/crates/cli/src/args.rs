//! Shared model-building flags.

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::Args;

use inference_core::PreferenceNormalization;
use presence_model::{ModelVariant, Observation, PresenceModelConfig, PresenceModelSpec};

pub fn parse_variant(s: &str) -> std::result::Result<ModelVariant, String> {
    ModelVariant::from_str(s).map_err(|e| e.to_string())
}

pub fn parse_observation(s: &str) -> std::result::Result<Observation, String> {
    Observation::from_str(s).map_err(|e| e.to_string())
}

pub fn parse_normalization(s: &str) -> std::result::Result<PreferenceNormalization, String> {
    match s {
        "softmax" => Ok(PreferenceNormalization::Softmax),
        "raw" => Ok(PreferenceNormalization::Raw),
        other => Err(format!(
            "unknown normalization '{other}' (expected softmax or raw)"
        )),
    }
}

/// Flags describing the generative model; explicit flags override values
/// loaded from `--config`.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Model variant: original or modified
    #[arg(long = "model", value_parser = parse_variant)]
    pub variant: Option<ModelVariant>,

    /// JSON model config; flags given alongside override its fields
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Precision of the gaze observation model
    #[arg(long = "zeta11")]
    pub zeta_1_1: Option<f64>,

    /// Precision of the context observation model
    #[arg(long = "zeta2")]
    pub zeta_2: Option<f64>,

    /// Attention prior weight a (prior is [a, 1-a])
    #[arg(long = "prior-a")]
    pub prior_a: Option<f64>,

    /// Expected precision of the policy softmax
    #[arg(long)]
    pub gamma: Option<f64>,

    /// How preferences become outcome probabilities: softmax or raw
    #[arg(long = "pref-normalization", value_parser = parse_normalization)]
    pub pref_normalization: Option<PreferenceNormalization>,

    /// Expected free energy assigned to the withhold policy
    #[arg(long = "null-efe")]
    pub null_efe: Option<f64>,
}

impl ModelArgs {
    pub fn build(&self) -> Result<PresenceModelSpec> {
        let mut config = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading config {}", path.display()))?;
                serde_json::from_str::<PresenceModelConfig>(&text)
                    .with_context(|| format!("parsing config {}", path.display()))?
            }
            None => PresenceModelConfig::default(),
        };
        if let Some(v) = self.variant {
            config.variant = Some(v);
        }
        if let Some(z) = self.zeta_1_1 {
            config.zeta_1_1 = Some(z);
        }
        if let Some(z) = self.zeta_2 {
            config.zeta_2 = Some(z);
        }
        if let Some(a) = self.prior_a {
            config.prior_weight_a = Some(a);
            config.prior_1_1 = None;
        }
        if let Some(g) = self.gamma {
            config.gamma = Some(g);
        }
        if let Some(mode) = self.pref_normalization {
            config.preference_normalization = Some(mode);
        }
        if let Some(efe) = self.null_efe {
            config.null_policy_efe = Some(efe);
        }
        Ok(config.build()?)
    }
}
