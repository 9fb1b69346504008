//! Grid search of the under-determined free parameters against the
//! published action-selection probabilities.
//!
//! The published pipeline leaves three knobs open: the Level 2 precision,
//! the normalization used to read preferences as probabilities, and the
//! expected free energy assigned to the withhold policy. This module scans
//! all three against the two published expression probabilities and reports
//! the best grid point with its residuals, whether or not the tolerance is
//! met.

use serde::Serialize;

use inference_core::{policy_posterior, PreferenceNormalization};

use crate::condition::run_model;
use crate::error::Result;
use crate::model::{ModelVariant, Observation, PresenceModelSpec};

/// Published probability of expressing an opinion under a direct gaze
/// (original variant; the modified variant swaps the two values).
pub const PUBLISHED_P_EXPRESS_DIRECT: f64 = 0.3729;
/// Published probability of expressing an opinion under an averted gaze.
pub const PUBLISHED_P_EXPRESS_AVERTED: f64 = 0.0571;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CalibrationTargets {
    pub p_express_direct: f64,
    pub p_express_averted: f64,
}

impl Default for CalibrationTargets {
    fn default() -> Self {
        Self {
            p_express_direct: PUBLISHED_P_EXPRESS_DIRECT,
            p_express_averted: PUBLISHED_P_EXPRESS_AVERTED,
        }
    }
}

/// Search space and acceptance tolerance for the calibration run.
#[derive(Debug, Clone, Serialize)]
pub struct CalibrationSettings {
    pub targets: CalibrationTargets,
    pub tolerance: f64,
    pub zeta_2_grid: Vec<f64>,
    pub null_efe_grid: Vec<f64>,
}

impl Default for CalibrationSettings {
    fn default() -> Self {
        let zeta_2_grid = (0..=100).map(|i| i as f64 * 0.05).collect();
        let null_efe_grid = (-60..=60).map(|i| i as f64 * 0.05).collect();
        Self {
            targets: CalibrationTargets::default(),
            tolerance: 0.02,
            zeta_2_grid,
            null_efe_grid,
        }
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CalibrationCandidate {
    pub zeta_2: f64,
    pub preference_normalization: PreferenceNormalization,
    pub null_policy_efe: f64,
    pub p_express_direct: f64,
    pub p_express_averted: f64,
    pub residual_direct: f64,
    pub residual_averted: f64,
    pub max_residual: f64,
}

/// Outcome of the grid search: the best candidate and whether it met the
/// tolerance. When `achieved` is false the residuals quantify how far the
/// documented pipeline stays from the published values.
#[derive(Debug, Clone, Serialize)]
pub struct CalibrationReport {
    pub targets: CalibrationTargets,
    pub tolerance: f64,
    pub evaluated: usize,
    pub achieved: bool,
    pub best: CalibrationCandidate,
}

/// Expected free energy of expressing, for both observations, under the
/// given Level 2 precision and preference normalization.
fn express_efe_pair(zeta_2: f64, mode: PreferenceNormalization) -> Result<(f64, f64)> {
    let model = PresenceModelSpec::build(ModelVariant::Original, 0.2, zeta_2, 0.5)?
        .with_preference_normalization(mode);
    let direct = run_model(&model, Observation::DirectGaze)?;
    let averted = run_model(&model, Observation::AvertedGaze)?;
    Ok((direct.efe[0], averted.efe[0]))
}

/// Scans the full grid and returns the best point by worst-case residual.
///
/// Ties resolve to the earliest grid point, so the search is deterministic.
pub fn calibrate(settings: &CalibrationSettings) -> Result<CalibrationReport> {
    let mut evaluated = 0usize;
    let mut best: Option<CalibrationCandidate> = None;
    for mode in [PreferenceNormalization::Softmax, PreferenceNormalization::Raw] {
        for &zeta_2 in &settings.zeta_2_grid {
            // The withhold energy only enters the final softmax, so the
            // expensive part of the pipeline runs once per (mode, zeta_2).
            let (g_direct, g_averted) = express_efe_pair(zeta_2, mode)?;
            for &null_efe in &settings.null_efe_grid {
                let p_direct = policy_posterior(&[g_direct, null_efe], 1.0)?.prob(0);
                let p_averted = policy_posterior(&[g_averted, null_efe], 1.0)?.prob(0);
                let residual_direct = (p_direct - settings.targets.p_express_direct).abs();
                let residual_averted = (p_averted - settings.targets.p_express_averted).abs();
                let candidate = CalibrationCandidate {
                    zeta_2,
                    preference_normalization: mode,
                    null_policy_efe: null_efe,
                    p_express_direct: p_direct,
                    p_express_averted: p_averted,
                    residual_direct,
                    residual_averted,
                    max_residual: residual_direct.max(residual_averted),
                };
                evaluated += 1;
                if best
                    .map(|b| candidate.max_residual < b.max_residual)
                    .unwrap_or(true)
                {
                    best = Some(candidate);
                }
            }
        }
    }
    let best = best.expect("non-empty calibration grid");
    Ok(CalibrationReport {
        targets: settings.targets,
        tolerance: settings.tolerance,
        evaluated,
        achieved: best.max_residual <= settings.tolerance,
        best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_agrees_with_the_full_pipeline() {
        // The fast scan must equal running the model with the withhold
        // energy installed.
        let (g_direct, _) = express_efe_pair(1.3, PreferenceNormalization::Raw).unwrap();
        let scanned = policy_posterior(&[g_direct, -0.4], 1.0).unwrap().prob(0);

        let model = PresenceModelSpec::build(ModelVariant::Original, 0.2, 1.3, 0.5)
            .unwrap()
            .with_preference_normalization(PreferenceNormalization::Raw)
            .with_null_policy_efe(-0.4)
            .unwrap();
        let full = run_model(&model, Observation::DirectGaze).unwrap().p_express;
        assert_eq!(scanned.to_bits(), full.to_bits());
    }

    #[test]
    fn calibration_is_deterministic_and_reports_residuals() {
        let settings = CalibrationSettings {
            zeta_2_grid: vec![0.2, 1.0, 5.0],
            null_efe_grid: vec![-1.5, -1.0, 0.0],
            ..CalibrationSettings::default()
        };
        let a = calibrate(&settings).unwrap();
        let b = calibrate(&settings).unwrap();
        assert_eq!(a.best.max_residual.to_bits(), b.best.max_residual.to_bits());
        assert_eq!(a.evaluated, 3 * 3 * 2);
        assert!(a.best.max_residual >= 0.0);
        assert_eq!(
            a.achieved,
            a.best.max_residual <= settings.tolerance
        );
    }

    #[test]
    fn best_candidate_minimizes_worst_residual() {
        let settings = CalibrationSettings::default();
        let report = calibrate(&settings).unwrap();
        // Spot-check a few grid points: none may beat the winner.
        for (zeta_2, mode, null_efe) in [
            (0.2, PreferenceNormalization::Softmax, 0.0),
            (5.0, PreferenceNormalization::Raw, -1.0),
            (2.0, PreferenceNormalization::Raw, -1.5),
        ] {
            let (gd, ga) = express_efe_pair(zeta_2, mode).unwrap();
            let pd = policy_posterior(&[gd, null_efe], 1.0).unwrap().prob(0);
            let pa = policy_posterior(&[ga, null_efe], 1.0).unwrap().prob(0);
            let worst = (pd - report.targets.p_express_direct)
                .abs()
                .max((pa - report.targets.p_express_averted).abs());
            assert!(report.best.max_residual <= worst + 1e-12);
        }
    }
}
