//! A hierarchical active-inference model of how a remote participant's
//! gaze shapes a low-status member's decision to speak.
//!
//! The model has three levels: gaze observation (whose log evidence is the
//! presence metric), social context, and opinion expression. Two variants
//! differ only in how the inferred context gates the preference against
//! disagreement. The crate runs single conditions, parameter sweeps, and a
//! calibration grid search against the published expression probabilities.

mod calibrate;
mod condition;
mod error;
mod model;
mod sweep;

pub use calibrate::{
    calibrate, CalibrationCandidate, CalibrationReport, CalibrationSettings, CalibrationTargets,
    PUBLISHED_P_EXPRESS_AVERTED, PUBLISHED_P_EXPRESS_DIRECT,
};
pub use condition::{
    context_preference, infer_level_1_1, infer_level_2, run_model, ConditionResult,
    SimulationCondition,
};
pub use error::{ModelError, Result};
pub use model::{
    ModelVariant, Observation, PresenceModelConfig, PresenceModelSpec, LEVEL_1_1_STATES,
    LEVEL_1_2_STATES, POLICIES,
};
pub use sweep::{linspace, sweep, SweepParameter, SweepPoint};
