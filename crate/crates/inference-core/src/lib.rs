//! Model-agnostic math for discrete active inference.
//!
//! Everything operates on two validated value types: [`Categorical`]
//! probability vectors and column-stochastic likelihood tables
//! ([`StochasticMatrix`]). On top of those sit exact Bayesian updating,
//! model evidence, variational free energy, expected free energy with
//! log-preferences, and softmax policy selection.
//!
//! All operations are pure functions over immutable values: identical
//! inputs produce bit-identical outputs, and nothing here holds shared
//! mutable state.

mod categorical;
mod error;
mod inference;
mod level;
mod matrix;
mod policy;
mod preference;

pub use categorical::{kl_divergence, shannon_entropy, softmax, Categorical, PROBABILITY_TOLERANCE};
pub use error::{InferenceError, Result};
pub use inference::{bayes_posterior, model_evidence, variational_free_energy};
pub use level::GenerativeLevel;
pub use matrix::{precision_weighted_likelihood, StochasticMatrix, LIKELIHOOD_FLOOR};
pub use policy::{
    epistemic_value, expected_free_energy, expected_free_energy_with, policy_posterior,
    pragmatic_value,
};
pub use preference::{
    floored_ln, ContextPreferenceMatrix, LogPreference, PreferenceNormalization, LOG_FLOOR,
};
