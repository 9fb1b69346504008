//! Prior preferences over observations, in natural-log units.

use serde::{Deserialize, Serialize};

use crate::categorical::{softmax, Categorical};
use crate::error::{InferenceError, Result};

/// Floor applied to probabilities inside logarithms (`exp(-16)`), so a
/// preference of zero probability maps to a large-but-finite log penalty.
pub const LOG_FLOOR: f64 = 1.1253517471925912e-7; // exp(-16)

/// `ln(max(x, exp(-16)))`.
pub fn floored_ln(x: f64) -> f64 {
    x.max(LOG_FLOOR).ln()
}

/// How raw log-preference values are turned into the preferred-outcome
/// distribution `p(o|C)` used by the pragmatic term of expected free energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PreferenceNormalization {
    /// `p(o|C) = softmax(C)`; the pragmatic term uses `ln softmax(C)`.
    #[default]
    Softmax,
    /// The raw entries are treated as `ln p(o|C)` without normalization.
    Raw,
}

/// Log-preference over observation outcomes.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct LogPreference {
    values: Vec<f64>,
}

impl LogPreference {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(InferenceError::Empty);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(InferenceError::NonFinite { index, value });
            }
        }
        Ok(Self { values })
    }

    /// Indifference across `n` outcomes.
    pub fn neutral(n: usize) -> Result<Self> {
        Self::new(vec![0.0; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Per-outcome log-probability terms under the given normalization.
    pub fn log_outcome_preference(&self, normalization: PreferenceNormalization) -> Vec<f64> {
        match normalization {
            PreferenceNormalization::Softmax => {
                // Softmax of finite values cannot fail.
                let p = softmax(&self.values, 1.0).expect("finite preference values");
                p.probs().iter().map(|&x| floored_ln(x)).collect()
            }
            PreferenceNormalization::Raw => self.values.clone(),
        }
    }
}

/// Preference matrix with one row per observation and one column per context
/// state; mixing by a context posterior yields a single [`LogPreference`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ContextPreferenceMatrix {
    rows: Vec<Vec<f64>>,
}

impl ContextPreferenceMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(InferenceError::Empty);
        }
        let n_cols = rows[0].len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n_cols {
                return Err(InferenceError::DimensionMismatch(format!(
                    "ragged preference matrix: expected {} contexts, row {} has {}",
                    n_cols,
                    r,
                    row.len()
                )));
            }
            for (c, &value) in row.iter().enumerate() {
                if !value.is_finite() {
                    return Err(InferenceError::NonFinite {
                        index: r * n_cols + c,
                        value,
                    });
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn n_observations(&self) -> usize {
        self.rows.len()
    }

    pub fn n_contexts(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Context-weighted mixture of the per-context preference columns.
    pub fn mix(&self, context: &Categorical) -> Result<LogPreference> {
        if context.len() != self.n_contexts() {
            return Err(InferenceError::DimensionMismatch(format!(
                "preference matrix has {} contexts, posterior has {}",
                self.n_contexts(),
                context.len()
            )));
        }
        let values = self
            .rows
            .iter()
            .map(|row| row.iter().zip(context.probs()).map(|(v, q)| v * q).sum())
            .collect();
        LogPreference::new(values)
    }
}
