//! Categorical distributions over named outcomes.
//!
//! A [`Categorical`] is a finite probability vector. Every constructor
//! validates non-negativity and normalization, so a value of this type is
//! always a proper distribution. Outcome labels are optional and carried
//! along purely for reporting.

use serde::Serialize;

use crate::error::{InferenceError, Result};

/// Tolerance used when checking that probabilities sum to one.
pub const PROBABILITY_TOLERANCE: f64 = 1e-9;

/// A finite probability vector with optional outcome labels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Categorical {
    probs: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Categorical {
    /// Builds a distribution from raw probabilities, validating the invariants.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(InferenceError::Empty);
        }
        for (index, &value) in probs.iter().enumerate() {
            if !value.is_finite() {
                return Err(InferenceError::NonFinite { index, value });
            }
            if value < 0.0 {
                return Err(InferenceError::NegativeProbability { index, value });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PROBABILITY_TOLERANCE {
            return Err(InferenceError::NotNormalized {
                sum,
                tolerance: PROBABILITY_TOLERANCE,
            });
        }
        Ok(Self {
            probs,
            labels: None,
        })
    }

    /// Same as [`Categorical::new`] but attaches one label per outcome.
    pub fn with_labels(probs: Vec<f64>, labels: Vec<String>) -> Result<Self> {
        if probs.len() != labels.len() {
            return Err(InferenceError::DimensionMismatch(format!(
                "{} probabilities but {} labels",
                probs.len(),
                labels.len()
            )));
        }
        let mut dist = Self::new(probs)?;
        dist.labels = Some(labels);
        Ok(dist)
    }

    /// Uniform distribution over `n` outcomes.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(InferenceError::Empty);
        }
        Self::new(vec![1.0 / n as f64; n])
    }

    /// Distribution with all mass on a single outcome.
    pub fn delta(n: usize, outcome: usize) -> Result<Self> {
        if outcome >= n {
            return Err(InferenceError::OutcomeOutOfRange {
                index: outcome,
                outcomes: n,
            });
        }
        let mut probs = vec![0.0; n];
        probs[outcome] = 1.0;
        Self::new(probs)
    }

    /// Two-outcome distribution `[weight, 1 - weight]`.
    pub fn from_weight(weight: f64) -> Result<Self> {
        if !weight.is_finite() {
            return Err(InferenceError::NonFinite {
                index: 0,
                value: weight,
            });
        }
        if !(0.0..=1.0).contains(&weight) {
            return Err(InferenceError::NegativeProbability {
                index: if weight < 0.0 { 0 } else { 1 },
                value: weight.min(1.0 - weight),
            });
        }
        Self::new(vec![weight, 1.0 - weight])
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of outcome `index`; panics if out of range.
    pub fn prob(&self, index: usize) -> f64 {
        self.probs[index]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Replaces the label set, keeping the probabilities.
    pub fn relabeled(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.probs.len() {
            return Err(InferenceError::DimensionMismatch(format!(
                "{} probabilities but {} labels",
                self.probs.len(),
                labels.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Index of the most probable outcome (first one on ties).
    pub fn argmax(&self) -> usize {
        argmax(&self.probs)
    }

    pub(crate) fn from_normalized(probs: Vec<f64>) -> Self {
        Self {
            probs,
            labels: None,
        }
    }
}

pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Normalizes non-negative weights into probabilities.
///
/// The largest entry is pinned to `1 - sum(others)` so the result sums to
/// one exactly, which keeps symmetric models bit-for-bit symmetric.
pub(crate) fn normalized(mut weights: Vec<f64>) -> Result<Vec<f64>> {
    let total: f64 = weights.iter().sum();
    if !total.is_finite() || total <= 0.0 {
        return Err(InferenceError::DegenerateEvidence);
    }
    for w in weights.iter_mut() {
        *w /= total;
    }
    let pivot = argmax(&weights);
    let rest: f64 = weights
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != pivot)
        .map(|(_, &w)| w)
        .sum();
    weights[pivot] = 1.0 - rest;
    Ok(weights)
}

/// Softmax with an inverse-temperature scale: `exp(scale*v_i) / sum_j exp(scale*v_j)`.
///
/// Stabilized by max-subtraction, so arbitrarily large inputs do not overflow.
pub fn softmax(values: &[f64], scale: f64) -> Result<Categorical> {
    if values.is_empty() {
        return Err(InferenceError::Empty);
    }
    if !scale.is_finite() {
        return Err(InferenceError::NonFinite {
            index: 0,
            value: scale,
        });
    }
    let mut scaled = Vec::with_capacity(values.len());
    for (index, &value) in values.iter().enumerate() {
        let s = scale * value;
        if !s.is_finite() {
            return Err(InferenceError::NonFinite { index, value });
        }
        scaled.push(s);
    }
    let max = scaled.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = scaled.iter().map(|&s| (s - max).exp()).collect();
    Ok(Categorical::from_normalized(normalized(exps)?))
}

/// Shannon entropy in nats, with `0 ln 0 := 0`.
pub fn shannon_entropy(p: &Categorical) -> f64 {
    p.probs()
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.ln())
        .sum()
}

/// Kullback-Leibler divergence `KL(p || q)` in nats.
///
/// Returns `f64::INFINITY` when `p` puts mass where `q` has none; that is a
/// documented sentinel, not an error.
pub fn kl_divergence(p: &Categorical, q: &Categorical) -> Result<f64> {
    if p.len() != q.len() {
        return Err(InferenceError::DimensionMismatch(format!(
            "KL over {} vs {} outcomes",
            p.len(),
            q.len()
        )));
    }
    let mut total = 0.0;
    for (&pi, &qi) in p.probs().iter().zip(q.probs()) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Ok(f64::INFINITY);
        }
        total += pi * (pi / qi).ln();
    }
    Ok(total)
}
