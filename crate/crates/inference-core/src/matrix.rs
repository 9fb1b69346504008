//! Column-stochastic conditional probability tables.
//!
//! Rows index child outcomes, columns index parent states; each column is a
//! distribution over outcomes given that state. These tables house both
//! observation models and transition models.

use serde::Serialize;

use crate::categorical::{normalized, softmax, Categorical, PROBABILITY_TOLERANCE};
use crate::error::{InferenceError, Result};

/// Additive floor applied to likelihood entries before taking logarithms in
/// [`precision_weighted_likelihood`], preventing `ln(0)`.
pub const LIKELIHOOD_FLOOR: f64 = 0.018_315_638_888_734_18; // exp(-4)

/// A column-stochastic matrix: `entry(outcome, state) = p(outcome | state)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct StochasticMatrix {
    rows: Vec<Vec<f64>>,
}

impl StochasticMatrix {
    /// Validates a row-major table: rectangular, non-negative, columns
    /// summing to one within [`PROBABILITY_TOLERANCE`].
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(InferenceError::Empty);
        }
        let n_cols = rows[0].len();
        for row in &rows {
            if row.len() != n_cols {
                return Err(InferenceError::DimensionMismatch(format!(
                    "ragged matrix: expected {} columns, found {}",
                    n_cols,
                    row.len()
                )));
            }
        }
        for (r, row) in rows.iter().enumerate() {
            for (c, &value) in row.iter().enumerate() {
                if !value.is_finite() {
                    return Err(InferenceError::NonFinite {
                        index: r * n_cols + c,
                        value,
                    });
                }
                if value < 0.0 {
                    return Err(InferenceError::NegativeProbability {
                        index: r * n_cols + c,
                        value,
                    });
                }
            }
        }
        for c in 0..n_cols {
            let sum: f64 = rows.iter().map(|row| row[c]).sum();
            if (sum - 1.0).abs() > PROBABILITY_TOLERANCE {
                return Err(InferenceError::ColumnNotStochastic {
                    column: c,
                    sum,
                    tolerance: PROBABILITY_TOLERANCE,
                });
            }
        }
        Ok(Self { rows })
    }

    /// n-by-n identity mapping (deterministic likelihood).
    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|r| (0..n).map(|c| if r == c { 1.0 } else { 0.0 }).collect())
            .collect();
        Self { rows }
    }

    /// Matrix with uniform columns (completely uninformative likelihood).
    pub fn uniform(n_rows: usize, n_cols: usize) -> Self {
        Self {
            rows: vec![vec![1.0 / n_rows as f64; n_cols]; n_rows],
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.rows[row][col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.rows[row]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        self.rows.iter().map(|row| row[col]).collect()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Predictive outcome distribution `p(o) = sum_s entry(o, s) * states(s)`.
    pub fn predict(&self, states: &Categorical) -> Result<Categorical> {
        if states.len() != self.n_cols() {
            return Err(InferenceError::DimensionMismatch(format!(
                "matrix has {} states, distribution has {}",
                self.n_cols(),
                states.len()
            )));
        }
        let weights: Vec<f64> = self
            .rows
            .iter()
            .map(|row| row.iter().zip(states.probs()).map(|(a, q)| a * q).sum())
            .collect();
        Ok(Categorical::from_normalized(normalized(weights)?))
    }
}

/// Sharpens or blurs a likelihood mapping by a precision parameter:
/// each column becomes `softmax(zeta * ln(column + exp(-4)))`.
///
/// Precision zero yields uniform columns; increasing precision drives the
/// mapping toward the (floored) base matrix.
pub fn precision_weighted_likelihood(
    base: &StochasticMatrix,
    precision: f64,
) -> Result<StochasticMatrix> {
    if !precision.is_finite() || precision < 0.0 {
        return Err(InferenceError::NegativePrecision(precision));
    }
    let n_rows = base.n_rows();
    let n_cols = base.n_cols();
    let mut columns = Vec::with_capacity(n_cols);
    for c in 0..n_cols {
        let logs: Vec<f64> = (0..n_rows)
            .map(|r| (base.entry(r, c) + LIKELIHOOD_FLOOR).ln())
            .collect();
        columns.push(softmax(&logs, precision)?);
    }
    let rows = (0..n_rows)
        .map(|r| columns.iter().map(|col| col.prob(r)).collect())
        .collect();
    Ok(StochasticMatrix { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_bad_tables() {
        assert!(StochasticMatrix::new(vec![vec![0.5, 0.5], vec![0.5]]).is_err());
        assert!(StochasticMatrix::new(vec![vec![0.6, 0.5], vec![0.6, 0.5]]).is_err());
        assert!(StochasticMatrix::new(vec![vec![-0.1, 0.5], vec![1.1, 0.5]]).is_err());
        assert!(StochasticMatrix::new(vec![]).is_err());
    }

    #[test]
    fn identity_and_uniform_are_stochastic() {
        let i = StochasticMatrix::identity(3);
        assert_eq!(i.entry(1, 1), 1.0);
        assert_eq!(i.entry(0, 1), 0.0);
        let u = StochasticMatrix::uniform(4, 2);
        assert_eq!(u.entry(3, 1), 0.25);
        StochasticMatrix::new(u.rows().to_vec()).unwrap();
    }

    #[test]
    fn floor_constant_matches_exp_minus_four() {
        assert!((LIKELIHOOD_FLOOR - (-4.0f64).exp()).abs() < 1e-18);
    }

    #[test]
    fn precision_0_2_reproduces_published_mapping() {
        // sigma(0.2 * ln(I + exp(-4))) columnwise.
        let a = precision_weighted_likelihood(&StochasticMatrix::identity(2), 0.2).unwrap();
        assert!((a.entry(0, 0) - 0.691).abs() < 1e-3);
        assert!((a.entry(1, 0) - 0.309).abs() < 1e-3);
        assert!((a.entry(0, 1) - 0.309).abs() < 1e-3);
        assert!((a.entry(1, 1) - 0.691).abs() < 1e-3);
    }

    #[test]
    fn zero_precision_gives_uniform_columns() {
        let a = precision_weighted_likelihood(&StochasticMatrix::identity(2), 0.0).unwrap();
        assert_eq!(a.entry(0, 0), 0.5);
        assert_eq!(a.entry(1, 0), 0.5);
        assert_eq!(a.entry(0, 1), 0.5);
        assert_eq!(a.entry(1, 1), 0.5);
    }

    #[test]
    fn unit_precision_hand_arithmetic() {
        // Column 0 of the identity base: sigma([ln(1 + e^-4), -4]).
        let l1 = (1.0 + (-4.0f64).exp()).ln();
        let z = l1.exp() + (-4.0f64).exp();
        let expected = l1.exp() / z;
        let a = precision_weighted_likelihood(&StochasticMatrix::identity(2), 1.0).unwrap();
        assert!((a.entry(0, 0) - expected).abs() < 1e-12);
        assert!((a.entry(0, 0) - 0.9823).abs() < 1e-3);
        assert!((a.entry(1, 0) - 0.0177).abs() < 1e-3);
    }

    #[test]
    fn negative_precision_rejected() {
        assert!(precision_weighted_likelihood(&StochasticMatrix::identity(2), -0.1).is_err());
        assert!(precision_weighted_likelihood(&StochasticMatrix::identity(2), f64::NAN).is_err());
    }

    #[test]
    fn rows_of_symmetric_output_sum_to_one_exactly() {
        // Needed downstream: uniform-prior evidence must be exactly one half.
        for zeta in [0.0, 0.2, 1.0, 3.7] {
            let a = precision_weighted_likelihood(&StochasticMatrix::identity(2), zeta).unwrap();
            assert_eq!(a.entry(0, 0) + a.entry(0, 1), 1.0);
            assert_eq!(a.entry(1, 0) + a.entry(1, 1), 1.0);
        }
    }

    #[test]
    fn predict_marginalizes() {
        let a = StochasticMatrix::new(vec![vec![0.691, 0.309], vec![0.309, 0.691]]).unwrap();
        let q = Categorical::new(vec![0.8, 0.2]).unwrap();
        let p = a.predict(&q).unwrap();
        assert!((p.prob(0) - (0.8 * 0.691 + 0.2 * 0.309)).abs() < 1e-12);
        let mismatched = Categorical::uniform(3).unwrap();
        assert!(a.predict(&mismatched).is_err());
    }

    proptest! {
        // Output stays column-stochastic across the whole precision range,
        // and the diagonal of an identity base never loses mass as precision grows.
        #[test]
        fn precision_weighting_preserves_stochasticity(zeta in 0.0f64..10.0, n in 2usize..5) {
            let a = precision_weighted_likelihood(&StochasticMatrix::identity(n), zeta).unwrap();
            for c in 0..n {
                let sum: f64 = a.column(c).iter().sum();
                prop_assert!((sum - 1.0).abs() < 1e-9);
                for r in 0..n {
                    prop_assert!(a.entry(r, c) >= 0.0);
                }
            }
        }

        #[test]
        fn identity_diagonal_non_decreasing_in_precision(zeta in 0.0f64..9.9) {
            let lo = precision_weighted_likelihood(&StochasticMatrix::identity(2), zeta).unwrap();
            let hi = precision_weighted_likelihood(&StochasticMatrix::identity(2), zeta + 0.1).unwrap();
            prop_assert!(hi.entry(0, 0) >= lo.entry(0, 0) - 1e-12);
        }
    }
}
