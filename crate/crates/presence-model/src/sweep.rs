//! Parameter sweeps over the expression probability.

use serde::Serialize;

use crate::condition::SimulationCondition;
use crate::error::{ModelError, Result};

/// Which model parameter the sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    /// Precision of the gaze observation model.
    Zeta11,
    /// First entry `a` of the attention prior `[a, 1-a]`.
    PriorWeight,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::Zeta11 => "zeta11",
            SweepParameter::PriorWeight => "prior-a",
        }
    }
}

impl std::str::FromStr for SweepParameter {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zeta11" | "zeta_1_1" => Ok(SweepParameter::Zeta11),
            "prior-a" | "prior_weight_a" => Ok(SweepParameter::PriorWeight),
            other => Err(ModelError::InvalidParameter(format!(
                "unknown sweep parameter '{other}' (expected zeta11 or prior-a)"
            ))),
        }
    }
}

/// One grid point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub value: f64,
    pub p_express: f64,
}

/// Evenly spaced grid from `from` to `to` inclusive; `steps = 1` degenerates
/// to the single point `from`.
pub fn linspace(from: f64, to: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(ModelError::InvalidParameter(
            "a sweep needs at least one step".into(),
        ));
    }
    if !from.is_finite() || !to.is_finite() {
        return Err(ModelError::InvalidParameter(
            "sweep bounds must be finite".into(),
        ));
    }
    if steps == 1 {
        return Ok(vec![from]);
    }
    if to <= from {
        return Err(ModelError::InvalidParameter(format!(
            "sweep upper bound {to} must exceed lower bound {from}"
        )));
    }
    let span = to - from;
    Ok((0..steps)
        .map(|i| from + span * i as f64 / (steps - 1) as f64)
        .collect())
}

/// Runs one condition per grid point, in grid order.
pub fn sweep(
    parameter: SweepParameter,
    grid: &[f64],
    base: &SimulationCondition,
) -> Result<Vec<SweepPoint>> {
    if grid.is_empty() {
        return Err(ModelError::InvalidParameter("empty sweep grid".into()));
    }
    for pair in grid.windows(2) {
        if pair[1] <= pair[0] {
            return Err(ModelError::InvalidParameter(format!(
                "sweep grid must be strictly increasing, found {} after {}",
                pair[1], pair[0]
            )));
        }
    }
    let valid = |v: f64| match parameter {
        SweepParameter::Zeta11 => v.is_finite() && v >= 0.0,
        SweepParameter::PriorWeight => (0.0..=1.0).contains(&v),
    };
    if let Some(&bad) = grid.iter().find(|&&v| !valid(v)) {
        return Err(ModelError::InvalidParameter(format!(
            "sweep value {bad} outside the valid range for {}",
            parameter.name()
        )));
    }
    grid.iter()
        .map(|&value| {
            let mut condition = *base;
            match parameter {
                SweepParameter::Zeta11 => condition.zeta_1_1 = value,
                SweepParameter::PriorWeight => condition.prior_weight_a = value,
            }
            let result = condition.run()?;
            Ok(SweepPoint {
                value,
                p_express: result.p_express,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Observation;

    #[test]
    fn precision_sweep_is_non_decreasing_for_direct_gaze() {
        let grid = linspace(0.0, 1.0, 21).unwrap();
        let points = sweep(
            SweepParameter::Zeta11,
            &grid,
            &SimulationCondition::default(),
        )
        .unwrap();
        assert_eq!(points.len(), 21);
        for pair in points.windows(2) {
            assert!(pair[1].p_express >= pair[0].p_express - 1e-12);
        }
    }

    #[test]
    fn prior_sweep_is_non_decreasing_for_direct_gaze() {
        let grid = linspace(0.0, 1.0, 21).unwrap();
        let points = sweep(
            SweepParameter::PriorWeight,
            &grid,
            &SimulationCondition::default(),
        )
        .unwrap();
        for pair in points.windows(2) {
            assert!(pair[1].p_express >= pair[0].p_express - 1e-12);
        }
    }

    #[test]
    fn single_point_sweep_matches_direct_run() {
        let base = SimulationCondition::default();
        let points = sweep(SweepParameter::Zeta11, &[0.2], &base).unwrap();
        let direct = base.run().unwrap();
        assert_eq!(points[0].p_express.to_bits(), direct.p_express.to_bits());
    }

    #[test]
    fn grid_validation() {
        let base = SimulationCondition::default();
        assert!(sweep(SweepParameter::Zeta11, &[], &base).is_err());
        assert!(sweep(SweepParameter::Zeta11, &[0.2, 0.1], &base).is_err());
        assert!(sweep(SweepParameter::Zeta11, &[-0.5, 0.2], &base).is_err());
        assert!(sweep(SweepParameter::PriorWeight, &[0.5, 1.5], &base).is_err());
    }

    #[test]
    fn linspace_endpoints() {
        let g = linspace(0.0, 1.0, 21).unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[20], 1.0);
        assert!((g[1] - 0.05).abs() < 1e-12);
        assert_eq!(linspace(0.3, 0.3, 1).unwrap(), vec![0.3]);
        assert!(linspace(1.0, 0.0, 5).is_err());
        assert!(linspace(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn averted_sweep_still_equal_at_zero_precision() {
        let direct = sweep(
            SweepParameter::Zeta11,
            &[0.0],
            &SimulationCondition::default(),
        )
        .unwrap();
        let averted = sweep(
            SweepParameter::Zeta11,
            &[0.0],
            &SimulationCondition {
                observation: Observation::AvertedGaze,
                ..SimulationCondition::default()
            },
        )
        .unwrap();
        assert_eq!(
            direct[0].p_express.to_bits(),
            averted[0].p_express.to_bits()
        );
    }
}
