//! Frame synthesis for single behaviors and the control blink pattern.

use serde::Serialize;

use crate::behavior::BehaviorState;
use crate::easing::{openness_from_closure, EasingSpec, GAZE_CENTER_Y};
use crate::error::{GazeError, Result};

/// One timestamped sample of the robot pose: head rotation in degrees, pupil
/// position on the eye display in [0, 100], eye openness 0-100. Pitch and
/// roll stay at zero for every designed behavior.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryFrame {
    pub t: f64,
    pub yaw: f64,
    pub pitch: f64,
    pub roll: f64,
    pub gaze_x: f64,
    pub gaze_y: f64,
    pub blink: u8,
}

/// Horizontal pupil position corresponding to a head yaw, mapping the
/// participant-2 angle (-20) to 0 and the participant-1 angle (+10) to 75,
/// with center gaze at 50.
pub fn gaze_x_for_yaw(yaw: f64) -> f64 {
    (50.0 + 2.5 * yaw).clamp(0.0, 100.0)
}

impl BehaviorState {
    /// Start and end yaw of this behavior, anchored on the swing endpoints
    /// of `spec` (participant 2 at `start_yaw`, participant 1 at `end_yaw`,
    /// center at zero). Holds return a degenerate pair.
    pub fn yaw_endpoints(self, spec: &EasingSpec) -> (f64, f64) {
        let p1 = spec.end_yaw;
        let p2 = spec.start_yaw;
        match self {
            BehaviorState::Center => (0.0, 0.0),
            BehaviorState::ShiftCenterToP1 => (0.0, p1),
            BehaviorState::HoldP1 => (p1, p1),
            BehaviorState::ShiftP1ToP2 => (p1, p2),
            BehaviorState::HoldP2 => (p2, p2),
            BehaviorState::ShiftP2ToP1 => (p2, p1),
            BehaviorState::ReturnP1ToCenter => (p1, 0.0),
            BehaviorState::ReturnP2ToCenter => (p2, 0.0),
        }
    }

    /// How long rendering this behavior lasts under `spec`.
    pub fn render_duration(self, spec: &EasingSpec) -> f64 {
        if self.is_shift() {
            spec.duration
        } else {
            spec.hold_duration
        }
    }
}

pub(crate) fn sample_count(duration: f64, rate: f64) -> usize {
    (duration * rate + 1e-9).floor() as usize
}

/// Pose of `behavior` at `t` seconds after it was entered.
pub fn pose_at(behavior: BehaviorState, t: f64, spec: &EasingSpec) -> TrajectoryFrame {
    let (from_yaw, to_yaw) = behavior.yaw_endpoints(spec);
    if behavior.is_shift() {
        let swing = spec.with_endpoints(from_yaw, to_yaw);
        let (yaw, _) = swing.yaw_at(t);
        let (gaze_x, gaze_y) =
            swing.eye_position_at(t, gaze_x_for_yaw(from_yaw), gaze_x_for_yaw(to_yaw));
        TrajectoryFrame {
            t,
            yaw,
            pitch: 0.0,
            roll: 0.0,
            gaze_x,
            gaze_y,
            blink: swing.blink_openness_at(t),
        }
    } else {
        TrajectoryFrame {
            t,
            yaw: to_yaw,
            pitch: 0.0,
            roll: 0.0,
            gaze_x: gaze_x_for_yaw(to_yaw),
            gaze_y: GAZE_CENTER_Y,
            blink: 100,
        }
    }
}

/// Samples one behavior at `rate` Hz from t = 0 to its duration inclusive.
pub fn render_behavior(
    behavior: BehaviorState,
    rate: f64,
    spec: &EasingSpec,
) -> Result<Vec<TrajectoryFrame>> {
    if !rate.is_finite() || rate <= 0.0 {
        return Err(GazeError::InvalidParameter(format!(
            "sample rate {rate} must be positive"
        )));
    }
    spec.validate()?;
    let duration = behavior.render_duration(spec);
    let steps = sample_count(duration, rate);
    Ok((0..=steps)
        .map(|i| pose_at(behavior, i as f64 / rate, spec))
        .collect())
}

/// The blink pattern used when the robot holds center gaze throughout a
/// speech: one blink three seconds into the cycle and a double blink at the
/// six-second mark, repeating every six seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ControlBlinkPattern {
    /// Cycle length, seconds.
    pub cycle: f64,
    /// Center of the single blink within the cycle, seconds.
    pub single_at: f64,
    /// Width of each triangular envelope, seconds.
    pub blink_width: f64,
    /// Fully-open gap between the two envelopes of the double blink, seconds.
    pub double_gap: f64,
}

impl Default for ControlBlinkPattern {
    fn default() -> Self {
        Self {
            cycle: 6.0,
            single_at: 3.0,
            blink_width: 0.12,
            double_gap: 0.3,
        }
    }
}

impl ControlBlinkPattern {
    /// Eye openness at time `t` (seconds from session start).
    ///
    /// The cycle is anchored so the double blink straddles multiples of six
    /// seconds: envelope centers sit at phase `single_at`, phase 0, and
    /// phase `blink_width + double_gap`.
    pub fn openness_at(&self, t: f64) -> u8 {
        let phase = t.rem_euclid(self.cycle);
        let half = self.blink_width / 2.0;
        let centers = [self.single_at, 0.0, self.blink_width + self.double_gap];
        let closure = centers
            .iter()
            .map(|&c| {
                let d = (phase - c).abs();
                let d = d.min(self.cycle - d); // circular distance
                (1.0 - d / half).max(0.0)
            })
            .fold(0.0, f64::max);
        openness_from_closure(closure)
    }

    /// Center-gaze frames with this blink pattern, sampled at `rate` Hz.
    pub fn render(&self, duration: f64, rate: f64) -> Result<Vec<TrajectoryFrame>> {
        if !rate.is_finite() || rate <= 0.0 {
            return Err(GazeError::InvalidParameter(format!(
                "sample rate {rate} must be positive"
            )));
        }
        if !duration.is_finite() || duration <= 0.0 {
            return Err(GazeError::InvalidParameter(format!(
                "duration {duration} must be positive"
            )));
        }
        let steps = sample_count(duration, rate);
        Ok((0..=steps)
            .map(|i| {
                let t = i as f64 / rate;
                TrajectoryFrame {
                    t,
                    yaw: 0.0,
                    pitch: 0.0,
                    roll: 0.0,
                    gaze_x: 50.0,
                    gaze_y: GAZE_CENTER_Y,
                    blink: self.openness_at(t),
                }
            })
            .collect())
    }
}

/// Openness of the default control pattern at `t`.
pub fn control_blink_pattern(t: f64) -> u8 {
    ControlBlinkPattern::default().openness_at(t)
}
