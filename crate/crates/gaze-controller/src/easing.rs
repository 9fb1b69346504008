//! Slow-in/slow-out head easing from the phase response of a second-order
//! lag element.
//!
//! The yaw trajectory maps time onto an exponential frequency ramp
//! `omega = 10^((2t - 0.5) / 0.25)` and takes the inverted phase angle of
//! `1 / (s^2 + 2*zeta*s + 1)` at that frequency. The phase runs from 0 to
//! 180 degrees as omega sweeps the ramp and is 90 degrees at omega = 1
//! (t = 0.25 s) for every damping ratio, which pins the swing midpoint.
//! Damping `zeta_ease` sets how hard the motion eases in and out while the
//! total swing time stays fixed.

use serde::{Deserialize, Serialize};

use crate::error::{GazeError, Result};

/// Geometry and timing of one head swing plus the eye/blink dressing
/// applied to it.
///
/// `start_yaw`/`end_yaw` are the canonical swing endpoints: the angle of
/// eye contact with local participant 2 (-20 degrees) and with local
/// participant 1 (+10 degrees). Behaviors that swing between other anchor
/// points reuse these two angles and the center (0 degrees).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EasingSpec {
    /// Yaw at swing onset, degrees.
    pub start_yaw: f64,
    /// Yaw at swing end, degrees.
    pub end_yaw: f64,
    /// Swing duration, seconds.
    pub duration: f64,
    /// Slow-in/slow-out emphasis (damping ratio of the lag element), > 0.
    pub zeta_ease: f64,
    /// Time for the eyes to settle on the target, seconds; shorter than the
    /// head swing so the eyes lead.
    pub eye_lead: f64,
    /// Width of each triangular blink envelope, seconds.
    pub blink_width: f64,
    /// Eye overshoot past the target, as a fraction of the x travel.
    pub overshoot: f64,
    /// Downward gaze-y displacement at full blink closure, in gaze units.
    pub blink_dip: f64,
    /// Rendering length of hold behaviors, seconds.
    pub hold_duration: f64,
}

impl Default for EasingSpec {
    fn default() -> Self {
        Self {
            start_yaw: -20.0,
            end_yaw: 10.0,
            duration: 0.52,
            zeta_ease: 1.0,
            eye_lead: 0.31,
            blink_width: 0.12,
            overshoot: 0.10,
            blink_dip: 10.0,
            hold_duration: 1.0,
        }
    }
}

impl EasingSpec {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.start_yaw,
            self.end_yaw,
            self.duration,
            self.zeta_ease,
            self.eye_lead,
            self.blink_width,
            self.overshoot,
            self.blink_dip,
            self.hold_duration,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(GazeError::InvalidParameter(
                "easing parameters must be finite".into(),
            ));
        }
        if self.duration <= 0.0 {
            return Err(GazeError::InvalidParameter(format!(
                "duration {} must be positive",
                self.duration
            )));
        }
        if self.zeta_ease <= 0.0 {
            return Err(GazeError::InvalidParameter(format!(
                "zeta_ease {} must be positive",
                self.zeta_ease
            )));
        }
        if !(0.0 < self.eye_lead && self.eye_lead < self.duration) {
            return Err(GazeError::InvalidParameter(format!(
                "eye_lead {} must lie strictly inside (0, duration)",
                self.eye_lead
            )));
        }
        if self.blink_width <= 0.0 || 2.0 * self.blink_width > self.duration {
            return Err(GazeError::InvalidParameter(format!(
                "blink_width {} must be positive and fit twice in the duration",
                self.blink_width
            )));
        }
        if self.overshoot < 0.0 || self.blink_dip < 0.0 {
            return Err(GazeError::InvalidParameter(
                "overshoot and blink_dip must be non-negative".into(),
            ));
        }
        if self.hold_duration <= 0.0 {
            return Err(GazeError::InvalidParameter(format!(
                "hold_duration {} must be positive",
                self.hold_duration
            )));
        }
        Ok(())
    }

    /// Swing with the same dressing but different endpoints.
    pub fn with_endpoints(&self, start_yaw: f64, end_yaw: f64) -> Self {
        Self {
            start_yaw,
            end_yaw,
            ..*self
        }
    }

    /// Head yaw at `t` seconds after swing onset, in degrees, plus a flag
    /// saying whether `t` had to be clamped into `[0, duration]`.
    pub fn yaw_at(&self, t: f64) -> (f64, bool) {
        let clamped = !(0.0..=self.duration).contains(&t);
        let t = t.clamp(0.0, self.duration);
        let phase = inverted_phase_degrees(self.zeta_ease, frequency_ramp(t));
        let yaw = self.start_yaw + phase * (self.end_yaw - self.start_yaw) / 180.0;
        (yaw, clamped)
    }

    /// Blink closure fraction in [0, 1]: one triangular envelope starting at
    /// swing onset and one ending exactly at swing end.
    pub fn blink_closure_at(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, self.duration);
        let half = self.blink_width / 2.0;
        let centers = [half, self.duration - half];
        centers
            .iter()
            .map(|&c| (1.0 - (t - c).abs() / half).max(0.0))
            .fold(0.0, f64::max)
    }

    /// Eye openness at `t`, an integer from 0 (closed) to 100 (open).
    pub fn blink_openness_at(&self, t: f64) -> u8 {
        openness_from_closure(self.blink_closure_at(t))
    }

    /// Pupil position at `t` for a swing whose gaze moves from `from_x` to
    /// `to_x` on the eye display.
    ///
    /// The x coordinate travels linearly past the target by the overshoot
    /// fraction, returns, and settles at `eye_lead` seconds, ahead of the
    /// head. The y coordinate dips downward with each blink. Both
    /// coordinates are clamped to the display range [0, 100].
    pub fn eye_position_at(&self, t: f64, from_x: f64, to_x: f64) -> (f64, f64) {
        let t = t.clamp(0.0, self.duration);
        let travel = to_x - from_x;
        let peak = to_x + self.overshoot * travel;
        let peak_time = self.eye_lead / (1.0 + self.overshoot);
        let x = if t >= self.eye_lead || travel == 0.0 {
            to_x
        } else if t <= peak_time {
            from_x + (peak - from_x) * t / peak_time
        } else {
            peak + (to_x - peak) * (t - peak_time) / (self.eye_lead - peak_time)
        };
        let y = GAZE_CENTER_Y - self.blink_dip * self.blink_closure_at(t);
        (x.clamp(0.0, 100.0), y.clamp(0.0, 100.0))
    }
}

/// Exponential frequency ramp of the published easing law; the exponent is
/// written in absolute seconds, so the resonant midpoint always falls at
/// t = 0.25 s.
fn frequency_ramp(t: f64) -> f64 {
    10f64.powf((2.0 * t - 0.5) / 0.25)
}

/// Inverted phase of `1 / (s^2 + 2*zeta*s + 1)` at frequency `omega`, in
/// degrees. Runs monotonically from 0 through 90 (at omega = 1, any
/// damping) to 180.
fn inverted_phase_degrees(zeta: f64, omega: f64) -> f64 {
    (2.0 * zeta * omega).atan2(1.0 - omega * omega).to_degrees()
}

pub(crate) const GAZE_CENTER_Y: f64 = 50.0;

pub(crate) fn openness_from_closure(closure: f64) -> u8 {
    (100.0 * (1.0 - closure.clamp(0.0, 1.0))).round() as u8
}
