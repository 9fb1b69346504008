//! Speech-event detection from raw PCM amplitude.
//!
//! Speech start is the first moment the windowed amplitude of the remote
//! participant's audio exceeds a threshold while the robot idles centered;
//! a breath is a sustained drop below a second threshold while the robot is
//! in the speech behaviors (2-6). The end of speech comes only from the
//! participant's button, never from audio, so this detector never emits it.

use std::collections::VecDeque;

use serde::Serialize;

use crate::behavior::{transition, BehaviorState, SpeechEvent, SpeechEventKind};
use crate::error::{GazeError, Result};

/// Thresholds and timing for amplitude-based detection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectorConfig {
    /// Audio sample rate, Hz.
    pub sample_rate: u32,
    /// Windowed amplitude must exceed this to start speech (0..=32767).
    pub start_threshold: i32,
    /// Windowed amplitude must stay below this to count as a breath.
    pub breath_threshold: i32,
    /// Trailing window over which amplitude is taken as max |sample|, seconds.
    pub window: f64,
    /// How long the amplitude must stay low before a breath fires, seconds.
    pub breath_hold: f64,
}

impl DetectorConfig {
    pub fn new(sample_rate: u32, start_threshold: i32, breath_threshold: i32) -> Self {
        Self {
            sample_rate,
            start_threshold,
            breath_threshold,
            window: 0.05,
            breath_hold: 0.2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_rate == 0 {
            return Err(GazeError::InvalidParameter(
                "sample rate must be positive".into(),
            ));
        }
        for (name, value) in [
            ("start threshold", self.start_threshold),
            ("breath threshold", self.breath_threshold),
        ] {
            if !(0..=i16::MAX as i32).contains(&value) {
                return Err(GazeError::InvalidParameter(format!(
                    "{name} {value} outside [0, 32767]"
                )));
            }
        }
        if !self.window.is_finite() || self.window <= 0.0 {
            return Err(GazeError::InvalidParameter(
                "window must be positive".into(),
            ));
        }
        if !self.breath_hold.is_finite() || self.breath_hold < 0.0 {
            return Err(GazeError::InvalidParameter(
                "breath hold must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

fn breath_eligible(state: BehaviorState) -> bool {
    (2..=6).contains(&state.id())
}

/// Scans the samples once, in order, emitting events as they become
/// detectable; an event at time t depends only on samples at or before t.
///
/// The given behavior state gates which events may fire and evolves under
/// the detector's own emitted events (audio alone can never end a speech).
pub fn detect_events(
    samples: &[i16],
    config: &DetectorConfig,
    current_state: BehaviorState,
) -> Result<Vec<SpeechEvent>> {
    config.validate()?;
    let rate = config.sample_rate as f64;
    let window_len = ((config.window * rate).round() as usize).max(1);
    let hold_len = ((config.breath_hold * rate).round() as usize).max(1);

    let mut state = current_state;
    let mut events = Vec::new();
    // Monotonic deque of (index, amplitude) for the sliding window max.
    let mut window: VecDeque<(usize, i32)> = VecDeque::new();
    let mut low_run: usize = 0;
    let mut breath_armed = true;

    for (i, &sample) in samples.iter().enumerate() {
        let amplitude = (sample as i32).abs();
        while window.back().is_some_and(|&(_, a)| a <= amplitude) {
            window.pop_back();
        }
        window.push_back((i, amplitude));
        while window.front().is_some_and(|&(j, _)| i >= window_len && j <= i - window_len) {
            window.pop_front();
        }
        let windowed = window.front().map(|&(_, a)| a).unwrap_or(0);
        let t = i as f64 / rate;

        if windowed > config.start_threshold && state == BehaviorState::Center {
            let event = SpeechEvent::new(SpeechEventKind::SpeechStart, t);
            state = transition(state, event.kind);
            events.push(event);
        }

        if windowed < config.breath_threshold {
            low_run += 1;
            if breath_armed && low_run >= hold_len && breath_eligible(state) {
                let event = SpeechEvent::new(SpeechEventKind::Breath, t);
                state = transition(state, event.kind);
                events.push(event);
                breath_armed = false;
            }
        } else {
            low_run = 0;
            breath_armed = true;
        }
    }
    Ok(events)
}

/// Decodes a raw headerless little-endian signed 16-bit mono stream.
pub fn decode_pcm_s16le(bytes: &[u8]) -> Result<Vec<i16>> {
    if !bytes.len().is_multiple_of(2) {
        return Err(GazeError::InvalidPcm(format!(
            "odd byte count {} for 16-bit samples",
            bytes.len()
        )));
    }
    Ok(bytes
        .chunks_exact(2)
        .map(|pair| i16::from_le_bytes([pair[0], pair[1]]))
        .collect())
}
