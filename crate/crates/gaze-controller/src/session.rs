//! Driving the behavior state machine over an event stream.

use serde::Serialize;

use crate::behavior::{transition, BehaviorState, SpeechEvent};
use crate::easing::EasingSpec;
use crate::error::{GazeError, Result};
use crate::trajectory::{pose_at, sample_count, TrajectoryFrame};

/// One stretch of the session spent in a single behavior.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SessionSegment {
    pub behavior: BehaviorState,
    pub start: f64,
    pub end: f64,
}

/// Frames plus the behavior trace that produced them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SessionOutput {
    pub frames: Vec<TrajectoryFrame>,
    pub trace: Vec<SessionSegment>,
}

impl SessionOutput {
    pub fn behavior_ids(&self) -> Vec<u8> {
        self.trace.iter().map(|s| s.behavior.id()).collect()
    }
}

/// Splits the session timeline into behavior segments.
///
/// The machine starts centered at t = 0. Events trigger the designed
/// transitions; shifts complete into their hold after the swing duration;
/// events with no designed row leave the state unchanged. The session ends
/// one swing duration after the last event (so a final return to center
/// plays out fully), or after one hold duration when there are no events.
pub fn plan_session(events: &[SpeechEvent], spec: &EasingSpec) -> Result<Vec<SessionSegment>> {
    spec.validate()?;
    let mut previous = 0.0f64;
    for event in events {
        if !event.timestamp.is_finite() || event.timestamp < 0.0 {
            return Err(GazeError::InvalidParameter(format!(
                "event timestamp {} must be a non-negative real",
                event.timestamp
            )));
        }
        if event.timestamp < previous {
            return Err(GazeError::OutOfOrderEvent {
                timestamp: event.timestamp,
                previous,
            });
        }
        previous = event.timestamp;
    }

    let session_end = match events.last() {
        Some(last) => last.timestamp + spec.duration,
        None => spec.hold_duration,
    };

    let mut segments: Vec<SessionSegment> = Vec::new();
    let mut state = BehaviorState::Center;
    let mut since = 0.0f64;
    // Completion time of the shift currently in flight, if any.
    let mut completes_at: Option<f64> = None;

    let close = |segments: &mut Vec<SessionSegment>,
                 state: BehaviorState,
                 since: f64,
                 end: f64| {
        if end > since {
            segments.push(SessionSegment {
                behavior: state,
                start: since,
                end,
            });
        }
    };

    for event in events {
        // Let any pending swing finish before this event acts.
        if let Some(done) = completes_at {
            if done <= event.timestamp {
                if let Some(hold) = state.completion_successor() {
                    close(&mut segments, state, since, done);
                    state = hold;
                    since = done;
                }
                completes_at = None;
            }
        }
        let next = transition(state, event.kind);
        if next != state {
            close(&mut segments, state, since, event.timestamp);
            state = next;
            since = event.timestamp;
            completes_at = next.is_shift().then_some(event.timestamp + spec.duration);
        }
    }

    // Wind down: finish an in-flight swing, then hold until the session end.
    if let Some(done) = completes_at {
        if done < session_end {
            if let Some(hold) = state.completion_successor() {
                close(&mut segments, state, since, done);
                state = hold;
                since = done;
            }
        }
    }
    close(&mut segments, state, since, session_end);

    if segments.is_empty() {
        // Degenerate but possible: a single event at t = 0 with zero-length
        // aftermath cannot happen (session_end > 0), so this is just the
        // empty-stream guard.
        segments.push(SessionSegment {
            behavior: BehaviorState::Center,
            start: 0.0,
            end: session_end,
        });
    }
    Ok(segments)
}

/// Runs the state machine over the events and samples the whole session at
/// `rate` Hz on one global clock, so timestamps strictly increase across
/// behavior boundaries.
pub fn drive(events: &[SpeechEvent], spec: &EasingSpec, rate: f64) -> Result<SessionOutput> {
    if !rate.is_finite() || rate <= 0.0 {
        return Err(GazeError::InvalidParameter(format!(
            "sample rate {rate} must be positive"
        )));
    }
    let trace = plan_session(events, spec)?;
    let session_end = trace.last().map(|s| s.end).unwrap_or(0.0);
    let steps = sample_count(session_end, rate);
    let mut frames = Vec::with_capacity(steps + 1);
    let mut segment = 0usize;
    for i in 0..=steps {
        let t = i as f64 / rate;
        while segment + 1 < trace.len() && t >= trace[segment].end {
            segment += 1;
        }
        let active = &trace[segment];
        let mut frame = pose_at(active.behavior, t - active.start, spec);
        frame.t = t;
        frames.push(frame);
    }
    Ok(SessionOutput { frames, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::behavior::SpeechEventKind::*;

    fn ev(kind: crate::behavior::SpeechEventKind, t: f64) -> SpeechEvent {
        SpeechEvent::new(kind, t)
    }

    #[test]
    fn canonical_session_trace() {
        let events = [ev(SpeechStart, 1.0), ev(Breath, 3.0), ev(SpeechEnd, 5.0)];
        let out = drive(&events, &EasingSpec::default(), 100.0).unwrap();
        assert_eq!(out.behavior_ids(), vec![1, 2, 3, 4, 5, 8]);
        let last = out.frames.last().unwrap();
        assert!((last.t - 5.52).abs() < 1e-9);
        assert!(last.yaw.abs() < 0.5, "session should end centered");
    }

    #[test]
    fn empty_stream_holds_center() {
        let out = drive(&[], &EasingSpec::default(), 10.0).unwrap();
        assert_eq!(out.behavior_ids(), vec![1]);
        assert_eq!(out.frames.len(), 11);
        for f in &out.frames {
            assert_eq!(f.yaw, 0.0);
            assert_eq!(f.blink, 100);
        }
    }

    #[test]
    fn speech_end_during_first_hold_returns_via_behavior_seven() {
        let events = [ev(SpeechStart, 1.0), ev(SpeechEnd, 1.6)];
        let out = drive(&events, &EasingSpec::default(), 100.0).unwrap();
        assert_eq!(out.behavior_ids(), vec![1, 2, 3, 7]);
        let last = out.frames.last().unwrap();
        assert!(last.yaw.abs() < 0.5);
    }

    #[test]
    fn events_during_a_swing_are_ignored() {
        // Speech ends while behavior 2 is still swinging: no designed row,
        // so the machine keeps going and the hold absorbs nothing.
        let events = [ev(SpeechStart, 1.0), ev(SpeechEnd, 1.2)];
        let out = drive(&events, &EasingSpec::default(), 100.0).unwrap();
        assert_eq!(out.behavior_ids(), vec![1, 2, 3]);
    }

    #[test]
    fn repeated_breaths_alternate_targets() {
        let events = [
            ev(SpeechStart, 1.0),
            ev(Breath, 2.0),
            ev(Breath, 3.0),
            ev(Breath, 4.0),
            ev(SpeechEnd, 5.0),
        ];
        let out = drive(&events, &EasingSpec::default(), 100.0).unwrap();
        assert_eq!(out.behavior_ids(), vec![1, 2, 3, 4, 5, 6, 3, 4, 5, 8]);
    }

    #[test]
    fn out_of_order_events_name_the_offender() {
        let events = [ev(SpeechStart, 2.0), ev(Breath, 1.0)];
        let err = drive(&events, &EasingSpec::default(), 100.0).unwrap_err();
        match err {
            GazeError::OutOfOrderEvent { timestamp, .. } => assert_eq!(timestamp, 1.0),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn timestamps_strictly_increase() {
        let events = [ev(SpeechStart, 0.5), ev(Breath, 1.1), ev(SpeechEnd, 2.3)];
        let out = drive(&events, &EasingSpec::default(), 250.0).unwrap();
        for pair in out.frames.windows(2) {
            assert!(pair[1].t > pair[0].t);
        }
    }

    #[test]
    fn segments_tile_the_session() {
        let events = [ev(SpeechStart, 1.0), ev(Breath, 3.0), ev(SpeechEnd, 5.0)];
        let trace = plan_session(&events, &EasingSpec::default()).unwrap();
        assert_eq!(trace[0].start, 0.0);
        for pair in trace.windows(2) {
            assert_eq!(pair[0].end, pair[1].start);
        }
        assert!((trace.last().unwrap().end - 5.52).abs() < 1e-9);
    }

    #[test]
    fn speech_can_restart_after_a_full_return() {
        let events = [
            ev(SpeechStart, 1.0),
            ev(SpeechEnd, 2.0),
            ev(SpeechStart, 4.0),
        ];
        let out = drive(&events, &EasingSpec::default(), 100.0).unwrap();
        assert_eq!(out.behavior_ids(), vec![1, 2, 3, 7, 1, 2]);
    }
}
