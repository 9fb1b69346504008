//! Gaze choreography for an avatar robot that relays a remote speaker.
//!
//! A small state machine switches between eight designed behaviors on
//! speech events (start, breath, end-of-speech button); head swings are
//! eased by the phase response of a second-order lag so motion slows in
//! and out; the eyes lead the head and blink once at each end of a swing.
//! Sessions can be driven from an event script or detected directly from
//! raw PCM amplitude, and frames are emitted as deterministic CSV.

mod behavior;
mod detect;
mod easing;
mod error;
mod io;
mod session;
mod trajectory;

pub use behavior::{transition, BehaviorState, SpeechEvent, SpeechEventKind};
pub use detect::{decode_pcm_s16le, detect_events, DetectorConfig};
pub use easing::EasingSpec;
pub use error::{GazeError, Result};
pub use io::{
    format_event_script, frames_from_csv, frames_to_csv, parse_event_script, FRAME_CSV_HEADER,
};
pub use session::{drive, plan_session, SessionOutput, SessionSegment};
pub use trajectory::{
    control_blink_pattern, gaze_x_for_yaw, pose_at, render_behavior, ControlBlinkPattern,
    TrajectoryFrame,
};
