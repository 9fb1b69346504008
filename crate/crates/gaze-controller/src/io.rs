//! File formats: event scripts and frame CSV.
//!
//! Event scripts hold one event per line as `<kind> <timestamp_seconds>`;
//! blank lines and lines starting with `#` are skipped. Frame CSV uses a
//! fixed header and six-decimal formatting so identical inputs always
//! produce byte-identical files.

use crate::behavior::{SpeechEvent, SpeechEventKind};
use crate::error::{GazeError, Result};
use crate::trajectory::TrajectoryFrame;

pub const FRAME_CSV_HEADER: &str = "t,yaw,pitch,roll,gaze_x,gaze_y,blink";

/// Parses an event script, reporting the 1-based line number on failure.
pub fn parse_event_script(text: &str) -> Result<Vec<SpeechEvent>> {
    let mut events = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let kind_token = parts.next().expect("non-empty line");
        let kind: SpeechEventKind =
            kind_token
                .parse()
                .map_err(|e: GazeError| GazeError::MalformedScript {
                    line,
                    reason: e.to_string(),
                })?;
        let timestamp_token = parts.next().ok_or_else(|| GazeError::MalformedScript {
            line,
            reason: "missing timestamp".into(),
        })?;
        let timestamp: f64 =
            timestamp_token
                .parse()
                .map_err(|_| GazeError::MalformedScript {
                    line,
                    reason: format!("timestamp '{timestamp_token}' is not a number"),
                })?;
        if !timestamp.is_finite() || timestamp < 0.0 {
            return Err(GazeError::MalformedScript {
                line,
                reason: format!("timestamp {timestamp} must be a non-negative real"),
            });
        }
        if let Some(extra) = parts.next() {
            return Err(GazeError::MalformedScript {
                line,
                reason: format!("unexpected trailing token '{extra}'"),
            });
        }
        events.push(SpeechEvent::new(kind, timestamp));
    }
    Ok(events)
}

/// Renders an event stream back into script form.
pub fn format_event_script(events: &[SpeechEvent]) -> String {
    let mut out = String::new();
    for event in events {
        out.push_str(event.kind.label());
        out.push(' ');
        out.push_str(&format!("{:.6}\n", event.timestamp));
    }
    out
}

/// Serializes frames with the fixed header and six-decimal floats.
pub fn frames_to_csv(frames: &[TrajectoryFrame]) -> String {
    let mut out = String::with_capacity(32 * (frames.len() + 1));
    out.push_str(FRAME_CSV_HEADER);
    out.push('\n');
    for f in frames {
        out.push_str(&format!(
            "{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{}\n",
            f.t, f.yaw, f.pitch, f.roll, f.gaze_x, f.gaze_y, f.blink
        ));
    }
    out
}

/// Parses frame CSV produced by [`frames_to_csv`].
pub fn frames_from_csv(text: &str) -> Result<Vec<TrajectoryFrame>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == FRAME_CSV_HEADER => {}
        Some((_, header)) => {
            return Err(GazeError::MalformedCsv {
                line: 1,
                reason: format!("unexpected header '{header}'"),
            })
        }
        None => {
            return Err(GazeError::MalformedCsv {
                line: 1,
                reason: "empty file".into(),
            })
        }
    }
    let mut frames = Vec::new();
    for (index, raw) in lines {
        let line = index + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').collect();
        if fields.len() != 7 {
            return Err(GazeError::MalformedCsv {
                line,
                reason: format!("expected 7 fields, found {}", fields.len()),
            });
        }
        let num = |i: usize| -> Result<f64> {
            fields[i].parse().map_err(|_| GazeError::MalformedCsv {
                line,
                reason: format!("field '{}' is not a number", fields[i]),
            })
        };
        let blink: u8 = fields[6].parse().map_err(|_| GazeError::MalformedCsv {
            line,
            reason: format!("blink '{}' is not an integer in 0-100", fields[6]),
        })?;
        if blink > 100 {
            return Err(GazeError::MalformedCsv {
                line,
                reason: format!("blink {blink} outside 0-100"),
            });
        }
        frames.push(TrajectoryFrame {
            t: num(0)?,
            yaw: num(1)?,
            pitch: num(2)?,
            roll: num(3)?,
            gaze_x: num(4)?,
            gaze_y: num(5)?,
            blink,
        });
    }
    Ok(frames)
}
