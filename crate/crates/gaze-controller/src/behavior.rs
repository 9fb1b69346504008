//! The eight gaze behaviors and the speech events that drive them.
//!
//! The avatar robot idles looking between the two local participants (1),
//! turns to participant 1 when the remote participant starts speaking (2),
//! holds (3), swings to participant 2 on a breath (4), holds (5), swings
//! back on the next breath (6, then 3 again), and returns to center when
//! the speech ends (7 from participant 1, 8 from participant 2).

use serde::{Deserialize, Serialize};

use crate::error::{GazeError, Result};

/// One of the eight designed gaze behaviors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BehaviorState {
    /// 1: keep looking between the two local participants.
    Center,
    /// 2: direct the gaze at participant 1 when speech starts.
    ShiftCenterToP1,
    /// 3: keep looking at participant 1.
    HoldP1,
    /// 4: direct the gaze at participant 2 on a breath.
    ShiftP1ToP2,
    /// 5: keep looking at participant 2.
    HoldP2,
    /// 6: direct the gaze back at participant 1 on a breath.
    ShiftP2ToP1,
    /// 7: return to center when speech ends while watching participant 1.
    ReturnP1ToCenter,
    /// 8: return to center when speech ends while watching participant 2.
    ReturnP2ToCenter,
}

impl BehaviorState {
    pub const ALL: [BehaviorState; 8] = [
        BehaviorState::Center,
        BehaviorState::ShiftCenterToP1,
        BehaviorState::HoldP1,
        BehaviorState::ShiftP1ToP2,
        BehaviorState::HoldP2,
        BehaviorState::ShiftP2ToP1,
        BehaviorState::ReturnP1ToCenter,
        BehaviorState::ReturnP2ToCenter,
    ];

    pub fn id(self) -> u8 {
        match self {
            BehaviorState::Center => 1,
            BehaviorState::ShiftCenterToP1 => 2,
            BehaviorState::HoldP1 => 3,
            BehaviorState::ShiftP1ToP2 => 4,
            BehaviorState::HoldP2 => 5,
            BehaviorState::ShiftP2ToP1 => 6,
            BehaviorState::ReturnP1ToCenter => 7,
            BehaviorState::ReturnP2ToCenter => 8,
        }
    }

    pub fn from_id(id: u8) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.id() == id)
            .ok_or(GazeError::InvalidBehavior(id))
    }

    /// Shift behaviors move the head over the easing duration; the rest hold
    /// a fixed pose.
    pub fn is_shift(self) -> bool {
        matches!(
            self,
            BehaviorState::ShiftCenterToP1
                | BehaviorState::ShiftP1ToP2
                | BehaviorState::ShiftP2ToP1
                | BehaviorState::ReturnP1ToCenter
                | BehaviorState::ReturnP2ToCenter
        )
    }

    pub fn is_hold(self) -> bool {
        !self.is_shift()
    }

    /// Behavior entered automatically when a shift finishes its swing.
    pub fn completion_successor(self) -> Option<Self> {
        match self {
            BehaviorState::ShiftCenterToP1 | BehaviorState::ShiftP2ToP1 => {
                Some(BehaviorState::HoldP1)
            }
            BehaviorState::ShiftP1ToP2 => Some(BehaviorState::HoldP2),
            BehaviorState::ReturnP1ToCenter | BehaviorState::ReturnP2ToCenter => {
                Some(BehaviorState::Center)
            }
            _ => None,
        }
    }
}

impl std::fmt::Display for BehaviorState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.id())
    }
}

/// What happened on the remote side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpeechEventKind {
    /// The remote participant started speaking (detected from audio).
    SpeechStart,
    /// The remote participant took a breath (detected from audio).
    Breath,
    /// The remote participant pressed the end-of-speech button.
    SpeechEnd,
}

impl SpeechEventKind {
    pub fn label(self) -> &'static str {
        match self {
            SpeechEventKind::SpeechStart => "speech_start",
            SpeechEventKind::Breath => "breath",
            SpeechEventKind::SpeechEnd => "speech_end",
        }
    }
}

impl std::str::FromStr for SpeechEventKind {
    type Err = GazeError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "speech_start" => Ok(SpeechEventKind::SpeechStart),
            "breath" => Ok(SpeechEventKind::Breath),
            "speech_end" => Ok(SpeechEventKind::SpeechEnd),
            other => Err(GazeError::InvalidParameter(format!(
                "unknown event kind '{other}' (expected speech_start, breath or speech_end)"
            ))),
        }
    }
}

/// A timestamped speech event.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpeechEvent {
    pub kind: SpeechEventKind,
    pub timestamp: f64,
}

impl SpeechEvent {
    pub fn new(kind: SpeechEventKind, timestamp: f64) -> Self {
        Self { kind, timestamp }
    }
}

/// The behavior entered when `event` arrives in `state`.
///
/// Total: pairs outside the designed flow leave the state unchanged.
pub fn transition(state: BehaviorState, event: SpeechEventKind) -> BehaviorState {
    use BehaviorState::*;
    use SpeechEventKind::*;
    match (state, event) {
        (Center, SpeechStart) => ShiftCenterToP1,
        (HoldP1, Breath) => ShiftP1ToP2,
        (HoldP2, Breath) => ShiftP2ToP1,
        (HoldP1, SpeechEnd) => ReturnP1ToCenter,
        (HoldP2, SpeechEnd) => ReturnP2ToCenter,
        _ => state,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BehaviorState::*;
    use SpeechEventKind::*;

    #[test]
    fn designed_flow_rows() {
        assert_eq!(transition(Center, SpeechStart), ShiftCenterToP1);
        assert_eq!(transition(HoldP1, Breath), ShiftP1ToP2);
        assert_eq!(transition(HoldP2, Breath), ShiftP2ToP1);
        assert_eq!(transition(HoldP1, SpeechEnd), ReturnP1ToCenter);
        assert_eq!(transition(HoldP2, SpeechEnd), ReturnP2ToCenter);
    }

    #[test]
    fn undefined_pairs_are_ignored() {
        assert_eq!(transition(Center, Breath), Center);
        assert_eq!(transition(Center, SpeechEnd), Center);
        assert_eq!(transition(ShiftCenterToP1, SpeechStart), ShiftCenterToP1);
        assert_eq!(transition(ShiftP1ToP2, SpeechEnd), ShiftP1ToP2);
        assert_eq!(transition(ReturnP2ToCenter, Breath), ReturnP2ToCenter);
    }

    #[test]
    fn ids_round_trip() {
        for b in BehaviorState::ALL {
            assert_eq!(BehaviorState::from_id(b.id()).unwrap(), b);
        }
        assert!(BehaviorState::from_id(0).is_err());
        assert!(BehaviorState::from_id(9).is_err());
    }

    #[test]
    fn completions_enter_the_documented_holds() {
        assert_eq!(ShiftCenterToP1.completion_successor(), Some(HoldP1));
        assert_eq!(ShiftP1ToP2.completion_successor(), Some(HoldP2));
        assert_eq!(ShiftP2ToP1.completion_successor(), Some(HoldP1));
        assert_eq!(ReturnP1ToCenter.completion_successor(), Some(Center));
        assert_eq!(ReturnP2ToCenter.completion_successor(), Some(Center));
        assert_eq!(Center.completion_successor(), None);
        assert_eq!(HoldP1.completion_successor(), None);
    }

    #[test]
    fn shifts_and_holds_partition_the_states() {
        let shifts: Vec<u8> = BehaviorState::ALL
            .into_iter()
            .filter(|b| b.is_shift())
            .map(|b| b.id())
            .collect();
        assert_eq!(shifts, vec![2, 4, 6, 7, 8]);
        let holds: Vec<u8> = BehaviorState::ALL
            .into_iter()
            .filter(|b| b.is_hold())
            .map(|b| b.id())
            .collect();
        assert_eq!(holds, vec![1, 3, 5]);
    }
}
