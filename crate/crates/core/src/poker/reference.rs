//! Closed-form equilibrium thresholds of the continuous (hands uniform on
//! `[0, 1]`) versions of the two games.

use serde::Serialize;

use super::GameParams;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdValue {
    Fixed(f64),
    /// Any value that keeps the set ascending.
    Free,
    /// A fixed offset from another (free) threshold.
    Offset { from: &'static str, delta: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Threshold {
    pub label: &'static str,
    pub value: ThresholdValue,
}

impl Threshold {
    fn fixed(label: &'static str, value: f64) -> Self {
        Threshold { label, value: ThresholdValue::Fixed(value) }
    }

    pub fn fixed_value(&self) -> Option<f64> {
        match self.value {
            ThresholdValue::Fixed(v) => Some(v),
            _ => None,
        }
    }
}

/// Thresholds splitting `[0, 1]` into intervals, each played with one
/// action sequence; `intervals.len() == thresholds.len() + 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdSet {
    pub situation: &'static str,
    pub thresholds: Vec<Threshold>,
    pub intervals: Vec<&'static str>,
}

impl ThresholdSet {
    pub fn get(&self, label: &str) -> Option<&Threshold> {
        self.thresholds.iter().find(|t| t.label == label)
    }

    /// Fixed thresholds are strictly ascending and inside `(0, 1)`.
    pub fn is_consistent(&self) -> bool {
        let fixed: Vec<f64> = self.thresholds.iter().filter_map(Threshold::fixed_value).collect();
        fixed.iter().all(|&x| x > 0.0 && x < 1.0) && fixed.windows(2).all(|w| w[0] < w[1])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReferenceSolution {
    pub p1_thresholds: ThresholdSet,
    pub p2_thresholds: Vec<ThresholdSet>,
    /// Value to player 1, when known.
    pub game_value: Option<f64>,
    pub free_thresholds: Vec<&'static str>,
}

/// Asymmetric game with ante `A` and bet `B`. Player 1 bets outside
/// `(x1, x2)`; player 2 calls above `y1`, the one pure threshold that keeps
/// player 1 indifferent at both `x1` and `x2`. It calls on a fraction
/// `A/(A+B)` of `(x1, x2)`, i.e. `y1 = x2 − (x2 − x1)·A/(A+B)`.
pub fn asymmetric_reference(ante: f64, bet: f64) -> ReferenceSolution {
    let (a, b) = (ante, bet);
    let denom = 4.0 * a * a + 5.0 * a * b + b * b;
    let x1 = a * b / denom;
    let x2 = (2.0 * a * a + 4.0 * a * b + b * b) / denom;
    let y1 = (3.0 * a * b + b * b) / denom;
    ReferenceSolution {
        p1_thresholds: ThresholdSet {
            situation: "player 1 opening",
            thresholds: vec![Threshold::fixed("x1", x1), Threshold::fixed("x2", x2)],
            intervals: vec!["bet", "check", "bet"],
        },
        p2_thresholds: vec![ThresholdSet {
            situation: "player 2 facing a bet",
            thresholds: vec![Threshold::fixed("y1", y1)],
            intervals: vec!["fold", "call"],
        }],
        game_value: None,
        free_thresholds: Vec::new(),
    }
}

/// Bet/raise game at pot 1, bet 1, raise 1; other stakes are unsupported.
pub fn bet_raise_reference(params: &GameParams) -> Result<ReferenceSolution> {
    if params.pot() != 1.0 || params.bet != 1.0 || params.raise != 1.0 {
        return Err(Error::Unsupported(format!(
            "bet/raise reference solution is only known for pot=1, bet=1, raise=1 (got pot={}, bet={}, raise={})",
            params.pot(),
            params.bet,
            params.raise
        )));
    }
    let p1 = ThresholdSet {
        situation: "player 1 action sequence",
        thresholds: vec![
            Threshold::fixed("x1", 64.0 / 1083.0),
            Threshold::fixed("x2", 369.0 / 722.0),
            Threshold::fixed("x3", 10.0 / 19.0),
            Threshold {
                label: "x4",
                value: ThresholdValue::Offset { from: "x5", delta: -32.0 / 1083.0 },
            },
            Threshold { label: "x5", value: ThresholdValue::Free },
            Threshold::fixed("x6", 307.0 / 361.0),
            Threshold {
                label: "x7",
                value: ThresholdValue::Offset { from: "x8", delta: -22.0 / 361.0 },
            },
            Threshold { label: "x8", value: ThresholdValue::Free },
        ],
        intervals: vec![
            "bet-fold",
            "check-fold",
            "check-raise",
            "check-call",
            "bet-fold",
            "check-call",
            "bet-call",
            "check-raise",
            "bet-call",
        ],
    };
    let after_check = ThresholdSet {
        situation: "player 2 facing a check",
        thresholds: vec![
            Threshold::fixed("y1_1", 8.0 / 57.0),
            Threshold::fixed("y2_1", 41.0 / 57.0),
            Threshold::fixed("y3_1", 15.0 / 19.0),
        ],
        intervals: vec!["bet-fold", "check", "bet-fold", "bet-call"],
    };
    let after_bet = ThresholdSet {
        situation: "player 2 facing a bet",
        thresholds: vec![
            Threshold::fixed("y1_2", 0.5),
            Threshold::fixed("y2_2", 10.0 / 19.0),
            Threshold::fixed("y3_2", 17.0 / 19.0),
        ],
        intervals: vec!["fold", "raise", "call", "raise"],
    };
    Ok(ReferenceSolution {
        p1_thresholds: p1,
        p2_thresholds: vec![after_check, after_bet],
        game_value: Some(-44.0 / 1083.0),
        free_thresholds: vec!["x5", "x8"],
    })
}
