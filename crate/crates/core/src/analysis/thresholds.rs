//! Reading threshold strategies off discrete-game profiles.
//!
//! Hand `i` of `N` stands for the point `(i − 0.5)/N` of the continuous
//! game, so the boundary between hands `b` and `b + 1` sits at `b/N`.
//! Boundaries are reported as `b`, directly comparable with `N·x`.

use std::ops::RangeInclusive;

use crate::game::{BehaviorProfile, GameTree, Player};
use crate::poker::strategy_by_hand;

/// Position of hand `i` (1-based) on the unit interval.
pub fn hand_position(hand: usize, hands: usize) -> f64 {
    (hand as f64 - 0.5) / hands as f64
}

/// Maximal runs of hands (1-based, inclusive) where `values > level`.
pub fn regions_above(values: &[f64], level: f64) -> Vec<RangeInclusive<usize>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, &v) in values.iter().enumerate() {
        match (v > level, start) {
            (true, None) => start = Some(i + 1),
            (false, Some(s)) => {
                out.push(s..=i);
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(s..=values.len());
    }
    out
}

/// Boundaries `b` where `values` crosses `level` between hands `b` and `b + 1`.
pub fn crossings(values: &[f64], level: f64) -> Vec<usize> {
    values
        .windows(2)
        .enumerate()
        .filter(|(_, w)| (w[0] > level) != (w[1] > level))
        .map(|(i, _)| i + 1)
        .collect()
}

/// First boundary at or after hand `from` where the curve rises above `level`.
pub fn first_rise(values: &[f64], level: f64, from: usize) -> Option<usize> {
    (from.max(1)..values.len()).find(|&b| values[b - 1] <= level && values[b] > level)
}

/// First boundary at or after hand `from` where the curve drops to `level` or below.
pub fn first_fall(values: &[f64], level: f64, from: usize) -> Option<usize> {
    (from.max(1)..values.len()).find(|&b| values[b - 1] > level && values[b] <= level)
}

/// Per-hand columns of player 1's bet and player 2's call probability in
/// the asymmetric game.
pub fn asymmetric_curves(tree: &GameTree, profile: &BehaviorProfile) -> (Vec<f64>, Vec<f64>) {
    let bet = strategy_by_hand(tree, profile, Player::One, "")
        .into_iter()
        .map(|r| r[1])
        .collect();
    let call = strategy_by_hand(tree, profile, Player::Two, "b")
        .into_iter()
        .map(|r| r[1])
        .collect();
    (bet, call)
}

/// Probabilities of whole action plans per hand, e.g. `check-raise`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanCurves {
    pub labels: Vec<&'static str>,
    /// `probs[k][h]`: plan `labels[k]` with hand `h + 1`.
    pub probs: Vec<Vec<f64>>,
}

impl PlanCurves {
    pub fn get(&self, label: &str) -> Option<&[f64]> {
        let k = self.labels.iter().position(|l| *l == label)?;
        Some(&self.probs[k])
    }

    /// Label of the most likely plan for every hand (lowest index on ties).
    pub fn dominant(&self) -> Vec<&'static str> {
        let hands = self.probs.first().map_or(0, Vec::len);
        (0..hands)
            .map(|h| {
                let col: Vec<f64> = self.probs.iter().map(|p| p[h]).collect();
                self.labels[crate::solvers::decision::argmax(&col)]
            })
            .collect()
    }
}

fn plans(
    rows: &[Vec<Vec<f64>>],
    spec: &[(&'static str, &[(usize, usize)])],
) -> PlanCurves {
    let hands = rows[0].len();
    PlanCurves {
        labels: spec.iter().map(|(l, _)| *l).collect(),
        probs: spec
            .iter()
            .map(|(_, path)| {
                (0..hands)
                    .map(|h| path.iter().map(|&(set, a)| rows[set][h][a]).product())
                    .collect()
            })
            .collect(),
    }
}

/// Player 1's five plans in the bet/raise game.
pub fn bet_raise_p1_plans(tree: &GameTree, profile: &BehaviorProfile) -> PlanCurves {
    let rows = [
        strategy_by_hand(tree, profile, Player::One, ""),
        strategy_by_hand(tree, profile, Player::One, "kb"),
        strategy_by_hand(tree, profile, Player::One, "br"),
    ];
    plans(
        &rows,
        &[
            ("check-fold", &[(0, 0), (1, 0)]),
            ("check-call", &[(0, 0), (1, 1)]),
            ("check-raise", &[(0, 0), (1, 2)]),
            ("bet-fold", &[(0, 1), (2, 0)]),
            ("bet-call", &[(0, 1), (2, 1)]),
        ],
    )
}

/// Player 2's plans after player 1 checks.
pub fn bet_raise_p2_check_plans(tree: &GameTree, profile: &BehaviorProfile) -> PlanCurves {
    let rows = [
        strategy_by_hand(tree, profile, Player::Two, "k"),
        strategy_by_hand(tree, profile, Player::Two, "kbr"),
    ];
    plans(
        &rows,
        &[
            ("check", &[(0, 0)]),
            ("bet-fold", &[(0, 1), (1, 0)]),
            ("bet-call", &[(0, 1), (1, 1)]),
        ],
    )
}

/// Player 2's responses to a bet.
pub fn bet_raise_p2_bet_plans(tree: &GameTree, profile: &BehaviorProfile) -> PlanCurves {
    let rows = [strategy_by_hand(tree, profile, Player::Two, "b")];
    plans(
        &rows,
        &[("fold", &[(0, 0)]), ("call", &[(0, 1)]), ("raise", &[(0, 2)])],
    )
}

/// A threshold located in a discrete profile, as a boundary in hand units.
#[derive(Clone, Debug, PartialEq)]
pub struct LocatedThreshold {
    pub label: &'static str,
    /// Where the continuous game puts it, `N·x`.
    pub expected: f64,
    pub found: Option<usize>,
}

impl LocatedThreshold {
    pub fn within(&self, tolerance: f64) -> bool {
        self.found
            .is_some_and(|b| (b as f64 - self.expected).abs() <= tolerance)
    }
}

/// Locates the determined thresholds of the bet/raise game (`x1, x2, x3,
/// x6` for player 1 and all six for player 2) by 0.5-crossings of the plan
/// curves. `reference` supplies the expected fractions.
pub fn locate_bet_raise_thresholds(
    tree: &GameTree,
    profile: &BehaviorProfile,
    reference: &crate::poker::ReferenceSolution,
) -> Vec<LocatedThreshold> {
    let p1 = bet_raise_p1_plans(tree, profile);
    let after_check = bet_raise_p2_check_plans(tree, profile);
    let after_bet = bet_raise_p2_bet_plans(tree, profile);
    let n = p1.probs[0].len();
    let last_of = |v: &[f64]| regions_above(v, 0.5).first().map(|r| *r.end());
    let call_start = first_rise(after_bet.get("call").unwrap(), 0.5, 1);
    let located: [(&'static str, Option<usize>); 10] = [
        ("x1", first_fall(p1.get("bet-fold").unwrap(), 0.5, 1)),
        ("x2", last_of(p1.get("check-fold").unwrap())),
        ("x3", first_rise(p1.get("check-call").unwrap(), 0.5, 1)),
        ("x6", first_rise(p1.get("bet-call").unwrap(), 0.5, 1)),
        ("y1_1", first_fall(after_check.get("bet-fold").unwrap(), 0.5, 1)),
        ("y2_1", last_of(after_check.get("check").unwrap())),
        ("y3_1", first_rise(after_check.get("bet-call").unwrap(), 0.5, 1)),
        // Facing a bet: fold, bluff-raise, call, value-raise. The bluff
        // raises are often mixed below 0.5, so the fold and call edges
        // bound that interval.
        ("y1_2", first_fall(after_bet.get("fold").unwrap(), 0.5, 1)),
        ("y2_2", call_start),
        ("y3_2", call_start.and_then(|c| first_rise(after_bet.get("raise").unwrap(), 0.5, c))),
    ];
    let sets = std::iter::once(&reference.p1_thresholds).chain(&reference.p2_thresholds);
    let expected = |label: &str| {
        sets.clone()
            .find_map(|s| s.get(label))
            .and_then(|t| t.fixed_value())
            .expect("determined threshold")
            * n as f64
    };
    located
        .into_iter()
        .map(|(label, found)| LocatedThreshold {
            label,
            expected: expected(label),
            found,
        })
        .collect()
}

/// Player 1's bet region in the asymmetric game, when it has the
/// bet-check-bet shape: the boundaries `(b1, b2)` with betting exactly on
/// hands `1..=b1` and `b2+1..=N`.
pub fn asymmetric_bet_boundaries(bet: &[f64]) -> Option<(usize, usize)> {
    match regions_above(bet, 0.5).as_slice() {
        [low, high] if *low.start() == 1 && *high.end() == bet.len() => {
            Some((*low.end(), *high.start() - 1))
        }
        _ => None,
    }
}
