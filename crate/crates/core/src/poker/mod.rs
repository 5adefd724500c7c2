//! The two poker benchmark games and their continuous-game reference
//! solutions.
//!
//! Both games deal each player an independent uniform hand in `1..=N`
//! (ties possible, split pot) from a single chance root, then play a short
//! fixed-size betting round. Payoffs are player 1's net change from the
//! pre-ante stack.

mod asymmetric;
mod bet_raise;
mod reference;

pub use asymmetric::build_asymmetric;
pub use bet_raise::build_bet_raise;
pub use reference::{
    asymmetric_reference, bet_raise_reference, ReferenceSolution, Threshold, ThresholdSet,
    ThresholdValue,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{GameBuilder, GameTree, InfoSetId, Player};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameKind {
    /// Check or bet, then fold or call.
    Asym,
    /// Bet and a single raise, including check-raise.
    BetRaise,
}

impl GameKind {
    /// Largest action count at any information set.
    pub fn max_actions(self) -> usize {
        match self {
            GameKind::Asym => 2,
            GameKind::BetRaise => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GameKind::Asym => "asym",
            GameKind::BetRaise => "betraise",
        }
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GameKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "asym" => Ok(GameKind::Asym),
            "betraise" => Ok(GameKind::BetRaise),
            other => Err(Error::Config(format!(
                "unknown game '{other}' (expected asym or betraise)"
            ))),
        }
    }
}

/// Stakes and hand count. The pot after antes is `2 * ante`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameParams {
    pub hands: u32,
    pub ante: f64,
    pub bet: f64,
    pub raise: f64,
    /// Minimum probability of every action in the perturbed game.
    pub epsilon: f64,
}

impl GameParams {
    pub fn new(hands: u32, pot: f64, bet: f64, raise: f64) -> Self {
        GameParams {
            hands,
            ante: pot / 2.0,
            bet,
            raise,
            epsilon: 0.0,
        }
    }

    /// Asymmetric game with pot `pot` and bet `bet`.
    pub fn asymmetric(hands: u32, pot: f64, bet: f64) -> Self {
        Self::new(hands, pot, bet, 1.0)
    }

    /// Bet/raise game with pot, bet and raise all one chip.
    pub fn bet_raise(hands: u32) -> Self {
        Self::new(hands, 1.0, 1.0, 1.0)
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn pot(&self) -> f64 {
        2.0 * self.ante
    }

    pub fn validate(&self, kind: GameKind) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!("{name} must be positive, got {v}")))
            }
        };
        if self.hands < 2 {
            return Err(Error::InvalidParams(format!(
                "need at least 2 hands, got {}",
                self.hands
            )));
        }
        positive("ante", self.ante)?;
        positive("bet", self.bet)?;
        if kind == GameKind::BetRaise {
            positive("raise", self.raise)?;
        }
        let max_eps = 1.0 / kind.max_actions() as f64;
        if !(self.epsilon >= 0.0 && self.epsilon < max_eps) {
            return Err(Error::InvalidParams(format!(
                "epsilon must lie in [0, {max_eps}), got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

/// Game family plus parameters; enough to rebuild the tree.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameSpec {
    pub kind: GameKind,
    pub params: GameParams,
}

impl GameSpec {
    pub fn build(&self) -> Result<GameTree> {
        match self.kind {
            GameKind::Asym => build_asymmetric(&self.params),
            GameKind::BetRaise => build_bet_raise(&self.params),
        }
    }

    pub fn reference(&self) -> Result<ReferenceSolution> {
        match self.kind {
            GameKind::Asym => Ok(asymmetric_reference(self.params.ante, self.params.bet)),
            GameKind::BetRaise => bet_raise_reference(&self.params),
        }
    }
}

/// Canonical information set key, e.g. `P1|h=42|kb`.
pub fn infoset_key(player: Player, hand: u32, history: &str) -> String {
    format!("P{}|h={hand}|{history}", player.number())
}

/// `+1` if player 1 holds the better hand, `-1` if worse, `0` on a tie.
fn showdown(hand1: u32, hand2: u32) -> f64 {
    match hand1.cmp(&hand2) {
        std::cmp::Ordering::Greater => 1.0,
        std::cmp::Ordering::Less => -1.0,
        std::cmp::Ordering::Equal => 0.0,
    }
}

/// Per-hand information sets for one betting history.
struct HandSets(Vec<InfoSetId>);

impl HandSets {
    fn new(b: &mut GameBuilder, player: Player, hands: u32, history: &str, labels: &[&str]) -> Self {
        HandSets(
            (1..=hands)
                .map(|h| b.add_infoset(player, infoset_key(player, h, history), labels.iter().copied()))
                .collect(),
        )
    }

    fn of(&self, hand: u32) -> InfoSetId {
        self.0[hand as usize - 1]
    }
}

/// Action probabilities per hand at the information sets `P<player>|h=*|<history>`.
///
/// Rows are indexed by hand - 1. Panics if the game has no such sets.
pub fn strategy_by_hand(
    tree: &GameTree,
    profile: &crate::game::BehaviorProfile,
    player: Player,
    history: &str,
) -> Vec<Vec<f64>> {
    (1..)
        .map_while(|h| tree.find_infoset(&infoset_key(player, h, history)))
        .map(|id| profile.get(id).to_vec())
        .collect()
}
