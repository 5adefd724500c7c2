//! Generalised fictitious play (GXFP), extensive-form fictitious play (XFP)
//! and vanilla counterfactual regret minimisation (CFR), plus the run loop
//! that drives them and records metrics.

mod cfr;
pub(crate) mod decision;
mod gxfp;
pub(crate) mod response;
mod run;
mod xfp;

pub use cfr::{cfr_average, CfrState};
pub use decision::best_decision;
pub use gxfp::GxfpState;
pub use response::best_response;
pub use run::{
    initial_profile, run, solve, solve_with, RunConfig, RunOutput, SolveOptions,
    DEFAULT_SNAPSHOT_INTERVAL,
};
pub use xfp::XfpState;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{BehaviorProfile, GameTree, InfoSetId, Player};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Gxfp,
    Xfp,
    Cfr,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Gxfp, Algorithm::Xfp, Algorithm::Cfr];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Gxfp => "gxfp",
            Algorithm::Xfp => "xfp",
            Algorithm::Cfr => "cfr",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gxfp" => Ok(Algorithm::Gxfp),
            "xfp" => Ok(Algorithm::Xfp),
            "cfr" => Ok(Algorithm::Cfr),
            other => Err(Error::Config(format!(
                "unknown algorithm '{other}' (expected gxfp, xfp or cfr)"
            ))),
        }
    }
}

/// Order of the two players' updates within one iteration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Schedule {
    /// Player 2 responds to player 1's already-updated strategy.
    #[default]
    Alternating,
    /// Both players respond to the same profile.
    Simultaneous,
}

impl FromStr for Schedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alternating" => Ok(Schedule::Alternating),
            "simultaneous" => Ok(Schedule::Simultaneous),
            other => Err(Error::Config(format!(
                "unknown schedule '{other}' (expected alternating or simultaneous)"
            ))),
        }
    }
}

/// What a fictitious-play update moves towards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResponseKind {
    /// Per-information-set argmax of the current counterfactual values.
    BestDecision,
    /// Full best response by backward induction.
    BestResponse,
}

impl ResponseKind {
    /// GXFP counts best decisions, XFP mixes in best responses.
    pub fn default_for(algorithm: Algorithm) -> Option<Self> {
        match algorithm {
            Algorithm::Gxfp => Some(ResponseKind::BestDecision),
            Algorithm::Xfp => Some(ResponseKind::BestResponse),
            Algorithm::Cfr => None,
        }
    }
}

impl FromStr for ResponseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "decision" | "best_decision" => Ok(ResponseKind::BestDecision),
            "response" | "best_response" => Ok(ResponseKind::BestResponse),
            other => Err(Error::Config(format!(
                "unknown response kind '{other}' (expected decision or response)"
            ))),
        }
    }
}

/// Averaging weights `α_{n+1}` used by the fictitious-play variants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepWeights {
    /// `α_{n+1} = 1/(n+1)`, the empirical average.
    #[default]
    Harmonic,
    /// `α_{n+1} = (n+1)^(−p)` with `0 < p ≤ 1`; recent responses weigh more.
    Power(f64),
}

impl StepWeights {
    /// Weight of update number `n + 1`, given `n` earlier updates.
    pub fn alpha(self, n: u64) -> f64 {
        let m = (n + 1) as f64;
        match self {
            StepWeights::Harmonic => 1.0 / m,
            StepWeights::Power(p) => m.powf(-p),
        }
    }

    pub fn validate(self) -> Result<()> {
        match self {
            StepWeights::Power(p) if !(p > 0.0 && p <= 1.0) => Err(Error::Config(format!(
                "power weight exponent must lie in (0, 1], got {p}"
            ))),
            _ => Ok(()),
        }
    }
}

/// Starting profile.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Init {
    #[default]
    Uniform,
    /// Every information set drawn from the flat distribution on its simplex.
    Random,
}

impl FromStr for Init {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Init::Uniform),
            "random" => Ok(Init::Random),
            other => Err(Error::Config(format!(
                "unknown init '{other}' (expected uniform or random)"
            ))),
        }
    }
}

/// An iterative solver bound to one game tree.
pub trait Solver {
    fn step(&mut self, tree: &GameTree, schedule: Schedule);

    /// Completed iterations.
    fn iterations(&self) -> u64;

    /// The profile the algorithm reports as its equilibrium estimate.
    fn reportable(&self, tree: &GameTree) -> BehaviorProfile;
}

/// Two-phase update shared by all solvers: `prepare` reads the current
/// profile, `commit` changes the player's own part of it.
trait PhasedUpdate {
    fn prepare(&mut self, tree: &GameTree, player: Player);
    fn commit(&mut self, tree: &GameTree, player: Player);
}

fn scheduled_step<S: PhasedUpdate>(state: &mut S, tree: &GameTree, schedule: Schedule) {
    match schedule {
        Schedule::Alternating => {
            for player in Player::BOTH {
                state.prepare(tree, player);
                state.commit(tree, player);
            }
        }
        Schedule::Simultaneous => {
            for player in Player::BOTH {
                state.prepare(tree, player);
            }
            for player in Player::BOTH {
                state.commit(tree, player);
            }
        }
    }
}

/// Slot ranges of each player's information sets.
#[derive(Clone, Debug)]
struct PlayerSets([Vec<(InfoSetId, Range<usize>)>; 2]);

impl PlayerSets {
    fn new(tree: &GameTree) -> Self {
        let of = |p| {
            tree.infosets_of(p)
                .map(|id| (id, tree.layout().range(id)))
                .collect()
        };
        PlayerSets([of(Player::One), of(Player::Two)])
    }

    fn of(&self, player: Player) -> &[(InfoSetId, Range<usize>)] {
        &self.0[player.index()]
    }
}

/// ε must leave room for the largest action set.
pub(crate) fn check_epsilon(tree: &GameTree, epsilon: f64) -> Result<()> {
    let k = tree.max_action_count().max(1) as f64;
    if epsilon >= 0.0 && epsilon * k < 1.0 {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "epsilon must lie in [0, 1/{k}), got {epsilon}"
        )))
    }
}
