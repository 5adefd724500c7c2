use serde::{Deserialize, Serialize};

use crate::game::eval::Workspace;
use crate::game::{BehaviorProfile, GameTree, Player};
use crate::solvers::response::{best_response_into, ResponseBuffers};

/// One snapshot of a run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub iteration: u64,
    /// Expected utility to player 1.
    pub value: f64,
    /// Total exploitability, in chips.
    pub exploitability: f64,
}

/// Which best responses measure exploitability of a perturbed run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExploitabilityMode {
    /// Unrestricted best responses, i.e. measured in the original game.
    #[default]
    Unconstrained,
    /// Best responses restricted to the run's ε-simplex.
    Constrained,
}

/// `u¹(BR¹, b²) + u²(b¹, BR²)`: what both players together could gain by
/// deviating. Zero exactly at a Nash equilibrium.
pub fn exploitability(tree: &GameTree, profile: &BehaviorProfile) -> f64 {
    constrained_exploitability(tree, profile, 0.0)
}

/// Exploitability against responders restricted to play every action with
/// probability at least `epsilon`.
pub fn constrained_exploitability(tree: &GameTree, profile: &BehaviorProfile, epsilon: f64) -> f64 {
    tree.assert_well_formed();
    let mut ws = Workspace::new(tree);
    let mut buf = ResponseBuffers::new(tree);
    let mut scratch = vec![0.0; profile.as_slice().len()];
    ws.load(profile.as_slice());
    Player::BOTH
        .iter()
        .map(|&p| {
            best_response_into(&mut ws, &mut buf, tree, p, epsilon, &mut scratch, true).unwrap()
        })
        .sum()
}
