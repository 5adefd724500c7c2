//! Finite two-player zero-sum extensive-form games with chance.
//!
//! A [`GameTree`] is immutable once built. Nodes are stored flat in preorder
//! (node 0 is the root, every descendant of a node has a larger index than
//! the node itself), which lets every evaluation run as one or two linear
//! sweeps over parallel arrays. Leaf utilities are stored for player 1 only;
//! player 2's utility is the negation.

mod builder;
pub(crate) mod eval;
mod matrix;
mod mixed;
mod profile;
mod validate;

pub use builder::GameBuilder;
pub use eval::{action_utilities, compute_reach, expected_value, ActionUtilities, ReachSet};
pub use matrix::matrix_game;
pub use mixed::{
    behavior_to_mixed, pure_strategy_count, MixedStrategy, PureStrategy, DEFAULT_PURE_STRATEGY_CAP,
};
pub use profile::{BehaviorProfile, PROFILE_TOLERANCE};
pub use validate::{validate_game, ValidationReport, Violation};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// One of the two non-chance players.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::One, Player::Two];

    pub fn opponent(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    /// Zero-based index (0 for player 1).
    pub fn index(self) -> usize {
        match self {
            Player::One => 0,
            Player::Two => 1,
        }
    }

    /// Multiplier turning a player-1 utility into this player's utility.
    pub fn sign(self) -> f64 {
        match self {
            Player::One => 1.0,
            Player::Two => -1.0,
        }
    }

    /// The player's number as used in keys and reports (1 or 2).
    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "player {}", self.number())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InfoSetId(pub u32);

impl InfoSetId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NodeKind {
    Decision { player: Player, infoset: InfoSetId },
    /// Fixed distribution over the children, in child order.
    Chance { probs: Vec<f64> },
    /// Utility to player 1, in payoff units.
    Leaf { utility: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub kind: NodeKind,
    /// One child per action index.
    pub children: Vec<NodeId>,
    /// Parent and the action index leading here; `None` for the root.
    pub incoming: Option<(NodeId, usize)>,
}

impl Node {
    pub fn is_leaf(&self) -> bool {
        matches!(self.kind, NodeKind::Leaf { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InfoSet {
    pub owner: Player,
    pub members: Vec<NodeId>,
    pub action_labels: Vec<String>,
    /// Canonical identifier, e.g. `P1|h=42|kb`.
    pub key: String,
}

impl InfoSet {
    pub fn action_count(&self) -> usize {
        self.action_labels.len()
    }
}

/// Where each information set's actions live in a flat probability vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileLayout {
    offsets: Vec<usize>,
}

impl ProfileLayout {
    fn new(infosets: &[InfoSet]) -> Self {
        let mut offsets = Vec::with_capacity(infosets.len() + 1);
        let mut total = 0;
        offsets.push(0);
        for set in infosets {
            total += set.action_count();
            offsets.push(total);
        }
        ProfileLayout { offsets }
    }

    pub fn infoset_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Total number of (information set, action) slots.
    pub fn slot_count(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn range(&self, infoset: InfoSetId) -> std::ops::Range<usize> {
        self.offsets[infoset.index()]..self.offsets[infoset.index() + 1]
    }
}

/// Flat per-node arrays driving the evaluation sweeps.
///
/// Each non-root node's incoming edge has a weight slot. Slots below
/// `layout.slot_count()` are behaviour probabilities; the rest index the
/// fixed chance probabilities stored in `chance_weights`.
#[derive(Clone, Debug)]
pub(crate) struct SweepLayout {
    pub parent: Vec<u32>,
    pub edge_slot: Vec<u32>,
    pub leaf_utility: Vec<f64>,
    pub chance_weights: Vec<f64>,
    /// `+1` for player-1 slots, `-1` for player-2 slots.
    pub slot_sign: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct GameTree {
    nodes: Vec<Node>,
    infosets: Vec<InfoSet>,
    key_index: HashMap<String, InfoSetId>,
    layout: Arc<ProfileLayout>,
    sweep: SweepLayout,
    /// The owner's previous (information set, action) on every member's path.
    infoset_parent: Vec<Option<(InfoSetId, usize)>>,
    /// Number of own information sets preceding each one.
    infoset_depth: Vec<u32>,
    /// Per player, information sets grouped by depth.
    by_depth: [Vec<Vec<InfoSetId>>; 2],
    report: ValidationReport,
}

impl GameTree {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn root(&self) -> &Node {
        &self.nodes[0]
    }

    pub fn infosets(&self) -> &[InfoSet] {
        &self.infosets
    }

    pub fn infoset(&self, id: InfoSetId) -> &InfoSet {
        &self.infosets[id.index()]
    }

    pub fn infoset_ids(&self) -> impl Iterator<Item = InfoSetId> + '_ {
        (0..self.infosets.len() as u32).map(InfoSetId)
    }

    pub fn infosets_of(&self, player: Player) -> impl Iterator<Item = InfoSetId> + '_ {
        self.infoset_ids()
            .filter(move |&id| self.infosets[id.index()].owner == player)
    }

    pub fn find_infoset(&self, key: &str) -> Option<InfoSetId> {
        self.key_index.get(key).copied()
    }

    pub fn layout(&self) -> &Arc<ProfileLayout> {
        &self.layout
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_leaf()).count()
    }

    pub fn max_action_count(&self) -> usize {
        self.infosets
            .iter()
            .map(InfoSet::action_count)
            .max()
            .unwrap_or(1)
    }

    /// Violations found when the tree was built.
    pub fn validation(&self) -> &ValidationReport {
        &self.report
    }

    pub fn is_well_formed(&self) -> bool {
        self.report.is_valid()
    }

    /// The owner's preceding (information set, action) pair, if any.
    pub fn infoset_parent(&self, id: InfoSetId) -> Option<(InfoSetId, usize)> {
        self.infoset_parent[id.index()]
    }

    pub fn infoset_depth(&self, id: InfoSetId) -> usize {
        self.infoset_depth[id.index()] as usize
    }

    pub(crate) fn infosets_by_depth(&self, player: Player) -> &[Vec<InfoSetId>] {
        &self.by_depth[player.index()]
    }

    pub(crate) fn sweep(&self) -> &SweepLayout {
        &self.sweep
    }

    /// Panics unless the tree passed validation. Evaluation code indexes
    /// profile slots through the tree's structure and relies on it.
    pub(crate) fn assert_well_formed(&self) {
        assert!(
            self.report.is_valid(),
            "game tree is not well formed: {}",
            self.report
        );
    }
}
