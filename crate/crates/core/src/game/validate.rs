use std::fmt;

use super::builder::own_history;
use super::{GameTree, InfoSetId, NodeId, NodeKind};

/// Tolerance on chance distributions summing to one.
pub const CHANCE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    ChanceSum { node: NodeId, sum: f64 },
    NegativeChance { node: NodeId, prob: f64 },
    ChanceArity { node: NodeId, probs: usize, children: usize },
    ActionCount { node: NodeId, infoset: InfoSetId, expected: usize, found: usize },
    OwnerMismatch { node: NodeId, infoset: InfoSetId },
    EmptyInfoSet { infoset: InfoSetId },
    NoActions { node: NodeId },
    LeafWithChildren { node: NodeId },
    NonFiniteUtility { node: NodeId },
    PerfectRecall { infoset: InfoSetId, first: NodeId, other: NodeId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ChanceSum { node, sum } => {
                write!(f, "chance distribution at node {} sums to {sum}", node.0)
            }
            Violation::NegativeChance { node, prob } => {
                write!(f, "negative chance probability {prob} at node {}", node.0)
            }
            Violation::ChanceArity { node, probs, children } => write!(
                f,
                "chance node {} has {probs} probabilities for {children} children",
                node.0
            ),
            Violation::ActionCount { node, infoset, expected, found } => write!(
                f,
                "decision node {} has {found} children but information set {} has {expected} actions",
                node.0, infoset.0
            ),
            Violation::OwnerMismatch { node, infoset } => write!(
                f,
                "decision node {} is not owned by the owner of information set {}",
                node.0, infoset.0
            ),
            Violation::EmptyInfoSet { infoset } => {
                write!(f, "information set {} has no members", infoset.0)
            }
            Violation::NoActions { node } => write!(f, "decision node {} has no actions", node.0),
            Violation::LeafWithChildren { node } => write!(f, "leaf {} has children", node.0),
            Violation::NonFiniteUtility { node } => {
                write!(f, "leaf {} has a non-finite utility", node.0)
            }
            Violation::PerfectRecall { infoset, first, other } => write!(
                f,
                "perfect recall violated in information set {}: nodes {} and {} have different own-action histories",
                infoset.0, first.0, other.0
            ),
        }
    }
}

/// Violations of the tree invariants; empty iff the game is well formed.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "no violations");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every structural invariant of the tree. Zero-sum holds by
/// construction since only player 1's utility is stored.
pub fn validate_game(tree: &GameTree) -> ValidationReport {
    let mut violations = Vec::new();

    for (idx, node) in tree.nodes().iter().enumerate() {
        let id = NodeId(idx as u32);
        match &node.kind {
            NodeKind::Leaf { utility } => {
                if !node.children.is_empty() {
                    violations.push(Violation::LeafWithChildren { node: id });
                }
                if !utility.is_finite() {
                    violations.push(Violation::NonFiniteUtility { node: id });
                }
            }
            NodeKind::Chance { probs } => {
                if probs.len() != node.children.len() {
                    violations.push(Violation::ChanceArity {
                        node: id,
                        probs: probs.len(),
                        children: node.children.len(),
                    });
                }
                if let Some(&prob) = probs.iter().find(|p| !(**p >= 0.0)) {
                    violations.push(Violation::NegativeChance { node: id, prob });
                }
                let sum: f64 = probs.iter().sum();
                if !((sum - 1.0).abs() <= CHANCE_TOLERANCE) {
                    violations.push(Violation::ChanceSum { node: id, sum });
                }
            }
            NodeKind::Decision { player, infoset } => {
                let set = tree.infoset(*infoset);
                if set.owner != *player {
                    violations.push(Violation::OwnerMismatch { node: id, infoset: *infoset });
                }
                if node.children.is_empty() {
                    violations.push(Violation::NoActions { node: id });
                } else if node.children.len() != set.action_count() {
                    violations.push(Violation::ActionCount {
                        node: id,
                        infoset: *infoset,
                        expected: set.action_count(),
                        found: node.children.len(),
                    });
                }
            }
        }
    }

    let history = own_history(tree.nodes());
    for id in tree.infoset_ids() {
        let set = tree.infoset(id);
        let Some(&first) = set.members.first() else {
            violations.push(Violation::EmptyInfoSet { infoset: id });
            continue;
        };
        let expected = history[first.index()][set.owner.index()];
        if let Some(&other) = set
            .members
            .iter()
            .find(|m| history[m.index()][set.owner.index()] != expected)
        {
            violations.push(Violation::PerfectRecall { infoset: id, first, other });
        }
    }

    ValidationReport { violations }
}
