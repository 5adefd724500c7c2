use std::sync::Arc;

use super::validate::validate_game;
use super::{
    GameTree, InfoSet, InfoSetId, Node, NodeId, NodeKind, Player, ProfileLayout, SweepLayout,
};
use crate::error::{Error, Result};

/// Handle to a node that has been added to a [`GameBuilder`] but not yet
/// placed in the final tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PendingNode(u32);

#[derive(Clone, Debug)]
enum RawKind {
    Decision(InfoSetId),
    Chance(Vec<f64>),
    Leaf(f64),
}

#[derive(Clone, Debug)]
struct RawNode {
    kind: RawKind,
    children: Vec<PendingNode>,
}

/// Bottom-up tree construction: children are created before their parent,
/// so cycles cannot be expressed. [`GameBuilder::build`] renumbers the nodes
/// into preorder and validates the result.
///
/// Structural invariants that are only checked (not enforced) here, like
/// chance normalisation or perfect recall, show up in
/// [`GameTree::validation`].
#[derive(Clone, Debug, Default)]
pub struct GameBuilder {
    nodes: Vec<RawNode>,
    infosets: Vec<InfoSet>,
}

impl GameBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_infoset<S: Into<String>>(
        &mut self,
        owner: Player,
        key: impl Into<String>,
        action_labels: impl IntoIterator<Item = S>,
    ) -> InfoSetId {
        let id = InfoSetId(self.infosets.len() as u32);
        self.infosets.push(InfoSet {
            owner,
            members: Vec::new(),
            action_labels: action_labels.into_iter().map(Into::into).collect(),
            key: key.into(),
        });
        id
    }

    pub fn leaf(&mut self, utility: f64) -> PendingNode {
        self.push(RawKind::Leaf(utility), Vec::new())
    }

    pub fn decision(&mut self, infoset: InfoSetId, children: Vec<PendingNode>) -> PendingNode {
        self.push(RawKind::Decision(infoset), children)
    }

    pub fn chance(&mut self, outcomes: Vec<(f64, PendingNode)>) -> PendingNode {
        let (probs, children) = outcomes.into_iter().unzip();
        self.push(RawKind::Chance(probs), children)
    }

    fn push(&mut self, kind: RawKind, children: Vec<PendingNode>) -> PendingNode {
        let id = PendingNode(self.nodes.len() as u32);
        self.nodes.push(RawNode { kind, children });
        id
    }

    pub fn build(self, root: PendingNode) -> Result<GameTree> {
        let GameBuilder {
            nodes: raw,
            mut infosets,
        } = self;
        if root.0 as usize >= raw.len() {
            return Err(Error::Build(format!("root {} does not exist", root.0)));
        }
        for (i, node) in raw.iter().enumerate() {
            if let RawKind::Decision(set) = node.kind {
                if set.index() >= infosets.len() {
                    return Err(Error::Build(format!(
                        "node {i} refers to unknown information set {}",
                        set.0
                    )));
                }
            }
        }

        // Preorder renumbering.
        let mut new_id = vec![u32::MAX; raw.len()];
        let mut order = Vec::with_capacity(raw.len());
        let mut stack = vec![root];
        while let Some(pending) = stack.pop() {
            let slot = &mut new_id[pending.0 as usize];
            if *slot != u32::MAX {
                return Err(Error::Build(format!(
                    "node {} has more than one parent",
                    pending.0
                )));
            }
            *slot = order.len() as u32;
            order.push(pending);
            stack.extend(raw[pending.0 as usize].children.iter().rev().copied());
        }
        if order.len() != raw.len() {
            return Err(Error::Build(format!(
                "{} node(s) are not reachable from the root",
                raw.len() - order.len()
            )));
        }

        let mut nodes: Vec<Node> = order
            .iter()
            .map(|pending| {
                let src = &raw[pending.0 as usize];
                let kind = match &src.kind {
                    RawKind::Decision(set) => NodeKind::Decision {
                        player: infosets[set.index()].owner,
                        infoset: *set,
                    },
                    RawKind::Chance(probs) => NodeKind::Chance {
                        probs: probs.clone(),
                    },
                    RawKind::Leaf(u) => NodeKind::Leaf { utility: *u },
                };
                Node {
                    kind,
                    children: src
                        .children
                        .iter()
                        .map(|c| NodeId(new_id[c.0 as usize]))
                        .collect(),
                    incoming: None,
                }
            })
            .collect();
        drop(raw);

        for idx in 0..nodes.len() {
            for (action, child) in nodes[idx].children.clone().into_iter().enumerate() {
                nodes[child.index()].incoming = Some((NodeId(idx as u32), action));
            }
            if let NodeKind::Decision { infoset, .. } = nodes[idx].kind {
                infosets[infoset.index()].members.push(NodeId(idx as u32));
            }
        }

        let layout = ProfileLayout::new(&infosets);
        let sweep = sweep_layout(&nodes, &infosets, &layout);
        let infoset_parent = infoset_parents(&nodes, &infosets);

        let key_index = infosets
            .iter()
            .enumerate()
            .map(|(i, set)| (set.key.clone(), InfoSetId(i as u32)))
            .collect();
        let mut tree = GameTree {
            nodes,
            infosets,
            key_index,
            layout: Arc::new(layout),
            sweep,
            infoset_parent,
            infoset_depth: Vec::new(),
            by_depth: [Vec::new(), Vec::new()],
            report: Default::default(),
        };
        tree.report = validate_game(&tree);
        if tree.report.is_valid() {
            let depth = infoset_depths(&tree.infoset_parent);
            let mut by_depth: [Vec<Vec<InfoSetId>>; 2] = [Vec::new(), Vec::new()];
            for (i, set) in tree.infosets.iter().enumerate() {
                let d = depth[i] as usize;
                let levels = &mut by_depth[set.owner.index()];
                if levels.len() <= d {
                    levels.resize(d + 1, Vec::new());
                }
                levels[d].push(InfoSetId(i as u32));
            }
            tree.infoset_depth = depth;
            tree.by_depth = by_depth;
        }
        Ok(tree)
    }
}

fn sweep_layout(nodes: &[Node], infosets: &[InfoSet], layout: &ProfileLayout) -> SweepLayout {
    let n = nodes.len();
    let slots = layout.slot_count();
    let mut parent = vec![0u32; n];
    let mut edge_slot = vec![0u32; n];
    let mut leaf_utility = vec![0.0; n];
    // The root's incoming "edge" has weight one.
    let mut chance_weights = vec![1.0];
    edge_slot[0] = slots as u32;

    for (idx, node) in nodes.iter().enumerate() {
        match &node.kind {
            NodeKind::Leaf { utility } => leaf_utility[idx] = *utility,
            NodeKind::Decision { infoset, .. } => {
                let range = layout.range(*infoset);
                for (action, child) in node.children.iter().enumerate() {
                    let c = child.index();
                    parent[c] = idx as u32;
                    // Out-of-range actions only occur in malformed trees, which
                    // are never evaluated.
                    edge_slot[c] = if action < range.len() {
                        (range.start + action) as u32
                    } else {
                        slots as u32
                    };
                }
            }
            NodeKind::Chance { probs } => {
                for (action, child) in node.children.iter().enumerate() {
                    let c = child.index();
                    parent[c] = idx as u32;
                    edge_slot[c] = (slots + chance_weights.len()) as u32;
                    chance_weights.push(probs.get(action).copied().unwrap_or(0.0));
                }
            }
        }
    }

    let mut slot_sign = vec![1.0; slots];
    for (i, set) in infosets.iter().enumerate() {
        for s in layout.range(InfoSetId(i as u32)) {
            slot_sign[s] = set.owner.sign();
        }
    }

    SweepLayout {
        parent,
        edge_slot,
        leaf_utility,
        chance_weights,
        slot_sign,
    }
}

/// Last own (information set, action) on the path to each node, per player,
/// evaluated at each information set's first member.
pub(super) fn own_history(nodes: &[Node]) -> Vec<[Option<(InfoSetId, usize)>; 2]> {
    let mut last = vec![[None, None]; nodes.len()];
    for idx in 0..nodes.len() {
        let current = last[idx];
        let node = &nodes[idx];
        for (action, child) in node.children.iter().enumerate() {
            let mut h = current;
            if let NodeKind::Decision { player, infoset } = node.kind {
                h[player.index()] = Some((infoset, action));
            }
            last[child.index()] = h;
        }
    }
    last
}

fn infoset_parents(nodes: &[Node], infosets: &[InfoSet]) -> Vec<Option<(InfoSetId, usize)>> {
    let history = own_history(nodes);
    infosets
        .iter()
        .map(|set| {
            set.members
                .first()
                .and_then(|m| history[m.index()][set.owner.index()])
        })
        .collect()
}

fn infoset_depths(parents: &[Option<(InfoSetId, usize)>]) -> Vec<u32> {
    // Only called on validated trees, where the parent relation is acyclic.
    let mut depth = vec![u32::MAX; parents.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..parents.len() {
            if depth[i] != u32::MAX {
                continue;
            }
            let d = match parents[i] {
                None => 0,
                Some((p, _)) if depth[p.index()] != u32::MAX => depth[p.index()] + 1,
                Some(_) => continue,
            };
            depth[i] = d;
            changed = true;
        }
    }
    depth
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preorder_renumbering_and_incoming_edges() {
        let mut b = GameBuilder::new();
        let set = b.add_infoset(Player::One, "P1|h=1|", ["check", "bet"]);
        let l1 = b.leaf(1.0);
        let l2 = b.leaf(-1.0);
        let d = b.decision(set, vec![l1, l2]);
        let l3 = b.leaf(0.0);
        let root = b.chance(vec![(0.5, d), (0.5, l3)]);
        let tree = b.build(root).unwrap();

        assert!(tree.is_well_formed(), "{}", tree.validation());
        assert_eq!(tree.nodes().len(), 5);
        assert!(matches!(tree.root().kind, NodeKind::Chance { .. }));
        assert_eq!(tree.node(NodeId(1)).incoming, Some((NodeId(0), 0)));
        assert_eq!(tree.node(NodeId(2)).kind, NodeKind::Leaf { utility: 1.0 });
        assert_eq!(tree.node(NodeId(4)).incoming, Some((NodeId(0), 1)));
        assert_eq!(tree.infoset(set).members, vec![NodeId(1)]);
        for (i, node) in tree.nodes().iter().enumerate() {
            for c in &node.children {
                assert!(c.index() > i);
            }
        }
    }

    #[test]
    fn shared_child_is_rejected() {
        let mut b = GameBuilder::new();
        let l = b.leaf(0.0);
        let root = b.chance(vec![(0.5, l), (0.5, l)]);
        assert!(matches!(b.build(root), Err(Error::Build(_))));
    }

    #[test]
    fn orphan_nodes_are_rejected() {
        let mut b = GameBuilder::new();
        let _orphan = b.leaf(3.0);
        let l = b.leaf(0.0);
        let root = b.chance(vec![(1.0, l)]);
        assert!(matches!(b.build(root), Err(Error::Build(_))));
    }

    #[test]
    fn depth_follows_own_history() {
        assert_eq!(infoset_depths(&[None, Some((InfoSetId(0), 1))]), vec![0, 1]);
        assert_eq!(
            infoset_depths(&[Some((InfoSetId(2), 0)), None, Some((InfoSetId(1), 1))]),
            vec![2, 0, 1]
        );
    }
}
