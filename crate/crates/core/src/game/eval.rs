//! Reach probabilities, counterfactual action utilities and expected values.
//!
//! Everything here is a linear sweep over the preorder node arrays: reach
//! probabilities flow root-to-leaves (parents precede children), subtree
//! values flow leaves-to-root (iterate in reverse, pushing into the parent).

use super::{BehaviorProfile, GameTree, InfoSetId, Player};
use crate::error::{Error, Result};

/// Reusable per-evaluation buffers sized to one tree.
#[derive(Clone, Debug)]
pub(crate) struct Workspace {
    /// Edge weights: behaviour slots followed by the tree's chance weights.
    pub weights: Vec<f64>,
    /// `weights` with one player's own slots replaced by 1.
    masked: Vec<f64>,
    /// Per node, product of every weight on the path except the
    /// perspective player's (set by [`Workspace::reach_for`]).
    pub opp: Vec<f64>,
    /// Per node, expected player-1 utility of the subtree.
    pub values: Vec<f64>,
    /// Per slot, unnormalised counterfactual utility to the perspective
    /// player; only that player's slots are meaningful.
    pub cf: Vec<f64>,
    slots: usize,
}

impl Workspace {
    pub fn new(tree: &GameTree) -> Self {
        let sweep = tree.sweep();
        let slots = tree.layout().slot_count();
        let n = tree.nodes().len();
        let mut weights = vec![0.0; slots];
        weights.extend_from_slice(&sweep.chance_weights);
        Workspace {
            cf: vec![0.0; weights.len()],
            masked: weights.clone(),
            weights,
            opp: vec![1.0; n],
            values: vec![0.0; n],
            slots,
        }
    }

    pub fn load(&mut self, probs: &[f64]) {
        self.weights[..self.slots].copy_from_slice(probs);
    }

    pub fn behaviour_weights_mut(&mut self) -> &mut [f64] {
        &mut self.weights[..self.slots]
    }

    /// Opponent-and-chance reach of every node for `player`.
    pub fn reach_for(&mut self, tree: &GameTree, player: Player) {
        let sweep = tree.sweep();
        let own = player.sign();
        for ((m, &w), &sign) in self.masked.iter_mut().zip(&self.weights).zip(&sweep.slot_sign) {
            *m = if sign == own { 1.0 } else { w };
        }
        self.masked[self.slots..].copy_from_slice(&self.weights[self.slots..]);
        let m = &self.masked;
        let opp = &mut self.opp;
        opp[0] = 1.0;
        for x in 1..opp.len() {
            opp[x] = opp[sweep.parent[x] as usize] * m[sweep.edge_slot[x] as usize];
        }
    }

    /// Subtree values only. Returns the root value (player 1's expected utility).
    pub fn values(&mut self, tree: &GameTree) -> f64 {
        let sweep = tree.sweep();
        let w = &self.weights;
        let v = &mut self.values;
        v.copy_from_slice(&sweep.leaf_utility);
        for x in (1..v.len()).rev() {
            let p = sweep.parent[x] as usize;
            v[p] += w[sweep.edge_slot[x] as usize] * v[x];
        }
        v[0]
    }

    /// Unnormalised counterfactual utilities of `player`'s slots, measured
    /// for `player`. Returns the root value.
    pub fn counterfactual_for(&mut self, tree: &GameTree, player: Player) -> f64 {
        self.reach_for(tree, player);
        let sweep = tree.sweep();
        let w = &self.weights;
        let v = &mut self.values;
        let cf = &mut self.cf;
        let opp = &self.opp;
        v.copy_from_slice(&sweep.leaf_utility);
        cf.fill(0.0);
        for x in (1..v.len()).rev() {
            let p = sweep.parent[x] as usize;
            let slot = sweep.edge_slot[x] as usize;
            let vx = v[x];
            v[p] += w[slot] * vx;
            cf[slot] += opp[p] * vx;
        }
        let sign = player.sign();
        if sign < 0.0 {
            cf[..self.slots].iter_mut().for_each(|c| *c = -*c);
        }
        v[0]
    }
}

/// Own probability of reaching every information set of `player`, i.e. the
/// product of the player's probabilities along its own-action history.
pub(crate) fn own_infoset_reach(tree: &GameTree, probs: &[f64], player: Player, out: &mut [f64]) {
    let layout = tree.layout();
    for level in tree.infosets_by_depth(player) {
        for &id in level {
            out[id.index()] = match tree.infoset_parent(id) {
                None => 1.0,
                Some((parent, action)) => {
                    out[parent.index()] * probs[layout.range(parent).start + action]
                }
            };
        }
    }
}

/// Reach probabilities of every node from one player's perspective.
#[derive(Clone, Debug, PartialEq)]
pub struct ReachSet {
    pub perspective: Player,
    /// Product of the perspective player's own probabilities on the path.
    pub own_reach: Vec<f64>,
    /// Product of the opponent's and chance probabilities on the path.
    pub opp_reach: Vec<f64>,
    /// Per information set (of either owner), the sum of `opp_reach` over
    /// its members.
    pub infoset_opp_reach: Vec<f64>,
}

impl ReachSet {
    /// Probability that play reaches the node.
    pub fn full_reach(&self, node: usize) -> f64 {
        self.own_reach[node] * self.opp_reach[node]
    }
}

pub fn compute_reach(tree: &GameTree, profile: &BehaviorProfile, perspective: Player) -> ReachSet {
    tree.assert_well_formed();
    let sweep = tree.sweep();
    let mut ws = Workspace::new(tree);
    ws.load(profile.as_slice());
    let mut opp_both = [Vec::new(), Vec::new()];
    for p in Player::BOTH {
        ws.reach_for(tree, p);
        opp_both[p.index()] = ws.opp.clone();
    }
    let opp_reach = opp_both[perspective.index()].clone();
    let own = perspective.sign();
    let mut own_reach = vec![1.0; opp_reach.len()];
    for x in 1..own_reach.len() {
        let p = sweep.parent[x] as usize;
        let slot = sweep.edge_slot[x] as usize;
        let factor = match sweep.slot_sign.get(slot) {
            Some(&sign) if sign == own => ws.weights[slot],
            _ => 1.0,
        };
        own_reach[x] = own_reach[p] * factor;
    }
    let infoset_opp_reach = tree
        .infoset_ids()
        .map(|id| {
            tree.infoset(id)
                .members
                .iter()
                .map(|m| opp_both[tree.infoset(id).owner.index()][m.index()])
                .sum()
        })
        .collect();
    ReachSet {
        perspective,
        own_reach,
        opp_reach,
        infoset_opp_reach,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ActionUtilities {
    /// `U(I, a)` for each action, normalised or not as requested.
    pub values: Vec<f64>,
    /// Opponent-and-chance reach of the information set, `P⁻ⁱ(I)`.
    pub opp_reach: f64,
}

/// Counterfactual utility of each action at `infoset`, for its owner.
///
/// Unnormalised values are `Σ_{x∈I} P⁻ⁱ(x)·E[u | x, a]`. With `normalize`
/// they are divided by `P⁻ⁱ(I)`, which fails with [`Error::ZeroReach`] when
/// the information set cannot be reached by the opponent and chance.
pub fn action_utilities(
    tree: &GameTree,
    profile: &BehaviorProfile,
    infoset: InfoSetId,
    normalize: bool,
) -> Result<ActionUtilities> {
    tree.assert_well_formed();
    let mut ws = Workspace::new(tree);
    ws.load(profile.as_slice());
    let set = tree.infoset(infoset);
    ws.counterfactual_for(tree, set.owner);
    let opp_reach: f64 = set.members.iter().map(|m| ws.opp[m.index()]).sum();
    let mut values = ws.cf[tree.layout().range(infoset)].to_vec();
    if normalize {
        if opp_reach <= 0.0 {
            return Err(Error::ZeroReach);
        }
        values.iter_mut().for_each(|v| *v /= opp_reach);
    }
    Ok(ActionUtilities { values, opp_reach })
}

/// Expected utility to player 1 when both players follow `profile`.
pub fn expected_value(tree: &GameTree, profile: &BehaviorProfile) -> f64 {
    tree.assert_well_formed();
    let mut ws = Workspace::new(tree);
    ws.load(profile.as_slice());
    ws.values(tree)
}
