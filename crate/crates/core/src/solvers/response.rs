//! Best responses by backward induction over the responder's information
//! sets, deepest first.
//!
//! Each pass is a reverse sweep over the node arrays accumulating
//! opponent-reach-weighted leaf utilities. A pass settles every information
//! set at one own-history depth: their counterfactual action values only
//! depend on deeper sets, which earlier passes already fixed.

use super::decision::{argmax, write_decision};
use crate::game::eval::Workspace;
use crate::game::{BehaviorProfile, GameTree, Player};

#[derive(Clone, Debug)]
pub(crate) struct ResponseBuffers {
    /// Per node, accumulated value.
    node_value: Vec<f64>,
    /// Per node, `sign · opp_reach · leaf utility` (zero for inner nodes).
    leaf_value: Vec<f64>,
    /// Edge multipliers: the response at own slots, one elsewhere.
    edge_weight: Vec<f64>,
    /// Per slot, summed child values (counterfactual action values).
    action_value: Vec<f64>,
}

impl ResponseBuffers {
    pub fn new(tree: &GameTree) -> Self {
        let n = tree.nodes().len();
        let edges = tree.layout().slot_count() + tree.sweep().chance_weights.len();
        ResponseBuffers {
            node_value: vec![0.0; n],
            leaf_value: vec![0.0; n],
            edge_weight: vec![1.0; edges],
            action_value: vec![0.0; edges],
        }
    }

    fn sweep(&mut self, tree: &GameTree) -> f64 {
        let sweep = tree.sweep();
        let v = &mut self.node_value;
        let acc = &mut self.action_value;
        let w = &self.edge_weight;
        v.copy_from_slice(&self.leaf_value);
        acc.fill(0.0);
        for x in (1..v.len()).rev() {
            let p = sweep.parent[x] as usize;
            let s = sweep.edge_slot[x] as usize;
            let vx = v[x];
            acc[s] += vx;
            v[p] += w[s] * vx;
        }
        v[0]
    }
}

/// Computes `player`'s best response to the profile loaded in `ws` and
/// writes it into `response` (only the player's slots are touched).
///
/// With `epsilon > 0` every set plays the ε-constrained delta, and deeper
/// values are computed under that constraint. Returns the responder's
/// expected utility when `with_value` is set.
pub(crate) fn best_response_into(
    ws: &mut Workspace,
    buf: &mut ResponseBuffers,
    tree: &GameTree,
    player: Player,
    epsilon: f64,
    response: &mut [f64],
    with_value: bool,
) -> Option<f64> {
    let sweep = tree.sweep();
    ws.reach_for(tree, player);
    let opp = &ws.opp;
    let sign = player.sign();
    for ((lv, &u), &r) in buf
        .leaf_value
        .iter_mut()
        .zip(&sweep.leaf_utility)
        .zip(opp)
    {
        *lv = sign * u * r;
    }
    buf.edge_weight.fill(1.0);

    let layout = tree.layout();
    for level in tree.infosets_by_depth(player).iter().rev() {
        buf.sweep(tree);
        for &id in level {
            let range = layout.range(id);
            let best = argmax(&buf.action_value[range.clone()]);
            write_decision(&mut response[range.clone()], best, epsilon);
            buf.edge_weight[range.clone()].copy_from_slice(&response[range]);
        }
    }
    with_value.then(|| buf.sweep(tree))
}

/// Best response of `player` to the other player's part of `profile`.
///
/// Returns the full profile with `player`'s rows replaced, and the value
/// `uⁱ(response, profile⁻ⁱ)` to the responder. `epsilon > 0` restricts the
/// responder to strategies playing every action with probability ≥ ε.
pub fn best_response(
    tree: &GameTree,
    profile: &BehaviorProfile,
    player: Player,
    epsilon: f64,
) -> (BehaviorProfile, f64) {
    tree.assert_well_formed();
    let mut ws = Workspace::new(tree);
    let mut buf = ResponseBuffers::new(tree);
    ws.load(profile.as_slice());
    let mut response = profile.clone();
    let value = best_response_into(
        &mut ws,
        &mut buf,
        tree,
        player,
        epsilon,
        response.as_mut_slice(),
        true,
    )
    .unwrap();
    (response, value)
}
