use super::decision::{argmax, write_decision};
use super::response::{best_response_into, ResponseBuffers};
use super::{check_epsilon, scheduled_step, PhasedUpdate, PlayerSets, ResponseKind, Schedule, Solver, StepWeights};
use crate::error::Result;
use crate::game::eval::{own_infoset_reach, Workspace};
use crate::game::{BehaviorProfile, GameTree, Player};

/// Extensive-form fictitious play in behaviour strategies, renormalising
/// every row after each update.
#[derive(Clone, Debug)]
pub struct XfpState {
    epsilon: f64,
    iteration: u64,
    response: ResponseKind,
    weights: StepWeights,
    sets: PlayerSets,
    /// Behaviour weights hold the current profile.
    ws: Workspace,
    buf: ResponseBuffers,
    /// Per player, the response computed by `prepare` (player's slots only).
    target: [Vec<f64>; 2],
    reach_current: Vec<f64>,
    reach_target: Vec<f64>,
}

impl XfpState {
    pub fn new(tree: &GameTree, initial: &BehaviorProfile, epsilon: f64) -> Result<Self> {
        tree.assert_well_formed();
        check_epsilon(tree, epsilon)?;
        initial.check(tree, epsilon)?;
        let mut ws = Workspace::new(tree);
        ws.load(initial.as_slice());
        let slots = tree.layout().slot_count();
        let sets = tree.infosets().len();
        Ok(XfpState {
            epsilon,
            iteration: 0,
            response: ResponseKind::BestResponse,
            weights: StepWeights::Harmonic,
            sets: PlayerSets::new(tree),
            ws,
            buf: ResponseBuffers::new(tree),
            target: [vec![0.0; slots], vec![0.0; slots]],
            reach_current: vec![0.0; sets],
            reach_target: vec![0.0; sets],
        })
    }

    pub fn with_response(mut self, response: ResponseKind) -> Self {
        self.response = response;
        self
    }

    pub fn with_weights(mut self, weights: StepWeights) -> Result<Self> {
        weights.validate()?;
        self.weights = weights;
        Ok(self)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn profile(&self, tree: &GameTree) -> BehaviorProfile {
        BehaviorProfile::from_flat(
            tree.layout().clone(),
            self.ws.weights[..tree.layout().slot_count()].to_vec(),
        )
    }
}

impl PhasedUpdate for XfpState {
    fn prepare(&mut self, tree: &GameTree, player: Player) {
        let target = &mut self.target[player.index()];
        match self.response {
            ResponseKind::BestResponse => {
                best_response_into(
                    &mut self.ws,
                    &mut self.buf,
                    tree,
                    player,
                    self.epsilon,
                    target,
                    false,
                );
            }
            ResponseKind::BestDecision => {
                self.ws.counterfactual_for(tree, player);
                for (_, range) in self.sets.of(player) {
                    let best = argmax(&self.ws.cf[range.clone()]);
                    write_decision(&mut target[range.clone()], best, self.epsilon);
                }
            }
        }
    }

    fn commit(&mut self, tree: &GameTree, player: Player) {
        let alpha = self.weights.alpha(self.iteration);
        let target = &self.target[player.index()];
        let slots = tree.layout().slot_count();
        own_infoset_reach(tree, &self.ws.weights[..slots], player, &mut self.reach_current);
        own_infoset_reach(tree, target, player, &mut self.reach_target);
        let current = self.ws.behaviour_weights_mut();
        for (id, range) in self.sets.of(player) {
            let rb = self.reach_current[id.index()];
            let rt = self.reach_target[id.index()];
            let denom = (1.0 - alpha) * rb + alpha * rt;
            if denom <= 0.0 {
                continue;
            }
            let lambda = alpha * rt / denom;
            let mut total = 0.0;
            for s in range.clone() {
                current[s] += lambda * (target[s] - current[s]);
                total += current[s];
            }
            for s in range.clone() {
                current[s] /= total;
            }
        }
        if player == Player::Two {
            self.iteration += 1;
        }
    }
}

impl Solver for XfpState {
    fn step(&mut self, tree: &GameTree, schedule: Schedule) {
        scheduled_step(self, tree, schedule);
    }

    fn iterations(&self) -> u64 {
        self.iteration
    }

    fn reportable(&self, tree: &GameTree) -> BehaviorProfile {
        self.profile(tree)
    }
}
