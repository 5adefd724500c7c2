use super::decision::argmax;
use super::response::{best_response_into, ResponseBuffers};
use super::{check_epsilon, scheduled_step, PhasedUpdate, PlayerSets, ResponseKind, Schedule, Solver, StepWeights};
use crate::error::Result;
use crate::game::eval::Workspace;
use crate::game::{BehaviorProfile, GameTree, Player};

/// Generalised fictitious play: counts how often each action is the best
/// decision. The implied profile is `ε + (1 − |A|ε)·counts/n`, an exact
/// ratio of integers.
#[derive(Clone, Debug)]
pub struct GxfpState {
    epsilon: f64,
    counts: Vec<u64>,
    /// Updates applied to each player's information sets.
    updates: [u64; 2],
    response: ResponseKind,
    weights: StepWeights,
    /// Weighted average of the unperturbed decisions; only kept for
    /// non-harmonic weights, where counts alone do not determine the profile.
    mix: Option<Vec<f64>>,
    sets: PlayerSets,
    /// Chosen action per slot range start, filled by `prepare`.
    chosen: [Vec<usize>; 2],
    /// Behaviour weights hold the implied profile.
    ws: Workspace,
    buf: ResponseBuffers,
    scratch: Vec<f64>,
}

impl GxfpState {
    /// Starts from `initial`, which is used until a player's first update.
    pub fn new(tree: &GameTree, initial: &BehaviorProfile, epsilon: f64) -> Result<Self> {
        tree.assert_well_formed();
        check_epsilon(tree, epsilon)?;
        initial.check(tree, epsilon)?;
        let mut ws = Workspace::new(tree);
        ws.load(initial.as_slice());
        let slots = tree.layout().slot_count();
        Ok(GxfpState {
            epsilon,
            counts: vec![0; slots],
            updates: [0, 0],
            response: ResponseKind::BestDecision,
            weights: StepWeights::Harmonic,
            mix: None,
            sets: PlayerSets::new(tree),
            chosen: [Vec::new(), Vec::new()],
            ws,
            buf: ResponseBuffers::new(tree),
            scratch: vec![0.0; slots],
        })
    }

    pub fn with_response(mut self, response: ResponseKind) -> Self {
        self.response = response;
        self
    }

    pub fn with_weights(mut self, weights: StepWeights) -> Result<Self> {
        weights.validate()?;
        self.mix = match weights {
            StepWeights::Harmonic => None,
            StepWeights::Power(_) => Some(vec![0.0; self.counts.len()]),
        };
        self.weights = weights;
        Ok(self)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Times each action (flat slot order) was chosen.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn updates(&self, player: Player) -> u64 {
        self.updates[player.index()]
    }

    /// The implied current profile.
    pub fn profile(&self, tree: &GameTree) -> BehaviorProfile {
        BehaviorProfile::from_flat(
            tree.layout().clone(),
            self.ws.weights[..tree.layout().slot_count()].to_vec(),
        )
    }
}

impl PhasedUpdate for GxfpState {
    fn prepare(&mut self, tree: &GameTree, player: Player) {
        let sets = self.sets.of(player);
        let values: &[f64] = match self.response {
            ResponseKind::BestDecision => {
                self.ws.counterfactual_for(tree, player);
                &self.ws.cf
            }
            ResponseKind::BestResponse => {
                best_response_into(
                    &mut self.ws,
                    &mut self.buf,
                    tree,
                    player,
                    self.epsilon,
                    &mut self.scratch,
                    false,
                );
                &self.scratch
            }
        };
        let chosen = &mut self.chosen[player.index()];
        chosen.clear();
        chosen.extend(sets.iter().map(|(_, r)| argmax(&values[r.clone()])));
    }

    fn commit(&mut self, _tree: &GameTree, player: Player) {
        let n = self.updates[player.index()] + 1;
        self.updates[player.index()] = n;
        let alpha = self.weights.alpha(n - 1);
        let eps = self.epsilon;
        let weights = self.ws.behaviour_weights_mut();
        for ((_, range), &best) in self.sets.of(player).iter().zip(&self.chosen[player.index()]) {
            let k = range.len() as f64;
            let scale = 1.0 - k * eps;
            self.counts[range.start + best] += 1;
            match &mut self.mix {
                None => {
                    for s in range.clone() {
                        weights[s] = eps + scale * (self.counts[s] as f64 / n as f64);
                    }
                }
                Some(mix) => {
                    for s in range.clone() {
                        let delta = if s == range.start + best { 1.0 } else { 0.0 };
                        mix[s] += alpha * (delta - mix[s]);
                        weights[s] = eps + scale * mix[s];
                    }
                }
            }
        }
    }
}

impl Solver for GxfpState {
    fn step(&mut self, tree: &GameTree, schedule: Schedule) {
        scheduled_step(self, tree, schedule);
    }

    fn iterations(&self) -> u64 {
        self.updates[1]
    }

    fn reportable(&self, tree: &GameTree) -> BehaviorProfile {
        self.profile(tree)
    }
}
