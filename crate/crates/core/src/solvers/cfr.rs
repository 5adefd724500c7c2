use super::{scheduled_step, PhasedUpdate, PlayerSets, Schedule, Solver};
use crate::error::Result;
use crate::game::eval::{own_infoset_reach, Workspace};
use crate::game::{BehaviorProfile, GameTree, Player};

/// Vanilla CFR with unnormalised cumulative regrets and an own-reach
/// weighted average strategy.
#[derive(Clone, Debug)]
pub struct CfrState {
    cum_regret: Vec<f64>,
    cum_strategy: Vec<f64>,
    iteration: u64,
    sets: PlayerSets,
    /// Behaviour weights hold the current (regret-matched) profile.
    ws: Workspace,
    own_reach: Vec<f64>,
}

/// Positive-part regret matching into `row`; uniform without positive regret.
pub(crate) fn regret_matching(regret: &[f64], row: &mut [f64]) {
    let total: f64 = regret.iter().map(|r| r.max(0.0)).sum();
    if total > 0.0 {
        for (p, r) in row.iter_mut().zip(regret) {
            *p = r.max(0.0) / total;
        }
    } else {
        row.fill(1.0 / row.len() as f64);
    }
}

impl CfrState {
    pub fn new(tree: &GameTree, initial: &BehaviorProfile) -> Result<Self> {
        tree.assert_well_formed();
        initial.check(tree, 0.0)?;
        let mut ws = Workspace::new(tree);
        ws.load(initial.as_slice());
        let slots = tree.layout().slot_count();
        Ok(CfrState {
            cum_regret: vec![0.0; slots],
            cum_strategy: vec![0.0; slots],
            iteration: 0,
            sets: PlayerSets::new(tree),
            ws,
            own_reach: vec![0.0; tree.infosets().len()],
        })
    }

    pub fn cum_regret(&self) -> &[f64] {
        &self.cum_regret
    }

    pub fn cum_strategy(&self) -> &[f64] {
        &self.cum_strategy
    }

    pub fn current(&self, tree: &GameTree) -> BehaviorProfile {
        BehaviorProfile::from_flat(
            tree.layout().clone(),
            self.ws.weights[..tree.layout().slot_count()].to_vec(),
        )
    }

    /// Reach-weighted average of the current strategies so far; uniform at
    /// information sets never reached by their owner.
    pub fn average(&self, tree: &GameTree) -> BehaviorProfile {
        let mut probs = self.cum_strategy.clone();
        for id in tree.infoset_ids() {
            let row = &mut probs[tree.layout().range(id)];
            let total: f64 = row.iter().sum();
            if total > 0.0 {
                row.iter_mut().for_each(|p| *p /= total);
            } else {
                row.fill(1.0 / row.len() as f64);
            }
        }
        BehaviorProfile::from_flat(tree.layout().clone(), probs)
    }
}

/// Average strategy of a CFR run.
pub fn cfr_average(state: &CfrState, tree: &GameTree) -> BehaviorProfile {
    state.average(tree)
}

impl PhasedUpdate for CfrState {
    fn prepare(&mut self, tree: &GameTree, player: Player) {
        self.ws.counterfactual_for(tree, player);
        let slots = tree.layout().slot_count();
        let current = &self.ws.weights[..slots];
        own_infoset_reach(tree, current, player, &mut self.own_reach);
        for (id, range) in self.sets.of(player) {
            let cf = &self.ws.cf[range.clone()];
            let b = &current[range.clone()];
            let ev: f64 = cf.iter().zip(b).map(|(u, p)| u * p).sum();
            let reach = self.own_reach[id.index()];
            for (k, s) in range.clone().enumerate() {
                self.cum_regret[s] += cf[k] - ev;
                self.cum_strategy[s] += reach * b[k];
            }
        }
    }

    fn commit(&mut self, _tree: &GameTree, player: Player) {
        let current = self.ws.behaviour_weights_mut();
        for (_, range) in self.sets.of(player) {
            regret_matching(&self.cum_regret[range.clone()], &mut current[range.clone()]);
        }
        if player == Player::Two {
            self.iteration += 1;
        }
    }
}

impl Solver for CfrState {
    fn step(&mut self, tree: &GameTree, schedule: Schedule) {
        scheduled_step(self, tree, schedule);
    }

    fn iterations(&self) -> u64 {
        self.iteration
    }

    fn reportable(&self, tree: &GameTree) -> BehaviorProfile {
        self.average(tree)
    }
}
