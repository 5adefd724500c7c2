use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    check_epsilon, Algorithm, CfrState, GxfpState, Init, ResponseKind, Schedule, Solver,
    StepWeights, XfpState,
};
use crate::analysis::{constrained_exploitability, exploitability, ExploitabilityMode, MetricsRecord};
use crate::error::{Error, Result};
use crate::game::{expected_value, BehaviorProfile, GameTree};
use crate::poker::GameSpec;

pub const DEFAULT_SNAPSHOT_INTERVAL: u64 = 10_000;

/// Everything about a run except the game itself and its ε.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    pub schedule: Schedule,
    pub iterations: u64,
    pub snapshot_interval: u64,
    pub init: Init,
    pub seed: u64,
    /// Overrides the algorithm's default response kind (GXFP and XFP only).
    pub response: Option<ResponseKind>,
    pub step_weights: StepWeights,
    pub exploitability: ExploitabilityMode,
}

impl SolveOptions {
    pub fn new(algorithm: Algorithm, iterations: u64) -> Self {
        SolveOptions {
            algorithm,
            schedule: Schedule::default(),
            iterations,
            snapshot_interval: DEFAULT_SNAPSHOT_INTERVAL,
            init: Init::default(),
            seed: 0,
            response: None,
            step_weights: StepWeights::default(),
            exploitability: ExploitabilityMode::default(),
        }
    }

    pub fn with_snapshot_interval(mut self, interval: u64) -> Self {
        self.snapshot_interval = interval;
        self
    }

    pub fn with_schedule(mut self, schedule: Schedule) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn with_init(mut self, init: Init, seed: u64) -> Self {
        self.init = init;
        self.seed = seed;
        self
    }

    pub fn validate(&self, tree: &GameTree, epsilon: f64) -> Result<()> {
        check_epsilon(tree, epsilon)?;
        if self.snapshot_interval == 0 {
            return Err(Error::Config("snapshot interval must be positive".into()));
        }
        self.step_weights.validate()?;
        if self.algorithm == Algorithm::Cfr {
            if epsilon > 0.0 {
                return Err(Error::Config(
                    "CFR runs only on the unperturbed game (epsilon must be 0)".into(),
                ));
            }
            if self.response.is_some() {
                return Err(Error::Config("CFR has no response kind to override".into()));
            }
            if self.step_weights != StepWeights::Harmonic {
                return Err(Error::Config("CFR does not use step weights".into()));
            }
        }
        Ok(())
    }
}

/// A complete, reproducible experiment description.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Game family and parameters; `game.params.epsilon` perturbs the run.
    pub game: GameSpec,
    #[serde(flatten)]
    pub options: SolveOptions,
}

impl RunConfig {
    pub fn epsilon(&self) -> f64 {
        self.game.params.epsilon
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub metrics: Vec<MetricsRecord>,
    /// The algorithm's reportable profile after the last iteration.
    pub profile: BehaviorProfile,
}

/// The starting profile for a run.
pub fn initial_profile(tree: &GameTree, init: Init, epsilon: f64, seed: u64) -> BehaviorProfile {
    match init {
        Init::Uniform => BehaviorProfile::uniform(tree),
        Init::Random => BehaviorProfile::random(tree, epsilon, &mut ChaCha8Rng::seed_from_u64(seed)),
    }
}

/// Builds the game and runs the configured solver on it.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    config.game.params.validate(config.game.kind)?;
    let tree = config.game.build()?;
    solve(&tree, config.epsilon(), &config.options)
}

/// Runs a solver on `tree`, recording metrics every `snapshot_interval`
/// iterations and after the last one.
pub fn solve(tree: &GameTree, epsilon: f64, options: &SolveOptions) -> Result<RunOutput> {
    solve_with(tree, epsilon, options, |_, _| {})
}

/// Like [`solve`], calling `on_snapshot` with every record and its profile.
pub fn solve_with(
    tree: &GameTree,
    epsilon: f64,
    options: &SolveOptions,
    mut on_snapshot: impl FnMut(&MetricsRecord, &BehaviorProfile),
) -> Result<RunOutput> {
    if !tree.is_well_formed() {
        return Err(Error::MalformedGame(tree.validation().clone()));
    }
    options.validate(tree, epsilon)?;
    let initial = initial_profile(tree, options.init, epsilon, options.seed);
    let mut solver: Box<dyn Solver> = match options.algorithm {
        Algorithm::Gxfp => {
            let mut s = GxfpState::new(tree, &initial, epsilon)?.with_weights(options.step_weights)?;
            if let Some(r) = options.response {
                s = s.with_response(r);
            }
            Box::new(s)
        }
        Algorithm::Xfp => {
            let mut s = XfpState::new(tree, &initial, epsilon)?.with_weights(options.step_weights)?;
            if let Some(r) = options.response {
                s = s.with_response(r);
            }
            Box::new(s)
        }
        Algorithm::Cfr => Box::new(CfrState::new(tree, &initial)?),
    };
    let exploit_eps = match options.exploitability {
        ExploitabilityMode::Unconstrained => 0.0,
        ExploitabilityMode::Constrained => epsilon,
    };
    let mut metrics = Vec::new();
    for it in 1..=options.iterations {
        solver.step(tree, options.schedule);
        if it % options.snapshot_interval == 0 || it == options.iterations {
            let profile = solver.reportable(tree);
            let record = MetricsRecord {
                iteration: it,
                value: expected_value(tree, &profile),
                exploitability: if exploit_eps > 0.0 {
                    constrained_exploitability(tree, &profile, exploit_eps)
                } else {
                    exploitability(tree, &profile)
                },
            };
            on_snapshot(&record, &profile);
            metrics.push(record);
        }
    }
    let profile = if options.iterations == 0 {
        initial
    } else {
        solver.reportable(tree)
    };
    Ok(RunOutput { metrics, profile })
}
