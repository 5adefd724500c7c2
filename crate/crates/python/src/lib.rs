//! Python bindings: build a game, run a solver, evaluate strategies.
//!
//! Strategies cross the boundary as `{infoset_key: [probabilities]}` dicts,
//! the same shape as the `strategy` object of the JSON files.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use gxfp::game::expected_value;
use gxfp::io::{StrategyFile, StrategyMetadata};
use gxfp::poker::ThresholdValue;
use gxfp::{exploitability, BehaviorProfile, GameKind, GameParams, GameSpec, GameTree, Schedule, SolveOptions};

fn py_err(e: gxfp::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(frozen)]
struct Game {
    spec: GameSpec,
    tree: GameTree,
}

impl Game {
    fn profile(&self, strategy: BTreeMap<String, Vec<f64>>) -> PyResult<BehaviorProfile> {
        let file = StrategyFile {
            metadata: StrategyMetadata {
                game: self.spec,
                config: None,
                final_value: None,
                final_exploitability: None,
            },
            strategy,
        };
        file.profile(&self.tree).map_err(py_err)
    }

    fn strategy(&self, profile: &BehaviorProfile) -> BTreeMap<String, Vec<f64>> {
        self.tree
            .infoset_ids()
            .map(|id| (self.tree.infoset(id).key.clone(), profile.get(id).to_vec()))
            .collect()
    }
}

#[pymethods]
impl Game {
    #[new]
    #[pyo3(signature = (kind, hands, pot=1.0, bet=1.0, raise_=1.0, epsilon=0.0))]
    fn new(kind: &str, hands: u32, pot: f64, bet: f64, raise_: f64, epsilon: f64) -> PyResult<Self> {
        let kind: GameKind = kind.parse().map_err(py_err)?;
        let params = GameParams::new(hands, pot, bet, raise_).with_epsilon(epsilon);
        params.validate(kind).map_err(py_err)?;
        let spec = GameSpec { kind, params };
        let tree = spec.build().map_err(py_err)?;
        Ok(Game { spec, tree })
    }

    fn infoset_keys(&self) -> Vec<String> {
        self.tree.infosets().iter().map(|s| s.key.clone()).collect()
    }

    fn uniform(&self) -> BTreeMap<String, Vec<f64>> {
        self.strategy(&BehaviorProfile::uniform(&self.tree))
    }

    /// Player 1's expected payoff under `strategy`.
    fn value(&self, strategy: BTreeMap<String, Vec<f64>>) -> PyResult<f64> {
        Ok(expected_value(&self.tree, &self.profile(strategy)?))
    }

    fn exploitability(&self, strategy: BTreeMap<String, Vec<f64>>) -> PyResult<f64> {
        Ok(exploitability(&self.tree, &self.profile(strategy)?))
    }

    /// Runs a solver and returns `(metrics, strategy)`, where metrics are
    /// `(iteration, value, exploitability)` tuples.
    #[pyo3(signature = (alg="gxfp", iterations=10_000, snapshot=1_000, schedule="alternating", seed=0))]
    #[allow(clippy::type_complexity)]
    fn solve(
        &self,
        py: Python<'_>,
        alg: &str,
        iterations: u64,
        snapshot: u64,
        schedule: &str,
        seed: u64,
    ) -> PyResult<(Vec<(u64, f64, f64)>, BTreeMap<String, Vec<f64>>)> {
        let schedule: Schedule = schedule.parse().map_err(py_err)?;
        let mut options = SolveOptions::new(alg.parse().map_err(py_err)?, iterations)
            .with_snapshot_interval(snapshot)
            .with_schedule(schedule);
        options.seed = seed;
        let out = py
            .detach(|| gxfp::solve(&self.tree, self.spec.params.epsilon, &options))
            .map_err(py_err)?;
        let metrics = out
            .metrics
            .iter()
            .map(|m| (m.iteration, m.value, m.exploitability))
            .collect();
        Ok((metrics, self.strategy(&out.profile)))
    }

    /// Continuous-game thresholds as `{label: value}`; free thresholds map
    /// to `None`, offsets are left out.
    fn reference(&self) -> PyResult<BTreeMap<String, Option<f64>>> {
        let r = self.spec.reference().map_err(py_err)?;
        let sets = std::iter::once(&r.p1_thresholds).chain(&r.p2_thresholds);
        Ok(sets
            .flat_map(|s| &s.thresholds)
            .filter_map(|t| match t.value {
                ThresholdValue::Fixed(v) => Some((t.label.to_string(), Some(v))),
                ThresholdValue::Free => Some((t.label.to_string(), None)),
                ThresholdValue::Offset { .. } => None,
            })
            .collect())
    }
}

#[pymodule]
fn pygxfp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Game>()?;
    Ok(())
}
