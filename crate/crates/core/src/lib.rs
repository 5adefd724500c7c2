//! Fictitious-play and counterfactual-regret solvers for two-player
//! zero-sum extensive-form games, with the two one-round poker benchmarks.
//!
//! - [`game`]: trees, behaviour profiles, reach and utility evaluation.
//! - [`poker`]: the asymmetric and bet/raise games and their continuous
//!   reference solutions.
//! - [`solvers`]: GXFP, XFP, CFR, best responses and the run loop.
//! - [`analysis`]: exploitability, utility gaps, thresholds, the
//!   normal-form oracle.
//! - [`io`]: metrics CSV and strategy JSON.

pub mod analysis;
pub mod error;
pub mod game;
pub mod io;
pub mod poker;
pub mod solvers;

pub use analysis::{exploitability, MetricsRecord};
pub use error::{Error, Result};
pub use game::{BehaviorProfile, GameTree, InfoSetId, Player};
pub use poker::{GameKind, GameParams, GameSpec};
pub use solvers::{run, solve, Algorithm, RunConfig, RunOutput, Schedule, SolveOptions};
