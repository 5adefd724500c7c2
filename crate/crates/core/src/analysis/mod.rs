//! Solution-quality metrics, utility gaps, threshold extraction and the
//! normal-form fictitious-play oracle.

mod gaps;
mod metrics;
mod oracle;
pub mod thresholds;

pub use gaps::{utility_gap_report, GapEntry, GapPairs, UtilityGapReport};
pub use metrics::{
    constrained_exploitability, exploitability, ExploitabilityMode, MetricsRecord,
};
pub use oracle::{normal_form_fp_oracle, payoff_matrix, OracleResult, ORACLE_STRATEGY_CAP};
