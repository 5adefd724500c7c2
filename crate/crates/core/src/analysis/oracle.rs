//! Classic normal-form fictitious play on the expanded payoff matrix. Tiny
//! games only; used as an independent cross-check of the tree solvers.

use crate::error::{Error, Result};
use crate::game::{behavior_to_mixed, expected_value, BehaviorProfile, GameTree, MixedStrategy, Player};

/// Largest pure-strategy count per player the oracle accepts.
pub const ORACLE_STRATEGY_CAP: u64 = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    /// `x̄ᵀ M ȳ` for the empirical frequencies.
    pub value: f64,
    /// `min_c (x̄ᵀ M)_c`: what player 1's average guarantees.
    pub lower: f64,
    /// `max_r (M ȳ)_r`: what player 2's average concedes at most.
    pub upper: f64,
    pub row: MixedStrategy,
    pub col: MixedStrategy,
}

/// Player-1 payoff of every pure strategy pair, with both strategy lists.
pub fn payoff_matrix(tree: &GameTree) -> Result<(MixedStrategy, MixedStrategy, Vec<Vec<f64>>)> {
    tree.assert_well_formed();
    let base = BehaviorProfile::uniform(tree);
    let rows = behavior_to_mixed(tree, &base, Player::One, ORACLE_STRATEGY_CAP)?;
    let cols = behavior_to_mixed(tree, &base, Player::Two, ORACLE_STRATEGY_CAP)?;
    let matrix = rows
        .strategies
        .iter()
        .map(|r| {
            let with_row = rows.pure_profile(&base, r);
            cols.strategies
                .iter()
                .map(|c| expected_value(tree, &cols.pure_profile(&with_row, c)))
                .collect()
        })
        .collect();
    Ok((rows, cols, matrix))
}

/// Runs `iterations` rounds of simultaneous fictitious play, both players
/// starting from their first pure strategy and breaking ties by lowest index.
pub fn normal_form_fp_oracle(tree: &GameTree, iterations: u64) -> Result<OracleResult> {
    if iterations == 0 {
        return Err(Error::Config("oracle needs at least one iteration".into()));
    }
    let (mut row, mut col, m) = payoff_matrix(tree)?;
    let (nr, nc) = (m.len(), m[0].len());
    let mut row_count = vec![0u64; nr];
    let mut col_count = vec![0u64; nc];
    // Payoff of each row against the column counts, and vice versa.
    let mut row_score = vec![0.0; nr];
    let mut col_score = vec![0.0; nc];
    let (mut r, mut c) = (0, 0);
    for _ in 0..iterations {
        row_count[r] += 1;
        col_count[c] += 1;
        for (i, s) in row_score.iter_mut().enumerate() {
            *s += m[i][c];
        }
        for (j, s) in col_score.iter_mut().enumerate() {
            *s += m[r][j];
        }
        r = argmax(&row_score);
        c = argmin(&col_score);
    }
    let n = iterations as f64;
    row.probs = row_count.iter().map(|&k| k as f64 / n).collect();
    col.probs = col_count.iter().map(|&k| k as f64 / n).collect();
    let value = (0..nr)
        .map(|i| row.probs[i] * (0..nc).map(|j| m[i][j] * col.probs[j]).sum::<f64>())
        .sum();
    let lower = col_score_of(&m, &row.probs).into_iter().fold(f64::INFINITY, f64::min);
    let upper = (0..nr)
        .map(|i| (0..nc).map(|j| m[i][j] * col.probs[j]).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(OracleResult { value, lower, upper, row, col })
}

fn col_score_of(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    (0..m[0].len())
        .map(|j| m.iter().zip(x).map(|(r, p)| r[j] * p).sum())
        .collect()
}

fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v < values[best] {
            best = i;
        }
    }
    best
}
