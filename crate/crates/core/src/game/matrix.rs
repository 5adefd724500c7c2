use super::{GameBuilder, GameTree};
use crate::error::{Error, Result};

/// Embeds a one-shot matrix game: player 1 picks a row, player 2 picks a
/// column without seeing it. `payoffs[r][c]` is player 1's utility.
pub fn matrix_game(payoffs: &[Vec<f64>]) -> Result<GameTree> {
    let cols = payoffs.first().map_or(0, Vec::len);
    if cols == 0 || payoffs.iter().any(|row| row.len() != cols) {
        return Err(Error::InvalidParams(
            "payoff matrix must be non-empty and rectangular".into(),
        ));
    }
    let mut b = GameBuilder::new();
    let rows = b.add_infoset(
        super::Player::One,
        "P1|h=0|",
        (0..payoffs.len()).map(|r| format!("r{r}")),
    );
    let columns = b.add_infoset(super::Player::Two, "P2|h=0|", (0..cols).map(|c| format!("c{c}")));
    let responses = payoffs
        .iter()
        .map(|row| {
            let leaves = row.iter().map(|&u| b.leaf(u)).collect();
            b.decision(columns, leaves)
        })
        .collect();
    let root = b.decision(rows, responses);
    b.build(root)
}
