use super::{showdown, GameKind, GameParams, HandSets};
use crate::error::Result;
use crate::game::{GameBuilder, GameTree, Player};

/// Bet/raise game with one bet and one raise, check-raise allowed.
///
/// ```text
/// P1: check | bet
///   check -> P2: check (showdown) | bet
///     check-bet -> P1: fold | call | raise
///       check-bet-raise -> P2: fold | call
///   bet -> P2: fold | call | raise
///     bet-raise -> P1: fold | call
/// ```
///
/// Folding forfeits the ante plus every bet the folder has put in; a
/// showdown moves `A` plus the matched bets to the better hand.
pub fn build_bet_raise(params: &GameParams) -> Result<GameTree> {
    params.validate(GameKind::BetRaise)?;
    let n = params.hands;
    let (a, bet, raise) = (params.ante, params.bet, params.raise);
    let mut b = GameBuilder::new();
    let p1_open = HandSets::new(&mut b, Player::One, n, "", &["check", "bet"]);
    let p2_after_check = HandSets::new(&mut b, Player::Two, n, "k", &["check", "bet"]);
    let p1_after_check_bet = HandSets::new(&mut b, Player::One, n, "kb", &["fold", "call", "raise"]);
    let p2_after_check_raise = HandSets::new(&mut b, Player::Two, n, "kbr", &["fold", "call"]);
    let p2_after_bet = HandSets::new(&mut b, Player::Two, n, "b", &["fold", "call", "raise"]);
    let p1_after_bet_raise = HandSets::new(&mut b, Player::One, n, "br", &["fold", "call"]);

    let p = 1.0 / (n as f64 * n as f64);
    let mut deals = Vec::with_capacity((n * n) as usize);
    for i in 1..=n {
        for j in 1..=n {
            let sd = showdown(i, j);

            let kbr = {
                let fold = b.leaf(a + bet);
                let call = b.leaf(sd * (a + bet + raise));
                b.decision(p2_after_check_raise.of(j), vec![fold, call])
            };
            let kb = {
                let fold = b.leaf(-a);
                let call = b.leaf(sd * (a + bet));
                b.decision(p1_after_check_bet.of(i), vec![fold, call, kbr])
            };
            let k = {
                let check = b.leaf(sd * a);
                b.decision(p2_after_check.of(j), vec![check, kb])
            };

            let br = {
                let fold = b.leaf(-(a + bet));
                let call = b.leaf(sd * (a + bet + raise));
                b.decision(p1_after_bet_raise.of(i), vec![fold, call])
            };
            let bet_node = {
                let fold = b.leaf(a);
                let call = b.leaf(sd * (a + bet));
                b.decision(p2_after_bet.of(j), vec![fold, call, br])
            };

            deals.push((p, b.decision(p1_open.of(i), vec![k, bet_node])));
        }
    }
    let root = b.chance(deals);
    b.build(root)
}
