use super::{showdown, GameKind, GameParams, HandSets};
use crate::error::Result;
use crate::game::{GameBuilder, GameTree, Player};

/// Player 1 checks or bets `B`; facing a bet player 2 folds or calls.
///
/// Payoffs to player 1: fold `+A`, showdown after check `±A`, showdown
/// after call `±(A + B)`, ties `0`.
pub fn build_asymmetric(params: &GameParams) -> Result<GameTree> {
    params.validate(GameKind::Asym)?;
    let n = params.hands;
    let (ante, bet) = (params.ante, params.bet);
    let mut b = GameBuilder::new();
    let first = HandSets::new(&mut b, Player::One, n, "", &["check", "bet"]);
    let facing_bet = HandSets::new(&mut b, Player::Two, n, "b", &["fold", "call"]);

    let p = 1.0 / (n as f64 * n as f64);
    let mut deals = Vec::with_capacity((n * n) as usize);
    for i in 1..=n {
        for j in 1..=n {
            let sd = showdown(i, j);
            let check = b.leaf(sd * ante);
            let fold = b.leaf(ante);
            let call = b.leaf(sd * (ante + bet));
            let respond = b.decision(facing_bet.of(j), vec![fold, call]);
            deals.push((p, b.decision(first.of(i), vec![check, respond])));
        }
    }
    let root = b.chance(deals);
    b.build(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{NodeKind, NodeId};

    fn leaf_at(tree: &GameTree, n: u32, deal: (u32, u32), path: &[usize]) -> f64 {
        let mut node = tree.root().children[((deal.0 - 1) * n + deal.1 - 1) as usize];
        for &a in path {
            node = tree.node(node).children[a];
        }
        match tree.node(node).kind {
            NodeKind::Leaf { utility } => utility,
            _ => panic!("not a leaf"),
        }
    }

    #[test]
    fn two_hand_game_shape() {
        let tree = build_asymmetric(&GameParams::asymmetric(2, 1.0, 1.0)).unwrap();
        assert!(tree.is_well_formed());
        assert_eq!(tree.infosets().len(), 4);
        assert_eq!(tree.infosets_of(Player::One).count(), 2);
        assert_eq!(tree.leaf_count(), 12);
        let NodeKind::Chance { probs } = &tree.node(NodeId::ROOT).kind else {
            panic!()
        };
        assert_eq!(probs, &vec![0.25; 4]);
    }

    #[test]
    fn payoffs() {
        let tree = build_asymmetric(&GameParams::asymmetric(2, 1.0, 1.0)).unwrap();
        assert_eq!(leaf_at(&tree, 2, (2, 1), &[1, 1]), 1.5);
        assert_eq!(leaf_at(&tree, 2, (1, 2), &[1, 1]), -1.5);
        assert_eq!(leaf_at(&tree, 2, (1, 2), &[1, 0]), 0.5);
        assert_eq!(leaf_at(&tree, 2, (2, 2), &[0]), 0.0);
        assert_eq!(leaf_at(&tree, 2, (1, 1), &[1, 1]), 0.0);
        assert_eq!(leaf_at(&tree, 2, (2, 1), &[0]), 0.5);
    }

    #[test]
    fn infoset_members_share_the_owner_hand() {
        let tree = build_asymmetric(&GameParams::asymmetric(3, 1.0, 1.0)).unwrap();
        let id = tree.find_infoset("P2|h=3|b").unwrap();
        assert_eq!(tree.infoset(id).members.len(), 3);
        assert_eq!(tree.infoset(id).action_labels, vec!["fold", "call"]);
    }
}
