//! Realization map from behaviour strategies to mixed strategies over pure
//! strategies. Exponential in the number of information sets, so only
//! meant for tiny games and cross-checks.

use super::{BehaviorProfile, GameTree, InfoSetId, Player};
use crate::error::{Error, Result};

pub const DEFAULT_PURE_STRATEGY_CAP: u64 = 1_000_000;

/// One action per information set of the player, in [`MixedStrategy::infosets`] order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PureStrategy(pub Vec<usize>);

#[derive(Clone, Debug, PartialEq)]
pub struct MixedStrategy {
    pub player: Player,
    pub infosets: Vec<InfoSetId>,
    pub strategies: Vec<PureStrategy>,
    pub probs: Vec<f64>,
}

impl MixedStrategy {
    pub fn len(&self) -> usize {
        self.strategies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strategies.is_empty()
    }

    /// `base` with this player's rows replaced by the pure strategy `s`.
    pub fn pure_profile(&self, base: &BehaviorProfile, s: &PureStrategy) -> BehaviorProfile {
        let mut profile = base.clone();
        for (&id, &action) in self.infosets.iter().zip(&s.0) {
            let row = profile.get_mut(id);
            row.fill(0.0);
            row[action] = 1.0;
        }
        profile
    }
}

/// Number of pure strategies of `player`, saturating at `u64::MAX`.
pub fn pure_strategy_count(tree: &GameTree, player: Player) -> u64 {
    tree.infosets_of(player)
        .map(|id| tree.infoset(id).action_count() as u64)
        .fold(1u64, u64::saturating_mul)
}

/// Every pure strategy `s` gets probability `∏_I b(I, s(I))`.
pub fn behavior_to_mixed(
    tree: &GameTree,
    profile: &BehaviorProfile,
    player: Player,
    cap: u64,
) -> Result<MixedStrategy> {
    let count = pure_strategy_count(tree, player);
    if count > cap {
        return Err(Error::TooLarge { count, cap });
    }
    let infosets: Vec<InfoSetId> = tree.infosets_of(player).collect();
    let radix: Vec<usize> = infosets
        .iter()
        .map(|&id| tree.infoset(id).action_count())
        .collect();
    let mut strategies = Vec::with_capacity(count as usize);
    let mut probs = Vec::with_capacity(count as usize);
    let mut digits = vec![0usize; infosets.len()];
    loop {
        let p = infosets
            .iter()
            .zip(&digits)
            .map(|(&id, &a)| profile.prob(id, a))
            .product();
        strategies.push(PureStrategy(digits.clone()));
        probs.push(p);
        // Mixed-radix increment, last information set fastest.
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return Ok(MixedStrategy {
                    player,
                    infosets,
                    strategies,
                    probs,
                });
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < radix[pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameBuilder;

    fn two_sets() -> (GameTree, InfoSetId, InfoSetId) {
        let mut b = GameBuilder::new();
        let s1 = b.add_infoset(Player::One, "a", ["x", "y"]);
        let s2 = b.add_infoset(Player::One, "b", ["x", "y"]);
        let leaves: Vec<_> = (0..4).map(|u| b.leaf(u as f64)).collect();
        let d1 = b.decision(s1, vec![leaves[0], leaves[1]]);
        let d2 = b.decision(s2, vec![leaves[2], leaves[3]]);
        let root = b.chance(vec![(0.5, d1), (0.5, d2)]);
        (b.build(root).unwrap(), s1, s2)
    }

    #[test]
    fn single_infoset_is_identity() {
        let mut b = GameBuilder::new();
        let s = b.add_infoset(Player::Two, "s", ["x", "y"]);
        let l = vec![b.leaf(1.0), b.leaf(0.0)];
        let root = b.decision(s, l);
        let tree = b.build(root).unwrap();
        let profile = BehaviorProfile::from_rows(&tree, vec![vec![0.3, 0.7]]).unwrap();
        let mixed = behavior_to_mixed(&tree, &profile, Player::Two, 10).unwrap();
        assert_eq!(mixed.probs, vec![0.3, 0.7]);
        assert_eq!(mixed.strategies[1], PureStrategy(vec![1]));
    }

    #[test]
    fn product_of_uniforms() {
        let (tree, _, _) = two_sets();
        let mixed =
            behavior_to_mixed(&tree, &BehaviorProfile::uniform(&tree), Player::One, 10).unwrap();
        assert_eq!(mixed.len(), 4);
        assert!(mixed.probs.iter().all(|&p| (p - 0.25).abs() < 1e-15));
        let empty = behavior_to_mixed(&tree, &BehaviorProfile::uniform(&tree), Player::Two, 10)
            .unwrap();
        assert_eq!(empty.probs, vec![1.0]);
    }

    #[test]
    fn cap_is_enforced() {
        let (tree, _, _) = two_sets();
        let err = behavior_to_mixed(&tree, &BehaviorProfile::uniform(&tree), Player::One, 3);
        assert!(matches!(err, Err(Error::TooLarge { count: 4, cap: 3 })));
    }
}
