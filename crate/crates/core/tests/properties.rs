//! Invariants of the evaluators and solvers over random games and profiles.

use gxfp::analysis::{constrained_exploitability, exploitability};
use gxfp::game::expected_value;
use gxfp::poker::{build_asymmetric, build_bet_raise, GameParams};
use gxfp::solvers::{best_response, CfrState, GxfpState, Solver, XfpState};
use gxfp::{BehaviorProfile, GameTree, Player, Schedule};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn game() -> impl Strategy<Value = GameTree> {
    (any::<bool>(), 2u32..7, 0.2f64..3.0, 0.2f64..3.0, 0.2f64..3.0).prop_map(
        |(asym, n, pot, bet, raise)| {
            if asym {
                build_asymmetric(&GameParams::asymmetric(n, pot, bet)).unwrap()
            } else {
                build_bet_raise(&GameParams::new(n, pot, bet, raise)).unwrap()
            }
        },
    )
}

fn schedule() -> impl Strategy<Value = Schedule> {
    prop_oneof![Just(Schedule::Alternating), Just(Schedule::Simultaneous)]
}

fn random_profile(tree: &GameTree, epsilon: f64, seed: u64) -> BehaviorProfile {
    BehaviorProfile::random(tree, epsilon, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exploitability_is_nonnegative(tree in game(), seed in any::<u64>()) {
        let b = random_profile(&tree, 0.0, seed);
        prop_assert!(exploitability(&tree, &b) >= -1e-9);
    }

    #[test]
    fn value_lies_between_the_responses(tree in game(), seed in any::<u64>()) {
        let b = random_profile(&tree, 0.0, seed);
        let v = expected_value(&tree, &b);
        let (_, br1) = best_response(&tree, &b, Player::One, 0.0);
        let (_, br2) = best_response(&tree, &b, Player::Two, 0.0);
        prop_assert!(-br2 <= v + 1e-12 && v <= br1 + 1e-12, "{} <= {} <= {}", -br2, v, br1);
    }

    #[test]
    fn best_response_dominates_any_replacement(
        tree in game(),
        seed in any::<u64>(),
        other in any::<u64>(),
    ) {
        let b = random_profile(&tree, 0.0, seed);
        let alt = random_profile(&tree, 0.0, other);
        for player in Player::BOTH {
            let (_, best) = best_response(&tree, &b, player, 0.0);
            let mut joint = b.clone();
            joint.splice(&tree, player, &alt);
            prop_assert!(player.sign() * expected_value(&tree, &joint) <= best + 1e-12);
        }
    }

    #[test]
    fn constrained_responses_exploit_less(tree in game(), seed in any::<u64>(), eps in 0.0f64..0.3) {
        let b = random_profile(&tree, 0.0, seed);
        prop_assert!(constrained_exploitability(&tree, &b, eps) <= exploitability(&tree, &b) + 1e-12);
    }

    #[test]
    fn gxfp_counts_sum_to_updates(
        tree in game(),
        eps in 0.0f64..0.3,
        steps in 1usize..30,
        sched in schedule(),
    ) {
        let mut s = GxfpState::new(&tree, &BehaviorProfile::uniform(&tree), eps).unwrap();
        for _ in 0..steps {
            s.step(&tree, sched);
            s.profile(&tree).check(&tree, eps).unwrap();
        }
        for id in tree.infoset_ids() {
            let owner = tree.infoset(id).owner;
            let total: u64 = s.counts()[tree.layout().range(id)].iter().sum();
            prop_assert_eq!(total, s.updates(owner));
            prop_assert_eq!(total, steps as u64);
        }
    }

    #[test]
    fn xfp_rows_stay_normalised(
        tree in game(),
        eps in 0.0f64..0.3,
        steps in 1usize..30,
        sched in schedule(),
        seed in any::<u64>(),
    ) {
        let init = random_profile(&tree, eps, seed);
        let mut s = XfpState::new(&tree, &init, eps).unwrap();
        for _ in 0..steps {
            s.step(&tree, sched);
            let b = s.profile(&tree);
            for row in b.rows() {
                prop_assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
            b.check(&tree, eps).unwrap();
        }
    }

    #[test]
    fn cfr_is_uniform_without_positive_regret(
        tree in game(),
        steps in 1usize..30,
        sched in schedule(),
    ) {
        let mut s = CfrState::new(&tree, &BehaviorProfile::uniform(&tree)).unwrap();
        for _ in 0..steps {
            s.step(&tree, sched);
            let current = s.current(&tree);
            for id in tree.infoset_ids() {
                let range = tree.layout().range(id);
                if s.cum_regret()[range].iter().all(|&r| r <= 0.0) {
                    let k = tree.infoset(id).action_count() as f64;
                    prop_assert!(current.get(id).iter().all(|&p| p == 1.0 / k));
                }
            }
            s.average(&tree).check(&tree, 0.0).unwrap();
        }
    }
}
