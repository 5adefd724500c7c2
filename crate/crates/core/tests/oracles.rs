//! Cross-checks of the tree evaluators against brute force over pure strategies.

use gxfp::analysis::{exploitability, payoff_matrix};
use gxfp::game::{behavior_to_mixed, expected_value, matrix_game, MixedStrategy};
use gxfp::poker::{build_asymmetric, build_bet_raise, GameParams};
use gxfp::solvers::best_response;
use gxfp::{BehaviorProfile, GameTree, Player};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_games() -> Vec<(&'static str, GameTree)> {
    vec![
        ("asym N=2", build_asymmetric(&GameParams::asymmetric(2, 1.0, 1.0)).unwrap()),
        ("asym N=3", build_asymmetric(&GameParams::asymmetric(3, 1.0, 2.0)).unwrap()),
        ("betraise N=2", build_bet_raise(&GameParams::bet_raise(2)).unwrap()),
        ("matrix 3x2", matrix_game(&[vec![1.0, -2.0], vec![0.5, 0.0], vec![-1.0, 3.0]]).unwrap()),
    ]
}

fn random_profile(tree: &GameTree, seed: u64) -> BehaviorProfile {
    BehaviorProfile::random(tree, 0.0, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Best value `player` can reach by a pure deviation from `profile`.
fn brute_force_response(tree: &GameTree, profile: &BehaviorProfile, player: Player) -> f64 {
    let pure: MixedStrategy = behavior_to_mixed(tree, profile, player, 1 << 16).unwrap();
    pure.strategies
        .iter()
        .map(|s| player.sign() * expected_value(tree, &pure.pure_profile(profile, s)))
        .fold(f64::NEG_INFINITY, f64::max)
}

#[test]
fn bilinear_form_matches_tree_value() {
    for (name, tree) in small_games() {
        let (_, _, m) = payoff_matrix(&tree).unwrap();
        for seed in 0..5 {
            let b = random_profile(&tree, seed);
            let x = behavior_to_mixed(&tree, &b, Player::One, 1 << 16).unwrap();
            let y = behavior_to_mixed(&tree, &b, Player::Two, 1 << 16).unwrap();
            let bilinear: f64 = x
                .probs
                .iter()
                .zip(&m)
                .map(|(p, row)| p * row.iter().zip(&y.probs).map(|(q, v)| q * v).sum::<f64>())
                .sum();
            let direct = expected_value(&tree, &b);
            assert!((bilinear - direct).abs() < 1e-12, "{name}: {bilinear} vs {direct}");
        }
    }
}

#[test]
fn best_response_matches_brute_force() {
    for (name, tree) in small_games() {
        for seed in 0..5 {
            let b = random_profile(&tree, seed);
            for player in Player::BOTH {
                let (_, value) = best_response(&tree, &b, player, 0.0);
                let brute = brute_force_response(&tree, &b, player);
                assert!((value - brute).abs() < 1e-12, "{name} {player:?}: {value} vs {brute}");
            }
        }
    }
}

#[test]
fn best_response_profile_attains_its_value() {
    for (name, tree) in small_games() {
        let b = random_profile(&tree, 11);
        for player in Player::BOTH {
            let (br, value) = best_response(&tree, &b, player, 0.0);
            let mut joint = b.clone();
            joint.splice(&tree, player, &br);
            let attained = player.sign() * expected_value(&tree, &joint);
            assert!((attained - value).abs() < 1e-12, "{name} {player:?}");
        }
    }
}

#[test]
fn exploitability_is_the_sum_of_one_sided_deviations() {
    for (name, tree) in small_games() {
        for seed in 0..5 {
            let b = random_profile(&tree, 100 + seed);
            let brute = brute_force_response(&tree, &b, Player::One)
                + brute_force_response(&tree, &b, Player::Two);
            let e = exploitability(&tree, &b);
            assert!((e - brute).abs() < 1e-12, "{name}: {e} vs {brute}");
        }
    }
}
