//! Full-size solver experiments, one PASS/FAIL line per criterion.
//!
//! Runs under `cargo test`; the process exits 0 after reporting unless
//! `GXFP_ACCEPTANCE_STRICT=1`, in which case any FAIL makes it exit 1.

use std::time::Instant;

use gxfp::analysis::thresholds::{
    asymmetric_bet_boundaries, asymmetric_curves, crossings, hand_position,
    locate_bet_raise_thresholds,
};
use gxfp::analysis::{exploitability, normal_form_fp_oracle};
use gxfp::game::{expected_value, matrix_game};
use gxfp::poker::{asymmetric_reference, bet_raise_reference, build_asymmetric, build_bet_raise, GameParams};
use gxfp::solvers::{best_response, CfrState, GxfpState, Init, Solver, XfpState};
use gxfp::{solve, Algorithm, BehaviorProfile, GameTree, Player, RunOutput, Schedule, SolveOptions};

const N: u32 = 100;
const SNAPSHOT: u64 = 1_000;
/// Sequence-form LP value of the bet/raise game at N = 100, P = B = R = 1.
const BET_RAISE_LP_VALUE: f64 = -0.040_594_736_84;
/// Value of the continuous bet/raise game.
const BET_RAISE_CONTINUOUS_VALUE: f64 = -44.0 / 1083.0;

struct Report {
    passed: usize,
    failed: usize,
}

impl Report {
    fn record(&mut self, name: &str, pass: bool, detail: &str, started: Instant) {
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!("{verdict} {name}: {detail} [{:.0}s]", started.elapsed().as_secs_f64());
    }
}

fn asym(epsilon: f64) -> GameTree {
    build_asymmetric(&GameParams::asymmetric(N, 1.0, 1.0).with_epsilon(epsilon)).unwrap()
}

fn bet_raise(epsilon: f64) -> GameTree {
    build_bet_raise(&GameParams::bet_raise(N).with_epsilon(epsilon)).unwrap()
}

fn run(tree: &GameTree, epsilon: f64, alg: Algorithm, iterations: u64) -> RunOutput {
    let options = SolveOptions::new(alg, iterations).with_snapshot_interval(SNAPSHOT);
    solve(tree, epsilon, &options).unwrap()
}

fn near(found: usize, expected: f64, tolerance: f64) -> bool {
    (found as f64 - expected).abs() <= tolerance
}

fn asym_thresholds(report: &mut Report) {
    let started = Instant::now();
    let reference = asymmetric_reference(0.5, 1.0);
    let scaled = |label: &str| {
        let set = std::iter::once(&reference.p1_thresholds).chain(&reference.p2_thresholds);
        set.clone().find_map(|s| s.get(label)).unwrap().fixed_value().unwrap() * N as f64
    };
    let (x1, x2, y1) = (scaled("x1"), scaled("x2"), scaled("y1"));
    let tree = asym(0.01);
    let mut pass = true;
    let mut detail = format!("expected x1={x1:.1} x2={x2:.1} y1={y1:.1};");
    for alg in [Algorithm::Gxfp, Algorithm::Xfp] {
        let out = run(&tree, 0.01, alg, 200_000);
        let (bet, call) = asymmetric_curves(&tree, &out.profile);
        let bounds = asymmetric_bet_boundaries(&bet);
        let calls = crossings(&call, 0.5);
        let ok = bounds.is_some_and(|(b1, b2)| near(b1, x1, 2.0) && near(b2, x2, 2.0))
            && !calls.is_empty()
            && calls.iter().all(|&c| near(c, y1, 2.0));
        pass &= ok;
        detail += &format!(" {alg}: bet boundaries {bounds:?}, call crossings {calls:?};");
    }
    report.record("asymmetric thresholds (eps=0.01, 2e5 iterations)", pass, &detail, started);
}

fn asym_unperturbed_seeds(report: &mut Report) {
    let started = Instant::now();
    let reference = asymmetric_reference(0.5, 1.0);
    let x1 = reference.p1_thresholds.get("x1").unwrap().fixed_value().unwrap();
    let x2 = reference.p1_thresholds.get("x2").unwrap().fixed_value().unwrap();
    let floor = 0.5 / (0.5 + 1.0) - 0.02;
    let tree = asym(0.0);
    let middle: Vec<usize> = (1..=N as usize)
        .filter(|&h| {
            let z = hand_position(h, N as usize);
            x1 < z && z < x2
        })
        .collect();
    let mut pass = true;
    let mut detail = String::new();
    let mut call_curves: Vec<Vec<f64>> = Vec::new();
    for seed in 1..=5 {
        let options = SolveOptions::new(Algorithm::Gxfp, 100_000)
            .with_snapshot_interval(SNAPSHOT)
            .with_init(Init::Random, seed);
        let out = solve(&tree, 0.0, &options).unwrap();
        let (bet, call) = asymmetric_curves(&tree, &out.profile);
        let bounds = asymmetric_bet_boundaries(&bet);
        let mean_call = middle.iter().map(|&h| call[h - 1]).sum::<f64>() / middle.len() as f64;
        let ok = bounds.is_some_and(|(b1, b2)| near(b1, x1 * N as f64, 2.0) && near(b2, x2 * N as f64, 2.0))
            && mean_call >= floor;
        pass &= ok;
        detail += &format!(" seed {seed}: bet boundaries {bounds:?}, mean call {mean_call:.4};");
        call_curves.push(middle.iter().map(|&h| call[h - 1]).collect());
    }
    let spread = call_curves
        .iter()
        .flat_map(|a| call_curves.iter().map(move |b| sup(a, b)))
        .fold(0.0, f64::max);
    detail += &format!(" floor {floor:.4}; player 2 spread across seeds (sup) {spread:.4}");
    report.record("unperturbed asymmetric game across 5 seeds (GXFP, 1e5 iterations)", pass, &detail, started);
}

fn sup(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn bet_raise_value(report: &mut Report, runs: &[(Algorithm, RunOutput)], tree: &GameTree) {
    let started = Instant::now();
    let cross_check = (BET_RAISE_LP_VALUE - BET_RAISE_CONTINUOUS_VALUE).abs();
    let mut pass = cross_check <= 1e-3;
    let mut detail = format!(
        "reference {BET_RAISE_LP_VALUE} (|ref - (-44/1083)| = {cross_check:.2e});"
    );
    for (alg, out) in runs {
        let value = out.metrics.last().unwrap().value;
        // Any profile brackets the game value between the two responses.
        let (_, br1) = best_response(tree, &out.profile, Player::One, 0.0);
        let (_, br2) = best_response(tree, &out.profile, Player::Two, 0.0);
        let bracketed = -br2 <= BET_RAISE_LP_VALUE + 1e-12 && BET_RAISE_LP_VALUE <= br1 + 1e-12;
        let ok = (value - BET_RAISE_LP_VALUE).abs() <= 0.01 && bracketed;
        pass &= ok;
        detail += &format!(" {alg}: {value:.6} (bracket [{:.6}, {br1:.6}]);", -br2);
    }
    report.record("bet/raise value (eps=0, 1e5 iterations)", pass, &detail, started);
}

fn bet_raise_thresholds(report: &mut Report, runs: &[(Algorithm, RunOutput)], tree: &GameTree) {
    let started = Instant::now();
    let reference = bet_raise_reference(&GameParams::bet_raise(N)).unwrap();
    let mut pass = true;
    let mut detail = String::new();
    for (alg, out) in runs {
        let located = locate_bet_raise_thresholds(tree, &out.profile, &reference);
        let misses: Vec<String> = located
            .iter()
            .filter(|t| !t.within(3.0))
            .map(|t| format!("{} found {:?} expected {:.1}", t.label, t.found, t.expected))
            .collect();
        pass &= misses.is_empty();
        detail += &format!(" {alg}: {} of {} within 3 hands", located.len() - misses.len(), located.len());
        if !misses.is_empty() {
            detail += &format!(" (misses: {})", misses.join(", "));
        }
        detail += ";";
    }
    report.record("bet/raise thresholds (eps=0.01, 1e5 iterations)", pass, &detail, started);
}

/// `None` when the curve is fine, else the first offending snapshot.
fn decay_violation(exploitability: &[f64]) -> Option<String> {
    let averages: Vec<f64> = exploitability.windows(10).map(|w| w.iter().sum::<f64>() / 10.0).collect();
    // Slack covers rounding in the window sums only.
    if let Some(i) = (1..averages.len()).find(|&i| averages[i] > averages[i - 1] + 1e-12) {
        return Some(format!(
            "moving average rises at window {i}: {:.3e} -> {:.3e}",
            averages[i - 1],
            averages[i]
        ));
    }
    let (first, last) = (exploitability[0], *exploitability.last().unwrap());
    (last >= 0.1 * first).then(|| format!("final {last:.3e} not below 10% of first {first:.3e}"))
}

fn exploitability_decay(report: &mut Report, runs: &[(&str, Algorithm, &RunOutput)]) {
    let started = Instant::now();
    let mut pass = true;
    let mut detail = String::new();
    for (game, alg, out) in runs {
        let series: Vec<f64> = out.metrics.iter().map(|m| m.exploitability).collect();
        match decay_violation(&series) {
            None => detail += &format!(" {game}/{alg}: ok ({:.2e} -> {:.2e});", series[0], series.last().unwrap()),
            Some(why) => {
                pass = false;
                detail += &format!(" {game}/{alg}: {why};");
            }
        }
    }
    report.record("exploitability decay (every algorithm and game, eps=0)", pass, &detail, started);
}

fn perturbed_faster(report: &mut Report) {
    let started = Instant::now();
    let first_below = |alg: Algorithm, epsilon: f64| {
        let tree = bet_raise(epsilon);
        let options = SolveOptions::new(alg, 2_000).with_snapshot_interval(1);
        let out = solve(&tree, epsilon, &options).unwrap();
        out.metrics.iter().find(|m| m.exploitability <= 0.02).map(|m| m.iteration)
    };
    let mut pass = true;
    let mut detail = String::new();
    for alg in [Algorithm::Gxfp, Algorithm::Xfp] {
        let perturbed = first_below(alg, 0.01);
        let plain = first_below(alg, 0.0);
        let ok = matches!((perturbed, plain), (Some(p), Some(u)) if p < u)
            || (perturbed.is_some() && plain.is_none());
        pass &= ok;
        detail += &format!(" {alg}: eps=0.01 at {perturbed:?}, eps=0 at {plain:?};");
    }
    report.record("perturbed reaches exploitability 0.02 first (bet/raise)", pass, &detail, started);
}

fn oracle_equivalence(report: &mut Report) {
    let started = Instant::now();
    let games: Vec<(&str, GameTree)> = vec![
        ("asym N=2", build_asymmetric(&GameParams::asymmetric(2, 1.0, 1.0)).unwrap()),
        ("asym N=3", build_asymmetric(&GameParams::asymmetric(3, 1.0, 1.0)).unwrap()),
        ("matching pennies", matrix_game(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap()),
        ("mixed 2x2", matrix_game(&[vec![2.0, -1.0], vec![-1.0, 1.0]]).unwrap()),
        ("saddle 2x2", matrix_game(&[vec![3.0, 1.0], vec![0.0, -2.0]]).unwrap()),
    ];
    let mut pass = true;
    let mut detail = String::new();
    for (name, tree) in &games {
        let oracle = normal_form_fp_oracle(tree, 100_000).unwrap();
        detail += &format!(" {name}: oracle {:.4}", oracle.value);
        for alg in Algorithm::ALL {
            let out = solve(tree, 0.0, &SolveOptions::new(alg, 100_000).with_snapshot_interval(100_000)).unwrap();
            let value = expected_value(tree, &out.profile);
            let e = exploitability(tree, &out.profile);
            let ok = (value - oracle.value).abs() <= 0.01 && e <= 0.01;
            pass &= ok;
            detail += &format!(", {alg} {value:.4}/{e:.1e}");
            if !ok {
                detail += " (off)";
            }
        }
        detail += ";";
    }
    report.record("oracle equivalence (value, exploitability)", pass, &detail, started);
}

fn exactness(report: &mut Report) {
    let started = Instant::now();
    let games = [
        build_asymmetric(&GameParams::asymmetric(20, 1.0, 1.0)).unwrap(),
        build_bet_raise(&GameParams::bet_raise(20)).unwrap(),
    ];
    let mut failures: Vec<String> = Vec::new();
    let mut steps = 0u64;
    let mut fail = |what: String| {
        if failures.len() < 5 {
            failures.push(what);
        }
    };
    let eps = 0.01;
    for tree in &games {
        for schedule in [Schedule::Alternating, Schedule::Simultaneous] {
            let uniform = BehaviorProfile::uniform(tree);
            let mut g = GxfpState::new(tree, &uniform, eps).unwrap();
            let mut x = XfpState::new(tree, &uniform, eps).unwrap();
            let mut c = CfrState::new(tree, &uniform).unwrap();
            for n in 1..=1_000u64 {
                steps += 1;
                g.step(tree, schedule);
                x.step(tree, schedule);
                c.step(tree, schedule);
                for id in tree.infoset_ids() {
                    let range = tree.layout().range(id);
                    let total: u64 = g.counts()[range.clone()].iter().sum();
                    if total != n {
                        fail(format!("GXFP counts {total} != {n}"));
                    }
                    let sum: f64 = x.profile(tree).get(id).iter().sum();
                    if (sum - 1.0).abs() > 1e-12 {
                        fail(format!("XFP row sum {sum}"));
                    }
                    if c.cum_regret()[range].iter().all(|&r| r <= 0.0) {
                        let k = tree.infoset(id).action_count() as f64;
                        if c.current(tree).get(id).iter().any(|&p| p != 1.0 / k) {
                            fail("CFR not uniform without positive regret".into());
                        }
                    }
                }
                for b in [g.profile(tree), x.profile(tree), c.average(tree), c.current(tree)] {
                    let e = exploitability(tree, &b);
                    if e < -1e-9 {
                        fail(format!("exploitability {e}"));
                    }
                }
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{steps} steps of each solver checked (asym and bet/raise N=20, both schedules)")
    } else {
        failures.join("; ")
    };
    report.record("exactness suite", failures.is_empty(), &detail, started);
}

fn xfp_gxfp_agreement(report: &mut Report, runs: &[(Algorithm, RunOutput)], tree: &GameTree) {
    let started = Instant::now();
    let (a, b) = (&runs[0].1.profile, &runs[1].1.profile);
    let distance = a.sup_distance(b);
    let mut gaps: Vec<(f64, &str)> = tree
        .infoset_ids()
        .map(|id| (sup(a.get(id), b.get(id)), tree.infoset(id).key.as_str()))
        .collect();
    gaps.sort_by(|x, y| y.0.total_cmp(&x.0));
    let worst: Vec<String> = gaps.iter().take(5).map(|(d, k)| format!("{k} {d:.3}")).collect();
    report.record(
        "XFP and GXFP perturbed profiles agree (sup-norm <= 0.05)",
        distance <= 0.05,
        &format!("sup distance {distance:.4} after 1e5 iterations; largest at {}", worst.join(", ")),
        started,
    );
}

fn main() {
    let mut report = Report { passed: 0, failed: 0 };
    let total = Instant::now();

    exactness(&mut report);
    oracle_equivalence(&mut report);
    perturbed_faster(&mut report);
    asym_thresholds(&mut report);
    asym_unperturbed_seeds(&mut report);

    let plain = bet_raise(0.0);
    let plain_runs: Vec<(Algorithm, RunOutput)> = Algorithm::ALL
        .into_iter()
        .map(|alg| (alg, run(&plain, 0.0, alg, 100_000)))
        .collect();
    bet_raise_value(&mut report, &plain_runs, &plain);

    let perturbed = bet_raise(0.01);
    let perturbed_runs: Vec<(Algorithm, RunOutput)> = [Algorithm::Gxfp, Algorithm::Xfp]
        .into_iter()
        .map(|alg| (alg, run(&perturbed, 0.01, alg, 100_000)))
        .collect();
    bet_raise_thresholds(&mut report, &perturbed_runs, &perturbed);
    xfp_gxfp_agreement(&mut report, &perturbed_runs, &perturbed);

    let asym_plain = asym(0.0);
    let asym_runs: Vec<(Algorithm, RunOutput)> = Algorithm::ALL
        .into_iter()
        .map(|alg| (alg, run(&asym_plain, 0.0, alg, 100_000)))
        .collect();
    let decay: Vec<(&str, Algorithm, &RunOutput)> = asym_runs
        .iter()
        .map(|(alg, out)| ("asym", *alg, out))
        .chain(plain_runs.iter().map(|(alg, out)| ("betraise", *alg, out)))
        .collect();
    exploitability_decay(&mut report, &decay);

    println!(
        "acceptance: {} passed, {} failed in {:.0}s",
        report.passed,
        report.failed,
        total.elapsed().as_secs_f64()
    );
    if report.failed > 0 && std::env::var("GXFP_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
