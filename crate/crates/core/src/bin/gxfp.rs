use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gxfp::analysis::{utility_gap_report, ExploitabilityMode, GapPairs};
use gxfp::io::{write_metrics, StrategyFile, StrategyMetadata};
use gxfp::poker::{ReferenceSolution, ThresholdSet, ThresholdValue};
use gxfp::solvers::{Init, ResponseKind, StepWeights, DEFAULT_SNAPSHOT_INTERVAL};
use gxfp::{
    exploitability, game::expected_value, run, Algorithm, Error, GameKind, GameParams, GameSpec,
    Result, RunConfig, Schedule, SolveOptions,
};

#[derive(Parser)]
#[command(name = "gxfp", version, about = "Fictitious play and CFR on one-round poker games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a solver and write metrics and the final strategy.
    Solve(SolveArgs),
    /// Print the continuous-game reference solution.
    Exact(GameArgs),
    /// Evaluate a stored strategy.
    Eval(EvalArgs),
}

#[derive(Args, Clone)]
struct GameArgs {
    #[arg(long, default_value = "asym")]
    game: GameKind,
    #[arg(long, default_value_t = 100)]
    hands: u32,
    #[arg(long, default_value_t = 1.0)]
    pot: f64,
    #[arg(long, default_value_t = 1.0)]
    bet: f64,
    #[arg(long, default_value_t = 1.0)]
    raise: f64,
}

impl GameArgs {
    fn spec(&self, epsilon: f64) -> GameSpec {
        GameSpec {
            kind: self.game,
            params: GameParams::new(self.hands, self.pot, self.bet, self.raise).with_epsilon(epsilon),
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    game: GameArgs,
    #[arg(long, default_value = "gxfp")]
    alg: Algorithm,
    /// Minimum action probability of the perturbed game.
    #[arg(long, visible_alias = "epsilon", default_value_t = 0.0)]
    eps: f64,
    #[arg(long, default_value_t = 10_000)]
    iters: u64,
    /// Iterations between metric snapshots.
    #[arg(long, default_value_t = DEFAULT_SNAPSHOT_INTERVAL)]
    snapshot: u64,
    #[arg(long, default_value = "alternating")]
    schedule: Schedule,
    #[arg(long, default_value = "uniform")]
    init: Init,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seed range `a..b` (inclusive); runs one solve per seed, suffixing
    /// output paths with `.seed<k>`.
    #[arg(long, conflicts_with = "seed")]
    seeds: Option<String>,
    /// Override the update target: `decision` or `response`.
    #[arg(long)]
    response: Option<ResponseKind>,
    /// Power-weight exponent p for α = (n+1)^(−p); default is α = 1/(n+1).
    #[arg(long)]
    weight_power: Option<f64>,
    /// Measure exploitability against ε-constrained responders.
    #[arg(long)]
    constrained_exploitability: bool,
    #[arg(long)]
    metrics: Option<PathBuf>,
    #[arg(long)]
    strategy: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Strategy JSON written by `solve` (or by hand).
    #[arg(long)]
    strategy: PathBuf,
    /// Evaluate in this game instead of the one recorded in the file.
    #[arg(long)]
    game: Option<GameKind>,
    #[arg(long, requires = "game")]
    hands: Option<u32>,
    #[arg(long, requires = "game")]
    pot: Option<f64>,
    #[arg(long, requires = "game")]
    bet: Option<f64>,
    #[arg(long, requires = "game")]
    raise: Option<f64>,
    /// Also print per-information-set utility gaps (last action minus first).
    #[arg(long)]
    gaps: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Exact(args) => cmd_exact(&args),
        Command::Eval(args) => cmd_eval(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn parse_seeds(text: &str) -> Result<Vec<u64>> {
    let bad = || Error::Config(format!("--seeds expects a..b, got '{text}'"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

/// `metrics.csv` with seed 3 becomes `metrics.seed3.csv`.
fn suffixed(path: &Path, seed: u64) -> PathBuf {
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.seed{seed}.{}", ext.to_string_lossy()),
        None => format!("{stem}.seed{seed}"),
    };
    path.with_file_name(name)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn cmd_solve(args: &SolveArgs) -> Result<()> {
    let spec = args.game.spec(args.eps);
    spec.params.validate(spec.kind)?;
    let mut options = SolveOptions::new(args.alg, args.iters)
        .with_snapshot_interval(args.snapshot)
        .with_schedule(args.schedule)
        .with_init(args.init, args.seed);
    options.response = args.response;
    if let Some(p) = args.weight_power {
        options.step_weights = StepWeights::Power(p);
    }
    if args.constrained_exploitability {
        options.exploitability = ExploitabilityMode::Constrained;
    }
    let base = RunConfig { game: spec, options };
    // Reject bad combinations before touching any output path.
    base.options.validate(&spec.build()?, spec.params.epsilon)?;

    let Some(range) = &args.seeds else {
        return solve_one(&base, args.metrics.as_deref(), args.strategy.as_deref());
    };
    let seeds = parse_seeds(range)?;
    let results: Vec<Result<()>> = std::thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .iter()
            .map(|&seed| {
                let mut config = base;
                config.options.seed = seed;
                let metrics = args.metrics.as_deref().map(|p| suffixed(p, seed));
                let strategy = args.strategy.as_deref().map(|p| suffixed(p, seed));
                scope.spawn(move || solve_one(&config, metrics.as_deref(), strategy.as_deref()))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect()
    });
    results.into_iter().collect()
}

fn solve_one(config: &RunConfig, metrics: Option<&Path>, strategy: Option<&Path>) -> Result<()> {
    let tree = config.game.build()?;
    let out = run(config)?;
    let last = out.metrics.last();
    if let Some(path) = metrics {
        write_metrics(create(path)?, &out.metrics)?;
    }
    if let Some(path) = strategy {
        let meta = StrategyMetadata {
            game: config.game,
            config: Some(*config),
            final_value: last.map(|m| m.value),
            final_exploitability: last.map(|m| m.exploitability),
        };
        StrategyFile::new(&tree, &out.profile, meta).write(create(path)?)?;
    }
    match last {
        Some(m) => println!(
            "seed {}: iterations {} value {:.12} exploitability {:.12}",
            config.options.seed, m.iteration, m.value, m.exploitability
        ),
        None => println!("seed {}: no iterations run", config.options.seed),
    }
    Ok(())
}

fn print_set(set: &ThresholdSet, hands: u32) {
    println!("{}", set.situation);
    for t in &set.thresholds {
        match t.value {
            ThresholdValue::Fixed(x) => {
                println!("  {} = {x:.12}  (N*x = {:.2})", t.label, x * hands as f64)
            }
            ThresholdValue::Free => println!("  {} = free", t.label),
            ThresholdValue::Offset { from, delta } => {
                let sign = if delta < 0.0 { '-' } else { '+' };
                println!("  {} = {from} {sign} {:.12}", t.label, delta.abs())
            }
        }
    }
    println!("  intervals: {}", set.intervals.join(" | "));
}

fn print_reference(r: &ReferenceSolution, hands: u32) {
    print_set(&r.p1_thresholds, hands);
    for set in &r.p2_thresholds {
        print_set(set, hands);
    }
    if !r.free_thresholds.is_empty() {
        println!("{}: free", r.free_thresholds.join(", "));
    }
    match r.game_value {
        Some(v) => println!("value: {v:.12}"),
        None => println!("value: unknown"),
    }
}

fn cmd_exact(args: &GameArgs) -> Result<()> {
    let spec = args.spec(0.0);
    spec.params.validate(spec.kind)?;
    let reference = spec.reference()?;
    println!(
        "game {} (pot {}, bet {}, raise {})",
        spec.kind,
        spec.params.pot(),
        spec.params.bet,
        spec.params.raise
    );
    print_reference(&reference, args.hands);
    Ok(())
}

fn cmd_eval(args: &EvalArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.strategy).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", args.strategy.display()),
        ))
    })?;
    let file = StrategyFile::parse(&text, &args.strategy.display().to_string())?;
    let mut spec = file.metadata.game;
    if let Some(kind) = args.game {
        spec.kind = kind;
        let p = &mut spec.params;
        p.hands = args.hands.unwrap_or(p.hands);
        p.ante = args.pot.map_or(p.ante, |pot| pot / 2.0);
        p.bet = args.bet.unwrap_or(p.bet);
        p.raise = args.raise.unwrap_or(p.raise);
    }
    spec.params.validate(spec.kind)?;
    let tree = spec.build()?;
    let profile = file.profile(&tree)?;
    println!("value: {:.12}", expected_value(&tree, &profile));
    println!("exploitability: {:.12}", exploitability(&tree, &profile));
    if args.gaps {
        let report = utility_gap_report(&tree, &profile, &GapPairs::default());
        println!("{:<16} {:>14} {:>14}  gap", "infoset", "opp_reach", "label");
        for e in &report.entries {
            for (label, gap) in &e.gaps {
                let gap = gap.map_or("unreached".to_string(), |g| format!("{g:.12}"));
                println!("{:<16} {:>14.10} {:>14}  {gap}", e.key, e.opp_reach, label);
            }
        }
    }
    Ok(())
}
