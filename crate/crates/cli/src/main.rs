//! Command-line front end for the Maker-Breaker laboratory.
//!
//! Exit codes: 0 on success, 2 when a strategy faulted or a transcript is
//! corrupt, 3 for configuration mistakes (unknown names, bad ranges,
//! unwritable paths).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use mbgame_core::boxgame::{
    criterion_holds, play_box_game, BoxGameError, BoxGameTrace, BoxMakerPolicy, BoxOutcome,
    BoxState, BoxVariant, BreakerTraceAction,
};
use mbgame_core::engine::{replay, EngineError, GameTranscript};
use mbgame_core::experiments::{
    aggregate_point, bias_sweep, emit, monotonicity_warnings, points_csv, run_recorded_game,
    stats_of, threshold_estimate, ExperimentError, ExperimentResult, ExperimentSpec, OutputFormat,
    PointResult, CODE_VERSION,
};
use mbgame_core::rng::RNG_SCHEME;
use mbgame_core::Player;

#[derive(Parser)]
#[command(
    name = "mbgame",
    version,
    about = "Biased (1:b) Maker-Breaker games on complete graphs: \
             Monte Carlo sweeps, threshold estimation, transcript replay, \
             and the auxiliary box game"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play `games` games at each bias and write win-rate statistics
    Run(RunArgs),
    /// Bisect the bias axis for a win-rate crossing
    Threshold(ThresholdArgs),
    /// Play the auxiliary box game and print the round-by-round trace
    Boxgame(BoxgameArgs),
    /// Rebuild a saved transcript, re-verify it, and print a summary
    Replay {
        /// transcript file produced by `run --transcript-dir`
        transcript: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// board size: the game is played on the edges of K_n
    #[arg(long)]
    n: u32,
    /// single bias `800` or inclusive range `600:900:50`
    #[arg(long)]
    bias: String,
    /// Maker strategy registry name, e.g. random or box-minor:H=P4,eps=0.2
    #[arg(long)]
    maker: String,
    /// Breaker strategy registry name, e.g. random, star-forcing, two-phase-p11
    #[arg(long)]
    breaker: String,
    /// what Maker is building: none, matching:k, minor:H, subdivision:H
    #[arg(long)]
    target: String,
    /// games per bias point
    #[arg(long)]
    games: u32,
    /// master seed; every game seed is derived from (seed, bias, index)
    #[arg(long)]
    seed: u64,
    /// invariant monitors to attach, comma separated
    #[arg(long, value_delimiter = ',')]
    monitors: Vec<String>,
    /// keep playing after the target appears (audit mode)
    #[arg(long)]
    no_early_stop: bool,
    /// rayon worker threads (default: all hardware threads)
    #[arg(long)]
    threads: Option<usize>,
    /// where to write the result table
    #[arg(long)]
    out: PathBuf,
    /// csv (plot-ready points) or json (full payload with spec echo)
    #[arg(long)]
    format: String,
    /// also save every game's transcript into this directory
    /// (games then run serially with move recording on)
    #[arg(long)]
    transcript_dir: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    n: u32,
    /// lower bracket bias (win rate must be at or above the target here)
    #[arg(long)]
    lo: u64,
    /// upper bracket bias (win rate must be at or below the target here)
    #[arg(long)]
    hi: u64,
    /// stop when the bracket is at most this wide
    #[arg(long)]
    resolution: u64,
    /// the win rate whose crossing is sought
    #[arg(long, default_value_t = 0.5)]
    target_rate: f64,
    #[arg(long)]
    maker: String,
    #[arg(long)]
    breaker: String,
    #[arg(long)]
    target: String,
    #[arg(long)]
    games: u32,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_delimiter = ',')]
    monitors: Vec<String>,
    #[arg(long)]
    no_early_stop: bool,
    #[arg(long)]
    threads: Option<usize>,
    /// optional file for the measured points (csv) or full estimate (json)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct BoxgameArgs {
    /// initial coin counts, comma separated, e.g. 4,4
    #[arg(long, value_delimiter = ',', required = true)]
    boxes: Vec<u64>,
    /// coins BoxMaker removes per round
    #[arg(long)]
    m: u64,
    /// remove (BoxBreaker discards a box) or putback (he refills one)
    #[arg(long, default_value = "remove")]
    variant: String,
    /// greedy (drain smallest boxes), spread (even split), or oracle
    #[arg(long, default_value = "greedy")]
    maker: String,
    /// round limit for the putback variant
    #[arg(long, default_value_t = 100)]
    rounds: u32,
    /// search nodes the oracle policy may spend
    #[arg(long, default_value_t = 5_000_000)]
    oracle_budget: u64,
}

/// A failure plus which exit code it deserves.
enum Failure {
    /// exit 2: a player or transcript broke the rules mid-game
    Fault(String),
    /// exit 3: the request itself was unusable
    Config(String),
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match &e {
            ExperimentError::Engine(
                EngineError::StrategyFault { .. } | EngineError::CorruptTranscript(_),
            ) => Failure::Fault(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match &e {
            EngineError::StrategyFault { .. } | EngineError::CorruptTranscript(_) => {
                Failure::Fault(e.to_string())
            }
            _ => Failure::Config(e.to_string()),
        }
    }
}

impl From<BoxGameError> for Failure {
    fn from(e: BoxGameError) -> Self {
        match &e {
            BoxGameError::InvalidInstance(_) => Failure::Config(e.to_string()),
            _ => Failure::Fault(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Threshold(args) => cmd_threshold(args),
        Command::Boxgame(args) => cmd_boxgame(args),
        Command::Replay { transcript } => cmd_replay(&transcript),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Fault(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

/// `800` or inclusive `lo:hi:step`.
fn parse_bias_list(s: &str) -> Result<Vec<u64>, Failure> {
    let bad = |msg: String| Failure::Config(msg);
    if let Some((lo, rest)) = s.split_once(':') {
        let (hi, step) = rest
            .split_once(':')
            .ok_or_else(|| bad(format!("bias range `{s}` is not lo:hi:step")))?;
        let lo: u64 = lo.parse().map_err(|e| bad(format!("bias range start: {e}")))?;
        let hi: u64 = hi.parse().map_err(|e| bad(format!("bias range end: {e}")))?;
        let step: u64 = step.parse().map_err(|e| bad(format!("bias range step: {e}")))?;
        if step == 0 {
            return Err(bad("bias range step must be at least 1".into()));
        }
        if lo > hi {
            return Err(bad(format!("bias range `{s}` runs backwards")));
        }
        Ok((lo..=hi).step_by(step as usize).collect())
    } else {
        Ok(vec![s.parse().map_err(|e| bad(format!("bias: {e}")))?])
    }
}

fn parse_format(s: &str) -> Result<OutputFormat, Failure> {
    s.parse().map_err(Failure::Config)
}

fn set_threads(threads: Option<usize>) -> Result<(), Failure> {
    if let Some(t) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Config(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn print_point(p: &PointResult) {
    println!(
        "bias {}: {}/{} maker wins, rate {:.3} [{:.3}, {:.3}], mean decision round {:.1}",
        p.bias, p.wins, p.games, p.win_rate, p.ci_lo, p.ci_hi, p.mean_decision_round
    );
    if !p.monitor_violations.is_empty() {
        let parts: Vec<String> = p
            .monitor_violations
            .iter()
            .map(|(name, count)| format!("{name}={count}"))
            .collect();
        println!("  violations: {}", parts.join(", "));
    }
}

fn cmd_run(args: RunArgs) -> Result<(), Failure> {
    set_threads(args.threads)?;
    let format = parse_format(&args.format)?;
    let spec = ExperimentSpec {
        n: args.n,
        biases: parse_bias_list(&args.bias)?,
        maker: args.maker,
        breaker: args.breaker,
        target: args.target,
        games: args.games,
        master_seed: args.seed,
        monitors: args.monitors,
        early_stop: !args.no_early_stop,
    };
    let result = match &args.transcript_dir {
        Some(dir) => recorded_sweep(&spec, dir)?,
        None => bias_sweep(&spec)?,
    };
    emit(&result, format, &args.out)?;
    println!("wrote {} to {}", args.format, args.out.display());
    for p in &result.points {
        print_point(p);
    }
    for w in &result.monotonicity_warnings {
        println!("warning: {w}");
    }
    Ok(())
}

/// The transcript-saving variant of a sweep: the same derived seeds and the
/// same statistics, but games run serially with move recording on and each
/// transcript lands in `dir` as game-b<bias>-i<index>.txt.
fn recorded_sweep(spec: &ExperimentSpec, dir: &Path) -> Result<ExperimentResult, Failure> {
    spec.validate()?;
    if spec.biases.is_empty() {
        return Err(Failure::Config("a sweep needs at least one bias".into()));
    }
    std::fs::create_dir_all(dir)
        .map_err(|e| Failure::Config(format!("cannot create {}: {e}", dir.display())))?;
    let mut points = Vec::with_capacity(spec.biases.len());
    for &bias in &spec.biases {
        let started = Instant::now();
        let mut stats = Vec::with_capacity(spec.games as usize);
        for index in 0..u64::from(spec.games) {
            let record = run_recorded_game(spec, bias, index)?;
            let path = dir.join(format!("game-b{bias}-i{index}.txt"));
            record.transcript.save(&path)?;
            stats.push(stats_of(&record));
        }
        points.push(aggregate_point(bias, &stats, started.elapsed().as_secs_f64()));
    }
    let warnings = monotonicity_warnings(&points);
    Ok(ExperimentResult {
        spec: spec.clone(),
        rng_scheme: RNG_SCHEME.to_string(),
        code_version: CODE_VERSION.to_string(),
        points,
        monotonicity_warnings: warnings,
    })
}

fn cmd_threshold(args: ThresholdArgs) -> Result<(), Failure> {
    set_threads(args.threads)?;
    let format = parse_format(&args.format)?;
    let spec = ExperimentSpec {
        n: args.n,
        biases: Vec::new(),
        maker: args.maker,
        breaker: args.breaker,
        target: args.target,
        games: args.games,
        master_seed: args.seed,
        monitors: args.monitors,
        early_stop: !args.no_early_stop,
    };
    let est = threshold_estimate(&spec, args.lo, args.hi, args.target_rate, args.resolution)?;
    for p in &est.points {
        print_point(p);
    }
    println!(
        "threshold estimate: bias {} (bracket [{}, {}], rates {:.3} -> {:.3}, target {:.2}) at n={}",
        est.estimate, est.lo, est.hi, est.rate_lo, est.rate_hi, est.target_rate, args.n
    );
    if let Some(out) = &args.out {
        let payload = match format {
            OutputFormat::Csv => points_csv(&est.points),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&est)
                    .map_err(|e| Failure::Config(format!("cannot encode estimate: {e}")))?;
                s.push('\n');
                s
            }
        };
        std::fs::write(out, payload)
            .map_err(|e| Failure::Config(format!("cannot write {}: {e}", out.display())))?;
        println!("wrote {} to {}", args.format, out.display());
    }
    Ok(())
}

fn cmd_boxgame(args: BoxgameArgs) -> Result<(), Failure> {
    let variant = match args.variant.as_str() {
        "remove" => BoxVariant::RemoveBox,
        "putback" => BoxVariant::PutBack,
        other => {
            return Err(Failure::Config(format!(
                "unknown variant `{other}` (expected remove or putback)"
            )))
        }
    };
    let policy = match args.maker.as_str() {
        "greedy" => BoxMakerPolicy::GreedyMin,
        "spread" => BoxMakerPolicy::SpreadEven,
        "oracle" => BoxMakerPolicy::Oracle { node_budget: args.oracle_budget },
        other => {
            return Err(Failure::Config(format!(
                "unknown box attacker `{other}` (expected greedy, spread, or oracle)"
            )))
        }
    };
    let state = BoxState::new(args.boxes, args.m, variant)?;
    println!(
        "boxes {:?}, m = {}, {} variant, {} attacker",
        state.boxes,
        state.m,
        args.variant,
        args.maker
    );
    println!(
        "defense criterion: {}",
        if criterion_holds(&state) { "holds" } else { "fails" }
    );
    let trace = play_box_game(&state, policy, args.rounds)?;
    print_box_trace(&trace, args.rounds);
    Ok(())
}

fn print_box_trace(trace: &BoxGameTrace, rounds_limit: u32) {
    for round in &trace.rounds {
        let takes: Vec<String> = round
            .removal
            .iter()
            .map(|(i, coins)| format!("{coins} from box {i}"))
            .collect();
        let breaker = match &round.breaker {
            Some(BreakerTraceAction::RemovedBox { index, coins }) => {
                format!("; BoxBreaker removes box {index} ({coins} coins)")
            }
            Some(BreakerTraceAction::Refilled { index, coins }) => {
                format!("; BoxBreaker refills box {index} (+{coins})")
            }
            None => String::new(),
        };
        println!(
            "round {}: BoxMaker takes {}{}; boxes {:?}",
            round.round,
            takes.join(", "),
            breaker,
            round.boxes_after
        );
    }
    match trace.outcome {
        BoxOutcome::BoxMakerWins(r) => println!("BoxMaker wins in round {r}: a box was emptied"),
        BoxOutcome::BoxBreakerWins => println!("BoxBreaker wins: no boxes remain"),
        BoxOutcome::SurvivedLimit => {
            println!("BoxBreaker survives: no box fell within {rounds_limit} rounds")
        }
    }
}

fn cmd_replay(path: &Path) -> Result<(), Failure> {
    let transcript = GameTranscript::load(path)?;
    let board = replay(&transcript)?;
    println!(
        "transcript: n={} b={} seed={} maker={} breaker={}",
        transcript.n(),
        transcript.bias,
        transcript.seed,
        transcript.maker_name,
        transcript.breaker_name
    );
    let last_round = transcript.moves.last().map_or(0, |m| m.round);
    println!("claims: {} over {} rounds", transcript.moves.len(), last_round);
    let result = transcript.result;
    let winner = match result.winner {
        Player::Maker => "maker",
        Player::Breaker => "breaker",
    };
    match result.decision_round {
        Some(r) => println!("result: {winner} wins (decided in round {r})"),
        None => println!("result: {winner} wins (board exhausted)"),
    }
    let n = u64::from(board.n());
    let total = n * (n - 1) / 2;
    let maker_edges = board.maker_edges().len() as u64;
    let free = board.free_count();
    println!(
        "replayed board: maker {maker_edges}, breaker {}, free {free}",
        total - maker_edges - free
    );
    Ok(())
}
