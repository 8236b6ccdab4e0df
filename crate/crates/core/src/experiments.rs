//! Monte Carlo experiment harness: win-rate points, bias sweeps, threshold
//! estimation, CSV/JSON emission.
//!
//! Every game in a point gets its own seed derived from (master seed, bias,
//! game index), its own freshly built strategies and monitors, and its own
//! board. Games may therefore run on any number of threads in any order;
//! results are merged index-ordered, so a rerun with the same spec and seed
//! is byte-identical down to the CSV — only wall time (reported in JSON,
//! absent from CSV) varies.
//!
//! The threshold estimator bisects the bias axis for the point where the
//! empirical win rate crosses a target rate at one fixed n. It deliberately
//! reports nothing about asymptotics: the transition's empirical width at
//! this n is all the data supports, so that is all that is returned.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{BoardError, GameConfig, Player, TargetProperty};
use crate::engine::{play_game, EngineError, Monitor, PlayOptions};
use crate::monitors::{make_monitor, MonitorError};
use crate::rng::{derive_seed, RNG_SCHEME};
use crate::strategies::{make_strategy, StrategyError};

/// Version string recorded in result metadata.
pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("bad experiment spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Monitor(#[from] MonitorError),
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(
        "win rates do not bracket the target {target_rate}: \
         bias {lo_bias} gives {lo_rate}, bias {hi_bias} gives {hi_rate}"
    )]
    MonotoneAssumptionFailed {
        target_rate: f64,
        lo_bias: u64,
        lo_rate: f64,
        hi_bias: u64,
        hi_rate: f64,
    },
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot encode result: {0}")]
    Encode(#[from] serde_json::Error),
}

/// Everything needed to reproduce an experiment. Strategy, monitor and
/// target names stay raw registry strings here so the spec echo in result
/// files reads exactly like the command line that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub n: u32,
    pub biases: Vec<u64>,
    pub maker: String,
    pub breaker: String,
    pub target: String,
    pub games: u32,
    pub master_seed: u64,
    #[serde(default)]
    pub monitors: Vec<String>,
    pub early_stop: bool,
}

impl ExperimentSpec {
    /// Fail fast on anything a game would reject later: counts, bias
    /// values, and that every registry name actually resolves.
    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.games == 0 {
            return Err(ExperimentError::InvalidSpec("games must be at least 1".into()));
        }
        if self.biases.iter().any(|&b| b == 0) {
            return Err(ExperimentError::InvalidSpec("bias values must be at least 1".into()));
        }
        TargetProperty::parse(&self.target)?;
        let maker = make_strategy(&self.maker, Player::Maker)?;
        make_strategy(&self.breaker, Player::Breaker)?;
        for m in &self.monitors {
            make_monitor(m, maker.as_ref())?;
        }
        Ok(())
    }

    fn config(&self, bias: u64) -> Result<GameConfig, ExperimentError> {
        let mut config = GameConfig::new(self.n, bias, TargetProperty::parse(&self.target)?)?;
        config.early_stop = self.early_stop;
        Ok(config)
    }
}

/// Aggregated outcome of `games` games at one bias.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointResult {
    pub bias: u64,
    pub games: u32,
    pub wins: u32,
    pub losses: u32,
    pub win_rate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    /// Mean round in which the outcome was decided; games that run to
    /// exhaustion count their final round.
    pub mean_decision_round: f64,
    /// All monitor violations across all games of the point.
    pub violations: u64,
    /// The same, split per monitor name.
    pub monitor_violations: BTreeMap<String, u64>,
    /// Wall-clock seconds for the point. Excluded from CSV output and from
    /// reproducibility comparisons.
    pub wall_time_s: f64,
}

/// A sweep's full payload: the spec that produced it plus one
/// [`PointResult`] per bias, with provenance pins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub spec: ExperimentSpec,
    pub rng_scheme: String,
    pub code_version: String,
    pub points: Vec<PointResult>,
    /// Win rate should fall as the bias grows; significant inversions are
    /// reported here but never turned into errors — they are noise
    /// diagnostics, not contract violations.
    pub monotonicity_warnings: Vec<String>,
}

/// 95% Wilson score interval for `wins` successes in `games` trials.
/// Always contains the point estimate wins/games.
pub fn wilson_interval(wins: u32, games: u32) -> (f64, f64) {
    if games == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let n = f64::from(games);
    let p = f64::from(wins) / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // the bounds are exactly the point estimate at 0 and 1; don't let
    // floating-point residue push them past it
    let lo = if wins == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if wins == games { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// Per-game numbers that the point aggregation folds together.
pub struct GameOutcomeStats {
    pub win: bool,
    /// Round the outcome was decided, or the final round at exhaustion.
    pub decision_round: u32,
    /// (monitor name, total violations) in attachment order.
    pub violations: Vec<(String, u64)>,
}

/// The aggregation view of one finished game.
pub fn stats_of(record: &crate::engine::GameRecord) -> GameOutcomeStats {
    let result = record.result();
    GameOutcomeStats {
        win: result.winner == Player::Maker,
        decision_round: result.decision_round.unwrap_or(record.rounds),
        violations: record
            .monitor_reports
            .iter()
            .map(|r| {
                let total = r.metric("violations_total").unwrap_or(0.0) as u64;
                (r.monitor.clone(), total)
            })
            .collect(),
    }
}

fn play_indexed(
    spec: &ExperimentSpec,
    config: &GameConfig,
    bias: u64,
    index: u64,
    record_moves: bool,
) -> Result<crate::engine::GameRecord, ExperimentError> {
    let mut maker = make_strategy(&spec.maker, Player::Maker)?;
    let mut breaker = make_strategy(&spec.breaker, Player::Breaker)?;
    let mut monitors: Vec<Box<dyn Monitor>> = spec
        .monitors
        .iter()
        .map(|name| make_monitor(name, maker.as_ref()))
        .collect::<Result<_, _>>()?;
    let options = PlayOptions { record_moves, halt_on_violation: false };
    let seed = derive_seed(spec.master_seed, bias, index);
    Ok(play_game(config, maker.as_mut(), breaker.as_mut(), &mut monitors, seed, &options)?)
}

/// Plays game `index` of the point at `bias` with full move recording, for
/// callers that want the transcript. The seed, strategies and monitors are
/// built exactly as [`run_point`] builds them, so the game is the same one
/// the point statistics count.
pub fn run_recorded_game(
    spec: &ExperimentSpec,
    bias: u64,
    index: u64,
) -> Result<crate::engine::GameRecord, ExperimentError> {
    let config = spec.config(bias)?;
    play_indexed(spec, &config, bias, index, true)
}

/// Folds per-game stats into a [`PointResult`]. `stats` must hold at least
/// one game and is walked in order, so callers get identical floats for
/// identical game lists.
pub fn aggregate_point(bias: u64, stats: &[GameOutcomeStats], wall_time_s: f64) -> PointResult {
    let games = stats.len() as u32;
    let mut wins: u32 = 0;
    let mut round_sum: f64 = 0.0;
    let mut monitor_violations: BTreeMap<String, u64> = BTreeMap::new();
    for gs in stats {
        wins += u32::from(gs.win);
        round_sum += f64::from(gs.decision_round);
        for (name, count) in &gs.violations {
            *monitor_violations.entry(name.clone()).or_insert(0) += count;
        }
    }
    let win_rate = f64::from(wins) / f64::from(games);
    let (ci_lo, ci_hi) = wilson_interval(wins, games);
    PointResult {
        bias,
        games,
        wins,
        losses: games - wins,
        win_rate,
        ci_lo,
        ci_hi,
        mean_decision_round: round_sum / f64::from(games),
        violations: monitor_violations.values().sum(),
        monitor_violations,
        wall_time_s,
    }
}

/// Runs `spec.games` independent games at one bias, in parallel on the
/// current rayon pool. Seeds are index-derived and the fold walks the games
/// in index order, so the outcome is a pure function of (spec, bias).
pub fn run_point(spec: &ExperimentSpec, bias: u64) -> Result<PointResult, ExperimentError> {
    spec.validate()?;
    if bias == 0 {
        return Err(ExperimentError::InvalidSpec("bias must be at least 1".into()));
    }
    let config = spec.config(bias)?;
    let started = Instant::now();
    let stats: Vec<GameOutcomeStats> = (0..u64::from(spec.games))
        .into_par_iter()
        .map(|index| play_indexed(spec, &config, bias, index, false).map(|r| stats_of(&r)))
        .collect::<Result<_, _>>()?;
    Ok(aggregate_point(bias, &stats, started.elapsed().as_secs_f64()))
}

/// Significant win-rate inversions between bias-adjacent points: flagged
/// when the higher bias wins so much more that the 95% intervals no longer
/// overlap.
pub fn monotonicity_warnings(points: &[PointResult]) -> Vec<String> {
    let mut by_bias: Vec<&PointResult> = points.iter().collect();
    by_bias.sort_by_key(|p| p.bias);
    by_bias
        .windows(2)
        .filter(|w| w[1].ci_lo > w[0].ci_hi)
        .map(|w| {
            format!(
                "win rate rises from {:.4} at bias {} to {:.4} at bias {}, beyond noise",
                w[0].win_rate, w[0].bias, w[1].win_rate, w[1].bias
            )
        })
        .collect()
}

/// One [`run_point`] per bias in the spec, in the spec's order.
pub fn bias_sweep(spec: &ExperimentSpec) -> Result<ExperimentResult, ExperimentError> {
    if spec.biases.is_empty() {
        return Err(ExperimentError::InvalidSpec("a sweep needs at least one bias".into()));
    }
    spec.validate()?;
    let mut points = Vec::with_capacity(spec.biases.len());
    for &bias in &spec.biases {
        points.push(run_point(spec, bias)?);
    }
    let monotonicity_warnings = monotonicity_warnings(&points);
    Ok(ExperimentResult {
        spec: spec.clone(),
        rng_scheme: RNG_SCHEME.to_string(),
        code_version: CODE_VERSION.to_string(),
        points,
        monotonicity_warnings,
    })
}

/// A bias bracket around the win-rate crossing, with the rates measured at
/// its ends and every point evaluated on the way.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdEstimate {
    /// Midpoint of the final bracket.
    pub estimate: u64,
    pub lo: u64,
    pub hi: u64,
    pub rate_lo: f64,
    pub rate_hi: f64,
    pub target_rate: f64,
    pub points: Vec<PointResult>,
}

/// Bisects [lo, hi] for the bias where the win rate crosses `target_rate`,
/// shrinking the bracket to at most `resolution`. The rates measured at lo
/// and hi must straddle the target or the search refuses to start. The
/// estimate speaks only for this n; nothing is extrapolated.
pub fn threshold_estimate(
    spec: &ExperimentSpec,
    lo: u64,
    hi: u64,
    target_rate: f64,
    resolution: u64,
) -> Result<ThresholdEstimate, ExperimentError> {
    if lo == 0 || lo > hi {
        return Err(ExperimentError::InvalidSpec(format!(
            "bad threshold bracket [{lo}, {hi}]"
        )));
    }
    if resolution == 0 {
        return Err(ExperimentError::InvalidSpec("resolution must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&target_rate) {
        return Err(ExperimentError::InvalidSpec(format!(
            "target rate {target_rate} is not a probability"
        )));
    }
    let mut points = Vec::new();
    if lo == hi {
        let p = run_point(spec, lo)?;
        let rate = p.win_rate;
        points.push(p);
        return Ok(ThresholdEstimate {
            estimate: lo,
            lo,
            hi,
            rate_lo: rate,
            rate_hi: rate,
            target_rate,
            points,
        });
    }
    let p = run_point(spec, lo)?;
    let mut rate_lo = p.win_rate;
    points.push(p);
    let p = run_point(spec, hi)?;
    let mut rate_hi = p.win_rate;
    points.push(p);
    if rate_lo < target_rate || rate_hi > target_rate {
        return Err(ExperimentError::MonotoneAssumptionFailed {
            target_rate,
            lo_bias: lo,
            lo_rate: rate_lo,
            hi_bias: hi,
            hi_rate: rate_hi,
        });
    }
    let (mut blo, mut bhi) = (lo, hi);
    while bhi - blo > resolution {
        let mid = blo + (bhi - blo) / 2;
        let p = run_point(spec, mid)?;
        let rate = p.win_rate;
        points.push(p);
        if rate >= target_rate {
            blo = mid;
            rate_lo = rate;
        } else {
            bhi = mid;
            rate_hi = rate;
        }
    }
    Ok(ThresholdEstimate {
        estimate: blo + (bhi - blo) / 2,
        lo: blo,
        hi: bhi,
        rate_lo,
        rate_hi,
        target_rate,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// The plot-ready CSV view: one row per bias point, six fixed decimals for
/// every rate (plain `{:.6}` formatting — never locale-dependent), and no
/// wall-time column so reruns compare byte-for-byte.
pub fn points_csv(points: &[PointResult]) -> String {
    let mut out = String::from("bias,games,wins,win_rate,ci_lo,ci_hi,mean_decision_round,violations\n");
    for p in points {
        writeln!(
            out,
            "{},{},{},{:.6},{:.6},{:.6},{:.6},{}",
            p.bias, p.games, p.wins, p.win_rate, p.ci_lo, p.ci_hi, p.mean_decision_round, p.violations
        )
        .expect("string writes cannot fail");
    }
    out
}

/// [`points_csv`] over a sweep result.
pub fn to_csv(result: &ExperimentResult) -> String {
    points_csv(&result.points)
}

/// Writes a result to disk as CSV (point table only) or JSON (everything,
/// spec echo and wall times included).
pub fn emit(result: &ExperimentResult, format: OutputFormat, path: &Path) -> Result<(), ExperimentError> {
    let payload = match format {
        OutputFormat::Csv => to_csv(result),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(result)?;
            s.push('\n');
            s
        }
    };
    std::fs::write(path, payload).map_err(|source| ExperimentError::Io {
        path: path.display().to_string(),
        source,
    })
}
