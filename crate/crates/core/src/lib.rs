//! Simulation laboratory for biased (1:b) Maker-Breaker games on the edge set
//! of the complete graph K_n.
//!
//! Each round Maker claims one free edge, then Breaker claims up to `b` free
//! edges. Maker tries to build a target structure (an H-minor, an
//! H-subdivision, or a matching of a given size) out of her own edges before
//! the board runs out. The crate provides:
//!
//! * [`board`] — the shared game board: flat claim-state array over the
//!   C(n,2) edge slots, O(1) uniform free-edge sampling, per-vertex free
//!   adjacency, degree tallies.
//! * [`engine`] — the alternating game loop, transcripts (a pinned text
//!   format), deterministic replay, and the [`engine::Monitor`] hook used to
//!   audit strategy invariants while a game runs.
//! * [`graph`] — structure detectors used for win checking and post-game
//!   audits: minor and topological-minor search, exact matching and longest
//!   path decisions, girth, densities, the sparsifying filter, and the
//!   disjoint-pair process.
//! * [`strategies`] — Maker and Breaker strategies: uniform random play,
//!   the degree-capping Breaker, the star-forcing Breaker, the branch-set
//!   building Maker for forest minors, and the two-phase Breaker that stops
//!   long paths at bias 0.99n.
//! * [`monitors`] — runtime invariant monitors matching those strategies.
//! * [`boxgame`] — the auxiliary box game (resource game on disjoint coin
//!   piles) with an exact criterion, the fewest-coins BoxBreaker, and a
//!   brute-force game-tree oracle.
//! * [`experiments`] — the Monte Carlo harness: win-rate estimation with
//!   Wilson intervals, bias sweeps, threshold bisection, CSV/JSON output,
//!   and reproducible per-game seed derivation.
//!
//! Determinism is a design requirement throughout: a game is a pure function
//! of (config, strategy names, seed), and experiment outputs are
//! byte-identical across runs and thread counts.

pub mod bits;
pub mod board;
pub mod boxgame;
pub mod engine;
pub mod experiments;
pub mod graph;
pub mod monitors;
pub mod numeric;
pub mod rng;
pub mod strategies;

pub use board::{Board, BoardError, CellState, Edge, GameConfig, Player, TargetProperty};
pub use boxgame::{
    brute_force_boxmaker, criterion_holds, fewest_coins_boxbreaker, play_box_game, BoxGameError,
    BoxGameTrace, BoxMakerPolicy, BoxOutcome, BoxState, BoxVariant, BreakerMode,
};
pub use engine::{
    play_game, replay, EngineError, GameEvent, GameRecord, GameResult, GameTranscript, Monitor,
    PlayOptions,
};
pub use experiments::{
    bias_sweep, emit, points_csv, run_point, run_recorded_game, threshold_estimate, to_csv,
    ExperimentError, ExperimentResult, ExperimentSpec, OutputFormat, PointResult,
    ThresholdEstimate,
};
pub use graph::{PatternGraph, SparseGraph};
pub use strategies::Strategy;
