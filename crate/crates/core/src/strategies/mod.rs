//! Maker and Breaker strategies, and the string registry the CLI and the
//! experiment harness use to construct them.
//!
//! A strategy is stateful per game: the engine calls `on_game_start`, then
//! alternates `maker_move` / `breaker_block` with `on_opponent_move`
//! notifications in between. All randomness comes from the engine-owned
//! RNG handed into each call, so a (config, strategy names, seed) triple
//! pins the whole game.

use std::fmt;

use crate::board::{Board, Edge, GameConfig, Player};
use crate::rng::GameRng;

mod box_minor;
mod degree_cap;
mod random;
mod star_forcing;
mod two_phase;

pub use box_minor::{BoxMinorMaker, BranchSetView};
pub(crate) use box_minor::ascending_prefix_sums;
pub use degree_cap::DegreeCapBreaker;
pub use random::RandomStrategy;
pub use star_forcing::StarForcingBreaker;
pub use two_phase::TwoPhaseBreaker;

/// A player algorithm. Implementations may support one role or both; the
/// registry refuses to construct a strategy for a role it cannot play, and
/// the unsupported default methods panic if reached anyway.
pub trait Strategy {
    /// Registry-parseable name including parameters, e.g. `degree-cap:k=2`.
    fn name(&self) -> String;

    fn on_game_start(&mut self, _config: &GameConfig, _board: &Board) {}

    /// Called once per opposing edge as it lands (for Maker: every edge of
    /// the Breaker block, including engine padding; for Breaker: Maker's
    /// move). The board already reflects the claim.
    fn on_opponent_move(&mut self, _board: &Board, _edge: Edge) {}

    /// Maker's edge for this round. Must be free.
    fn maker_move(&mut self, _board: &Board, _rng: &mut GameRng) -> Edge {
        panic!("strategy {} does not play Maker", self.name());
    }

    /// Breaker's reply block: up to `budget` distinct free edges, computed
    /// against the current board. Short blocks are legal; the engine pads
    /// them with uniform random free edges and flags the padding.
    fn breaker_block(
        &mut self,
        _board: &Board,
        _last_maker_edge: Edge,
        _budget: u64,
        _rng: &mut GameRng,
    ) -> Vec<Edge> {
        panic!("strategy {} does not play Breaker", self.name());
    }

    /// Drain diagnostic notes accumulated since the last call (fallbacks
    /// taken, budget shortfalls observed, ...). The engine attaches them to
    /// the game record.
    fn take_events(&mut self) -> Vec<String> {
        Vec::new()
    }

    /// A live view of this strategy's branch-set bookkeeping, if it keeps
    /// any. Lets the matching monitor check the potential invariant without
    /// duplicating the plan.
    fn branch_set_view(&self) -> Option<BranchSetView> {
        None
    }
}

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum StrategyError {
    #[error("unknown strategy {0:?}")]
    UnknownStrategy(String),
    #[error("bad parameters for {name}: {reason}")]
    BadParams { name: String, reason: String },
    #[error("strategy {name} cannot play {role}")]
    RoleMismatch { name: String, role: Player },
}

/// Split `name:k1=v1,k2=v2,...`. Commas inside a value (pattern names like
/// `K1,3`) are kept with the value: a fragment without `=` continues the
/// previous parameter.
fn parse_spec(spec: &str) -> Result<(&str, Vec<(String, String)>), StrategyError> {
    let (name, rest) = match spec.split_once(':') {
        Some((n, r)) => (n, r),
        None => return Ok((spec, Vec::new())),
    };
    let mut params: Vec<(String, String)> = Vec::new();
    for frag in rest.split(',') {
        match frag.split_once('=') {
            Some((k, v)) => params.push((k.to_string(), v.to_string())),
            None => match params.last_mut() {
                Some((_, v)) => {
                    v.push(',');
                    v.push_str(frag);
                }
                None => {
                    return Err(StrategyError::BadParams {
                        name: name.to_string(),
                        reason: format!("expected key=value, got {frag:?}"),
                    })
                }
            },
        }
    }
    Ok((name, params))
}

fn get_param<'a>(
    params: &'a [(String, String)],
    name: &str,
    key: &str,
) -> Result<&'a str, StrategyError> {
    params
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| StrategyError::BadParams {
            name: name.to_string(),
            reason: format!("missing parameter {key}"),
        })
}

fn reject_unknown_params(
    name: &str,
    params: &[(String, String)],
    allowed: &[&str],
) -> Result<(), StrategyError> {
    for (k, _) in params {
        if !allowed.contains(&k.as_str()) {
            return Err(StrategyError::BadParams {
                name: name.to_string(),
                reason: format!("unknown parameter {k}"),
            });
        }
    }
    Ok(())
}

/// Construct a strategy from its registry spec, checking it can play
/// `role`.
///
/// Known specs: `random`, `degree-cap:k=<int>`, `star-forcing`,
/// `two-phase-p11`, `box-minor:H=<pattern>,eps=<decimal>`.
pub fn make_strategy(spec: &str, role: Player) -> Result<Box<dyn Strategy>, StrategyError> {
    let (name, params) = parse_spec(spec)?;
    let mismatch = |role| StrategyError::RoleMismatch {
        name: name.to_string(),
        role,
    };
    match name {
        "random" => {
            reject_unknown_params(name, &params, &[])?;
            Ok(Box::new(RandomStrategy::new()))
        }
        "degree-cap" => {
            if role != Player::Breaker {
                return Err(mismatch(role));
            }
            reject_unknown_params(name, &params, &["k"])?;
            let k: u32 = get_param(&params, name, "k")?
                .parse()
                .map_err(|e| StrategyError::BadParams {
                    name: name.to_string(),
                    reason: format!("k: {e}"),
                })?;
            if k < 2 {
                return Err(StrategyError::BadParams {
                    name: name.to_string(),
                    reason: "k must be at least 2".into(),
                });
            }
            Ok(Box::new(DegreeCapBreaker::new(k)))
        }
        "star-forcing" => {
            if role != Player::Breaker {
                return Err(mismatch(role));
            }
            reject_unknown_params(name, &params, &[])?;
            Ok(Box::new(StarForcingBreaker::new()))
        }
        "two-phase-p11" => {
            if role != Player::Breaker {
                return Err(mismatch(role));
            }
            reject_unknown_params(name, &params, &[])?;
            Ok(Box::new(TwoPhaseBreaker::new()))
        }
        "box-minor" => {
            if role != Player::Maker {
                return Err(mismatch(role));
            }
            reject_unknown_params(name, &params, &["H", "eps"])?;
            let pattern = get_param(&params, name, "H")?;
            let eps = get_param(&params, name, "eps")?;
            Ok(Box::new(BoxMinorMaker::from_params(pattern, eps).map_err(
                |reason| StrategyError::BadParams {
                    name: name.to_string(),
                    reason,
                },
            )?))
        }
        _ => Err(StrategyError::UnknownStrategy(spec.to_string())),
    }
}

impl fmt::Debug for dyn Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Strategy({})", self.name())
    }
}
