//! Feeds Maker's moves through the pair process and records when the
//! tracked structure first contains a two-edge path.
//!
//! The process sorts Maker's edges into a set C of pairwise disjoint single
//! edges and a set D of edges forming vertex-disjoint two-edge paths; |D|
//! therefore jumps by exactly two when a path closes. This monitor never
//! reports violations — it exists for its metrics, chiefly the round at
//! which |D| reaches two, which is the decision point of the two-edge-path
//! game.

use crate::board::{Board, Edge, GameConfig};
use crate::engine::{Monitor, MonitorReport};
use crate::graph::PairProcessState;

use super::ViolationLog;

pub struct PairProcessMonitor {
    state: Option<PairProcessState>,
    first_d2: Option<u32>,
    log: ViolationLog,
}

impl PairProcessMonitor {
    pub fn new() -> Self {
        PairProcessMonitor {
            state: None,
            first_d2: None,
            log: ViolationLog::default(),
        }
    }
}

impl Default for PairProcessMonitor {
    fn default() -> Self {
        Self::new()
    }
}

impl Monitor for PairProcessMonitor {
    fn name(&self) -> String {
        "pair-process".to_string()
    }

    fn on_game_start(&mut self, config: &GameConfig, _board: &Board) {
        self.state = Some(PairProcessState::new(config.n));
        self.first_d2 = None;
        self.log.reset();
    }

    fn after_maker_move(&mut self, _board: &Board, round: u32, e: Edge) {
        let state = self.state.as_mut().expect("monitor saw a move before game start");
        state.step(e);
        if self.first_d2.is_none() && state.d_len() >= 2 {
            self.first_d2 = Some(round);
        }
    }

    fn report(&self) -> MonitorReport {
        let mut metrics = Vec::new();
        if let Some(state) = &self.state {
            metrics.push(("c_final".to_string(), state.c_edges().len() as f64));
            metrics.push(("d_final".to_string(), state.d_len() as f64));
        }
        if let Some(r) = self.first_d2 {
            metrics.push(("first_d2_round".to_string(), f64::from(r)));
        }
        self.log.report("pair-process", metrics)
    }
}
