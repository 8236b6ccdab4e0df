//! Breaker strategy that forces every Maker component to stay a star.
//!
//! Each component is thought of as having a head; initially every vertex
//! heads its own trivial component. When Maker claims uv, at least one
//! endpoint — call it u — was isolated beforehand (this holds whenever the
//! strategy has been in charge from the start, because every surviving free
//! edge joins two heads of which one is isolated). The new component keeps
//! v as its head, and Breaker claims
//!
//!   1. every free edge at u (u is now a leaf and stays one), then
//!   2. every free edge from v to a non-isolated vertex (so heads of
//!      non-trivial components never get joined to each other).
//!
//! Round t needs at most (n−t) + t = n edges, so bias n suffices. The
//! selection is board-driven: no internal head bookkeeping is required,
//! because "isolated before the move" is visible as Maker degree 1 after
//! it.

use crate::board::{Board, Edge};
use crate::rng::GameRng;

use super::Strategy;

#[derive(Default)]
pub struct StarForcingBreaker {
    events: Vec<String>,
    noted_shortfall: bool,
}

impl StarForcingBreaker {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Strategy for StarForcingBreaker {
    fn name(&self) -> String {
        "star-forcing".into()
    }

    fn on_game_start(&mut self, _config: &crate::board::GameConfig, _board: &Board) {
        self.events.clear();
        self.noted_shortfall = false;
    }

    fn breaker_block(
        &mut self,
        board: &Board,
        last_maker_edge: Edge,
        budget: u64,
        _rng: &mut GameRng,
    ) -> Vec<Edge> {
        let e = last_maker_edge;
        // Maker degree 1 now ⇔ isolated before this move.
        let u_was_isolated = board.deg_maker(e.u()) == 1;
        let v_was_isolated = board.deg_maker(e.v()) == 1;

        let mut block: Vec<Edge> = Vec::new();
        let mut remaining = budget as usize;
        let mut push_all_at = |x: u32, only_non_isolated: bool| {
            for w in board.free_neighbors(x) {
                if remaining == 0 {
                    return false;
                }
                if only_non_isolated && board.deg_maker(w) == 0 {
                    continue;
                }
                block.push(Edge::new(x, w));
                remaining -= 1;
            }
            true
        };

        let complete = if u_was_isolated || v_was_isolated {
            // lower index when both qualify, so play is deterministic
            let (u, v) = if u_was_isolated {
                (e.u(), e.v())
            } else {
                (e.v(), e.u())
            };
            // The two passes never repeat an edge: they could only share uv,
            // which Maker holds.
            push_all_at(u, false) && push_all_at(v, true)
        } else {
            self.events.push(format!(
                "maker edge {}-{} joins two non-isolated vertices; claiming everything at both endpoints",
                e.u(),
                e.v()
            ));
            push_all_at(e.u(), false) && push_all_at(e.v(), false)
        };

        if !complete && !self.noted_shortfall {
            self.noted_shortfall = true;
            self.events
                .push(format!("budget {budget} exhausted mid-block; star structure no longer guaranteed"));
        }
        block
    }

    fn take_events(&mut self) -> Vec<String> {
        std::mem::take(&mut self.events)
    }
}
