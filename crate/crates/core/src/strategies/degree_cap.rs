//! Breaker strategy that caps Maker's maximum degree below a chosen k.
//!
//! After Maker claims uv, claim up to q = ⌊n/(k−1)⌋ free edges at u and
//! then up to q at v. With bias at least 2q this keeps, for every vertex w,
//!
//!     d_B(w) ≥ min{ d_M(w)·q, n−1−d_M(w) }
//!
//! after every block: once w has k−1 Maker edges, Breaker owns at least
//! (k−1)·⌊n/(k−1)⌋ ≥ n−1−(k−1) of the other edges at w, i.e. all of them,
//! so w can never reach Maker degree k.

use crate::board::{Board, Edge, GameConfig};
use crate::rng::GameRng;

use super::Strategy;

pub struct DegreeCapBreaker {
    k: u32,
    /// Guard quota per endpoint, fixed at game start.
    q: u64,
    noted_shortfall: bool,
    events: Vec<String>,
}

impl DegreeCapBreaker {
    /// `k` is the degree to stay below; must be at least 2.
    pub fn new(k: u32) -> Self {
        assert!(k >= 2, "degree cap needs k >= 2");
        DegreeCapBreaker {
            k,
            q: 0,
            noted_shortfall: false,
            events: Vec::new(),
        }
    }

    pub fn quota(&self) -> u64 {
        self.q
    }
}

impl Strategy for DegreeCapBreaker {
    fn name(&self) -> String {
        format!("degree-cap:k={}", self.k)
    }

    fn on_game_start(&mut self, config: &GameConfig, _board: &Board) {
        self.q = u64::from(config.n / (self.k - 1));
        self.noted_shortfall = false;
        self.events.clear();
    }

    fn breaker_block(
        &mut self,
        board: &Board,
        last_maker_edge: Edge,
        budget: u64,
        _rng: &mut GameRng,
    ) -> Vec<Edge> {
        let mut block = Vec::new();
        let mut remaining = budget;
        let mut short = false;
        // The two passes select disjoint edge sets: an edge at u is also an
        // edge at v only if it is uv itself, which Maker just claimed.
        for x in [last_maker_edge.u(), last_maker_edge.v()] {
            let designed = self.q.min(u64::from(board.deg_free(x)));
            let take = designed.min(remaining);
            if take < designed {
                short = true;
            }
            // ascending vertex order, so the selection is deterministic
            for w in board.free_neighbors(x).take(take as usize) {
                block.push(Edge::new(x, w));
            }
            remaining -= take;
        }
        if short && !self.noted_shortfall {
            self.noted_shortfall = true;
            self.events.push(format!(
                "budget {} cannot cover {} guard edges per endpoint; degree cap no longer guaranteed",
                budget, self.q
            ));
        }
        block
    }

    fn take_events(&mut self) -> Vec<String> {
        std::mem::take(&mut self.events)
    }
}
