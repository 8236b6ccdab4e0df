//! Audits the star-forcing Breaker's contract: before every Maker move,
//! Maker's graph is a disjoint union of stars, each with a designated head,
//! and every free edge joins two heads of which at least one is isolated.
//!
//! Heads are re-derived here from the move stream alone, by the same
//! designation rule the strategy's analysis uses: when Maker claims uv with
//! u isolated (ties broken toward the lower index), v heads the merged
//! component. The strategy itself never stores heads, so agreement between
//! this monitor and the board is a real check of the forcing argument, not
//! a comparison of one data structure with itself.

use crate::board::{Board, Edge, GameConfig};
use crate::engine::{Monitor, MonitorReport};

use super::ViolationLog;

pub struct StarInvariantMonitor {
    parent: Vec<u32>,
    /// Head vertex of each component, stored at the component root.
    head: Vec<u32>,
    log: ViolationLog,
}

impl StarInvariantMonitor {
    pub fn new() -> Self {
        StarInvariantMonitor {
            parent: Vec::new(),
            head: Vec::new(),
            log: ViolationLog::default(),
        }
    }

    fn find(&mut self, v: u32) -> u32 {
        let mut v = v as usize;
        while self.parent[v] as usize != v {
            self.parent[v] = self.parent[self.parent[v] as usize];
            v = self.parent[v] as usize;
        }
        v as u32
    }
}

impl Default for StarInvariantMonitor {
    fn default() -> Self {
        Self::new()
    }
}

impl Monitor for StarInvariantMonitor {
    fn name(&self) -> String {
        "invariant1".to_string()
    }

    fn on_game_start(&mut self, config: &GameConfig, _board: &Board) {
        self.parent = (0..config.n).collect();
        self.head = (0..config.n).collect();
        self.log.reset();
    }

    fn after_maker_move(&mut self, board: &Board, round: u32, e: Edge) {
        let u_iso = board.deg_maker(e.u()) == 1;
        let v_iso = board.deg_maker(e.v()) == 1;
        if !u_iso && !v_iso {
            self.log.push(
                round,
                format!("maker edge {e} joins two non-isolated components"),
            );
        }
        // the isolated endpoint is absorbed; the other one becomes the head
        let (u, v) = if u_iso || !v_iso {
            (e.u(), e.v())
        } else {
            (e.v(), e.u())
        };
        let ru = self.find(u);
        let rv = self.find(v);
        for (x, r) in [(u, ru), (v, rv)] {
            if self.head[r as usize] != x {
                self.log.push(
                    round,
                    format!("maker edge endpoint {x} is not the head of its component"),
                );
            }
        }
        if ru == rv {
            self.log.push(round, format!("maker edge {e} closes a cycle"));
        } else {
            self.parent[ru as usize] = rv;
        }
        let root = self.find(v);
        self.head[root as usize] = v;
    }

    fn after_breaker_block(&mut self, board: &Board, round: u32, _block: &[Edge]) {
        // star shape: every maker edge must touch its component's head
        for &e in board.maker_edges() {
            let r = self.find(e.u());
            let h = self.head[r as usize];
            if h != e.u() && h != e.v() {
                self.log.push(
                    round,
                    format!("maker edge {e} avoids its component's head {h}"),
                );
            }
        }
        // free-edge shape, vertex by vertex: non-heads are sealed off, and a
        // non-isolated head can only see isolated vertices
        for x in 0..board.n() {
            let rx = self.find(x);
            let hx = self.head[rx as usize];
            if hx != x {
                if board.deg_free(x) > 0 {
                    self.log.push(
                        round,
                        format!("non-head vertex {x} still has free edges"),
                    );
                }
            } else if board.deg_maker(x) > 0 {
                for w in board.free_neighbors(x) {
                    if board.deg_maker(w) != 0 {
                        self.log.push(
                            round,
                            format!("free edge {x}-{w} joins two non-isolated components"),
                        );
                    }
                }
            }
        }
    }

    fn report(&self) -> MonitorReport {
        self.log.report("invariant1", Vec::new())
    }
}
