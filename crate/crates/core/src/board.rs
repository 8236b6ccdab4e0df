//! The shared game board: claim state for every edge of K_n.
//!
//! The representation is chosen for the hot loop of a simulation run, where
//! a single game can claim tens of millions of edges:
//!
//! * a flat claim-state array indexed by a triangular edge id,
//! * a dense free-edge array with swap-with-last deletion, giving O(1)
//!   uniform sampling and O(1) removal,
//! * one bit row of free neighbors per vertex (ascending iteration), for
//!   strategies that enumerate the free edges at a vertex,
//! * per-vertex degree tallies for each claim state,
//! * Maker's graph maintained incrementally as an adjacency list, so win
//!   detection never rebuilds it.
//!
//! Conservation (free + Maker + Breaker = C(n,2), and per-vertex degree
//! identities) is asserted on every claim in debug builds — only the two
//! touched vertices need re-checking, so the assert is O(1).

use crate::bits::{BitIter, BitMatrix};
use crate::graph::{PatternGraph, SparseGraph};
use crate::rng::GameRng;
use rand::Rng;
use std::fmt;
use thiserror::Error;

/// Hard cap on n so that edge ids fit in u32: C(92681, 2) < 2^32.
pub const MAX_N: u32 = 92_681;

/// An undirected edge of K_n, stored with `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: u32,
    v: u32,
}

impl Edge {
    /// Canonicalizing constructor. Panics on a loop; use [`Edge::try_new`]
    /// when the endpoints come from untrusted input.
    pub fn new(a: u32, b: u32) -> Self {
        Edge::try_new(a, b).expect("loop edge")
    }

    pub fn try_new(a: u32, b: u32) -> Option<Self> {
        if a == b {
            return None;
        }
        Some(Edge {
            u: a.min(b),
            v: a.max(b),
        })
    }

    #[inline]
    pub fn u(&self) -> u32 {
        self.u
    }

    #[inline]
    pub fn v(&self) -> u32 {
        self.v
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: u32) -> u32 {
        if x == self.u {
            self.v
        } else {
            debug_assert_eq!(x, self.v);
            self.u
        }
    }

    pub fn touches(&self, x: u32) -> bool {
        self.u == x || self.v == x
    }

    /// Triangular id: edges of K_n enumerate as (0,1), (0,2), (1,2), (0,3)…
    #[inline]
    pub fn id(&self) -> u32 {
        (self.v as u64 * (self.v as u64 - 1) / 2 + self.u as u64) as u32
    }

    /// Inverse of [`Edge::id`].
    pub fn from_id(id: u32) -> Self {
        let idf = id as f64;
        let mut v = ((1.0 + (1.0 + 8.0 * idf).sqrt()) / 2.0) as u64;
        // float sqrt can be off by one near the triangular boundaries
        while v * (v - 1) / 2 > id as u64 {
            v -= 1;
        }
        while (v + 1) * v / 2 <= id as u64 {
            v += 1;
        }
        let u = id as u64 - v * (v - 1) / 2;
        Edge {
            u: u as u32,
            v: v as u32,
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.u, self.v)
    }
}

/// Claim state of one edge slot.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[repr(u8)]
pub enum CellState {
    Free = 0,
    Maker = 1,
    Breaker = 2,
}

/// The two players.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Player {
    Maker,
    Breaker,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Maker => write!(f, "maker"),
            Player::Breaker => write!(f, "breaker"),
        }
    }
}

/// What Maker is trying to build out of her edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TargetProperty {
    /// No target: the game is played out for its transcript; Maker never wins.
    None,
    /// Maker's graph contains a matching with at least this many edges.
    Matching(u32),
    /// Maker's graph contains the pattern as a minor.
    Minor(PatternGraph),
    /// Maker's graph contains a subdivision of the pattern.
    Subdivision(PatternGraph),
}

impl TargetProperty {
    /// Parse a target descriptor: `none`, `matching:<m>`, `minor:<pattern>`,
    /// `subdivision:<pattern>`.
    pub fn parse(s: &str) -> Result<Self, BoardError> {
        let bad = |msg: String| BoardError::InvalidConfig(msg);
        if s == "none" {
            return Ok(TargetProperty::None);
        }
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| bad(format!("target `{s}` is not none/matching:path/minor:…")))?;
        match kind {
            "matching" => {
                let m: u32 = arg
                    .parse()
                    .map_err(|_| bad(format!("matching size `{arg}` is not an integer")))?;
                if m == 0 {
                    return Err(bad("matching target must be at least 1".into()));
                }
                Ok(TargetProperty::Matching(m))
            }
            "minor" => {
                let p = PatternGraph::resolve(arg).map_err(|e| bad(e.to_string()))?;
                p.check_minor_searchable().map_err(|e| bad(e.to_string()))?;
                Ok(TargetProperty::Minor(p))
            }
            "subdivision" => {
                let p = PatternGraph::resolve(arg).map_err(|e| bad(e.to_string()))?;
                p.check_subdivision_searchable()
                    .map_err(|e| bad(e.to_string()))?;
                Ok(TargetProperty::Subdivision(p))
            }
            other => Err(bad(format!("unknown target kind `{other}`"))),
        }
    }
}

impl fmt::Display for TargetProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetProperty::None => write!(f, "none"),
            TargetProperty::Matching(m) => write!(f, "matching:{m}"),
            TargetProperty::Minor(p) => write!(f, "minor:{}", p.name()),
            TargetProperty::Subdivision(p) => write!(f, "subdivision:{}", p.name()),
        }
    }
}

/// Static parameters of one game.
#[derive(Clone, PartialEq, Debug)]
pub struct GameConfig {
    pub n: u32,
    pub bias: u64,
    pub target: TargetProperty,
    /// Stop as soon as the target holds (checked after each Maker move).
    pub early_stop: bool,
}

impl GameConfig {
    pub fn new(n: u32, bias: u64, target: TargetProperty) -> Result<Self, BoardError> {
        let cfg = GameConfig {
            n,
            bias,
            target,
            early_stop: true,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), BoardError> {
        if self.n < 2 {
            return Err(BoardError::InvalidConfig(format!(
                "n must be at least 2, got {}",
                self.n
            )));
        }
        if self.n > MAX_N {
            return Err(BoardError::InvalidConfig(format!(
                "n must be at most {MAX_N}, got {}",
                self.n
            )));
        }
        if self.bias == 0 {
            return Err(BoardError::InvalidConfig("bias must be at least 1".into()));
        }
        match &self.target {
            TargetProperty::None => {}
            TargetProperty::Matching(m) => {
                if *m == 0 {
                    return Err(BoardError::InvalidConfig(
                        "matching target must be at least 1".into(),
                    ));
                }
            }
            TargetProperty::Minor(p) => {
                p.check_minor_searchable()
                    .map_err(|e| BoardError::InvalidConfig(e.to_string()))?;
            }
            TargetProperty::Subdivision(p) => {
                p.check_subdivision_searchable()
                    .map_err(|e| BoardError::InvalidConfig(e.to_string()))?;
            }
        }
        Ok(())
    }

    /// Total number of edge slots, C(n,2).
    pub fn total_edges(&self) -> u64 {
        self.n as u64 * (self.n as u64 - 1) / 2
    }

    /// Maker's end-of-game edge count when the game runs to exhaustion:
    /// ⌈C(n,2)/(b+1)⌉.
    pub fn exhaustion_maker_edges(&self) -> u64 {
        let total = self.total_edges();
        total.div_ceil(self.bias + 1)
    }
}

#[derive(Error, Debug)]
pub enum BoardError {
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("edge {0:?} is outside the board")]
    InvalidEdge(Edge),
    #[error("edge {0:?} was already claimed")]
    AlreadyClaimed(Edge),
    #[error("no free edges remain")]
    BoardFull,
}

/// Claim state for all of K_n.
pub struct Board {
    n: u32,
    state: Vec<CellState>,
    /// Dense array of free edge ids; order is unspecified.
    free_list: Vec<u32>,
    /// Position of each edge id in `free_list`, or `NOT_FREE`.
    free_pos: Vec<u32>,
    free_adj: BitMatrix,
    deg_free: Vec<u32>,
    deg_maker: Vec<u32>,
    deg_breaker: Vec<u32>,
    maker_count: u64,
    breaker_count: u64,
    maker_edges: Vec<Edge>,
    maker_graph: SparseGraph,
}

const NOT_FREE: u32 = u32::MAX;

impl Board {
    pub fn new(n: u32) -> Result<Self, BoardError> {
        if !(2..=MAX_N).contains(&n) {
            return Err(BoardError::InvalidConfig(format!(
                "board size must be in 2..={MAX_N}, got {n}"
            )));
        }
        let total = (n as u64 * (n as u64 - 1) / 2) as usize;
        let free_list: Vec<u32> = (0..total as u32).collect();
        let free_pos: Vec<u32> = (0..total as u32).collect();
        Ok(Board {
            n,
            state: vec![CellState::Free; total],
            free_list,
            free_pos,
            free_adj: BitMatrix::complete(n),
            deg_free: vec![n - 1; n as usize],
            deg_maker: vec![0; n as usize],
            deg_breaker: vec![0; n as usize],
            maker_count: 0,
            breaker_count: 0,
            maker_edges: Vec::new(),
            maker_graph: SparseGraph::empty(n),
        })
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn total_edges(&self) -> u64 {
        self.state.len() as u64
    }

    #[inline]
    pub fn free_count(&self) -> u64 {
        self.free_list.len() as u64
    }

    pub fn maker_count(&self) -> u64 {
        self.maker_count
    }

    pub fn breaker_count(&self) -> u64 {
        self.breaker_count
    }

    fn check_range(&self, e: Edge) -> Result<(), BoardError> {
        if e.v >= self.n {
            Err(BoardError::InvalidEdge(e))
        } else {
            Ok(())
        }
    }

    pub fn state(&self, e: Edge) -> Result<CellState, BoardError> {
        self.check_range(e)?;
        Ok(self.state[e.id() as usize])
    }

    #[inline]
    pub fn is_free(&self, e: Edge) -> bool {
        e.v < self.n && self.state[e.id() as usize] == CellState::Free
    }

    #[inline]
    pub fn deg_free(&self, v: u32) -> u32 {
        self.deg_free[v as usize]
    }

    #[inline]
    pub fn deg_maker(&self, v: u32) -> u32 {
        self.deg_maker[v as usize]
    }

    #[inline]
    pub fn deg_breaker(&self, v: u32) -> u32 {
        self.deg_breaker[v as usize]
    }

    /// All currently free edge ids, in unspecified order.
    pub fn free_ids(&self) -> &[u32] {
        &self.free_list
    }

    /// Free neighbors of `v` in ascending order.
    pub fn free_neighbors(&self, v: u32) -> BitIter<'_> {
        self.free_adj.iter_row(v)
    }

    /// Bit rows of the free adjacency, for strategies that mask them.
    pub fn free_adj(&self) -> &BitMatrix {
        &self.free_adj
    }

    /// Maker's edges in claim order.
    pub fn maker_edges(&self) -> &[Edge] {
        &self.maker_edges
    }

    /// Maker's graph, maintained incrementally.
    pub fn maker_graph(&self) -> &SparseGraph {
        &self.maker_graph
    }

    /// Uniformly random free edge. O(1).
    pub fn sample_free_edge(&self, rng: &mut GameRng) -> Result<Edge, BoardError> {
        if self.free_list.is_empty() {
            return Err(BoardError::BoardFull);
        }
        let idx = rng.gen_range(0..self.free_list.len());
        Ok(Edge::from_id(self.free_list[idx]))
    }

    /// Claim a free edge for `player`.
    pub fn claim(&mut self, player: Player, e: Edge) -> Result<(), BoardError> {
        self.check_range(e)?;
        let id = e.id() as usize;
        if self.state[id] != CellState::Free {
            return Err(BoardError::AlreadyClaimed(e));
        }
        self.state[id] = match player {
            Player::Maker => CellState::Maker,
            Player::Breaker => CellState::Breaker,
        };

        // swap-with-last removal from the free list
        let pos = self.free_pos[id] as usize;
        let last = *self.free_list.last().unwrap();
        self.free_list[pos] = last;
        self.free_pos[last as usize] = pos as u32;
        self.free_list.pop();
        self.free_pos[id] = NOT_FREE;

        self.free_adj.clear(e.u, e.v);
        let (u, v) = (e.u as usize, e.v as usize);
        self.deg_free[u] -= 1;
        self.deg_free[v] -= 1;
        match player {
            Player::Maker => {
                self.deg_maker[u] += 1;
                self.deg_maker[v] += 1;
                self.maker_count += 1;
                self.maker_edges.push(e);
                self.maker_graph.push_edge(e.u, e.v);
            }
            Player::Breaker => {
                self.deg_breaker[u] += 1;
                self.deg_breaker[v] += 1;
                self.breaker_count += 1;
            }
        }

        debug_assert_eq!(
            self.free_list.len() as u64 + self.maker_count + self.breaker_count,
            self.total_edges()
        );
        debug_assert!([e.u, e.v].iter().all(|&w| {
            let w = w as usize;
            self.deg_free[w] + self.deg_maker[w] + self.deg_breaker[w] == self.n - 1
        }));
        Ok(())
    }

    /// Full O(n^2) conservation audit; used by tests, never by the engine.
    pub fn check_conservation(&self) -> bool {
        let mut df = vec![0u32; self.n as usize];
        let mut dm = vec![0u32; self.n as usize];
        let mut db = vec![0u32; self.n as usize];
        let mut counts = [0u64; 3];
        for id in 0..self.state.len() {
            let e = Edge::from_id(id as u32);
            let st = self.state[id];
            counts[st as usize] += 1;
            let tally = match st {
                CellState::Free => &mut df,
                CellState::Maker => &mut dm,
                CellState::Breaker => &mut db,
            };
            tally[e.u as usize] += 1;
            tally[e.v as usize] += 1;
            let listed = self.free_pos[id] != NOT_FREE;
            if listed != (st == CellState::Free) {
                return false;
            }
            if listed && self.free_list[self.free_pos[id] as usize] != id as u32 {
                return false;
            }
            if self.free_adj.contains(e.u, e.v) != (st == CellState::Free) {
                return false;
            }
        }
        counts[CellState::Free as usize] == self.free_count()
            && counts[CellState::Maker as usize] == self.maker_count
            && counts[CellState::Breaker as usize] == self.breaker_count
            && df == self.deg_free
            && dm == self.deg_maker
            && db == self.deg_breaker
    }
}
