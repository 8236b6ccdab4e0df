//! Uniform random play for either player.

use rand::Rng;

use super::Strategy;
use crate::board::{Board, Edge};
use crate::rng::GameRng;

/// Maker: a uniform free edge. Breaker: a uniform `budget`-subset of the
/// free edges.
pub struct RandomStrategy;

impl RandomStrategy {
    pub fn new() -> Self {
        RandomStrategy
    }
}

impl Default for RandomStrategy {
    fn default() -> Self {
        Self::new()
    }
}

/// Draw `count` distinct free edges uniformly. Dense draws (a quarter of
/// the free set or more) shuffle a copy of the free list; sparse draws
/// use rejection sampling.
pub(crate) fn sample_free_block(board: &Board, count: usize, rng: &mut GameRng) -> Vec<Edge> {
    let free = board.free_count() as usize;
    let count = count.min(free);
    if count == 0 {
        return Vec::new();
    }
    if count * 4 >= free {
        let mut ids = board.free_ids().to_vec();
        for i in 0..count {
            let j = rng.gen_range(i..ids.len());
            ids.swap(i, j);
        }
        ids.truncate(count);
        ids.into_iter().map(Edge::from_id).collect()
    } else {
        let mut seen = std::collections::HashSet::with_capacity(count * 2);
        let mut block = Vec::with_capacity(count);
        while block.len() < count {
            let e = board.sample_free_edge(rng).expect("free edges remain");
            if seen.insert(e.id()) {
                block.push(e);
            }
        }
        block
    }
}

impl Strategy for RandomStrategy {
    fn name(&self) -> String {
        "random".into()
    }

    fn maker_move(&mut self, board: &Board, rng: &mut GameRng) -> Edge {
        board.sample_free_edge(rng).expect("engine guarantees a free edge")
    }

    fn breaker_block(
        &mut self,
        board: &Board,
        _last_maker_edge: Edge,
        budget: u64,
        rng: &mut GameRng,
    ) -> Vec<Edge> {
        sample_free_block(board, budget as usize, rng)
    }
}
