//! Two-phase Breaker against a random Maker for the ten-edge-path game,
//! designed for bias ⌊0.99n⌋.
//!
//! Phase 1 lasts ⌊0.03n⌋ rounds. Writing J_t for the currently non-isolated
//! vertices in Maker's graph and I_t for the rest, each block claims, in
//! priority order: (a) every free edge inside J_t; (b) edges between J_t
//! and I_t, repeatedly picking the J_t endpoint among vertices with a free
//! edge whose Maker component is largest (ties uniformly at random) and the
//! other endpoint uniformly among its free neighbors; (c) edges inside I_t
//! uniformly at random. The point of (a) is that Maker can then never play
//! inside J_t, so components stay small; (b) spreads Breaker edges evenly
//! over the isolated vertices.
//!
//! At the end of phase 1 the isolated set I is frozen. From then on Maker's
//! graph restricted to I is kept a union of stars, each with a head
//! (initially every vertex its own): on a Maker edge uv inside I with u the
//! isolated endpoint, claim u's free edges inside I, then the edges from v
//! to the heads of other non-trivial I-components, then top up with free
//! edges incident to the new component, in uniform random order, until the
//! budget is spent. On a Maker edge between I and J, claim every free edge
//! incident to the I-component. Stars in I, at most one Maker edge from
//! each I-component to J, and J-components of at most four vertices
//! together cap Maker's paths at ten vertices.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::board::{Board, Edge, GameConfig};
use crate::rng::GameRng;

use super::Strategy;

/// Edges selected so far within one block. The board only changes after
/// the block is returned, so every "is this edge still available" question
/// has to consult the local selection as well.
struct BlockBuilder<'a> {
    board: &'a Board,
    chosen: HashSet<u32>,
    list: Vec<Edge>,
    budget: usize,
    claimed_at: Vec<u32>,
}

impl<'a> BlockBuilder<'a> {
    fn new(board: &'a Board, budget: u64) -> Self {
        BlockBuilder {
            board,
            chosen: HashSet::new(),
            list: Vec::new(),
            budget: budget as usize,
            claimed_at: vec![0; board.n() as usize],
        }
    }

    fn remaining(&self) -> usize {
        self.budget - self.list.len()
    }

    fn is_chosen(&self, e: Edge) -> bool {
        self.chosen.contains(&e.id())
    }

    fn open(&self, e: Edge) -> bool {
        self.board.is_free(e) && !self.is_chosen(e)
    }

    /// False when the budget is already spent.
    fn push(&mut self, e: Edge) -> bool {
        debug_assert!(self.open(e));
        if self.remaining() == 0 {
            return false;
        }
        self.chosen.insert(e.id());
        self.claimed_at[e.u() as usize] += 1;
        self.claimed_at[e.v() as usize] += 1;
        self.list.push(e);
        true
    }

    /// Free degree of `v` minus this block's own selections at `v`.
    fn open_deg(&self, v: u32) -> u32 {
        self.board.deg_free(v) - self.claimed_at[v as usize]
    }

    fn into_block(self) -> Vec<Edge> {
        self.list
    }
}

/// Frozen partition and star bookkeeping for phase 2. Components of
/// Maker's graph restricted to I are tracked as a union-find; `head` and
/// `members` are meaningful at roots only.
struct Phase2 {
    in_i: Vec<bool>,
    parent: Vec<u32>,
    size: Vec<u32>,
    head: Vec<u32>,
    members: Vec<Vec<u32>>,
    /// Roots of I-components with at least two vertices, in sorted order
    /// so block contents never depend on hash iteration.
    nontrivial: BTreeSet<u32>,
}

impl Phase2 {
    fn new(in_i: Vec<bool>) -> Self {
        let n = in_i.len();
        Phase2 {
            in_i,
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            head: (0..n as u32).collect(),
            members: (0..n as u32).map(|v| vec![v]).collect(),
            nontrivial: BTreeSet::new(),
        }
    }

    fn find(&mut self, v: u32) -> u32 {
        let mut v = v;
        while self.parent[v as usize] != v {
            let p = self.parent[v as usize];
            self.parent[v as usize] = self.parent[p as usize];
            v = self.parent[v as usize];
        }
        v
    }

    /// Merge the components of `u` and `v`; the result is headed by `head`.
    fn union(&mut self, u: u32, v: u32, head: u32) -> u32 {
        let (ru, rv) = (self.find(u), self.find(v));
        debug_assert_ne!(ru, rv);
        let (big, small) = if self.size[ru as usize] >= self.size[rv as usize] {
            (ru, rv)
        } else {
            (rv, ru)
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        let moved = std::mem::take(&mut self.members[small as usize]);
        self.members[big as usize].extend(moved);
        self.nontrivial.remove(&small);
        self.nontrivial.insert(big);
        self.head[big as usize] = head;
        big
    }
}

pub struct TwoPhaseBreaker {
    phase1_rounds: u32,
    maker_moves: u32,
    /// Live non-isolated set, maintained across the whole game.
    in_j: Vec<bool>,
    j_verts: Vec<u32>,
    snap: Option<Phase2>,
    events: Vec<String>,
    noted_shortfall: bool,
}

impl Default for TwoPhaseBreaker {
    fn default() -> Self {
        Self::new()
    }
}

impl TwoPhaseBreaker {
    pub fn new() -> Self {
        TwoPhaseBreaker {
            phase1_rounds: 0,
            maker_moves: 0,
            in_j: Vec::new(),
            j_verts: Vec::new(),
            snap: None,
            events: Vec::new(),
            noted_shortfall: false,
        }
    }

    pub fn phase1_rounds(&self) -> u32 {
        self.phase1_rounds
    }

    fn note_shortfall(&mut self, what: &str) {
        if !self.noted_shortfall {
            self.noted_shortfall = true;
            self.events
                .push(format!("budget exhausted during {what}; guarantees degrade from here"));
        }
    }

    /// Uniformly random open free neighbor of `u`. `cache`, when present
    /// for `u`, holds exactly the open neighbors left. Only edges at `u`
    /// itself are ever selected between cache refreshes, so entries never
    /// go stale.
    fn sample_open_neighbor(
        bb: &BlockBuilder,
        cache: &mut HashMap<u32, Vec<u32>>,
        u: u32,
        rng: &mut GameRng,
    ) -> u32 {
        debug_assert!(bb.open_deg(u) > 0);
        if let Some(open) = cache.get_mut(&u) {
            let i = rng.gen_range(0..open.len());
            return open.swap_remove(i);
        }
        let n = bb.board.n();
        if u64::from(bb.open_deg(u)) * 8 >= u64::from(n) {
            // dense: rejection sampling against the full vertex range
            loop {
                let w = rng.gen_range(0..n);
                if w != u && bb.open(Edge::new(u, w)) {
                    return w;
                }
            }
        }
        let mut open: Vec<u32> = bb
            .board
            .free_neighbors(u)
            .filter(|&w| !bb.is_chosen(Edge::new(u, w)))
            .collect();
        let i = rng.gen_range(0..open.len());
        let w = open.swap_remove(i);
        cache.insert(u, open);
        w
    }

    /// The phase-1 priority block. Also serves as the fallback reaction to
    /// an (off-design) Maker edge inside J during phase 2, which is why it
    /// recomputes everything from the live board.
    fn phase1_block(&mut self, board: &Board, budget: u64, rng: &mut GameRng) -> Vec<Edge> {
        let mut bb = BlockBuilder::new(board, budget);

        // (a) everything inside J_t
        let mut j_mask = crate::bits::VertexSet::empty(board.n());
        for &x in &self.j_verts {
            j_mask.insert(x);
        }
        for &x in &self.j_verts {
            for y in board.free_adj().collect_row_and(x, &j_mask) {
                if y > x && !bb.push(Edge::new(x, y)) {
                    return bb.into_block();
                }
            }
        }

        // (b) edges from J_t to I_t, largest Maker component first
        let (comp, _) = board.maker_graph().component_ids();
        let mut comp_size = vec![0u32; board.n() as usize];
        for v in 0..board.n() {
            comp_size[comp[v as usize] as usize] += 1;
        }
        let mut cands: Vec<(u32, u32)> = self
            .j_verts
            .iter()
            .filter(|&&v| bb.open_deg(v) > 0)
            .map(|&v| (comp_size[comp[v as usize] as usize], v))
            .collect();
        cands.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut cache: HashMap<u32, Vec<u32>> = HashMap::new();
        let mut tier: Vec<u32> = Vec::new();
        let mut next = 0;
        while bb.remaining() > 0 {
            if tier.is_empty() {
                if next >= cands.len() {
                    break;
                }
                let s = cands[next].0;
                while next < cands.len() && cands[next].0 == s {
                    if bb.open_deg(cands[next].1) > 0 {
                        tier.push(cands[next].1);
                    }
                    next += 1;
                }
                continue;
            }
            let ti = rng.gen_range(0..tier.len());
            let u = tier[ti];
            let w = Self::sample_open_neighbor(&bb, &mut cache, u, rng);
            bb.push(Edge::new(u, w));
            if bb.open_deg(u) == 0 {
                tier.swap_remove(ti);
            }
        }

        // (c) edges inside I_t, uniformly at random
        'outer: while bb.remaining() > 0 {
            for _ in 0..64 {
                let e = match board.sample_free_edge(rng) {
                    Ok(e) => e,
                    Err(_) => break 'outer,
                };
                if !bb.is_chosen(e)
                    && board.deg_maker(e.u()) == 0
                    && board.deg_maker(e.v()) == 0
                {
                    bb.push(e);
                    continue 'outer;
                }
            }
            // qualifying edges have become rare: enumerate what is left
            let mut rest: Vec<Edge> = board
                .free_ids()
                .iter()
                .map(|&id| Edge::from_id(id))
                .filter(|&e| {
                    !bb.is_chosen(e)
                        && board.deg_maker(e.u()) == 0
                        && board.deg_maker(e.v()) == 0
                })
                .collect();
            rest.shuffle(rng);
            for e in rest {
                if !bb.push(e) {
                    break;
                }
            }
            break;
        }
        bb.into_block()
    }

    /// All open free edges with at least one endpoint in the component of
    /// `root`, each listed once, in member order.
    fn component_incident(bb: &BlockBuilder, p2: &mut Phase2, root: u32) -> Vec<Edge> {
        let mut out = Vec::new();
        let members = std::mem::take(&mut p2.members[root as usize]);
        for &m in &members {
            for w in bb.board.free_neighbors(m) {
                // an edge inside the component shows up from both ends;
                // keep the scan from the lower one
                if w < m && p2.find(w) == root {
                    continue;
                }
                let e = Edge::new(m, w);
                if !bb.is_chosen(e) {
                    out.push(e);
                }
            }
        }
        p2.members[root as usize] = members;
        out
    }

    fn phase2_block(&mut self, board: &Board, e: Edge, budget: u64, rng: &mut GameRng) -> Vec<Edge> {
        // taken out of self so event notes can be pushed while it is live
        let mut p2 = self.snap.take().expect("snapshot exists in phase 2");
        let block = self.phase2_inner(board, e, budget, rng, &mut p2);
        self.snap = Some(p2);
        block
    }

    fn phase2_inner(
        &mut self,
        board: &Board,
        e: Edge,
        budget: u64,
        rng: &mut GameRng,
        p2: &mut Phase2,
    ) -> Vec<Edge> {
        let (u_in_i, v_in_i) = (p2.in_i[e.u() as usize], p2.in_i[e.v() as usize]);

        if !u_in_i && !v_in_i {
            // no free edge inside J should have survived phase 1
            self.events.push(format!(
                "maker edge {}-{} lies inside J; replaying the phase-1 rules",
                e.u(),
                e.v()
            ));
            return self.phase1_block(board, budget, rng);
        }

        let mut bb = BlockBuilder::new(board, budget);
        if u_in_i && v_in_i {
            // Maker degree 1 now ⇔ isolated before the move. This decides
            // which endpoint turns into a leaf and which heads the merge.
            let u_iso = board.deg_maker(e.u()) == 1;
            let v_iso = board.deg_maker(e.v()) == 1;
            if !u_iso && !v_iso {
                self.events.push(format!(
                    "maker edge {}-{} joins two non-isolated vertices in I",
                    e.u(),
                    e.v()
                ));
            }
            let (u, v) = if u_iso || !v_iso {
                (e.u(), e.v())
            } else {
                (e.v(), e.u())
            };

            let root = if p2.find(u) == p2.find(v) {
                self.events.push(format!(
                    "maker edge {}-{} closes a cycle inside an I-component",
                    e.u(),
                    e.v()
                ));
                p2.find(u)
            } else {
                p2.union(u, v, v)
            };

            // the leaf's remaining edges inside I
            for w in board.free_neighbors(u) {
                if p2.in_i[w as usize] && !bb.push(Edge::new(u, w)) {
                    self.note_shortfall("leaf isolation in I");
                    return bb.into_block();
                }
            }
            // the head must not reach the heads of other grown components
            let others: Vec<u32> = p2
                .nontrivial
                .iter()
                .copied()
                .filter(|&r| r != root)
                .map(|r| p2.head[r as usize])
                .collect();
            for h in others {
                let he = Edge::new(v, h);
                if bb.open(he) && !bb.push(he) {
                    self.note_shortfall("head separation in I");
                    return bb.into_block();
                }
            }
            // spend what is left on the new component's surroundings
            let mut rest = Self::component_incident(&bb, p2, root);
            rest.shuffle(rng);
            for e2 in rest {
                if !bb.push(e2) {
                    break; // stopping here is the designed behavior
                }
            }
        } else {
            // an edge between I and J: smother the I-component completely
            let x = if u_in_i { e.u() } else { e.v() };
            let root = p2.find(x);
            for e2 in Self::component_incident(&bb, p2, root) {
                if !bb.push(e2) {
                    self.note_shortfall("smothering an I-component");
                    break;
                }
            }
        }
        bb.into_block()
    }
}

impl Strategy for TwoPhaseBreaker {
    fn name(&self) -> String {
        "two-phase-p11".into()
    }

    fn on_game_start(&mut self, config: &GameConfig, _board: &Board) {
        let n = config.n;
        self.phase1_rounds = (u64::from(n) * 3 / 100) as u32;
        self.maker_moves = 0;
        self.in_j = vec![false; n as usize];
        self.j_verts.clear();
        self.events.clear();
        self.noted_shortfall = false;
        self.snap = if self.phase1_rounds == 0 {
            // degenerate boards skip phase 1; everyone starts isolated
            Some(Phase2::new(vec![true; n as usize]))
        } else {
            None
        };
    }

    fn on_opponent_move(&mut self, board: &Board, edge: Edge) {
        self.maker_moves += 1;
        for x in [edge.u(), edge.v()] {
            if !self.in_j[x as usize] {
                self.in_j[x as usize] = true;
                self.j_verts.push(x);
            }
        }
        if self.maker_moves == self.phase1_rounds && self.snap.is_none() {
            // Maker's graph now is exactly the phase-boundary graph; the
            // block this round is still played by phase-1 rules.
            let in_i: Vec<bool> = (0..board.n()).map(|v| board.deg_maker(v) == 0).collect();
            self.snap = Some(Phase2::new(in_i));
        }
    }

    fn breaker_block(
        &mut self,
        board: &Board,
        last_maker_edge: Edge,
        budget: u64,
        rng: &mut GameRng,
    ) -> Vec<Edge> {
        if self.maker_moves <= self.phase1_rounds {
            self.phase1_block(board, budget, rng)
        } else {
            self.phase2_block(board, last_maker_edge, budget, rng)
        }
    }

    fn take_events(&mut self) -> Vec<String> {
        std::mem::take(&mut self.events)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{Player, TargetProperty};
    use crate::engine::{play_game, GameEvent, Monitor, MonitorReport, PlayOptions, Violation};
    use crate::graph::{longest_path_at_least, SparseGraph};
    use crate::strategies::RandomStrategy;

    /// After every phase-1 block, J_t must contain no free edge.
    struct JClean {
        limit: u32,
        violations: Vec<Violation>,
    }

    impl Monitor for JClean {
        fn name(&self) -> String {
            "test-j-clean".into()
        }

        fn after_breaker_block(&mut self, board: &Board, round: u32, _block: &[Edge]) {
            if round > self.limit {
                return;
            }
            let j: Vec<u32> = (0..board.n()).filter(|&v| board.deg_maker(v) > 0).collect();
            for (a, &x) in j.iter().enumerate() {
                for &y in &j[a + 1..] {
                    if board.is_free(Edge::new(x, y)) {
                        self.violations.push(Violation {
                            round,
                            message: format!("free edge {x}-{y} inside J"),
                        });
                    }
                }
            }
        }

        fn report(&self) -> MonitorReport {
            MonitorReport {
                monitor: self.name(),
                violations: self.violations.clone(),
                metrics: vec![],
            }
        }
    }

    #[test]
    fn phase_one_leaves_no_free_edges_inside_j() {
        let n = 200;
        let config = GameConfig::new(n, u64::from(n) * 99 / 100, TargetProperty::None).unwrap();
        for seed in 0..3u64 {
            let mut maker = RandomStrategy::new();
            let mut breaker = TwoPhaseBreaker::new();
            let mut monitors: Vec<Box<dyn Monitor>> = vec![Box::new(JClean {
                limit: (u64::from(n) * 3 / 100) as u32,
                violations: Vec::new(),
            })];
            play_game(
                &config,
                &mut maker,
                &mut breaker,
                &mut monitors,
                seed,
                &PlayOptions::default(),
            )
            .unwrap();
            assert!(
                monitors[0].report().violations.is_empty(),
                "seed {seed}: J was not cleared in some phase-1 round"
            );
        }
    }

    #[test]
    fn full_games_keep_i_components_star_shaped_and_short() {
        let n: u32 = 300;
        let phase1 = (u64::from(n) * 3 / 100) as u32;
        let config = GameConfig::new(n, u64::from(n) * 99 / 100, TargetProperty::None).unwrap();
        for seed in 0..3u64 {
            let mut maker = RandomStrategy::new();
            let mut breaker = TwoPhaseBreaker::new();
            let record = play_game(
                &config,
                &mut maker,
                &mut breaker,
                &mut [],
                seed,
                &PlayOptions::default(),
            )
            .unwrap();
            assert!(
                record
                    .events
                    .iter()
                    .all(|ev| !matches!(ev, GameEvent::StrategyNote { .. })),
                "seed {seed}: breaker had to improvise or ran out of budget"
            );

            // recover the frozen I from the transcript
            let mut deg_at_boundary = vec![0u32; n as usize];
            for mv in &record.transcript.moves {
                if mv.player == Player::Maker && mv.round <= phase1 {
                    deg_at_boundary[mv.edge.u() as usize] += 1;
                    deg_at_boundary[mv.edge.v() as usize] += 1;
                }
            }
            let in_i: Vec<bool> = deg_at_boundary.iter().map(|&d| d == 0).collect();

            let m = SparseGraph::from_edges(n, &record.maker_edges);
            let mi = SparseGraph::from_pairs(
                n,
                record
                    .maker_edges
                    .iter()
                    .filter(|e| in_i[e.u() as usize] && in_i[e.v() as usize])
                    .map(|e| (e.u(), e.v())),
            );

            // stars: no I-component has two vertices of degree >= 2
            let (comp, _) = mi.component_ids();
            let mut heavy = HashMap::new();
            for v in 0..n {
                if mi.degree(v) >= 2 {
                    *heavy.entry(comp[v as usize]).or_insert(0u32) += 1;
                }
            }
            assert!(
                heavy.values().all(|&c| c <= 1),
                "seed {seed}: an I-component is not a star"
            );

            // at most one Maker edge from each I-component to J
            let mut j_links = HashMap::new();
            for e in &record.maker_edges {
                let (iu, iv) = (in_i[e.u() as usize], in_i[e.v() as usize]);
                if iu != iv {
                    let x = if iu { e.u() } else { e.v() };
                    *j_links.entry(comp[x as usize]).or_insert(0u32) += 1;
                }
            }
            assert!(
                j_links.values().all(|&c| c <= 1),
                "seed {seed}: an I-component reached J twice"
            );

            assert!(
                !longest_path_at_least(&m, 10).unwrap(),
                "seed {seed}: Maker built a ten-edge path"
            );
        }
    }

    #[test]
    fn reactions_follow_the_maker_edge() {
        // n=40 gives exactly one phase-1 round; afterwards I = everything
        // untouched by Maker's first edge.
        let n = 40u32;
        let config = GameConfig::new(n, 5, TargetProperty::None).unwrap();
        let mut board = Board::new(n).unwrap();
        let mut brk = TwoPhaseBreaker::new();
        let mut rng = crate::rng::game_rng(11);
        brk.on_game_start(&config, &board);
        assert_eq!(brk.phase1_rounds(), 1);

        let play = |board: &mut Board, brk: &mut TwoPhaseBreaker,
                    rng: &mut GameRng,
                    m: Edge,
                    budget: u64| {
            board.claim(Player::Maker, m).unwrap();
            brk.on_opponent_move(board, m);
            let block = brk.breaker_block(board, m, budget, rng);
            let mut seen = HashSet::new();
            for &e in &block {
                assert!(board.is_free(e), "{e:?} was not free");
                assert!(seen.insert(e.id()), "{e:?} repeated in one block");
                board.claim(Player::Breaker, e).unwrap();
            }
            block
        };

        // round 1 is phase 1: tiny budget, all claims touch J = {0, 1}
        let b1 = play(&mut board, &mut brk, &mut rng, Edge::new(0, 1), 5);
        assert_eq!(b1.len(), 5);
        assert!(b1.iter().all(|e| e.touches(0) || e.touches(1)));

        // round 2: an edge inside I merges 2 and 3; 3 heads the new star.
        // The budget of 36 covers exactly the leaf edges from 2 into I, so
        // the head's own edges survive this round.
        let b2 = play(&mut board, &mut brk, &mut rng, Edge::new(2, 3), 36);
        assert_eq!(b2.len(), 36);
        assert!(b2.iter().all(|e| e.touches(2)));
        for w in 4..40 {
            assert!(
                !board.is_free(Edge::new(2, w)),
                "leaf 2 kept a free edge into I"
            );
        }

        // round 3: another I-star at (4,5); its head 5 must lose the edge
        // to the other component's head 3
        let b3 = play(&mut board, &mut brk, &mut rng, Edge::new(4, 5), 100);
        assert!(b3.contains(&Edge::new(3, 5)));
        assert!(!b3.contains(&Edge::new(2, 4)) && !b3.contains(&Edge::new(2, 5)));

        // round 4: Maker links I-vertex 6 to J-vertex 0 (if still free);
        // everything at 6 must disappear
        let m4 = Edge::new(0, 6);
        if board.is_free(m4) {
            play(&mut board, &mut brk, &mut rng, m4, 200);
            assert_eq!(board.deg_free(6), 0, "the linked I-component kept a free edge");
        }
        assert!(brk.take_events().is_empty());
    }

    #[test]
    fn tiny_boards_run_entirely_in_phase_two() {
        // floor(0.03 * 8) = 0: no phase-1 rounds at all
        let config = GameConfig::new(8, 3, TargetProperty::None).unwrap();
        for seed in 0..20u64 {
            let mut maker = RandomStrategy::new();
            let mut breaker = TwoPhaseBreaker::new();
            let record = play_game(
                &config,
                &mut maker,
                &mut breaker,
                &mut [],
                seed,
                &PlayOptions::default(),
            )
            .unwrap();
            assert_eq!(
                u64::from(record.rounds),
                (28 + 3) / 4,
                "seed {seed}: exhaustion round count"
            );
        }
    }
}
