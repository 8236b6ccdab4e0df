//! Maker strategy that builds an H-minor for a forest H by growing one
//! branch set per pattern vertex, guided by a harmonic potential.
//!
//! With the pattern vertices v_1..v_k in a 1-degenerate order, the strategy
//! keeps branch sets C_1..C_r. Writing f'_i for the number of free edges
//! incident to C_i, a new branch set is started only when every non-empty
//! S ⊆ {1..r} satisfies
//!
//!     Σ_{i∈S} f'_i  >  h_{|S|+1} · (|S|+1) · (1 − ε/2) · n
//!
//! with h_j the j-th harmonic number. For each size the sum is minimized by
//! the ascending prefix of the sorted f' values, so only r subsets need
//! checking. When the condition holds, the next branch set is seeded from
//! its parent's set — the claimed edge realizes the pattern edge — through
//! a free edge to an unused vertex of maximum free degree. Otherwise the
//! poorest set (minimum f'_i) grows by the same rule, restoring its share
//! of free edges. Threshold arithmetic is exact rationals throughout.

use std::cell::RefCell;
use std::rc::Rc;

use crate::bits::VertexSet;
use crate::board::{Board, Edge, GameConfig};
use crate::graph::PatternGraph;
use crate::numeric::{parse_decimal_rational, HarmonicTable, Rat, MAX_HARMONIC_INDEX};
use crate::rng::GameRng;

use super::Strategy;

/// The strategy's working state, shared read-only with the invariant
/// monitor through [`BranchSetView`].
pub struct BranchSetPlan {
    /// Number of pattern vertices.
    pub k: u32,
    pub eps: Rat,
    /// Pattern vertices in a 1-degenerate order.
    pub order: Vec<u32>,
    /// For each order position, the position of its unique earlier
    /// neighbor, if any.
    pub parents: Vec<Option<u32>>,
    /// Branch sets C_1..C_r; the set at position i hosts `order[i]`.
    pub branch_sets: Vec<Vec<u32>>,
    /// Maker moves made so far.
    pub round: u32,
    /// Round in which the number of branch sets last grew.
    pub last_increase: u32,
    /// Rounds where no prescribed edge existed and a random fallback was
    /// played instead.
    pub stuck_rounds: u64,
}

/// Shared handle onto a [`BranchSetPlan`]. Monitors read through it between
/// strategy calls, so the borrows never overlap.
#[derive(Clone)]
pub struct BranchSetView(Rc<RefCell<BranchSetPlan>>);

impl BranchSetView {
    pub fn with<R>(&self, f: impl FnOnce(&BranchSetPlan) -> R) -> R {
        f(&self.0.borrow())
    }

    /// Free edges incident to each branch set on the given board.
    pub fn free_incident_counts(&self, board: &Board) -> Vec<u64> {
        self.with(|p| free_incident_counts(board, &p.branch_sets))
    }
}

/// Number of free edges with at least one endpoint in each given set.
/// An edge with both endpoints inside a set counts once.
pub(crate) fn free_incident_counts(board: &Board, sets: &[Vec<u32>]) -> Vec<u64> {
    sets.iter()
        .map(|set| {
            let mut mask = VertexSet::empty(board.n());
            for &v in set {
                mask.insert(v);
            }
            let mut total: u64 = 0;
            let mut internal: u64 = 0;
            for &v in set {
                total += u64::from(board.deg_free(v));
                internal += board.free_adj().count_row_and(v, &mask) as u64;
            }
            total - internal / 2
        })
        .collect()
}

/// Minimum subset sum of each size s = 1..=len: sort ascending, take the
/// s-prefix.
pub(crate) fn ascending_prefix_sums(f: &[u64]) -> Vec<u64> {
    let mut sorted = f.to_vec();
    sorted.sort_unstable();
    sorted
        .iter()
        .scan(0u64, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// Strict form of the branch-set growth condition over all non-empty
/// subsets, evaluated through sorted prefixes.
pub(crate) fn growth_condition_holds(
    harmonic: &HarmonicTable,
    n: u32,
    eps: Rat,
    f: &[u64],
) -> bool {
    let base = (Rat::from_integer(1) - eps / 2) * Rat::from_integer(i128::from(n));
    ascending_prefix_sums(f).iter().enumerate().all(|(idx, &prefix)| {
        let s = idx + 1;
        let rhs = harmonic.h(s + 1) * Rat::from_integer((s + 1) as i128) * base;
        Rat::from_integer(i128::from(prefix)) > rhs
    })
}

pub struct BoxMinorMaker {
    pattern_spec: String,
    eps_spec: String,
    plan: Rc<RefCell<BranchSetPlan>>,
    harmonic: HarmonicTable,
    /// Vertices already used by some branch set.
    in_sets: Vec<bool>,
    n: u32,
    events: Vec<String>,
}

impl BoxMinorMaker {
    /// `pattern` must name a forest (P4, M3, star:5, spider:2,2,2, ...);
    /// `eps` is a decimal slack strictly between 0 and 1.
    pub fn from_params(pattern: &str, eps: &str) -> Result<Self, String> {
        let h = PatternGraph::resolve(pattern).map_err(|e| e.to_string())?;
        let (order, parents) = h.one_degenerate_order().ok_or_else(|| {
            format!("{pattern} contains a cycle; only forests can be grown one branch set at a time")
        })?;
        let k = h.vertex_count();
        if k as usize + 1 > MAX_HARMONIC_INDEX {
            return Err(format!(
                "pattern has {k} vertices; the harmonic table stops at {MAX_HARMONIC_INDEX}"
            ));
        }
        let eps_rat = parse_decimal_rational(eps)
            .ok_or_else(|| format!("eps {eps:?} is not a decimal number"))?;
        if eps_rat <= Rat::from_integer(0) || eps_rat >= Rat::from_integer(1) {
            return Err("eps must lie strictly between 0 and 1".into());
        }
        Ok(BoxMinorMaker {
            pattern_spec: pattern.to_string(),
            eps_spec: eps.to_string(),
            plan: Rc::new(RefCell::new(BranchSetPlan {
                k,
                eps: eps_rat,
                order,
                parents,
                branch_sets: Vec::new(),
                round: 0,
                last_increase: 0,
                stuck_rounds: 0,
            })),
            harmonic: HarmonicTable::new(k as usize + 1),
            in_sets: Vec::new(),
            n: 0,
            events: Vec::new(),
        })
    }

    /// The free edge uv with u in `set` and v unused that maximizes the
    /// free degree of v; ties prefer the lowest v, then the lowest u.
    fn best_extension(board: &Board, set: &[u32], in_sets: &[bool]) -> Option<(u32, u32)> {
        let mut best: Option<(u32, u32, u32)> = None; // (deg_free(v), v, u)
        for &u in set {
            for v in board.free_neighbors(u) {
                if in_sets[v as usize] {
                    continue;
                }
                let d = board.deg_free(v);
                let better = match best {
                    None => true,
                    Some((bd, bv, bu)) => d > bd || (d == bd && (v < bv || (v == bv && u < bu))),
                };
                if better {
                    best = Some((d, v, u));
                }
            }
        }
        best.map(|(_, v, u)| (u, v))
    }
}

impl Strategy for BoxMinorMaker {
    fn name(&self) -> String {
        format!("box-minor:H={},eps={}", self.pattern_spec, self.eps_spec)
    }

    fn on_game_start(&mut self, config: &GameConfig, _board: &Board) {
        self.n = config.n;
        self.in_sets = vec![false; config.n as usize];
        self.events.clear();
        let mut plan = self.plan.borrow_mut();
        plan.branch_sets.clear();
        plan.round = 0;
        plan.last_increase = 0;
        plan.stuck_rounds = 0;
    }

    fn branch_set_view(&self) -> Option<BranchSetView> {
        Some(BranchSetView(self.plan.clone()))
    }

    fn maker_move(&mut self, board: &Board, rng: &mut GameRng) -> Edge {
        let mut plan = self.plan.borrow_mut();
        plan.round += 1;

        if plan.branch_sets.is_empty() {
            // Seed the first set with both endpoints of the freest edge.
            let mut best: Option<(u64, u32)> = None;
            for &id in board.free_ids() {
                let e = Edge::from_id(id);
                let score = u64::from(board.deg_free(e.u())) + u64::from(board.deg_free(e.v()));
                let better = match best {
                    None => true,
                    Some((bs, bid)) => score > bs || (score == bs && id < bid),
                };
                if better {
                    best = Some((score, id));
                }
            }
            let e = Edge::from_id(best.expect("engine only asks for a move while edges are free").1);
            plan.branch_sets.push(vec![e.u(), e.v()]);
            plan.last_increase = plan.round;
            self.in_sets[e.u() as usize] = true;
            self.in_sets[e.v() as usize] = true;
            return e;
        }

        let f = free_incident_counts(board, &plan.branch_sets);
        let r = plan.branch_sets.len();
        let create =
            r < plan.k as usize && growth_condition_holds(&self.harmonic, self.n, plan.eps, &f);

        let target_set = if create {
            // Grow off the parent's set so the claimed edge realizes the
            // pattern edge; roots of other trees hang off the first set.
            plan.parents[r].map(|p| p as usize).unwrap_or(0)
        } else {
            (0..r).min_by_key(|&i| (f[i], i)).unwrap()
        };

        match Self::best_extension(board, &plan.branch_sets[target_set], &self.in_sets) {
            Some((u, v)) => {
                if create {
                    plan.branch_sets.push(vec![v]);
                    plan.last_increase = plan.round;
                } else {
                    plan.branch_sets[target_set].push(v);
                }
                self.in_sets[v as usize] = true;
                Edge::new(u, v)
            }
            None => {
                plan.stuck_rounds += 1;
                drop(plan);
                self.events.push(format!(
                    "no free edge leaves branch set {}; playing a random edge instead",
                    target_set + 1
                ));
                board
                    .sample_free_edge(rng)
                    .expect("engine only asks for a move while edges are free")
            }
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
    use crate::engine::{play_game, PlayOptions};
    use crate::rng::game_rng;
    use crate::strategies::RandomStrategy;

    fn drive(maker: &mut BoxMinorMaker, board: &mut Board, rng: &mut GameRng) -> Edge {
        let e = maker.maker_move(board, rng);
        board.claim(Player::Maker, e).unwrap();
        e
    }

    #[test]
    fn first_move_and_creation_bookkeeping() {
        let n = 50;
        let config = GameConfig::new(n, 1, TargetProperty::None).unwrap();
        let mut board = Board::new(n).unwrap();
        let mut maker = BoxMinorMaker::from_params("P3", "0.2").unwrap();
        maker.on_game_start(&config, &board);
        let mut rng = game_rng(7);

        let view = maker.branch_set_view().unwrap();
        assert_eq!(view.with(|p| p.order.clone()), vec![2, 1, 0]);
        assert_eq!(view.with(|p| p.parents.clone()), vec![None, Some(0), Some(1)]);

        // Fresh board: every degree ties, so the lowest edge id wins.
        assert_eq!(drive(&mut maker, &mut board, &mut rng), Edge::new(0, 1));
        assert_eq!(view.with(|p| p.branch_sets.clone()), vec![vec![0, 1]]);

        // 96 free edges at {0,1} is below h_2·2·0.9·50 = 135, so the set
        // grows instead of splitting; vertex 2 has the maximum free degree.
        assert_eq!(view.free_incident_counts(&board), vec![96]);
        assert_eq!(drive(&mut maker, &mut board, &mut rng), Edge::new(0, 2));
        assert_eq!(view.with(|p| p.branch_sets.clone()), vec![vec![0, 1, 2]]);

        // 142 > 135: the second set is seeded from the first one's edge.
        assert_eq!(view.free_incident_counts(&board), vec![142]);
        assert_eq!(drive(&mut maker, &mut board, &mut rng), Edge::new(0, 3));
        assert_eq!(
            view.with(|p| p.branch_sets.clone()),
            vec![vec![0, 1, 2], vec![3]]
        );
        assert_eq!(view.with(|p| p.last_increase), 3);
        assert_eq!(view.with(|p| p.stuck_rounds), 0);
    }

    #[test]
    fn single_edge_pattern_wins_on_move_one() {
        let pattern = PatternGraph::resolve("P2").unwrap();
        let config = GameConfig::new(12, 3, TargetProperty::Minor(pattern)).unwrap();
        let mut maker = BoxMinorMaker::from_params("P2", "0.5").unwrap();
        let mut breaker = RandomStrategy::new();
        let record = play_game(
            &config,
            &mut maker,
            &mut breaker,
            &mut [],
            11,
            &PlayOptions::default(),
        )
        .unwrap();
        assert_eq!(record.transcript.result.winner, Player::Maker);
        assert_eq!(record.transcript.result.decision_round, Some(1));
    }

    #[test]
    fn wins_p4_against_random_breaker_at_designed_bias() {
        let n = 300;
        let pattern = PatternGraph::resolve("P4").unwrap();
        let config =
            GameConfig::new(n, u64::from(n) * 4 / 5, TargetProperty::Minor(pattern)).unwrap();
        let mut wins = 0;
        for seed in 0..10u64 {
            let mut maker = BoxMinorMaker::from_params("P4", "0.2").unwrap();
            let mut breaker = RandomStrategy::new();
            let record = play_game(
                &config,
                &mut maker,
                &mut breaker,
                &mut [],
                seed,
                &PlayOptions::default(),
            )
            .unwrap();
            if record.transcript.result.winner == Player::Maker {
                wins += 1;
            }
        }
        assert!(wins >= 8, "only {wins}/10 wins at four fifths of n");
    }

    #[test]
    fn prefix_check_agrees_with_exhaustive_subsets() {
        use rand::Rng;

        let harmonic = HarmonicTable::new(10);
        let eps = Rat::new(1, 5);
        let mut rng = game_rng(99);
        for case in 0..1000 {
            let n = rng.gen_range(5..200u32);
            let len = rng.gen_range(1..=8usize);
            // Values straddle the thresholds so both outcomes occur often.
            let f: Vec<u64> = (0..len)
                .map(|_| rng.gen_range(0..u64::from(n) * 6))
                .collect();

            let base = (Rat::from_integer(1) - eps / 2) * Rat::from_integer(i128::from(n));
            let mut exhaustive = true;
            for mask in 1u32..(1 << len) {
                let s = mask.count_ones() as usize;
                let sum: u64 = (0..len).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).sum();
                let rhs = harmonic.h(s + 1) * Rat::from_integer((s + 1) as i128) * base;
                if Rat::from_integer(i128::from(sum)) <= rhs {
                    exhaustive = false;
                    break;
                }
            }
            assert_eq!(
                growth_condition_holds(&harmonic, n, eps, &f),
                exhaustive,
                "case {case}: f = {f:?}, n = {n}"
            );
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        fn rejection(pattern: &str, eps: &str) -> String {
            match BoxMinorMaker::from_params(pattern, eps) {
                Err(e) => e,
                Ok(_) => panic!("{pattern} with eps {eps} was accepted"),
            }
        }
        assert!(rejection("K3", "0.2").contains("cycle"));
        rejection("P4", "0");
        rejection("P4", "1");
        rejection("P4", "1.2");
        rejection("P4", "banana");
        rejection("Q9", "0.2");
        assert!(rejection("P70", "0.2").contains("harmonic"));
    }

    #[test]
    fn runs_out_of_fresh_vertices_and_falls_back() {
        // Four pattern vertices on a three-vertex board: after two moves
        // every vertex is used, so the third move has no prescribed edge.
        let n = 3;
        let config = GameConfig::new(n, 1, TargetProperty::None).unwrap();
        let mut board = Board::new(n).unwrap();
        let mut maker = BoxMinorMaker::from_params("M2", "0.2").unwrap();
        maker.on_game_start(&config, &board);
        let mut rng = game_rng(5);

        assert_eq!(drive(&mut maker, &mut board, &mut rng), Edge::new(0, 1));
        assert_eq!(drive(&mut maker, &mut board, &mut rng), Edge::new(0, 2));
        // Only (1,2) is free, so even the fallback is forced.
        assert_eq!(drive(&mut maker, &mut board, &mut rng), Edge::new(1, 2));

        let view = maker.branch_set_view().unwrap();
        assert_eq!(view.with(|p| p.stuck_rounds), 1);
        let events = maker.take_events();
        assert_eq!(events.len(), 1);
        assert!(events[0].contains("random"), "{}", events[0]);
    }
}
