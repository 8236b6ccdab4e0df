//! Watches the harmonic potential that carries the branch-set Maker.
//!
//! With branch sets C_1..C_r after Maker's t-th move, f_j counting the free
//! edges incident to C_j and T the round in which the number of sets last
//! grew, the floor that must hold for every non-empty S ⊆ {1..r} is
//!
//!     Σ_{j∈S} f_j  ≥  h_{|S|} · |S| · (1 − ε/2) · n  +  (|S|/k) · (t − T) · (ε/4) · n.
//!
//! The second term is what makes the bound dynamic: while the strategy is
//! stuck augmenting instead of creating, the floor drifts upward, and a
//! Breaker strong enough to stall it forever must eventually push some
//! prefix below it. As in the strategy itself, only ascending prefixes of
//! the sorted f-values need checking, and the comparison is exact rational
//! against integer free-edge counts.
//!
//! This monitor is the one exception to re-deriving everything from the
//! board: branch sets are the strategy's private plan, so it reads them
//! through the [`BranchSetView`] handle published by the Maker.

use crate::board::{Board, Edge, GameConfig};
use crate::engine::{Monitor, MonitorReport};
use crate::numeric::{HarmonicTable, Rat};
use crate::strategies::{ascending_prefix_sums, BranchSetView};

use super::ViolationLog;

pub struct BranchSetInvariantMonitor {
    view: BranchSetView,
    k: u32,
    eps: Rat,
    harmonic: HarmonicTable,
    n: u32,
    log: ViolationLog,
    first_violation_round: Option<u32>,
}

impl BranchSetInvariantMonitor {
    pub fn new(view: BranchSetView) -> Self {
        let (k, eps) = view.with(|p| (p.k, p.eps));
        BranchSetInvariantMonitor {
            view,
            k,
            eps,
            harmonic: HarmonicTable::new(k as usize),
            n: 0,
            log: ViolationLog::default(),
            first_violation_round: None,
        }
    }
}

impl Monitor for BranchSetInvariantMonitor {
    fn name(&self) -> String {
        "gbox-invariant".to_string()
    }

    fn on_game_start(&mut self, config: &GameConfig, _board: &Board) {
        self.n = config.n;
        self.log.reset();
        self.first_violation_round = None;
    }

    fn after_maker_move(&mut self, board: &Board, round: u32, _e: Edge) {
        let f = self.view.free_incident_counts(board);
        let (t, last) = self.view.with(|p| (p.round, p.last_increase));
        let n = Rat::from_integer(i128::from(self.n));
        let base = (Rat::from_integer(1) - self.eps / 2) * n;
        let drift = self.eps / 4 * n * Rat::from_integer(i128::from(t - last))
            / Rat::from_integer(i128::from(self.k));
        for (idx, &prefix) in ascending_prefix_sums(&f).iter().enumerate() {
            let s = idx + 1;
            let s_rat = Rat::from_integer(s as i128);
            let floor = self.harmonic.h(s) * s_rat * base + s_rat * drift;
            if Rat::from_integer(i128::from(prefix)) < floor {
                if self.first_violation_round.is_none() {
                    self.first_violation_round = Some(round);
                }
                self.log.push(
                    round,
                    format!("the {s} poorest branch sets see only {prefix} free edges"),
                );
            }
        }
    }

    fn report(&self) -> MonitorReport {
        let mut metrics = Vec::new();
        if let Some(r) = self.first_violation_round {
            metrics.push(("first_violation_round".to_string(), f64::from(r)));
        }
        self.log.report("gbox-invariant", metrics)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{Player, TargetProperty};
    use crate::engine::{play_game, PlayOptions};
    use crate::rng::game_rng;
    use crate::strategies::{BoxMinorMaker, RandomStrategy, Strategy};

    #[test]
    fn quiet_whenever_the_designed_maker_wins() {
        let config = GameConfig::new(400, 320, TargetProperty::parse("minor:P4").unwrap()).unwrap();
        let mut wins = 0;
        for seed in 0..5u64 {
            let mut maker = BoxMinorMaker::from_params("P4", "0.2").unwrap();
            let mut breaker = RandomStrategy::new();
            let mut monitors: Vec<Box<dyn Monitor>> = vec![Box::new(
                BranchSetInvariantMonitor::new(maker.branch_set_view().unwrap()),
            )];
            let record = play_game(
                &config,
                &mut maker,
                &mut breaker,
                &mut monitors,
                seed,
                &PlayOptions::default(),
            )
            .unwrap();
            if record.result().winner == Player::Maker {
                wins += 1;
                assert_eq!(
                    record.monitor_reports[0].metric("violations_total"),
                    Some(0.0),
                    "seed {seed} won while breaking the potential floor"
                );
            }
        }
        assert!(wins >= 4, "only {wins}/5 wins at the designed bias");
    }

    #[test]
    fn starving_the_only_branch_set_trips_the_floor() {
        let n = 50;
        let config = GameConfig::new(n, 96, TargetProperty::None).unwrap();
        let mut board = Board::new(n).unwrap();
        let mut maker = BoxMinorMaker::from_params("P2", "0.2").unwrap();
        let mut mon = BranchSetInvariantMonitor::new(maker.branch_set_view().unwrap());
        let mut rng = game_rng(9);
        maker.on_game_start(&config, &board);
        mon.on_game_start(&config, &board);

        // an empty board leaves the tie on degree sums to the lowest edge
        let e1 = maker.maker_move(&board, &mut rng);
        assert_eq!(e1, Edge::new(0, 1));
        board.claim(Player::Maker, e1).unwrap();
        mon.after_maker_move(&board, 1, e1);
        assert_eq!(mon.report().metric("violations_total"), Some(0.0));

        // Breaker buries both endpoints, so the strategy has to fall back
        // to a random edge and its one branch set keeps zero free edges;
        // h_1·0.9·50 = 45 plus one round of drift is then unreachable.
        for w in 2..n {
            board.claim(Player::Breaker, Edge::new(0, w)).unwrap();
            board.claim(Player::Breaker, Edge::new(1, w)).unwrap();
        }
        let e2 = maker.maker_move(&board, &mut rng);
        board.claim(Player::Maker, e2).unwrap();
        mon.after_maker_move(&board, 2, e2);

        let rep = mon.report();
        assert!(rep.metric("violations_total").unwrap() >= 1.0);
        assert_eq!(rep.metric("first_violation_round"), Some(2.0));
    }
}
