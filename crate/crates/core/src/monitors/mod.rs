//! Runtime invariant monitors for the strategies in [`crate::strategies`].
//!
//! Each monitor encodes the invariant its strategy is supposed to maintain
//! and watches a live game through the [`crate::engine::Monitor`] hooks.
//! Violations mean the strategy (or an off-design opponent interaction)
//! broke its contract; they are recorded, not fatal, unless the engine is
//! told to halt. Monitors never read strategy internals except where a
//! strategy explicitly publishes them (the branch-set view); everything
//! else is re-derived from the board and the move stream, so a monitor is
//! an independent check, not an echo.

use crate::engine::{Monitor, MonitorReport, Violation};
use crate::strategies::Strategy;

mod gbox;
mod invariant1;
mod invariant2;
mod pair;

pub use gbox::BranchSetInvariantMonitor;
pub use invariant1::StarInvariantMonitor;
pub use invariant2::TwoPhaseInvariantMonitor;
pub use pair::PairProcessMonitor;

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum MonitorError {
    #[error("unknown monitor {0:?}")]
    Unknown(String),
    #[error("monitor {name} must be paired with a Maker that publishes branch sets; {maker} does not")]
    NeedsBranchSets { name: String, maker: String },
}

/// Construct a monitor by registry name: `invariant1`, `invariant2`,
/// `gbox-invariant`, `pair-process`. The Maker strategy is passed so
/// monitors that audit a strategy's own bookkeeping can take a view of it.
pub fn make_monitor(name: &str, maker: &dyn Strategy) -> Result<Box<dyn Monitor>, MonitorError> {
    match name {
        "invariant1" => Ok(Box::new(StarInvariantMonitor::new())),
        "invariant2" => Ok(Box::new(TwoPhaseInvariantMonitor::new())),
        "pair-process" => Ok(Box::new(PairProcessMonitor::new())),
        "gbox-invariant" => match maker.branch_set_view() {
            Some(view) => Ok(Box::new(BranchSetInvariantMonitor::new(view))),
            None => Err(MonitorError::NeedsBranchSets {
                name: name.to_string(),
                maker: maker.name(),
            }),
        },
        other => Err(MonitorError::Unknown(other.to_string())),
    }
}

/// The registry names accepted by [`make_monitor`].
pub const MONITOR_NAMES: [&str; 4] = ["invariant1", "invariant2", "gbox-invariant", "pair-process"];

/// How many violations a monitor keeps verbatim. Everything past the cap is
/// still counted (the `violations_total` metric) but not stored, so a badly
/// broken run cannot bloat reports that the engine polls every round.
const MAX_KEPT_VIOLATIONS: usize = 100;

/// Shared violation bookkeeping: a capped list plus an exact total.
#[derive(Default)]
struct ViolationLog {
    kept: Vec<Violation>,
    total: u64,
}

impl ViolationLog {
    fn reset(&mut self) {
        self.kept.clear();
        self.total = 0;
    }

    fn push(&mut self, round: u32, message: String) {
        self.total += 1;
        if self.kept.len() < MAX_KEPT_VIOLATIONS {
            self.kept.push(Violation { round, message });
        }
    }

    fn report(&self, monitor: &str, mut metrics: Vec<(String, f64)>) -> MonitorReport {
        metrics.push(("violations_total".to_string(), self.total as f64));
        MonitorReport {
            monitor: monitor.to_string(),
            violations: self.kept.clone(),
            metrics,
        }
    }
}
