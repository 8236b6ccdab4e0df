//! The auxiliary box game: coin piles attacked by BoxMaker and defended by
//! BoxBreaker.
//!
//! k boxes hold a_1..a_k coins. Each round BoxMaker removes m coins spread
//! over the boxes however he likes; then BoxBreaker removes one box (the
//! classic variant) or pours the removed coins back into a single box (the
//! put-back variant). BoxMaker wins the moment a box is empty after his
//! move; BoxBreaker wins when no boxes remain, and in the put-back variant
//! merely survives.
//!
//! The criterion that the defense maintains is, for every non-empty subset
//! S of boxes,
//!
//!     Σ_{j∈S} a_j  >  |S| · h_{|S|} · m
//!
//! with h_i the i-th harmonic number — evaluated here on ascending sorted
//! prefixes, which realize the minimum sum for each subset size, in exact
//! rational arithmetic. Against it play two scripted attackers (drain the
//! smallest box; spread evenly), the fewest-coins defender, and a memoized
//! minimax oracle used to certify the criterion on small instances.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::numeric::{HarmonicTable, Rat, MAX_HARMONIC_INDEX};

/// Caps on the instance size under which every criterion comparison
/// provably fits in `i128` (see [`criterion_holds`]).
pub const MAX_BOXES: usize = MAX_HARMONIC_INDEX;
pub const MAX_COINS_PER_BOX: u64 = 100_000_000;
pub const MAX_BOX_BIAS: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoxGameError {
    #[error("no boxes left to act on")]
    GameOver,
    #[error("bad box-game instance: {0}")]
    InvalidInstance(String),
    #[error("illegal removal: {0}")]
    PolicyFault(String),
    #[error("oracle stopped after {explored} nodes (budget {budget})")]
    OracleTooLarge { explored: u64, budget: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxVariant {
    /// BoxBreaker removes a whole box each round.
    RemoveBox,
    /// BoxBreaker pours the removed coins back into a single box.
    PutBack,
}

/// One box-game position: coin counts, BoxMaker's per-round bias, variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxState {
    pub boxes: Vec<u64>,
    pub m: u64,
    pub variant: BoxVariant,
}

impl BoxState {
    pub fn new(boxes: Vec<u64>, m: u64, variant: BoxVariant) -> Result<Self, BoxGameError> {
        if boxes.is_empty() {
            return Err(BoxGameError::InvalidInstance("at least one box is required".into()));
        }
        if boxes.len() > MAX_BOXES {
            return Err(BoxGameError::InvalidInstance(format!(
                "{} boxes, but exact harmonic arithmetic is sized for at most {MAX_BOXES}",
                boxes.len()
            )));
        }
        if m == 0 {
            return Err(BoxGameError::InvalidInstance("bias m must be positive".into()));
        }
        if m > MAX_BOX_BIAS {
            return Err(BoxGameError::InvalidInstance(format!(
                "bias {m} exceeds the exact-arithmetic cap {MAX_BOX_BIAS}"
            )));
        }
        if let Some(&a) = boxes.iter().find(|&&a| a > MAX_COINS_PER_BOX) {
            return Err(BoxGameError::InvalidInstance(format!(
                "box with {a} coins exceeds the exact-arithmetic cap {MAX_COINS_PER_BOX}"
            )));
        }
        Ok(BoxState { boxes, m, variant })
    }

    pub fn total(&self) -> u64 {
        self.boxes.iter().sum()
    }
}

/// Whether the defense criterion holds: every non-empty subset S of boxes
/// keeps more than |S|·h_{|S|}·m coins. Only the ascending prefixes of the
/// sorted counts are tested — the s smallest boxes minimize every size-s
/// sum — and the comparison is exact rational against integers, never
/// floating point. The [`BoxState::new`] caps guarantee no overflow.
pub fn criterion_holds(state: &BoxState) -> bool {
    let mut sorted = state.boxes.clone();
    sorted.sort_unstable();
    let table = HarmonicTable::new(sorted.len());
    let m = Rat::from_integer(i128::from(state.m));
    let mut prefix: u64 = 0;
    sorted.iter().enumerate().all(|(idx, &a)| {
        prefix += a;
        let s = idx + 1;
        let bound = table.h(s) * Rat::from_integer(s as i128) * m;
        Rat::from_integer(i128::from(prefix)) > bound
    })
}

/// The index BoxBreaker acts on: a box with the fewest coins, ties to the
/// lowest index. In the remove variant that box is taken away; in the
/// put-back variant it receives the returned coins.
pub fn fewest_coins_boxbreaker(state: &BoxState) -> Result<usize, BoxGameError> {
    fewest_coins_index(&state.boxes)
}

fn fewest_coins_index(boxes: &[u64]) -> Result<usize, BoxGameError> {
    boxes
        .iter()
        .enumerate()
        .min_by_key(|&(i, &a)| (a, i))
        .map(|(i, _)| i)
        .ok_or(BoxGameError::GameOver)
}

/// Scripted BoxMaker attacks, plus the exact oracle as a live policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxMakerPolicy {
    /// Drain the fullest attack on the smallest boxes: empty them in
    /// ascending count order until the budget runs out.
    GreedyMin,
    /// Distribute the budget as evenly as the counts allow.
    SpreadEven,
    /// Play the removal a memoized minimax search rates best against the
    /// fewest-coins defense, falling back to greedy when no win is forced.
    Oracle { node_budget: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoxOutcome {
    /// A box was empty after BoxMaker's removal in this round.
    BoxMakerWins(u32),
    /// The last box was removed without BoxMaker ever emptying one.
    BoxBreakerWins,
    /// Put-back only: the round limit passed without a BoxMaker win.
    SurvivedLimit,
}

/// What BoxBreaker did with his turn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BreakerTraceAction {
    RemovedBox { index: usize, coins: u64 },
    Refilled { index: usize, coins: u64 },
}

/// One full round for replay or printing. Indices refer to the box list as
/// it stood at the start of the round; `boxes_after` is the position after
/// both moves (with the removed box, if any, already gone).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxRoundTrace {
    pub round: u32,
    /// (index, coins taken) pairs, only boxes BoxMaker actually touched.
    pub removal: Vec<(usize, u64)>,
    /// None when the game ended on BoxMaker's half of the round.
    pub breaker: Option<BreakerTraceAction>,
    pub boxes_after: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxGameTrace {
    pub rounds: Vec<BoxRoundTrace>,
    pub outcome: BoxOutcome,
}

/// Plays one game with a shipped policy. The round limit bounds the
/// put-back variant, which has no natural end; the remove variant always
/// finishes on its own within k rounds and ignores the limit.
pub fn play_box_game(
    state: &BoxState,
    maker: BoxMakerPolicy,
    rounds_limit: u32,
) -> Result<BoxGameTrace, BoxGameError> {
    let mut oracle = match maker {
        BoxMakerPolicy::Oracle { node_budget } => Some(Oracle::new(
            state.m,
            state.variant,
            BreakerMode::FewestCoins,
            node_budget,
        )),
        _ => None,
    };
    let mut policy = move |boxes: &[u64], m: u64, rounds_left: u32| match maker {
        BoxMakerPolicy::GreedyMin => Ok(greedy_min_removal(boxes, m)),
        BoxMakerPolicy::SpreadEven => Ok(spread_even_removal(boxes, m)),
        BoxMakerPolicy::Oracle { .. } => {
            oracle.as_mut().expect("oracle policy built above").best_removal(boxes, rounds_left)
        }
    };
    play_box_game_with(state, &mut policy, rounds_limit)
}

/// As [`play_box_game`], but with a caller-supplied removal policy. The
/// policy receives the current counts, the bias and the rounds still to
/// play, and must return (index, coins) takes summing to min(m, total);
/// anything else is a [`BoxGameError::PolicyFault`].
pub fn play_box_game_with(
    state: &BoxState,
    maker: &mut dyn FnMut(&[u64], u64, u32) -> Result<Vec<(usize, u64)>, BoxGameError>,
    rounds_limit: u32,
) -> Result<BoxGameTrace, BoxGameError> {
    let mut boxes = state.boxes.clone();
    let mut rounds = Vec::new();
    let mut round: u32 = 0;
    loop {
        if state.variant == BoxVariant::PutBack && round >= rounds_limit {
            return Ok(BoxGameTrace { rounds, outcome: BoxOutcome::SurvivedLimit });
        }
        round += 1;
        let rounds_left = match state.variant {
            BoxVariant::PutBack => rounds_limit - (round - 1),
            BoxVariant::RemoveBox => u32::MAX,
        };
        let removal = maker(&boxes, state.m, rounds_left)?;
        let removed_total = apply_removal(&mut boxes, state.m, &removal)?;

        if boxes.contains(&0) {
            rounds.push(BoxRoundTrace {
                round,
                removal,
                breaker: None,
                boxes_after: boxes.clone(),
            });
            return Ok(BoxGameTrace { rounds, outcome: BoxOutcome::BoxMakerWins(round) });
        }

        let target = fewest_coins_index(&boxes)?;
        let breaker = match state.variant {
            BoxVariant::RemoveBox => {
                let coins = boxes.remove(target);
                BreakerTraceAction::RemovedBox { index: target, coins }
            }
            BoxVariant::PutBack => {
                boxes[target] += removed_total;
                BreakerTraceAction::Refilled { index: target, coins: removed_total }
            }
        };
        rounds.push(BoxRoundTrace {
            round,
            removal,
            breaker: Some(breaker),
            boxes_after: boxes.clone(),
        });
        if boxes.is_empty() {
            return Ok(BoxGameTrace { rounds, outcome: BoxOutcome::BoxBreakerWins });
        }
    }
}

/// Validates and applies a removal in place, returning the total taken.
fn apply_removal(
    boxes: &mut [u64],
    m: u64,
    removal: &[(usize, u64)],
) -> Result<u64, BoxGameError> {
    let total: u64 = boxes.iter().sum();
    let owed = m.min(total);
    let mut taken: u64 = 0;
    let mut seen = vec![false; boxes.len()];
    for &(i, coins) in removal {
        if i >= boxes.len() {
            return Err(BoxGameError::PolicyFault(format!("box {i} does not exist")));
        }
        if seen[i] {
            return Err(BoxGameError::PolicyFault(format!("box {i} listed twice")));
        }
        seen[i] = true;
        if coins > boxes[i] {
            return Err(BoxGameError::PolicyFault(format!(
                "cannot take {coins} coins from box {i} holding {}",
                boxes[i]
            )));
        }
        boxes[i] -= coins;
        taken += coins;
    }
    if taken != owed {
        return Err(BoxGameError::PolicyFault(format!(
            "removed {taken} coins, owed exactly {owed}"
        )));
    }
    Ok(taken)
}

/// Empty the smallest boxes first (count ascending, index ascending) until
/// the budget is gone.
fn greedy_min_removal(boxes: &[u64], m: u64) -> Vec<(usize, u64)> {
    let mut order: Vec<usize> = (0..boxes.len()).collect();
    order.sort_unstable_by_key(|&i| (boxes[i], i));
    let mut left = m.min(boxes.iter().sum());
    let mut out = Vec::new();
    for i in order {
        if left == 0 {
            break;
        }
        let take = boxes[i].min(left);
        if take > 0 {
            out.push((i, take));
            left -= take;
        }
    }
    out.sort_unstable_by_key(|&(i, _)| i);
    out
}

/// Take from every non-empty box in balanced passes; when less than one
/// coin per box remains, the leftovers go to the lowest indices.
fn spread_even_removal(boxes: &[u64], m: u64) -> Vec<(usize, u64)> {
    let mut counts = boxes.to_vec();
    let mut taken = vec![0u64; boxes.len()];
    let mut left = m.min(counts.iter().sum());
    while left > 0 {
        let alive: Vec<usize> = (0..counts.len()).filter(|&i| counts[i] > 0).collect();
        let share = left / alive.len() as u64;
        if share == 0 {
            for &i in alive.iter().take(left as usize) {
                counts[i] -= 1;
                taken[i] += 1;
            }
            break;
        }
        for &i in &alive {
            let take = counts[i].min(share);
            counts[i] -= take;
            taken[i] += take;
            left -= take;
        }
    }
    (0..boxes.len()).filter(|&i| taken[i] > 0).map(|i| (i, taken[i])).collect()
}

/// Who BoxBreaker is inside the oracle search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BreakerMode {
    /// Minimax on both sides.
    Optimal,
    /// BoxMaker optimizes against the fixed fewest-coins defense.
    FewestCoins,
}

/// Exact value of the position under exhaustive BoxMaker play, memoized on
/// the sorted coin multiset. The round limit matters only in the put-back
/// variant; the remove variant self-terminates. Search work is metered and
/// aborts with [`BoxGameError::OracleTooLarge`] beyond `node_budget`.
pub fn brute_force_boxmaker(
    state: &BoxState,
    breaker: BreakerMode,
    rounds_limit: u32,
    node_budget: u64,
) -> Result<BoxOutcome, BoxGameError> {
    let mut oracle = Oracle::new(state.m, state.variant, breaker, node_budget);
    let mut sorted = state.boxes.clone();
    sorted.sort_unstable();
    let value = oracle.value(sorted, rounds_limit)?;
    Ok(match (value, state.variant) {
        (Some(r), _) => BoxOutcome::BoxMakerWins(r),
        (None, BoxVariant::RemoveBox) => BoxOutcome::BoxBreakerWins,
        (None, BoxVariant::PutBack) => BoxOutcome::SurvivedLimit,
    })
}

struct Oracle {
    m: u64,
    variant: BoxVariant,
    breaker: BreakerMode,
    /// (sorted counts, rounds left) → rounds BoxMaker needs from here,
    /// None when he can never force a win.
    memo: HashMap<(Vec<u64>, u32), Option<u32>>,
    nodes: u64,
    budget: u64,
}

impl Oracle {
    fn new(m: u64, variant: BoxVariant, breaker: BreakerMode, budget: u64) -> Self {
        Oracle { m, variant, breaker, memo: HashMap::new(), nodes: 0, budget }
    }

    fn spend(&mut self) -> Result<(), BoxGameError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(BoxGameError::OracleTooLarge { explored: self.nodes, budget: self.budget })
        } else {
            Ok(())
        }
    }

    /// Rounds until a forced BoxMaker win from this position, if any.
    /// `boxes` must be sorted ascending.
    fn value(&mut self, boxes: Vec<u64>, rounds_left: u32) -> Result<Option<u32>, BoxGameError> {
        if boxes.is_empty() || rounds_left == 0 {
            return Ok(None);
        }
        // the cheapest win is always to pour the budget into the smallest
        // box, so an immediate win needs no search at all
        if boxes[0] <= self.m {
            return Ok(Some(1));
        }
        let depth_key = match self.variant {
            // the remove variant lasts at most one round per box
            BoxVariant::RemoveBox => rounds_left.min(boxes.len() as u32),
            BoxVariant::PutBack => rounds_left,
        };
        let key = (boxes, depth_key);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        self.spend()?;
        let boxes = key.0.clone();

        // Every box now holds more than m coins, so every way of splitting
        // m over the boxes is legal and none of them wins outright.
        let mut afters = BTreeSet::new();
        let mut parts = Vec::with_capacity(boxes.len());
        self.enumerate_removals(&boxes, self.m, &mut parts, &mut afters)?;

        let mut best: Option<u32> = None;
        for after in afters {
            let reply = self.breaker_reply(&after, rounds_left)?;
            if let Some(v) = reply {
                let from_here = v + 1;
                if best.map_or(true, |b| from_here < b) {
                    best = Some(from_here);
                }
            }
        }
        self.memo.insert(key, best);
        Ok(best)
    }

    /// All positions reachable by one full removal, deduplicated as sorted
    /// multisets. Metered against the node budget like search nodes.
    fn enumerate_removals(
        &mut self,
        boxes: &[u64],
        left: u64,
        parts: &mut Vec<u64>,
        out: &mut BTreeSet<Vec<u64>>,
    ) -> Result<(), BoxGameError> {
        self.spend()?;
        if parts.len() == boxes.len() - 1 {
            let mut after: Vec<u64> =
                boxes.iter().zip(parts.iter().chain([&left])).map(|(&a, &r)| a - r).collect();
            after.sort_unstable();
            out.insert(after);
            return Ok(());
        }
        for x in 0..=left {
            parts.push(x);
            self.enumerate_removals(boxes, left - x, parts, out)?;
            parts.pop();
        }
        Ok(())
    }

    /// Value after BoxBreaker's reply to the position `after`, which is
    /// sorted and holds no empty box.
    fn breaker_reply(&mut self, after: &[u64], rounds_left: u32) -> Result<Option<u32>, BoxGameError> {
        let removed_total = self.m; // no empty box, so the full bias was owed
        match self.breaker {
            BreakerMode::FewestCoins => {
                let next = self.apply_breaker(after, 0, removed_total);
                self.value(next, rounds_left - 1)
            }
            BreakerMode::Optimal => {
                // equal counts lead to identical positions; try one of each
                let mut best: Option<u32> = None;
                let mut acted_on = None;
                for i in 0..after.len() {
                    if acted_on == Some(after[i]) {
                        continue;
                    }
                    acted_on = Some(after[i]);
                    let next = self.apply_breaker(after, i, removed_total);
                    match self.value(next, rounds_left - 1)? {
                        None => return Ok(None),
                        Some(v) => {
                            if best.map_or(true, |b| v > b) {
                                best = Some(v);
                            }
                        }
                    }
                }
                Ok(best)
            }
        }
    }

    fn apply_breaker(&self, after: &[u64], index: usize, removed_total: u64) -> Vec<u64> {
        let mut next = after.to_vec();
        match self.variant {
            BoxVariant::RemoveBox => {
                next.remove(index);
            }
            BoxVariant::PutBack => {
                next[index] += removed_total;
                next.sort_unstable();
            }
        }
        next
    }

    /// The removal the search rates best from an unsorted live position,
    /// for use as a playing policy. Falls back to draining the smallest
    /// boxes when no win can be forced.
    fn best_removal(
        &mut self,
        boxes: &[u64],
        rounds_left: u32,
    ) -> Result<Vec<(usize, u64)>, BoxGameError> {
        let total: u64 = boxes.iter().sum();
        if boxes.iter().min().is_none_or(|&a| a <= self.m) || total <= self.m {
            // winning this round: greedy empties the smallest box
            return Ok(greedy_min_removal(boxes, self.m));
        }
        let mut best: Option<(u32, Vec<u64>)> = None;
        let mut parts = vec![0u64; boxes.len()];
        self.pick_removal(boxes, self.m, 0, &mut parts, rounds_left, &mut best)?;
        Ok(match best {
            Some((_, parts)) => (0..boxes.len())
                .filter(|&i| parts[i] > 0)
                .map(|i| (i, parts[i]))
                .collect(),
            None => greedy_min_removal(boxes, self.m),
        })
    }

    fn pick_removal(
        &mut self,
        boxes: &[u64],
        left: u64,
        i: usize,
        parts: &mut Vec<u64>,
        rounds_left: u32,
        best: &mut Option<(u32, Vec<u64>)>,
    ) -> Result<(), BoxGameError> {
        self.spend()?;
        if i == boxes.len() - 1 {
            parts[i] = left;
            let mut after: Vec<u64> = boxes.iter().zip(parts.iter()).map(|(&a, &r)| a - r).collect();
            after.sort_unstable();
            if let Some(v) = self.breaker_reply(&after, rounds_left)? {
                if best.as_ref().map_or(true, |(b, _)| v + 1 < *b) {
                    *best = Some((v + 1, parts.clone()));
                }
            }
            parts[i] = 0;
            return Ok(());
        }
        for x in 0..=left {
            parts[i] = x;
            self.pick_removal(boxes, left - x, i + 1, parts, rounds_left, best)?;
        }
        parts[i] = 0;
        Ok(())
    }
}
