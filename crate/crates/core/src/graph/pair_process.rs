//! Incremental classifier of Maker's edges into a candidate matching C and
//! a collection D of vertex-disjoint two-edge paths.
//!
//! Fed Maker's edges in claim order, the state answers "does Maker own two
//! adjacent edges yet?" in O(1), and its bookkeeping never shrinks D — the
//! two facts the matching-threat monitors rely on.

use super::GraphError;
use crate::board::Edge;

const NONE: u32 = u32::MAX;

/// What a [`PairProcessState::step`] call did with the edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    /// Vertex-disjoint from everything tracked: joined the matching C.
    AddedToMatching,
    /// Met C but not D: promoted, together with one C-edge, into a new
    /// two-edge path in D (evicting every C-edge it touched).
    PromotedPath,
    /// Met D (or duplicated a C-edge): state unchanged.
    Unchanged,
}

/// The (C, D) edge-classification state.
///
/// Invariants, preserved by every `step` and checked by [`validate`]:
/// C is a matching; D decomposes into vertex-disjoint paths of two edges;
/// C and D share no vertex; |D| never decreases.
///
/// [`validate`]: PairProcessState::validate
#[derive(Clone, Debug)]
pub struct PairProcessState {
    n: u32,
    c: Vec<Edge>,
    d: Vec<Edge>,
    /// vertex -> index of the C-edge covering it, or NONE
    c_at: Vec<u32>,
    /// vertex covered by some D-edge
    in_d: Vec<bool>,
    steps: u64,
}

impl PairProcessState {
    pub fn new(n: u32) -> Self {
        PairProcessState {
            n,
            c: Vec::new(),
            d: Vec::new(),
            c_at: vec![NONE; n as usize],
            in_d: vec![false; n as usize],
            steps: 0,
        }
    }

    /// Rebuild a state from explicit C and D edge sets, validating every
    /// invariant. This is the entry point for foreign data (monitors
    /// resuming from a transcript); a state that fails is reported as
    /// corrupt rather than silently accepted.
    pub fn from_parts(n: u32, c: Vec<Edge>, d: Vec<Edge>) -> Result<Self, GraphError> {
        let mut s = PairProcessState {
            n,
            c,
            d,
            c_at: vec![NONE; n as usize],
            in_d: vec![false; n as usize],
            steps: 0,
        };
        for (i, e) in s.c.iter().enumerate() {
            for v in [e.u(), e.v()] {
                if v >= n {
                    return Err(GraphError::CorruptState(format!(
                        "C edge {e:?} out of range for n={n}"
                    )));
                }
                if s.c_at[v as usize] != NONE {
                    return Err(GraphError::CorruptState(format!(
                        "C is not a matching: vertex {v} covered twice"
                    )));
                }
                s.c_at[v as usize] = i as u32;
            }
        }
        for e in &s.d {
            for v in [e.u(), e.v()] {
                if v >= n {
                    return Err(GraphError::CorruptState(format!(
                        "D edge {e:?} out of range for n={n}"
                    )));
                }
                if s.c_at[v as usize] != NONE {
                    return Err(GraphError::CorruptState(format!(
                        "vertex {v} lies in both C and D"
                    )));
                }
                s.in_d[v as usize] = true;
            }
        }
        s.check_d_decomposition()?;
        Ok(s)
    }

    /// Feed the next Maker edge.
    ///
    /// Unknown vertices are a caller bug (panics); an edge equal to one
    /// already in C leaves the state unchanged.
    pub fn step(&mut self, e: Edge) -> StepOutcome {
        let (u, v) = (e.u(), e.v());
        assert!(v < self.n, "edge {e:?} out of range for n={}", self.n);
        self.steps += 1;
        if self.in_d[u as usize] || self.in_d[v as usize] {
            return StepOutcome::Unchanged;
        }
        let (cu, cv) = (self.c_at[u as usize], self.c_at[v as usize]);
        if cu == NONE && cv == NONE {
            let idx = self.c.len() as u32;
            self.c.push(e);
            self.c_at[u as usize] = idx;
            self.c_at[v as usize] = idx;
            return StepOutcome::AddedToMatching;
        }
        if cu == cv {
            // both endpoints covered by the same C-edge: e is that edge
            return StepOutcome::Unchanged;
        }
        // the companion edge comes from e's lower endpoint when both meet C
        let ej = self.c[if cu != NONE { cu } else { cv } as usize];
        let mut doomed: Vec<u32> = [cu, cv].into_iter().filter(|&i| i != NONE).collect();
        doomed.sort_unstable_by(|a, b| b.cmp(a)); // high index first for swap_remove
        for idx in doomed {
            let gone = self.c.swap_remove(idx as usize);
            self.c_at[gone.u() as usize] = NONE;
            self.c_at[gone.v() as usize] = NONE;
            if let Some(moved) = self.c.get(idx as usize) {
                self.c_at[moved.u() as usize] = idx;
                self.c_at[moved.v() as usize] = idx;
            }
        }
        for x in [ej.u(), ej.v(), u, v] {
            self.in_d[x as usize] = true;
        }
        self.d.push(ej);
        self.d.push(e);
        debug_assert_eq!(self.validate(), Ok(()));
        StepOutcome::PromotedPath
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn c_edges(&self) -> &[Edge] {
        &self.c
    }

    pub fn d_edges(&self) -> &[Edge] {
        &self.d
    }

    /// Number of edges in D (two per completed path).
    pub fn d_len(&self) -> usize {
        self.d.len()
    }

    /// Has the process witnessed a two-edge path of Maker edges?
    pub fn has_two_edge_path(&self) -> bool {
        self.d.len() >= 2
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Full invariant audit; `Ok` iff the state is internally consistent.
    pub fn validate(&self) -> Result<(), GraphError> {
        let mut c_cover = vec![NONE; self.n as usize];
        for (i, e) in self.c.iter().enumerate() {
            for v in [e.u(), e.v()] {
                if v >= self.n {
                    return Err(GraphError::CorruptState(format!("C edge {e:?} out of range")));
                }
                if c_cover[v as usize] != NONE {
                    return Err(GraphError::CorruptState(format!(
                        "C is not a matching at vertex {v}"
                    )));
                }
                c_cover[v as usize] = i as u32;
            }
        }
        if c_cover != self.c_at {
            return Err(GraphError::CorruptState("C index out of sync".into()));
        }
        let mut d_cover = vec![false; self.n as usize];
        for e in &self.d {
            for v in [e.u(), e.v()] {
                if v >= self.n {
                    return Err(GraphError::CorruptState(format!("D edge {e:?} out of range")));
                }
                if c_cover[v as usize] != NONE {
                    return Err(GraphError::CorruptState(format!(
                        "vertex {v} lies in both C and D"
                    )));
                }
                d_cover[v as usize] = true;
            }
        }
        if d_cover != self.in_d {
            return Err(GraphError::CorruptState("D vertex marks out of sync".into()));
        }
        self.check_d_decomposition()
    }

    /// Every connected component of the D-edge graph must be a path with
    /// exactly two edges.
    fn check_d_decomposition(&self) -> Result<(), GraphError> {
        use std::collections::HashMap;
        let mut deg: HashMap<u32, u32> = HashMap::new();
        let mut parent: HashMap<u32, u32> = HashMap::new();
        fn find(parent: &mut HashMap<u32, u32>, v: u32) -> u32 {
            let p = *parent.get(&v).unwrap_or(&v);
            if p == v {
                return v;
            }
            let r = find(parent, p);
            parent.insert(v, r);
            r
        }
        let mut comp_edges: HashMap<u32, u32> = HashMap::new();
        let mut seen = std::collections::HashSet::new();
        for e in &self.d {
            if !seen.insert((e.u(), e.v())) {
                return Err(GraphError::CorruptState(format!(
                    "duplicate edge {e:?} in D"
                )));
            }
            *deg.entry(e.u()).or_insert(0) += 1;
            *deg.entry(e.v()).or_insert(0) += 1;
            let (ru, rv) = (find(&mut parent, e.u()), find(&mut parent, e.v()));
            let eu = comp_edges.remove(&ru).unwrap_or(0);
            let ev = if ru == rv {
                0
            } else {
                comp_edges.remove(&rv).unwrap_or(0)
            };
            parent.insert(ru, rv);
            comp_edges.insert(find(&mut parent, rv), eu + ev + 1);
        }
        for (&v, &d) in &deg {
            if d > 2 {
                return Err(GraphError::CorruptState(format!(
                    "vertex {v} has degree {d} in D"
                )));
            }
        }
        for (v, d) in deg {
            let r = find(&mut parent, v);
            let edges = comp_edges.get(&r).copied().unwrap_or(0);
            if edges != 2 {
                return Err(GraphError::CorruptState(format!(
                    "D component of vertex {v} (degree {d}) has {edges} edges, expected 2"
                )));
            }
        }
        Ok(())
    }
}
