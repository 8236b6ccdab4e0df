//! Greedy online filter that thins the Maker graph M into a subgraph M'
//! with girth and maximum degree under control.
//!
//! Edges are offered in the order Maker claimed them. An edge is kept
//! unless it would push an endpoint past the degree cap or close a cycle
//! shorter than the girth floor. Both postconditions hold by construction;
//! the point of the filter is that, against typical opponents, it also
//! keeps almost all of M (measured in the experiment suite).

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use super::{GraphError, SparseGraph};
use crate::board::Edge;

/// An optional bound: either a concrete value or "no bound".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cutoff {
    At(u32),
    Unbounded,
}

impl Cutoff {
    pub fn allows(&self, value: u32) -> bool {
        match self {
            Cutoff::At(c) => value < *c,
            Cutoff::Unbounded => true,
        }
    }
}

impl fmt::Display for Cutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cutoff::At(c) => write!(f, "{c}"),
            Cutoff::Unbounded => write!(f, "unbounded"),
        }
    }
}

impl FromStr for Cutoff {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "unbounded" | "inf" => Ok(Cutoff::Unbounded),
            t => t
                .parse::<u32>()
                .map(Cutoff::At)
                .map_err(|_| format!("expected an integer or \"unbounded\", got {s:?}")),
        }
    }
}

/// Default degree cap: ⌈ln n⌉.
pub fn default_degree_cap(n: u32) -> u32 {
    if n <= 1 {
        return 0;
    }
    let l = f64::from(n).ln();
    let mut c = l.ceil() as u32;
    while f64::from(c) < l {
        c += 1;
    }
    c
}

/// Filter an edge sequence on `n` vertices.
///
/// `min_cycle` is the girth floor: a kept edge never closes a cycle of
/// length < `min_cycle` (`Unbounded` keeps M' a forest). `degree_cap`
/// bounds vertex degrees in M'. A finite girth floor below 3 is rejected,
/// since no simple graph has a shorter cycle and the intent is ambiguous.
pub fn mprime_filter_edges(
    n: u32,
    edges: &[Edge],
    min_cycle: Cutoff,
    degree_cap: Cutoff,
) -> Result<SparseGraph, GraphError> {
    if let Cutoff::At(l) = min_cycle {
        if l < 3 {
            return Err(GraphError::InvalidConfig(format!(
                "girth floor must be at least 3, got {l}"
            )));
        }
    }
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n as usize];
    let mut parent: Vec<u32> = (0..n).collect();
    let mut size = vec![1u32; n as usize];
    let mut kept: Vec<Edge> = Vec::with_capacity(edges.len());

    fn find(parent: &mut [u32], mut v: u32) -> u32 {
        while parent[v as usize] != v {
            parent[v as usize] = parent[parent[v as usize] as usize];
            v = parent[v as usize];
        }
        v
    }

    for &e in edges {
        let (u, v) = (e.u(), e.v());
        if v >= n {
            return Err(GraphError::InvalidConfig(format!(
                "edge {e:?} out of range for n={n}"
            )));
        }
        if !degree_cap.allows(adj[u as usize].len() as u32)
            || !degree_cap.allows(adj[v as usize].len() as u32)
        {
            continue;
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            match min_cycle {
                Cutoff::Unbounded => continue,
                Cutoff::At(l) => {
                    // the shortest new cycle has length dist(u,v) + 1;
                    // reject iff dist(u,v) <= l - 2
                    if within_distance(&adj, u, v, l - 2) {
                        continue;
                    }
                }
            }
        }
        adj[u as usize].push(v);
        adj[v as usize].push(u);
        kept.push(e);
        if ru != rv {
            let (big, small) = if size[ru as usize] >= size[rv as usize] {
                (ru, rv)
            } else {
                (rv, ru)
            };
            parent[small as usize] = big;
            size[big as usize] += size[small as usize];
        }
    }
    Ok(SparseGraph::from_pairs(n, kept.iter().map(|e| (e.u(), e.v()))))
}

/// Is dist(u, v) <= limit in the graph given by `adj`? Depth-capped BFS.
fn within_distance(adj: &[Vec<u32>], u: u32, v: u32, limit: u32) -> bool {
    if u == v {
        return true;
    }
    if limit == 0 {
        return false;
    }
    let mut dist = vec![u32::MAX; adj.len()];
    dist[u as usize] = 0;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x as usize];
        if d == limit {
            continue;
        }
        for &w in &adj[x as usize] {
            if dist[w as usize] == u32::MAX {
                if w == v {
                    return true;
                }
                dist[w as usize] = d + 1;
                queue.push_back(w);
            }
        }
    }
    false
}

/// Filter the Maker edges of a finished game, in the order they were
/// claimed.
pub fn mprime_filter(
    transcript: &crate::engine::GameTranscript,
    min_cycle: Cutoff,
    degree_cap: Cutoff,
) -> Result<SparseGraph, GraphError> {
    mprime_filter_edges(transcript.n(), &transcript.maker_edges(), min_cycle, degree_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::paths::girth;
    use crate::rng::GameRng;
    use rand::seq::SliceRandom;
    use rand::Rng;
    use rand::SeedableRng;

    fn edges_of(pairs: &[(u32, u32)]) -> Vec<Edge> {
        pairs.iter().map(|&(u, v)| Edge::new(u, v)).collect()
    }

    #[test]
    fn degree_cap_default_values() {
        assert_eq!(default_degree_cap(2), 1);
        assert_eq!(default_degree_cap(3), 2);
        assert_eq!(default_degree_cap(8), 3); // ln 8 ≈ 2.08
        assert_eq!(default_degree_cap(3000), 9); // ln 3000 ≈ 8.006
        assert_eq!(default_degree_cap(5000), 9); // ln 5000 ≈ 8.517
    }

    #[test]
    fn cutoff_parsing() {
        assert_eq!("7".parse::<Cutoff>(), Ok(Cutoff::At(7)));
        assert_eq!("unbounded".parse::<Cutoff>(), Ok(Cutoff::Unbounded));
        assert!("-1".parse::<Cutoff>().is_err());
        assert_eq!(Cutoff::At(9).to_string(), "9");
        assert_eq!(Cutoff::Unbounded.to_string(), "unbounded");
    }

    #[test]
    fn floor_three_without_cap_keeps_everything() {
        let mut rng = GameRng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(4..40);
            let mut pairs = Vec::new();
            for v in 1..n {
                for u in 0..v {
                    if rng.gen_bool(0.3) {
                        pairs.push((u, v));
                    }
                }
            }
            pairs.shuffle(&mut rng);
            let m = mprime_filter_edges(n, &edges_of(&pairs), Cutoff::At(3), Cutoff::Unbounded)
                .unwrap();
            assert_eq!(m.edge_count(), pairs.len() as u64);
        }
    }

    #[test]
    fn unbounded_floor_gives_maximal_forest() {
        let mut rng = GameRng::seed_from_u64(12);
        let n = 30;
        let mut pairs = Vec::new();
        for v in 1..n {
            for u in 0..v {
                if rng.gen_bool(0.2) {
                    pairs.push((u, v));
                }
            }
        }
        pairs.shuffle(&mut rng);
        let m =
            mprime_filter_edges(n, &edges_of(&pairs), Cutoff::Unbounded, Cutoff::Unbounded)
                .unwrap();
        assert!(m.is_forest());
        // maximality: every input edge joins vertices already connected in M'
        let (comp, _) = m.component_ids();
        for &(u, v) in &pairs {
            assert_eq!(comp[u as usize], comp[v as usize]);
        }
        // and M' spans the same components as the input graph
        let full = SparseGraph::from_pairs(n, pairs.iter().copied());
        let (fc, fk) = full.component_ids();
        let (_, mk) = m.component_ids();
        assert_eq!(fk, mk);
        for &(u, v) in &pairs {
            assert_eq!(fc[u as usize], fc[v as usize]);
        }
    }

    #[test]
    fn girth_floor_and_cap_hold_by_construction() {
        let mut rng = GameRng::seed_from_u64(13);
        for _ in 0..15 {
            let n = rng.gen_range(6..30);
            let mut pairs = Vec::new();
            for v in 1..n {
                for u in 0..v {
                    if rng.gen_bool(0.4) {
                        pairs.push((u, v));
                    }
                }
            }
            pairs.shuffle(&mut rng);
            let l = rng.gen_range(3..8);
            let cap = rng.gen_range(2..6);
            let m = mprime_filter_edges(n, &edges_of(&pairs), Cutoff::At(l), Cutoff::At(cap))
                .unwrap();
            assert!(m.max_degree() <= cap);
            if let Some(g) = girth(&m) {
                assert!(g >= l, "girth {g} below floor {l}");
            }
            // the filtered graph is a subgraph of the input
            let full = SparseGraph::from_pairs(n, pairs.iter().copied());
            for (u, v) in m.edges() {
                assert!(full.has_edge(u, v));
            }
        }
    }

    #[test]
    fn square_closure_depends_on_floor() {
        let square = edges_of(&[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let keep4 =
            mprime_filter_edges(4, &square, Cutoff::At(4), Cutoff::Unbounded).unwrap();
        assert_eq!(keep4.edge_count(), 4);
        let drop5 =
            mprime_filter_edges(4, &square, Cutoff::At(5), Cutoff::Unbounded).unwrap();
        assert_eq!(drop5.edge_count(), 3);
        assert!(girth(&drop5).is_none());
    }

    #[test]
    fn rejects_meaningless_floor() {
        assert!(matches!(
            mprime_filter_edges(4, &[], Cutoff::At(2), Cutoff::Unbounded),
            Err(GraphError::InvalidConfig(_))
        ));
    }
}
