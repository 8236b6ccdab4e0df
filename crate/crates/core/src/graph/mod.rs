//! Graph structures and the structural detectors the simulation asks about:
//! minors, topological minors, bounded-length paths, matchings, girth,
//! average degree, the 2-density of a pattern, the girth/degree edge filter,
//! and the matching-pair process used to watch for paths of length two.

mod density;
mod matching;
mod minor;
mod mprime;
mod pair_process;
mod paths;

pub use density::m2_density;
pub use matching::{matching_at_least, max_matching};
pub use minor::{has_minor, has_topological_minor, validate_embedding, MinorEmbedding};
pub use mprime::{default_degree_cap, mprime_filter, mprime_filter_edges, Cutoff};
pub use pair_process::PairProcessState;
pub use paths::{average_degree, find_path_with_edges, girth, longest_path_at_least};

use crate::board::Edge;
use std::fmt;
use thiserror::Error;

/// Vertex cap for general (not path- or matching-shaped) minor patterns.
pub const MAX_MINOR_PATTERN: u32 = 10;
/// Vertex cap for general subdivision patterns with Δ ≥ 4.
pub const MAX_SUBDIVISION_PATTERN: u32 = 8;
/// Edge cap for exact longest-path queries.
pub const MAX_PATH_EDGES: u32 = 12;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("pattern needs {got} {unit}; this detector supports at most {max}")]
    PatternTooLarge {
        got: u32,
        max: u32,
        unit: &'static str,
    },
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("2-density undefined: {0}")]
    Undefined(String),
    #[error("corrupt pair-process state: {0}")]
    CorruptState(String),
}

/// Adjacency-list graph on vertices `0..n`. Hosts Maker's graph and every
/// graph handed to the detectors. No loops, no parallel edges.
#[derive(Clone, Debug)]
pub struct SparseGraph {
    n: u32,
    adj: Vec<Vec<u32>>,
    m: u64,
}

impl SparseGraph {
    pub fn empty(n: u32) -> Self {
        SparseGraph {
            n,
            adj: vec![Vec::new(); n as usize],
            m: 0,
        }
    }

    pub fn from_pairs(n: u32, pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut g = SparseGraph::empty(n);
        for (u, v) in pairs {
            g.push_edge(u, v);
        }
        g
    }

    pub fn from_edges(n: u32, edges: &[Edge]) -> Self {
        Self::from_pairs(n, edges.iter().map(|e| (e.u(), e.v())))
    }

    /// Append one edge. The caller is responsible for not introducing loops
    /// or duplicates (the board guarantees this for Maker's graph).
    pub fn push_edge(&mut self, u: u32, v: u32) {
        debug_assert!(u != v && u < self.n && v < self.n);
        debug_assert!(!self.has_edge(u, v));
        self.adj[u as usize].push(v);
        self.adj[v as usize].push(u);
        self.m += 1;
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> u64 {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: u32) -> u32 {
        self.adj[v as usize].len() as u32
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn max_degree(&self) -> u32 {
        self.adj.iter().map(|a| a.len() as u32).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a as usize].contains(&b)
    }

    /// Each edge once, as (u, v) with u < v, in adjacency order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .filter(move |&&w| u < w as usize)
                .map(move |&w| (u as u32, w))
        })
    }

    /// Component id per vertex plus the component count.
    pub fn component_ids(&self) -> (Vec<u32>, u32) {
        let mut id = vec![u32::MAX; self.n as usize];
        let mut next = 0u32;
        let mut queue = Vec::new();
        for s in 0..self.n {
            if id[s as usize] != u32::MAX {
                continue;
            }
            id[s as usize] = next;
            queue.push(s);
            while let Some(v) = queue.pop() {
                for &w in self.neighbors(v) {
                    if id[w as usize] == u32::MAX {
                        id[w as usize] = next;
                        queue.push(w);
                    }
                }
            }
            next += 1;
        }
        (id, next)
    }

    pub fn is_forest(&self) -> bool {
        let (_, comps) = self.component_ids();
        self.m == self.n as u64 - comps as u64
    }

    /// Restrict to non-isolated vertices, renumbered compactly. Returns the
    /// compact graph and the original id of each compact vertex.
    pub fn compact_support(&self) -> (SparseGraph, Vec<u32>) {
        let mut back = Vec::new();
        let mut fwd = vec![u32::MAX; self.n as usize];
        for v in 0..self.n {
            if self.degree(v) > 0 {
                fwd[v as usize] = back.len() as u32;
                back.push(v);
            }
        }
        let mut g = SparseGraph::empty(back.len() as u32);
        for (u, v) in self.edges() {
            g.push_edge(fwd[u as usize], fwd[v as usize]);
        }
        (g, back)
    }
}

/// How a pattern decomposes, for detector routing: matchings and single
/// paths have exact closed-form tests that scale far beyond the general
/// branch-set search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternShape {
    /// Every component has at most one edge.
    Matching { pairs: Vec<(u32, u32)> },
    /// Exactly one component with ≥ 2 vertices, and it is a path; `seq` is
    /// its vertex sequence. Remaining vertices are isolated.
    SinglePath { seq: Vec<u32> },
    General,
}

/// The target graph H of a game, with the structural facts the theory of
/// the game classes cares about precomputed.
#[derive(Clone, Debug)]
pub struct PatternGraph {
    name: String,
    k: u32,
    edges: Vec<(u32, u32)>,
    tau: u32,
    class: u8,
    max_degree: u32,
    is_forest: bool,
    shape: PatternShape,
}

impl PartialEq for PatternGraph {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.edges == other.edges
    }
}
impl Eq for PatternGraph {}

impl PatternGraph {
    pub fn from_edges(
        name: impl Into<String>,
        k: u32,
        raw_edges: &[(u32, u32)],
    ) -> Result<Self, GraphError> {
        let name = name.into();
        if k == 0 {
            return Err(GraphError::InvalidPattern(format!(
                "pattern `{name}` has no vertices"
            )));
        }
        let mut edges: Vec<(u32, u32)> = Vec::with_capacity(raw_edges.len());
        for &(a, b) in raw_edges {
            if a == b {
                return Err(GraphError::InvalidPattern(format!(
                    "pattern `{name}` has a loop at {a}"
                )));
            }
            if a >= k || b >= k {
                return Err(GraphError::InvalidPattern(format!(
                    "pattern `{name}` edge ({a},{b}) exceeds vertex count {k}"
                )));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        edges.dedup();

        let g = SparseGraph::from_pairs(k, edges.iter().copied());
        let (comp_id, comp_count) = g.component_ids();
        let mut comp_edges = vec![0u32; comp_count as usize];
        for &(u, _) in &edges {
            comp_edges[comp_id[u as usize] as usize] += 1;
        }
        let tau = comp_edges.iter().copied().max().unwrap_or(0);
        let is_forest = g.is_forest();
        let class = if !is_forest {
            4
        } else if tau <= 1 {
            1
        } else if tau == 2 {
            2
        } else {
            3
        };
        let shape = Self::classify_shape(&g, tau);
        Ok(PatternGraph {
            name,
            k,
            edges,
            tau,
            class,
            max_degree: g.max_degree(),
            is_forest,
            shape,
        })
    }

    fn classify_shape(g: &SparseGraph, tau: u32) -> PatternShape {
        if tau <= 1 {
            let pairs = g.edges().collect();
            return PatternShape::Matching { pairs };
        }
        // single path + isolated vertices: all degrees ≤ 2, exactly two
        // degree-1 vertices, acyclic, and one non-trivial component
        let mut nontrivial = 0u32;
        let (comp_id, comp_count) = g.component_ids();
        let mut comp_has_edge = vec![false; comp_count as usize];
        for (u, _) in g.edges() {
            comp_has_edge[comp_id[u as usize] as usize] = true;
        }
        for &h in &comp_has_edge {
            if h {
                nontrivial += 1;
            }
        }
        let degrees_ok = (0..g.n()).all(|v| g.degree(v) <= 2);
        let ends: Vec<u32> = (0..g.n()).filter(|&v| g.degree(v) == 1).collect();
        if nontrivial == 1 && degrees_ok && ends.len() == 2 && g.is_forest() {
            // walk the path from one end
            let mut seq = vec![ends[0]];
            let mut prev = u32::MAX;
            let mut cur = ends[0];
            loop {
                let next = g.neighbors(cur).iter().copied().find(|&w| w != prev);
                match next {
                    Some(w) => {
                        seq.push(w);
                        prev = cur;
                        cur = w;
                    }
                    None => break,
                }
            }
            return PatternShape::SinglePath { seq };
        }
        PatternShape::General
    }

    /// Resolve a built-in pattern name: `P<k>` (path on k vertices), `K<k>`,
    /// `K1,<k>` (star with k leaves), `M<k>` (matching of k edges),
    /// `triangle`, `spider:<a>,<b>,<c>` (three legs, lengths in edges).
    pub fn resolve(s: &str) -> Result<Self, GraphError> {
        let bad = || GraphError::InvalidPattern(format!("unknown pattern `{s}`"));
        if s == "triangle" {
            return Self::from_edges(s, 3, &[(0, 1), (1, 2), (0, 2)]);
        }
        if let Some(rest) = s.strip_prefix("spider:") {
            let legs: Vec<u32> = rest
                .split(',')
                .map(|p| p.trim().parse::<u32>())
                .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
            if legs.len() != 3 || legs.iter().any(|&l| l == 0) {
                return Err(GraphError::InvalidPattern(format!(
                    "spider `{s}` needs three positive leg lengths"
                )));
            }
            let mut edges = Vec::new();
            let mut next = 1u32;
            for &len in &legs {
                let mut prev = 0u32;
                for _ in 0..len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            return Self::from_edges(s, next, &edges);
        }
        if let Some(rest) = s.strip_prefix("K1,") {
            let leaves: u32 = rest.parse().map_err(|_| bad())?;
            if leaves == 0 {
                return Err(bad());
            }
            let edges: Vec<(u32, u32)> = (1..=leaves).map(|i| (0, i)).collect();
            return Self::from_edges(s, leaves + 1, &edges);
        }
        if let Some(rest) = s.strip_prefix('P') {
            let k: u32 = rest.parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(bad());
            }
            let edges: Vec<(u32, u32)> = (1..k).map(|i| (i - 1, i)).collect();
            return Self::from_edges(s, k, &edges);
        }
        if let Some(rest) = s.strip_prefix('K') {
            let k: u32 = rest.parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(bad());
            }
            let mut edges = Vec::new();
            for v in 1..k {
                for u in 0..v {
                    edges.push((u, v));
                }
            }
            return Self::from_edges(s, k, &edges);
        }
        if let Some(rest) = s.strip_prefix('M') {
            let k: u32 = rest.parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(bad());
            }
            let edges: Vec<(u32, u32)> = (0..k).map(|i| (2 * i, 2 * i + 1)).collect();
            return Self::from_edges(s, 2 * k, &edges);
        }
        Err(bad())
    }

    /// Parse the pattern text format: first line `<k> <m>`, then m lines
    /// `<u> <v>`.
    pub fn parse_text(name: impl Into<String>, text: &str) -> Result<Self, GraphError> {
        let name = name.into();
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| GraphError::InvalidPattern(format!("pattern `{name}`: empty input")))?;
        let mut parts = header.split_whitespace();
        let parse_int = |tok: Option<&str>, what: &str| -> Result<u32, GraphError> {
            tok.and_then(|t| t.parse().ok()).ok_or_else(|| {
                GraphError::InvalidPattern(format!("pattern `{name}`: bad {what} in header"))
            })
        };
        let k = parse_int(parts.next(), "vertex count")?;
        let m = parse_int(parts.next(), "edge count")?;
        let mut edges = Vec::with_capacity(m as usize);
        for _ in 0..m {
            let line = lines.next().ok_or_else(|| {
                GraphError::InvalidPattern(format!("pattern `{name}`: fewer than {m} edge lines"))
            })?;
            let mut ps = line.split_whitespace();
            let u = parse_int(ps.next(), "edge endpoint")?;
            let v = parse_int(ps.next(), "edge endpoint")?;
            edges.push((u, v));
        }
        Self::from_edges(name, k, &edges)
    }

    #[inline]
    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn vertex_count(&self) -> u32 {
        self.k
    }

    pub fn edge_count(&self) -> u32 {
        self.edges.len() as u32
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Maximum number of edges in a single component.
    pub fn tau(&self) -> u32 {
        self.tau
    }

    /// Game class 1–4: 1 ⇔ τ ≤ 1; 2 ⇔ τ = 2; 3 ⇔ forest with τ ≥ 3;
    /// 4 ⇔ contains a cycle.
    pub fn class(&self) -> u8 {
        self.class
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn is_forest(&self) -> bool {
        self.is_forest
    }

    pub fn shape(&self) -> &PatternShape {
        &self.shape
    }

    pub fn to_sparse(&self) -> SparseGraph {
        SparseGraph::from_pairs(self.k, self.edges.iter().copied())
    }

    pub fn isolated_count(&self) -> u32 {
        let g = self.to_sparse();
        (0..self.k).filter(|&v| g.degree(v) == 0).count() as u32
    }

    /// Whether the minor detector accepts this pattern: matchings at any
    /// size, single paths up to the path-query cap, anything else up to
    /// MAX_MINOR_PATTERN vertices.
    pub fn check_minor_searchable(&self) -> Result<(), GraphError> {
        match &self.shape {
            PatternShape::Matching { .. } => Ok(()),
            PatternShape::SinglePath { seq } => {
                let path_edges = (seq.len() - 1) as u32;
                if path_edges > MAX_PATH_EDGES {
                    Err(GraphError::PatternTooLarge {
                        got: path_edges,
                        max: MAX_PATH_EDGES,
                        unit: "path edges",
                    })
                } else {
                    Ok(())
                }
            }
            PatternShape::General => {
                if self.k > MAX_MINOR_PATTERN {
                    Err(GraphError::PatternTooLarge {
                        got: self.k,
                        max: MAX_MINOR_PATTERN,
                        unit: "vertices",
                    })
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Whether the subdivision detector accepts this pattern: Δ ≤ 3 follows
    /// the minor rules (the two notions coincide there); otherwise the
    /// branch-vertex search caps at MAX_SUBDIVISION_PATTERN vertices.
    pub fn check_subdivision_searchable(&self) -> Result<(), GraphError> {
        if self.max_degree <= 3 {
            self.check_minor_searchable()
        } else if self.k > MAX_SUBDIVISION_PATTERN {
            Err(GraphError::PatternTooLarge {
                got: self.k,
                max: MAX_SUBDIVISION_PATTERN,
                unit: "vertices",
            })
        } else {
            Ok(())
        }
    }

    /// An ordering v_1..v_k in which every vertex has at most one earlier
    /// neighbor, together with that neighbor's order position (the parent).
    /// Exists exactly for forests. Built by repeatedly peeling the
    /// lowest-indexed vertex of degree ≤ 1.
    pub fn one_degenerate_order(&self) -> Option<(Vec<u32>, Vec<Option<u32>>)> {
        if !self.is_forest {
            return None;
        }
        let g = self.to_sparse();
        let mut deg: Vec<u32> = (0..self.k).map(|v| g.degree(v)).collect();
        let mut removed = vec![false; self.k as usize];
        let mut peel = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            let v = (0..self.k)
                .find(|&v| !removed[v as usize] && deg[v as usize] <= 1)
                .expect("forest always has a vertex of degree <= 1");
            removed[v as usize] = true;
            peel.push(v);
            for &w in g.neighbors(v) {
                if !removed[w as usize] {
                    deg[w as usize] -= 1;
                }
            }
        }
        peel.reverse();
        let pos: Vec<u32> = {
            let mut p = vec![0u32; self.k as usize];
            for (i, &v) in peel.iter().enumerate() {
                p[v as usize] = i as u32;
            }
            p
        };
        let parents: Vec<Option<u32>> = peel
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .iter()
                    .copied()
                    .map(|w| pos[w as usize])
                    .filter(|&pw| pw < pos[v as usize])
                    .min()
            })
            .collect();
        Some((peel, parents))
    }
}

impl fmt::Display for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_graph_basics() {
        let g = SparseGraph::from_pairs(5, [(0, 1), (1, 2), (3, 4)]);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree(1), 2);
        assert!(g.has_edge(2, 1));
        assert!(!g.has_edge(0, 2));
        let (ids, count) = g.component_ids();
        assert_eq!(count, 2);
        assert_eq!(ids[0], ids[2]);
        assert_ne!(ids[0], ids[3]);
        assert!(g.is_forest());
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges.len(), 3);
    }

    #[test]
    fn compact_support_drops_isolated() {
        let g = SparseGraph::from_pairs(10, [(2, 7), (7, 9)]);
        let (c, back) = g.compact_support();
        assert_eq!(c.n(), 3);
        assert_eq!(c.edge_count(), 2);
        assert_eq!(back, vec![2, 7, 9]);
    }

    #[test]
    fn builtin_patterns() {
        let p4 = PatternGraph::resolve("P4").unwrap();
        assert_eq!(p4.vertex_count(), 4);
        assert_eq!(p4.edge_count(), 3);
        assert_eq!(p4.tau(), 3);
        assert_eq!(p4.class(), 3);
        assert!(p4.is_forest());
        assert!(matches!(p4.shape(), PatternShape::SinglePath { seq } if seq.len() == 4));

        let k4 = PatternGraph::resolve("K4").unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.class(), 4);
        assert_eq!(k4.max_degree(), 3);

        let star = PatternGraph::resolve("K1,3").unwrap();
        assert_eq!(star.vertex_count(), 4);
        assert_eq!(star.tau(), 3);
        assert_eq!(star.class(), 3);
        assert_eq!(star.max_degree(), 3);

        let m3 = PatternGraph::resolve("M3").unwrap();
        assert_eq!(m3.vertex_count(), 6);
        assert_eq!(m3.tau(), 1);
        assert_eq!(m3.class(), 1);
        assert!(matches!(m3.shape(), PatternShape::Matching { pairs } if pairs.len() == 3));

        let tri = PatternGraph::resolve("triangle").unwrap();
        assert_eq!(tri.class(), 4);

        let spider = PatternGraph::resolve("spider:1,1,2").unwrap();
        assert_eq!(spider.vertex_count(), 5);
        assert_eq!(spider.edge_count(), 4);
        assert_eq!(spider.class(), 3);
        assert_eq!(spider.max_degree(), 3);

        let p3 = PatternGraph::resolve("P3").unwrap();
        assert_eq!(p3.tau(), 2);
        assert_eq!(p3.class(), 2);

        assert!(PatternGraph::resolve("Q5").is_err());
        assert!(PatternGraph::resolve("P0").is_err());
        assert!(PatternGraph::resolve("spider:1,2").is_err());
    }

    /// The class label must match its defining cases on a battery of
    /// patterns with known classes.
    #[test]
    fn class_labels() {
        for (name, class) in [
            ("M1", 1),
            ("M5", 1),
            ("P2", 1),
            ("P3", 2),
            ("P4", 3),
            ("P11", 3),
            ("K1,3", 3),
            ("K1,7", 3),
            ("spider:2,2,2", 3),
            ("triangle", 4),
            ("K4", 4),
            ("K7", 4),
        ] {
            let p = PatternGraph::resolve(name).unwrap();
            assert_eq!(p.class(), class, "{name}");
            // cross-check against the defining predicate
            let expect = if !p.is_forest() {
                4
            } else if p.tau() <= 1 {
                1
            } else if p.tau() == 2 {
                2
            } else {
                3
            };
            assert_eq!(p.class(), expect, "{name} consistency");
        }
    }

    #[test]
    fn text_format_roundtrip() {
        let text = "4 3\n0 1\n1 2\n2 3\n";
        let p = PatternGraph::parse_text("file", text).unwrap();
        assert_eq!(p.vertex_count(), 4);
        assert!(matches!(p.shape(), PatternShape::SinglePath { .. }));
        assert!(PatternGraph::parse_text("bad", "4 3\n0 1\n").is_err());
        assert!(PatternGraph::parse_text("loop", "2 1\n1 1\n").is_err());
        assert!(PatternGraph::parse_text("range", "2 1\n0 5\n").is_err());
    }

    #[test]
    fn one_degenerate_ordering() {
        for name in ["P5", "K1,4", "M3", "spider:1,2,3", "P2"] {
            let p = PatternGraph::resolve(name).unwrap();
            let (order, parents) = p.one_degenerate_order().unwrap();
            assert_eq!(order.len(), p.vertex_count() as usize);
            let g = p.to_sparse();
            let mut pos = vec![0usize; p.vertex_count() as usize];
            for (i, &v) in order.iter().enumerate() {
                pos[v as usize] = i;
            }
            for (i, &v) in order.iter().enumerate() {
                let earlier: Vec<u32> = g
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| pos[w as usize] < i)
                    .collect();
                assert!(earlier.len() <= 1, "{name}: {v} has {earlier:?} earlier");
                match parents[i] {
                    Some(pp) => assert_eq!(pos[earlier[0] as usize] as u32, pp),
                    None => assert!(earlier.is_empty()),
                }
            }
        }
        assert!(PatternGraph::resolve("K4")
            .unwrap()
            .one_degenerate_order()
            .is_none());
    }

    #[test]
    fn searchability_caps() {
        assert!(PatternGraph::resolve("P13")
            .unwrap()
            .check_minor_searchable()
            .is_ok());
        assert!(PatternGraph::resolve("P14")
            .unwrap()
            .check_minor_searchable()
            .is_err());
        assert!(PatternGraph::resolve("M40")
            .unwrap()
            .check_minor_searchable()
            .is_ok());
        assert!(PatternGraph::resolve("K10")
            .unwrap()
            .check_minor_searchable()
            .is_ok());
        assert!(PatternGraph::resolve("K11")
            .unwrap()
            .check_minor_searchable()
            .is_err());
        // Δ ≤ 3 subdivision patterns follow the minor rules
        assert!(PatternGraph::resolve("P11")
            .unwrap()
            .check_subdivision_searchable()
            .is_ok());
        assert!(PatternGraph::resolve("K1,4")
            .unwrap()
            .check_subdivision_searchable()
            .is_ok());
        assert!(PatternGraph::resolve("K1,9")
            .unwrap()
            .check_subdivision_searchable()
            .is_err());
    }
}
