//! Brute-force reference implementations shared by the cross-check suites.
//!
//! Every function here answers a question the library also answers, but by
//! a deliberately different route — exhaustive enumeration, no pruning
//! beyond the literal definition. Agreement between the two routes over
//! large input batteries is the evidence that the fast implementations are
//! right; nothing in this module calls the code path it is used to check.
#![allow(dead_code)] // each test target compiles its own copy and uses a subset

use std::collections::{HashMap, HashSet};

use mbgame_core::graph::PatternGraph;
use mbgame_core::numeric::{HarmonicTable, Rat};
use mbgame_core::rng::GameRng;
use mbgame_core::SparseGraph;
use rand::Rng;

/// Vertex cap for the tiny dense-graph representation below.
pub const TINY_MAX: usize = 12;

/// Dense adjacency-bitmask graph for brute-force work on at most
/// [`TINY_MAX`] vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TinyGraph {
    pub n: u8,
    /// Neighbor bitmask per vertex.
    pub adj: [u16; TINY_MAX],
}

impl TinyGraph {
    pub fn new(n: u8) -> Self {
        assert!(n as usize <= TINY_MAX);
        TinyGraph {
            n,
            adj: [0; TINY_MAX],
        }
    }

    pub fn add_edge(&mut self, u: u8, v: u8) {
        assert!(u != v && u < self.n && v < self.n);
        self.adj[u as usize] |= 1 << v;
        self.adj[v as usize] |= 1 << u;
    }

    pub fn has_edge(&self, u: u8, v: u8) -> bool {
        self.adj[u as usize] >> v & 1 == 1
    }

    pub fn degree(&self, v: u8) -> u32 {
        self.adj[v as usize].count_ones()
    }

    /// Each edge once as (u, v) with u < v.
    pub fn edges(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        for v in 1..self.n {
            for u in 0..v {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v) as usize).sum::<usize>() / 2
    }

    pub fn to_sparse(&self) -> SparseGraph {
        SparseGraph::from_pairs(
            u32::from(self.n),
            self.edges().iter().map(|&(u, v)| (u32::from(u), u32::from(v))),
        )
    }

    /// Flat edge bitmask; only defined for n ≤ 7 (21 bits).
    pub fn edge_mask(&self) -> u32 {
        assert!(self.n <= 7);
        let mut mask = 0u32;
        for (u, v) in self.edges() {
            mask |= 1 << pair_bit(u, v);
        }
        mask
    }

    pub fn from_edge_mask(n: u8, mask: u32) -> Self {
        let mut g = TinyGraph::new(n);
        for v in 1..n {
            for u in 0..v {
                if mask >> pair_bit(u, v) & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }
}

/// Bit position of edge {u, v} in a flat triangular mask. Depends only on
/// the endpoints, so a graph's mask is stable when vertices are appended.
pub fn pair_bit(u: u8, v: u8) -> u32 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    u32::from(b) * (u32::from(b) - 1) / 2 + u32::from(a)
}

/// All permutations of 0..n in lexicographic discovery order.
pub fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn rec(n: usize, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Canonical forms for graphs on at most 7 vertices: the minimum edge mask
/// over all vertex relabelings. Permutations are pre-expanded into edge-bit
/// relabeling tables so canonizing is a couple of shifts per edge.
pub struct Canonizer {
    perm_bits: Vec<Vec<Vec<u8>>>,
}

impl Canonizer {
    pub fn new(max_n: usize) -> Self {
        assert!(max_n <= 7);
        let mut perm_bits = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let bits = n * n.saturating_sub(1) / 2;
            let mut tables = Vec::new();
            for p in permutations(n) {
                let mut t = vec![0u8; bits];
                for v in 1..n {
                    for u in 0..v {
                        t[pair_bit(u as u8, v as u8) as usize] =
                            pair_bit(p[u], p[v]) as u8;
                    }
                }
                tables.push(t);
            }
            perm_bits.push(tables);
        }
        Canonizer { perm_bits }
    }

    /// The smallest edge mask among all relabelings of the graph — equal
    /// for two graphs exactly when they are isomorphic.
    pub fn canonical(&self, n: u8, mask: u32) -> u32 {
        let mut best = u32::MAX;
        for table in &self.perm_bits[n as usize] {
            let mut out = 0u32;
            let mut rest = mask;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                out |= 1 << table[b];
            }
            best = best.min(out);
        }
        best
    }
}

/// One representative per isomorphism class of connected graphs on
/// 1..=max_n vertices, grouped by vertex count (ascending), deterministic
/// order within a group.
///
/// Built by vertex-by-vertex growth: every connected graph on n+1 vertices
/// arises from a connected graph on n vertices by adding one vertex with a
/// nonempty neighborhood (delete any non-cut vertex — a leaf of a spanning
/// tree — to see this), so growing from K1 and deduplicating canonical
/// forms reaches every class.
pub fn connected_hosts_up_to(max_n: u8, canon: &Canonizer) -> Vec<TinyGraph> {
    let mut levels: Vec<HashSet<u32>> = vec![HashSet::new(); usize::from(max_n) + 1];
    levels[1].insert(0);
    for n in 1..max_n {
        let prev: Vec<u32> = levels[usize::from(n)].iter().copied().collect();
        let mut next = HashSet::new();
        for &mask in &prev {
            for nb in 1u16..(1 << n) {
                // old edge bits keep their positions when vertex n joins
                let mut g = TinyGraph::from_edge_mask(n + 1, mask);
                for v in 0..n {
                    if nb >> v & 1 == 1 {
                        g.add_edge(v, n);
                    }
                }
                next.insert(canon.canonical(n + 1, g.edge_mask()));
            }
        }
        levels[usize::from(n) + 1] = next;
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        let mut masks: Vec<u32> = levels[usize::from(n)].iter().copied().collect();
        masks.sort_unstable();
        out.extend(masks.into_iter().map(|m| TinyGraph::from_edge_mask(n, m)));
    }
    out
}

/// Minor containment decided from the definition alone: H is a minor of G
/// iff H embeds into G as a subgraph (vertex and edge deletions only), or
/// some single-edge contraction of G still has H as a minor — a branch set
/// with two or more vertices always contains a contractible edge.
/// Memoized on canonical host forms, so the contraction lattice under a
/// 7-vertex host stays small.
pub struct MinorOracle<'a> {
    canon: &'a Canonizer,
    memo: HashMap<(u8, u32), bool>,
    pat_k: u8,
    pat_edge_count: usize,
    /// Pattern adjacency bitmasks.
    pat_adj: [u16; TINY_MAX],
    /// Non-isolated pattern vertices, highest degree first (cheap fail-fast
    /// ordering; the search below each order is still exhaustive).
    pat_active: Vec<u8>,
    pat_iso: usize,
}

impl<'a> MinorOracle<'a> {
    pub fn new(pattern: &PatternGraph, canon: &'a Canonizer) -> Self {
        let k = pattern.vertex_count() as u8;
        assert!(usize::from(k) <= TINY_MAX);
        let mut pat_adj = [0u16; TINY_MAX];
        for &(a, b) in pattern.edges() {
            pat_adj[a as usize] |= 1 << b;
            pat_adj[b as usize] |= 1 << a;
        }
        let mut pat_active: Vec<u8> =
            (0..k).filter(|&v| pat_adj[v as usize] != 0).collect();
        pat_active.sort_by_key(|&v| std::cmp::Reverse(pat_adj[v as usize].count_ones()));
        MinorOracle {
            canon,
            memo: HashMap::new(),
            pat_k: k,
            pat_edge_count: pattern.edge_count() as usize,
            pat_adj,
            pat_iso: usize::from(k) - pat_active.len(),
            pat_active,
        }
    }

    pub fn contains(&mut self, host: &TinyGraph) -> bool {
        if host.n < self.pat_k || host.edge_count() < self.pat_edge_count {
            return false;
        }
        let key = (host.n, self.canon.canonical(host.n, host.edge_mask()));
        if let Some(&hit) = self.memo.get(&key) {
            return hit;
        }
        let ans = self.embeds_as_subgraph(host)
            || host
                .edges()
                .into_iter()
                .any(|(u, v)| self.contains(&contract(host, u, v)));
        self.memo.insert(key, ans);
        ans
    }

    /// Injective map of the pattern's non-isolated vertices into the host
    /// preserving every pattern edge, with enough host vertices left over
    /// for the isolated ones.
    fn embeds_as_subgraph(&self, host: &TinyGraph) -> bool {
        if usize::from(host.n) < self.pat_active.len() + self.pat_iso {
            return false;
        }
        let mut image = [u8::MAX; TINY_MAX];
        self.embed_from(host, 0, &mut image, 0)
    }

    fn embed_from(&self, host: &TinyGraph, i: usize, image: &mut [u8; TINY_MAX], used: u16) -> bool {
        if i == self.pat_active.len() {
            return true;
        }
        let p = self.pat_active[i];
        'hosts: for h in 0..host.n {
            if used >> h & 1 == 1 {
                continue;
            }
            // every pattern edge from p into the mapped prefix must exist
            for &q in &self.pat_active[..i] {
                if self.pat_adj[p as usize] >> q & 1 == 1
                    && !host.has_edge(h, image[q as usize])
                {
                    continue 'hosts;
                }
            }
            image[p as usize] = h;
            if self.embed_from(host, i + 1, image, used | 1 << h) {
                return true;
            }
        }
        false
    }
}

/// Contract edge uv: merge v into u, drop the loop and any parallel edges,
/// and renumber the vertices above v down by one.
pub fn contract(g: &TinyGraph, u: u8, v: u8) -> TinyGraph {
    let map = |w: u8| -> u8 {
        if w == v {
            if u > v {
                u - 1
            } else {
                u
            }
        } else if w > v {
            w - 1
        } else {
            w
        }
    };
    let mut out = TinyGraph::new(g.n - 1);
    for (a, b) in g.edges() {
        let (x, y) = (map(a), map(b));
        if x != y && !out.has_edge(x, y) {
            out.add_edge(x, y);
        }
    }
    out
}

/// The pattern battery the minor equivalence sweep runs against: every
/// shape class the detector routes differently (matchings, single paths,
/// stars, trees with a branch vertex, cycles, cliques, a bipartite clique)
/// plus one pattern with an isolated vertex.
pub fn minor_pattern_battery() -> Vec<PatternGraph> {
    let mut battery: Vec<PatternGraph> = [
        "M1",
        "M2",
        "M3",
        "P3",
        "P4",
        "P5",
        "K1,3",
        "spider:1,1,2",
        "triangle",
        "K4",
        "K5",
    ]
    .iter()
    .map(|s| PatternGraph::resolve(s).unwrap())
    .collect();
    battery.push(PatternGraph::from_edges("C4", 4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap());
    battery.push(
        PatternGraph::from_edges(
            "K2,3",
            5,
            &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
        )
        .unwrap(),
    );
    battery.push(PatternGraph::from_edges("P3+iso", 4, &[(0, 1), (1, 2)]).unwrap());
    battery
}

/// Literal subset check for a matching of size k: try every k-subset of the
/// edge list and test pairwise disjointness only once the subset is
/// complete.
pub fn matching_by_edge_subsets(edges: &[(u32, u32)], k: usize) -> bool {
    fn rec(edges: &[(u32, u32)], k: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == k {
            for i in 0..k {
                for j in i + 1..k {
                    let (a, b) = edges[chosen[i]];
                    let (c, d) = edges[chosen[j]];
                    if a == c || a == d || b == c || b == d {
                        return false;
                    }
                }
            }
            return true;
        }
        for e in start..edges.len() {
            chosen.push(e);
            if rec(edges, k, e + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if k == 0 {
        return true;
    }
    rec(edges, k, 0, &mut Vec::new())
}

/// Largest k for which [`matching_by_edge_subsets`] succeeds.
pub fn max_matching_by_subsets(edges: &[(u32, u32)]) -> usize {
    let mut k = 0;
    while matching_by_edge_subsets(edges, k + 1) {
        k += 1;
    }
    k
}

/// Path existence decided over explicit vertex tuples: choose k+1 distinct
/// vertices in order with no adjacency guidance whatsoever, and check that
/// consecutive pairs are edges only after the tuple is complete.
pub fn path_by_vertex_tuples(g: &TinyGraph, k: usize) -> bool {
    fn rec(g: &TinyGraph, need: usize, tuple: &mut Vec<u8>, used: &mut [bool; TINY_MAX]) -> bool {
        if tuple.len() == need {
            return tuple.windows(2).all(|w| g.has_edge(w[0], w[1]));
        }
        for v in 0..g.n {
            if used[v as usize] {
                continue;
            }
            used[v as usize] = true;
            tuple.push(v);
            if rec(g, need, tuple, used) {
                return true;
            }
            tuple.pop();
            used[v as usize] = false;
        }
        false
    }
    if k == 0 {
        return g.n > 0;
    }
    if k + 1 > usize::from(g.n) {
        return false;
    }
    rec(g, k + 1, &mut Vec::with_capacity(k + 1), &mut [false; TINY_MAX])
}

/// The box defense criterion checked against every nonempty subset of
/// boxes, not just sorted prefixes: each subset S must keep strictly more
/// than |S| · h_{|S|} · m coins.
pub fn criterion_by_subsets(boxes: &[u64], m: u64) -> bool {
    assert!(boxes.len() <= 16, "subset enumeration cap");
    let table = HarmonicTable::new(boxes.len());
    let m = Rat::from_integer(i128::from(m));
    for mask in 1u32..(1 << boxes.len()) {
        let mut sum: u64 = 0;
        let mut s = 0usize;
        for (i, &a) in boxes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sum += a;
                s += 1;
            }
        }
        let bound = table.h(s) * Rat::from_integer(s as i128) * m;
        if Rat::from_integer(i128::from(sum)) <= bound {
            return false;
        }
    }
    true
}

/// A graph is a disjoint union of stars exactly when every edge has an
/// endpoint of degree one: a vertex with two neighbors then sees only
/// leaves, so its component is its star, and no cycle survives the rule.
pub fn is_disjoint_union_of_stars(g: &SparseGraph) -> bool {
    g.edges().all(|(u, v)| g.degree(u) == 1 || g.degree(v) == 1)
}

/// Girth by edge deletion: the shortest cycle through uv is uv plus a
/// shortest u-v path that avoids uv, so minimizing (BFS distance in G−uv)+1
/// over all edges gives the girth.
pub fn girth_by_edge_removal(g: &TinyGraph) -> Option<u32> {
    let mut best: Option<u32> = None;
    for (u, v) in g.edges() {
        let mut dist = [u32::MAX; TINY_MAX];
        let mut queue = std::collections::VecDeque::from([u]);
        dist[u as usize] = 0;
        while let Some(x) = queue.pop_front() {
            for y in 0..g.n {
                if !g.has_edge(x, y) || (x == u && y == v) || (x == v && y == u) {
                    continue;
                }
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = dist[x as usize] + 1;
                    queue.push_back(y);
                }
            }
        }
        if dist[v as usize] != u32::MAX {
            let cycle = dist[v as usize] + 1;
            if best.map(|b| cycle < b).unwrap_or(true) {
                best = Some(cycle);
            }
        }
    }
    best
}

/// Uniform random graph with `n` vertices and exactly `m` edges (clamped to
/// the complete graph), sampled by pair rejection.
pub fn random_tiny_graph(rng: &mut GameRng, n: u8, m: usize) -> TinyGraph {
    let mut g = TinyGraph::new(n);
    let cap = usize::from(n) * (usize::from(n) - 1) / 2;
    let m = m.min(cap);
    while g.edge_count() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && !g.has_edge(u, v) {
            g.add_edge(u, v);
        }
    }
    g
}
