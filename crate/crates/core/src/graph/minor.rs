//! Minor and topological-minor containment.
//!
//! Matchings and single paths route to the exact matching / longest-path
//! detectors, which scale to full Maker graphs. Everything else runs an
//! exponential branch-set search, intended for small patterns (and cross
//! checked exhaustively against a deletion/contraction oracle in the test
//! suite). Returned embeddings are always re-checked by an independent
//! validator in debug builds.

use super::matching::{max_matching_pairs, matching_at_least};
use super::paths::find_path_with_edges;
use super::{GraphError, PatternGraph, PatternShape, SparseGraph};

/// A witness that H is a minor of G: one host branch set per pattern
/// vertex, indexed by pattern vertex id.
#[derive(Clone, Debug)]
pub struct MinorEmbedding {
    pub branch_sets: Vec<Vec<u32>>,
}

/// Check an embedding against the minor definition, with no shared code
/// with the searcher: branch sets non-empty, pairwise disjoint, each
/// inducing a connected subgraph, and every pattern edge covered by a host
/// edge between the two branch sets.
pub fn validate_embedding(
    g: &SparseGraph,
    h: &PatternGraph,
    emb: &MinorEmbedding,
) -> Result<(), String> {
    if emb.branch_sets.len() != h.vertex_count() as usize {
        return Err(format!(
            "expected {} branch sets, got {}",
            h.vertex_count(),
            emb.branch_sets.len()
        ));
    }
    let mut owner = vec![u32::MAX; g.n() as usize];
    for (p, set) in emb.branch_sets.iter().enumerate() {
        if set.is_empty() {
            return Err(format!("branch set {p} is empty"));
        }
        for &v in set {
            if v >= g.n() {
                return Err(format!("branch set {p} contains out-of-range vertex {v}"));
            }
            if owner[v as usize] != u32::MAX {
                return Err(format!(
                    "vertex {v} appears in branch sets {} and {p}",
                    owner[v as usize]
                ));
            }
            owner[v as usize] = p as u32;
        }
    }
    // connectivity of each branch set, BFS restricted to the set
    for (p, set) in emb.branch_sets.iter().enumerate() {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![set[0]];
        seen.insert(set[0]);
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if owner[w as usize] == p as u32 && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if seen.len() != set.len() {
            return Err(format!("branch set {p} is not connected"));
        }
    }
    for &(a, b) in h.edges() {
        let covered = emb.branch_sets[a as usize]
            .iter()
            .any(|&u| g.neighbors(u).iter().any(|&w| owner[w as usize] == b));
        if !covered {
            return Err(format!("pattern edge ({a},{b}) has no host edge"));
        }
    }
    Ok(())
}

/// Search for H as a minor of G; returns a witness embedding if found.
pub fn has_minor(g: &SparseGraph, h: &PatternGraph) -> Result<Option<MinorEmbedding>, GraphError> {
    h.check_minor_searchable()?;
    if g.n() < h.vertex_count() || g.edge_count() < h.edge_count() as u64 {
        return Ok(None);
    }
    let result = match h.shape() {
        PatternShape::Matching { pairs } => matching_minor(g, h, pairs),
        PatternShape::SinglePath { seq } => path_minor(g, h, seq)?,
        PatternShape::General => Searcher::new(g, h).run(),
    };
    if let Some(emb) = &result {
        debug_assert_eq!(validate_embedding(g, h, emb), Ok(()));
    }
    Ok(result)
}

/// Fill pattern vertices not yet assigned (isolated ones) with unused host
/// vertices, ascending. Returns None if the host runs out.
fn fill_isolated(g: &SparseGraph, mut sets: Vec<Vec<u32>>) -> Option<MinorEmbedding> {
    let mut used = vec![false; g.n() as usize];
    for set in &sets {
        for &v in set {
            used[v as usize] = true;
        }
    }
    let mut spare = (0..g.n()).filter(|&v| !used[v as usize]);
    for set in sets.iter_mut().filter(|s| s.is_empty()) {
        set.push(spare.next()?);
    }
    Some(MinorEmbedding { branch_sets: sets })
}

fn matching_minor(g: &SparseGraph, h: &PatternGraph, pairs: &[(u32, u32)]) -> Option<MinorEmbedding> {
    if !matching_at_least(g, pairs.len() as u32) {
        return None;
    }
    let host_pairs = max_matching_pairs(g);
    let mut sets = vec![Vec::new(); h.vertex_count() as usize];
    for (&(a, b), &(u, v)) in pairs.iter().zip(host_pairs.iter()) {
        sets[a as usize] = vec![u];
        sets[b as usize] = vec![v];
    }
    fill_isolated(g, sets)
}

fn path_minor(
    g: &SparseGraph,
    h: &PatternGraph,
    seq: &[u32],
) -> Result<Option<MinorEmbedding>, GraphError> {
    let witness = match find_path_with_edges(g, (seq.len() - 1) as u32)? {
        Some(w) => w,
        None => return Ok(None),
    };
    let mut sets = vec![Vec::new(); h.vertex_count() as usize];
    for (&p, &v) in seq.iter().zip(witness.iter()) {
        sets[p as usize] = vec![v];
    }
    Ok(fill_isolated(g, sets))
}

const UNASSIGNED: u32 = u32::MAX;
const RESERVED: u32 = u32::MAX - 1;

/// Branch-set backtracking. Pattern edges are realized one at a time by a
/// simple host path that starts in one endpoint's branch set, runs through
/// unassigned vertices, and reaches the other set (created on the way when
/// still empty); every prefix/suffix split of the interior is tried. Each
/// branch set therefore grows as a tree, one attached segment per incident
/// pattern edge, which is exactly the shape minimal branch sets have.
struct Searcher<'g> {
    g: &'g SparseGraph,
    edge_order: Vec<(usize, usize)>,
    iso: usize,
    owner: Vec<u32>,
    sets: Vec<Vec<u32>>,
    path: Vec<u32>,
    free: usize,
    needed: usize,
}

impl<'g> Searcher<'g> {
    fn new(g: &'g SparseGraph, h: &PatternGraph) -> Self {
        let hs = h.to_sparse();
        let k = h.vertex_count() as usize;
        // BFS the pattern from its highest-degree vertices so that each
        // edge (after a component's first) touches an already-built set
        let mut verts: Vec<u32> = (0..h.vertex_count()).filter(|&v| hs.degree(v) > 0).collect();
        verts.sort_by_key(|&v| std::cmp::Reverse(hs.degree(v)));
        let mut visited = vec![false; k];
        let mut edge_seen = std::collections::HashSet::new();
        let mut edge_order = Vec::with_capacity(h.edge_count() as usize);
        for &root in &verts {
            if visited[root as usize] {
                continue;
            }
            visited[root as usize] = true;
            let mut queue = std::collections::VecDeque::from([root]);
            let mut comp = vec![root];
            while let Some(v) = queue.pop_front() {
                for &w in hs.neighbors(v) {
                    if !visited[w as usize] {
                        visited[w as usize] = true;
                        edge_seen.insert((v.min(w), v.max(w)));
                        edge_order.push((v as usize, w as usize));
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            // non-tree edges of this component afterwards
            for &v in &comp {
                for &w in hs.neighbors(v) {
                    if v < w && edge_seen.insert((v, w)) {
                        edge_order.push((v as usize, w as usize));
                    }
                }
            }
        }
        let needed = verts.len();
        Searcher {
            g,
            edge_order,
            iso: h.isolated_count() as usize,
            owner: vec![UNASSIGNED; g.n() as usize],
            sets: vec![Vec::new(); k],
            path: Vec::new(),
            free: g.n() as usize,
            needed,
        }
    }

    fn run(mut self) -> Option<MinorEmbedding> {
        if self.search(0) {
            // isolated pattern vertices take spare host vertices
            let mut spare = (0..self.g.n()).filter(|&v| self.owner[v as usize] == UNASSIGNED);
            for set in self.sets.iter_mut().filter(|s| s.is_empty()) {
                set.push(spare.next().expect("free count was checked"));
            }
            Some(MinorEmbedding {
                branch_sets: self.sets,
            })
        } else {
            None
        }
    }

    fn search(&mut self, ei: usize) -> bool {
        if self.free < self.needed + self.iso {
            return false;
        }
        if ei == self.edge_order.len() {
            return true;
        }
        let (a, b) = self.edge_order[ei];
        match (self.sets[a].is_empty(), self.sets[b].is_empty()) {
            (false, false) => {
                for idx in 0..self.sets[a].len() {
                    let x0 = self.sets[a][idx];
                    if self.dfs_between(x0, a, b, ei) {
                        return true;
                    }
                }
                false
            }
            (false, true) => {
                for idx in 0..self.sets[a].len() {
                    let x0 = self.sets[a][idx];
                    if self.dfs_grow(x0, a, b, ei) {
                        return true;
                    }
                }
                false
            }
            (true, false) => {
                for idx in 0..self.sets[b].len() {
                    let x0 = self.sets[b][idx];
                    if self.dfs_grow(x0, b, a, ei) {
                        return true;
                    }
                }
                false
            }
            (true, true) => {
                for x in 0..self.g.n() {
                    if self.owner[x as usize] != UNASSIGNED || self.g.degree(x) == 0 {
                        continue;
                    }
                    self.reserve(x);
                    if self.dfs_fresh(x, a, b, ei) {
                        return true;
                    }
                    self.release(x);
                }
                false
            }
        }
    }

    fn reserve(&mut self, v: u32) {
        self.owner[v as usize] = RESERVED;
        self.path.push(v);
        self.free -= 1;
    }

    fn release(&mut self, v: u32) {
        debug_assert_eq!(self.path.last(), Some(&v));
        self.path.pop();
        self.owner[v as usize] = UNASSIGNED;
        self.free += 1;
    }

    /// Assign path[0..cut] to set `a` and path[cut..] to set `b`, recurse
    /// into the next pattern edge, then undo. The walk stack is swapped out
    /// so the next edge's walk starts clean.
    fn split_and_recurse(&mut self, a: usize, b: usize, cut: usize, ei: usize) -> bool {
        let (sa, sb) = (self.sets[a].len(), self.sets[b].len());
        let (a_was_empty, b_was_empty) = (sa == 0, sb == 0);
        let segment = std::mem::take(&mut self.path);
        for (i, &v) in segment.iter().enumerate() {
            let side = if i < cut { a } else { b };
            self.owner[v as usize] = side as u32;
            self.sets[side].push(v);
        }
        if a_was_empty && !self.sets[a].is_empty() {
            self.needed -= 1;
        }
        if b_was_empty && !self.sets[b].is_empty() {
            self.needed -= 1;
        }
        let ok = self.search(ei + 1);
        if !ok {
            if a_was_empty && !self.sets[a].is_empty() {
                self.needed += 1;
            }
            if b_was_empty && !self.sets[b].is_empty() {
                self.needed += 1;
            }
            self.sets[a].truncate(sa);
            self.sets[b].truncate(sb);
            for &v in &segment {
                self.owner[v as usize] = RESERVED;
            }
            self.path = segment;
        }
        ok
    }

    /// Both sets exist: walk through unassigned vertices from x (in set a)
    /// until a neighbor inside set b appears.
    fn dfs_between(&mut self, x: u32, a: usize, b: usize, ei: usize) -> bool {
        // the split outcome is the same whichever b-vertex closes the walk
        let mut closed = false;
        for i in 0..self.g.neighbors(x).len() {
            let w = self.g.neighbors(x)[i];
            let st = self.owner[w as usize];
            if st == b as u32 {
                if closed {
                    continue;
                }
                closed = true;
                for cut in 0..=self.path.len() {
                    if self.split_and_recurse(a, b, cut, ei) {
                        return true;
                    }
                }
            } else if st == UNASSIGNED && self.free > self.needed + self.iso {
                self.reserve(w);
                if self.dfs_between(w, a, b, ei) {
                    return true;
                }
                self.release(w);
            }
        }
        false
    }

    /// Set `b` does not exist yet: walk from x (in set a) through
    /// unassigned vertices; any non-empty suffix of the walk can found b.
    fn dfs_grow(&mut self, x: u32, a: usize, b: usize, ei: usize) -> bool {
        for i in 0..self.g.neighbors(x).len() {
            let w = self.g.neighbors(x)[i];
            if self.owner[w as usize] != UNASSIGNED {
                continue;
            }
            // the walk now has ≥ 1 vertex; creating b "spends" one needed set
            if self.free + 1 <= self.needed + self.iso {
                continue;
            }
            self.reserve(w);
            for cut in 0..self.path.len() {
                if self.split_and_recurse(a, b, cut, ei) {
                    return true;
                }
            }
            if self.dfs_grow(w, a, b, ei) {
                return true;
            }
            self.release(w);
        }
        false
    }

    /// Neither set exists (first edge of a pattern component): the whole
    /// walk is unassigned, split into non-empty prefix → a, suffix → b.
    fn dfs_fresh(&mut self, x: u32, a: usize, b: usize, ei: usize) -> bool {
        for i in 0..self.g.neighbors(x).len() {
            let w = self.g.neighbors(x)[i];
            if self.owner[w as usize] != UNASSIGNED {
                continue;
            }
            if self.free + 2 <= self.needed + self.iso {
                continue;
            }
            self.reserve(w);
            for cut in 1..self.path.len() {
                if self.split_and_recurse(a, b, cut, ei) {
                    return true;
                }
            }
            if self.dfs_fresh(w, a, b, ei) {
                return true;
            }
            self.release(w);
        }
        false
    }
}

/// Does G contain a subdivision of H? For Δ(H) ≤ 3 this coincides with
/// minor containment and delegates. Otherwise: try every injective map of
/// pattern vertices onto host vertices of sufficient degree, then realize
/// pattern edges as internally-disjoint paths through unused vertices.
pub fn has_topological_minor(g: &SparseGraph, h: &PatternGraph) -> Result<bool, GraphError> {
    h.check_subdivision_searchable()?;
    if h.max_degree() <= 3 {
        return Ok(has_minor(g, h)?.is_some());
    }
    if g.n() < h.vertex_count() || g.edge_count() < h.edge_count() as u64 {
        return Ok(false);
    }
    let hs = h.to_sparse();
    // isolated pattern vertices are not placed; they only need spare hosts
    let mut pverts: Vec<u32> = (0..h.vertex_count()).filter(|&v| hs.degree(v) > 0).collect();
    pverts.sort_by_key(|&v| std::cmp::Reverse(hs.degree(v)));
    let mut state = SubdivState {
        g,
        hs: &hs,
        image: vec![u32::MAX; h.vertex_count() as usize],
        used: vec![false; g.n() as usize],
        used_count: 0,
        iso: h.isolated_count() as usize,
        edges: h.edges().to_vec(),
    };
    Ok(state.place(&pverts, 0))
}

struct SubdivState<'a> {
    g: &'a SparseGraph,
    hs: &'a SparseGraph,
    image: Vec<u32>,
    used: Vec<bool>,
    used_count: usize,
    iso: usize,
    edges: Vec<(u32, u32)>,
}

impl SubdivState<'_> {
    fn place(&mut self, order: &[u32], idx: usize) -> bool {
        if idx == order.len() {
            return self.route(0);
        }
        let p = order[idx];
        let want = self.hs.degree(p);
        for x in 0..self.g.n() {
            if self.used[x as usize] || self.g.degree(x) < want {
                continue;
            }
            self.used[x as usize] = true;
            self.used_count += 1;
            self.image[p as usize] = x;
            if self.place(order, idx + 1) {
                return true;
            }
            self.image[p as usize] = u32::MAX;
            self.used[x as usize] = false;
            self.used_count -= 1;
        }
        false
    }

    fn route(&mut self, ei: usize) -> bool {
        if (self.g.n() as usize) < self.used_count + self.iso {
            return false;
        }
        if ei == self.edges.len() {
            return true;
        }
        let (a, b) = self.edges[ei];
        let (from, to) = (self.image[a as usize], self.image[b as usize]);
        self.walk(from, to, ei, &mut Vec::new())
    }

    fn walk(&mut self, cur: u32, to: u32, ei: usize, trail: &mut Vec<u32>) -> bool {
        for i in 0..self.g.neighbors(cur).len() {
            let w = self.g.neighbors(cur)[i];
            if w == to {
                if self.route(ei + 1) {
                    return true;
                }
            } else if !self.used[w as usize] {
                self.used[w as usize] = true;
                self.used_count += 1;
                trail.push(w);
                if self.walk(w, to, ei, trail) {
                    return true;
                }
                trail.pop();
                self.used[w as usize] = false;
                self.used_count -= 1;
            }
        }
        false
    }
}
