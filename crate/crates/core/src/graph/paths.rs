//! Exact path-length queries, girth, and average degree.

use super::{GraphError, SparseGraph, MAX_PATH_EDGES};
use crate::numeric::Rat;
use std::collections::VecDeque;

/// Does `g` contain a simple path with at least `k` edges? Exact
/// backtracking over simple paths with component-size pruning and early
/// exit; `k` is capped because the search is exponential in the worst case.
pub fn longest_path_at_least(g: &SparseGraph, k: u32) -> Result<bool, GraphError> {
    Ok(find_path_with_edges(g, k)?.is_some())
}

/// As [`longest_path_at_least`], but returns a witness: the vertex sequence
/// of some simple path with exactly `k` edges.
pub fn find_path_with_edges(g: &SparseGraph, k: u32) -> Result<Option<Vec<u32>>, GraphError> {
    if k > MAX_PATH_EDGES {
        return Err(GraphError::PatternTooLarge {
            got: k,
            max: MAX_PATH_EDGES,
            unit: "path edges",
        });
    }
    if k == 0 {
        return Ok(if g.n() > 0 { Some(vec![0]) } else { None });
    }
    let need = k as usize + 1; // vertices on the path
    let (comp_id, comp_count) = g.component_ids();
    let mut comp_size = vec![0u32; comp_count as usize];
    for v in 0..g.n() {
        comp_size[comp_id[v as usize] as usize] += 1;
    }
    let mut on_path = vec![false; g.n() as usize];
    let mut path: Vec<u32> = Vec::with_capacity(need);

    fn extend(
        g: &SparseGraph,
        need: usize,
        on_path: &mut [bool],
        path: &mut Vec<u32>,
    ) -> bool {
        if path.len() == need {
            return true;
        }
        let tail = *path.last().unwrap();
        for i in 0..g.neighbors(tail).len() {
            let w = g.neighbors(tail)[i];
            if on_path[w as usize] {
                continue;
            }
            on_path[w as usize] = true;
            path.push(w);
            if extend(g, need, on_path, path) {
                return true;
            }
            path.pop();
            on_path[w as usize] = false;
        }
        false
    }

    for s in 0..g.n() {
        if (comp_size[comp_id[s as usize] as usize] as usize) < need || g.degree(s) == 0 {
            continue;
        }
        on_path[s as usize] = true;
        path.push(s);
        if extend(g, need, &mut on_path, &mut path) {
            return Ok(Some(path));
        }
        path.pop();
        on_path[s as usize] = false;
    }
    Ok(None)
}

/// Length of a shortest cycle, or `None` for acyclic graphs. BFS from every
/// vertex; a non-tree edge seen at depths (d1, d2) witnesses a closed walk
/// of length d1+d2+1 through the root, and the minimum over all roots is
/// exactly the girth.
pub fn girth(g: &SparseGraph) -> Option<u32> {
    let n = g.n() as usize;
    let mut best: Option<u32> = None;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![u32::MAX; n];
    let mut touched: Vec<u32> = Vec::new();
    let mut queue: VecDeque<u32> = VecDeque::new();

    for root in 0..g.n() {
        if g.degree(root) < 2 {
            continue; // a shortest cycle never passes through degree < 2
        }
        for &v in &touched {
            dist[v as usize] = u32::MAX;
            parent[v as usize] = u32::MAX;
        }
        touched.clear();
        queue.clear();
        dist[root as usize] = 0;
        touched.push(root);
        queue.push_back(root);
        let cap = best.map(|b| b / 2).unwrap_or(u32::MAX);
        while let Some(v) = queue.pop_front() {
            if dist[v as usize] >= cap {
                break; // deeper levels cannot improve on the current best
            }
            for &w in g.neighbors(v) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    parent[w as usize] = v;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[v as usize] != w {
                    let cand = dist[v as usize] + dist[w as usize] + 1;
                    if best.map(|b| cand < b).unwrap_or(true) {
                        best = Some(cand);
                    }
                }
            }
        }
    }
    best
}

/// 2·e(G)/n as an exact rational.
pub fn average_degree(g: &SparseGraph) -> Result<Rat, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::InvalidConfig(
            "average degree of the empty graph is undefined".into(),
        ));
    }
    Ok(Rat::new(2 * g.edge_count() as i128, g.n() as i128))
}
