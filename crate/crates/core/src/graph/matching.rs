//! Exact maximum matching on general graphs.
//!
//! Greedy maximal matching seeds the count, then alternating-tree search
//! with blossom contraction closes the gap. Odd cycles make augmenting-path
//! search on general graphs incorrect without contraction, so the blossom
//! step is not optional. Inputs are compacted to their non-isolated support
//! first; Maker graphs are huge and almost entirely isolated vertices.

use super::SparseGraph;

const NONE: u32 = u32::MAX;

struct Matcher<'g> {
    g: &'g SparseGraph,
    mate: Vec<u32>,
    p: Vec<u32>,
    base: Vec<u32>,
    used: Vec<bool>,
    blossom: Vec<bool>,
}

impl<'g> Matcher<'g> {
    fn new(g: &'g SparseGraph) -> Self {
        let n = g.n() as usize;
        let mut m = Matcher {
            g,
            mate: vec![NONE; n],
            p: vec![NONE; n],
            base: (0..n as u32).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
        };
        // greedy seed
        for v in 0..g.n() {
            if m.mate[v as usize] != NONE {
                continue;
            }
            for &w in g.neighbors(v) {
                if m.mate[w as usize] == NONE {
                    m.mate[v as usize] = w;
                    m.mate[w as usize] = v;
                    break;
                }
            }
        }
        m
    }

    fn matched_pairs(&self) -> u32 {
        (self.mate.iter().filter(|&&w| w != NONE).count() / 2) as u32
    }

    fn lca(&self, a: u32, b: u32) -> u32 {
        let mut seen = vec![false; self.g.n() as usize];
        let mut a = a;
        loop {
            a = self.base[a as usize];
            seen[a as usize] = true;
            if self.mate[a as usize] == NONE {
                break;
            }
            a = self.p[self.mate[a as usize] as usize];
        }
        let mut b = b;
        loop {
            b = self.base[b as usize];
            if seen[b as usize] {
                return b;
            }
            b = self.p[self.mate[b as usize] as usize];
        }
    }

    fn mark_path(&mut self, mut v: u32, b: u32, mut child: u32) {
        while self.base[v as usize] != b {
            self.blossom[self.base[v as usize] as usize] = true;
            self.blossom[self.base[self.mate[v as usize] as usize] as usize] = true;
            self.p[v as usize] = child;
            child = self.mate[v as usize];
            v = self.p[child as usize];
        }
    }

    /// Grow an alternating tree from `root`; returns an unmatched vertex
    /// whose parent chain encodes an augmenting path, or NONE.
    fn find_path(&mut self, root: u32) -> u32 {
        let n = self.g.n() as usize;
        self.used.iter_mut().for_each(|u| *u = false);
        self.p.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i as u32;
        }
        self.used[root as usize] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.g.neighbors(v).len() {
                let to = self.g.neighbors(v)[i];
                if self.base[v as usize] == self.base[to as usize]
                    || self.mate[v as usize] == to
                {
                    continue;
                }
                if to == root
                    || (self.mate[to as usize] != NONE
                        && self.p[self.mate[to as usize] as usize] != NONE)
                {
                    // odd cycle: contract the blossom
                    let cur_base = self.lca(v, to);
                    self.blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur_base, to);
                    self.mark_path(to, cur_base, v);
                    for i in 0..n {
                        if self.blossom[self.base[i] as usize] {
                            self.base[i] = cur_base;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i as u32);
                            }
                        }
                    }
                } else if self.p[to as usize] == NONE {
                    self.p[to as usize] = v;
                    if self.mate[to as usize] == NONE {
                        return to;
                    }
                    let next = self.mate[to as usize];
                    self.used[next as usize] = true;
                    queue.push_back(next);
                }
            }
        }
        NONE
    }

    fn augment(&mut self, mut v: u32) {
        while v != NONE {
            let pv = self.p[v as usize];
            let ppv = self.mate[pv as usize];
            self.mate[v as usize] = pv;
            self.mate[pv as usize] = v;
            v = ppv;
        }
    }

    /// Grow the matching until it reaches `stop_at` pairs or is maximum.
    fn run(&mut self, stop_at: u32) -> u32 {
        let mut count = self.matched_pairs();
        for v in 0..self.g.n() {
            if count >= stop_at {
                break;
            }
            if self.mate[v as usize] != NONE {
                continue;
            }
            let end = self.find_path(v);
            if end != NONE {
                self.augment(end);
                count += 1;
            }
        }
        count
    }
}

/// Size of a maximum matching.
pub fn max_matching(g: &SparseGraph) -> u32 {
    let (support, _) = g.compact_support();
    Matcher::new(&support).run(u32::MAX)
}

/// Does `g` contain a matching with at least `m` edges? Stops growing the
/// matching as soon as `m` pairs exist.
pub fn matching_at_least(g: &SparseGraph, m: u32) -> bool {
    if m == 0 {
        return true;
    }
    if g.edge_count() < m as u64 {
        return false;
    }
    let (support, _) = g.compact_support();
    Matcher::new(&support).run(m) >= m
}

/// The matched pairs of some maximum matching, as host vertex pairs.
pub fn max_matching_pairs(g: &SparseGraph) -> Vec<(u32, u32)> {
    let (support, back) = g.compact_support();
    let mut matcher = Matcher::new(&support);
    matcher.run(u32::MAX);
    let mut pairs = Vec::new();
    for v in 0..support.n() {
        let w = matcher.mate[v as usize];
        if w != NONE && v < w {
            pairs.push((back[v as usize], back[w as usize]));
        }
    }
    pairs
}
