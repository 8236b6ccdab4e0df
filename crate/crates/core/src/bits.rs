//! Fixed-universe bit sets over vertex indices.
//!
//! The board keeps one bit row per vertex for its free adjacency, and the
//! strategies keep standalone [`VertexSet`] masks (frozen vertex classes,
//! star heads, branch-set membership). Rows iterate in ascending index
//! order, so a row doubles as a sorted index set with O(1) insert/remove.

/// Owned bit set over a fixed vertex universe `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    n: u32,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: u32) -> Self {
        VertexSet {
            n,
            words: vec![0; Self::word_count(n)],
        }
    }

    pub fn full(n: u32) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    fn word_count(n: u32) -> usize {
        (n as usize + 63) / 64
    }

    pub fn universe(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn insert(&mut self, v: u32) {
        debug_assert!(v < self.n);
        self.words[(v / 64) as usize] |= 1u64 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: u32) {
        debug_assert!(v < self.n);
        self.words[(v / 64) as usize] &= !(1u64 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: u32) -> bool {
        debug_assert!(v < self.n);
        self.words[(v / 64) as usize] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Ascending iterator over the members.
    pub fn iter(&self) -> BitIter<'_> {
        BitIter::new(&self.words)
    }
}

/// Iterator over set bits of a word slice, ascending.
pub struct BitIter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            word_idx: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros();
        self.current &= self.current - 1;
        Some(self.word_idx as u32 * 64 + bit)
    }
}

/// Rectangular bit matrix: one row of `n` bits per vertex.
///
/// Used for the board's free adjacency. Row v holds the free neighbors of v;
/// iteration over a row yields neighbors in ascending order.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    n: u32,
    row_words: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    /// All-zero matrix.
    pub fn zero(n: u32) -> Self {
        let row_words = VertexSet::word_count(n);
        BitMatrix {
            n,
            row_words,
            words: vec![0; row_words * n as usize],
        }
    }

    /// Adjacency of the complete graph: every bit set except the diagonal.
    pub fn complete(n: u32) -> Self {
        let mut m = Self::zero(n);
        for v in 0..n as usize {
            let row = &mut m.words[v * m.row_words..(v + 1) * m.row_words];
            for (i, w) in row.iter_mut().enumerate() {
                let base = i as u32 * 64;
                let in_range = (n - base.min(n)).min(64);
                *w = if in_range == 64 {
                    !0
                } else {
                    (1u64 << in_range) - 1
                };
            }
            row[v / 64] &= !(1u64 << (v % 64));
        }
        m
    }

    #[inline]
    pub fn row(&self, v: u32) -> &[u64] {
        let v = v as usize;
        &self.words[v * self.row_words..(v + 1) * self.row_words]
    }

    #[inline]
    pub fn set(&mut self, u: u32, v: u32) {
        debug_assert!(u < self.n && v < self.n && u != v);
        self.words[u as usize * self.row_words + (v / 64) as usize] |= 1u64 << (v % 64);
        self.words[v as usize * self.row_words + (u / 64) as usize] |= 1u64 << (u % 64);
    }

    #[inline]
    pub fn clear(&mut self, u: u32, v: u32) {
        debug_assert!(u < self.n && v < self.n && u != v);
        self.words[u as usize * self.row_words + (v / 64) as usize] &= !(1u64 << (v % 64));
        self.words[v as usize * self.row_words + (u / 64) as usize] &= !(1u64 << (u % 64));
    }

    #[inline]
    pub fn contains(&self, u: u32, v: u32) -> bool {
        self.words[u as usize * self.row_words + (v / 64) as usize] >> (v % 64) & 1 == 1
    }

    /// Members of row v, ascending.
    pub fn iter_row(&self, v: u32) -> BitIter<'_> {
        BitIter::new(self.row(v))
    }

    /// Number of bits set in row v that are also in `mask`.
    pub fn count_row_and(&self, v: u32, mask: &VertexSet) -> usize {
        self.row(v)
            .iter()
            .zip(mask.words())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Ascending indices of row v intersected with `mask`.
    pub fn collect_row_and(&self, v: u32, mask: &VertexSet) -> Vec<u32> {
        let both: Vec<u64> = self
            .row(v)
            .iter()
            .zip(mask.words())
            .map(|(a, b)| a & b)
            .collect();
        BitIter::new(&both).collect()
    }
}
