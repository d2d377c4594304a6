use alloc::vec;
use alloc::vec::Vec;

/// An undirected graph stored as closed-neighbourhood bitsets: row `v`
/// holds `N[v] ∪ {v}`. A vertex is alive while its own bit is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborGraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl NeighborGraph {
    /// `n` isolated vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut g = Self { n, words, bits: vec![0; n * words] };
        for v in 0..n {
            g.set(v, v);
        }
        g
    }

    /// The scale graph: `u ~ v` iff `dist(u, v) ≤ scale`.
    pub fn from_distances(n: usize, dist: impl Fn(usize, usize) -> f64, scale: f64) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if dist(u, v) <= scale {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    #[inline]
    fn clear(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    pub fn has(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.has(v, v)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.set(u, v);
        self.set(v, u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        debug_assert_ne!(u, v);
        self.clear(u, v);
        self.clear(v, u);
    }

    /// Deletes `v` and its edges.
    pub fn remove_vertex(&mut self, v: usize) {
        for u in self.neighbors(v) {
            self.clear(u, v);
        }
        let w = self.words;
        self.bits[v * w..(v + 1) * w].fill(0);
    }

    /// Open neighbourhood of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        ones(self.row(v)).filter(|&u| u != v).collect()
    }

    pub fn alive(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.is_alive(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        let ones: usize = self.bits.iter().map(|w| w.count_ones() as usize).sum();
        (ones - self.alive().len()) / 2
    }

    /// Whether `N[u] ∩ N[v] ⊆ N[w]`.
    pub(crate) fn dominates_edge(&self, w: usize, u: usize, v: usize) -> bool {
        let (ru, rv, rw) = (self.row(u), self.row(v), self.row(w));
        ru.iter().zip(rv).zip(rw).all(|((a, b), c)| a & b & !c == 0)
    }

    /// Whether `N[v] ⊆ N[w]`.
    pub(crate) fn dominates_vertex(&self, w: usize, v: usize) -> bool {
        self.row(v).iter().zip(self.row(w)).all(|(a, c)| a & !c == 0)
    }

    /// Common neighbours of `u` and `v`, excluding both.
    pub(crate) fn common_neighbors(&self, u: usize, v: usize, out: &mut Vec<usize>) {
        out.clear();
        for (i, (a, b)) in self.row(u).iter().zip(self.row(v)).enumerate() {
            let mut x = a & b;
            while x != 0 {
                let c = i * 64 + x.trailing_zeros() as usize;
                x &= x - 1;
                if c != u && c != v {
                    out.push(c);
                }
            }
        }
    }
}

/// Indices of set bits, ascending.
pub(crate) fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(i, &w)| {
        let mut x = w;
        core::iter::from_fn(move || {
            if x == 0 {
                return None;
            }
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i * 64 + b)
        })
    })
}
