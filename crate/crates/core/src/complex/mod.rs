//! Čech and Vietoris–Rips complexes, and Betti numbers over GF(2).

mod cech;
mod collapse;
mod graph;
mod homology;
mod rips;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use cech::{build_cech_euclidean, cech_from_points, minimal_enclosing_radius, CECH_REL_TOL};
pub use collapse::collapse_flag;
pub use graph::NeighborGraph;
pub use homology::{betti_numbers, boundary_rank};
pub use rips::{build_rips, flag_complex, rips_core, rips_from_distances, sample_distance};

/// Largest simplex dimension any builder accepts.
pub const MAX_DIM: usize = 3;

/// Default cap on the total number of simplices of one complex.
pub const DEFAULT_BUDGET: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ComplexError {
    #[error("max_dim {0} exceeds the supported maximum {MAX_DIM}")]
    DimensionTooLarge(usize),
    #[error("complex exceeds the simplex budget of {budget}")]
    BudgetExceeded { budget: usize },
    #[error("the Čech builder needs a Euclidean ambient space")]
    NonEuclidean,
    #[error("intrinsic distances need on-manifold samples")]
    NotOnManifold,
    #[error("simplex {0:?} is not strictly increasing or has out-of-range vertices")]
    InvalidSimplex(Vec<u32>),
    #[error("face {face:?} of {simplex:?} is missing")]
    MissingFace { simplex: Vec<u32>, face: Vec<u32> },
}

/// Distance used between sample points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Metric {
    /// Geodesic distance of the ambient space.
    #[default]
    Ambient,
    /// Geodesic distance inside `M`.
    Intrinsic,
}

/// An abstract simplicial complex on vertices `0..n`.
///
/// Simplices of dimension `d` are stored as one flat array of `d+1`-tuples,
/// each strictly increasing, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    max_dim: usize,
    dims: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    /// The discrete complex on `n` vertices, with room for simplices up to
    /// `max_dim`.
    pub fn discrete(n: usize, max_dim: usize) -> Self {
        let mut dims = vec![Vec::new(); max_dim + 1];
        dims[0] = (0..n as u32).collect();
        Self { n_vertices: n, max_dim, dims }
    }

    /// Builds a complex from an explicit simplex list. Faces are not added:
    /// the list must already be closed under taking faces.
    pub fn from_simplices<S: AsRef<[u32]>>(n: usize, simplices: &[S]) -> Result<Self, ComplexError> {
        let max_dim = simplices.iter().map(|s| s.as_ref().len().saturating_sub(1)).max().unwrap_or(0);
        let mut tuples: Vec<Vec<Vec<u32>>> = vec![Vec::new(); max_dim + 1];
        for s in simplices {
            let s = s.as_ref();
            if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&v| v as usize >= n) {
                return Err(ComplexError::InvalidSimplex(s.to_vec()));
            }
            if s.len() > 1 {
                tuples[s.len() - 1].push(s.to_vec());
            }
        }
        let mut c = Self::discrete(n, max_dim);
        for (d, mut list) in tuples.into_iter().enumerate().skip(1) {
            list.sort_unstable();
            list.dedup();
            c.dims[d] = list.into_iter().flatten().collect();
        }
        c.check_closed()?;
        Ok(c)
    }

    /// Builds the closure of a list of simplices.
    pub fn closure<S: AsRef<[u32]>>(n: usize, simplices: &[S]) -> Result<Self, ComplexError> {
        let mut all: Vec<Vec<u32>> = Vec::new();
        for s in simplices {
            let s = s.as_ref();
            if s.is_empty() || s.len() > 32 {
                return Err(ComplexError::InvalidSimplex(s.to_vec()));
            }
            for mask in 1u32..(1 << s.len()) {
                all.push(s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
            }
        }
        Self::from_simplices(n, &all)
    }

    /// Raises the nominal top dimension to `max_dim` without adding
    /// simplices. Never lowers it.
    pub fn with_max_dim(mut self, max_dim: usize) -> Self {
        if max_dim > self.max_dim {
            self.dims.resize(max_dim + 1, Vec::new());
            self.max_dim = max_dim;
        }
        self
    }

    fn check_closed(&self) -> Result<(), ComplexError> {
        let mut face = Vec::new();
        for d in 1..=self.max_dim {
            for s in self.simplices(d) {
                for skip in 0..=d {
                    face.clear();
                    face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                    if self.index_of(&face).is_none() {
                        return Err(ComplexError::MissingFace { simplex: s.to_vec(), face: face.clone() });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Highest dimension the complex was built to (it may have no simplices
    /// there).
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Number of `d`-simplices.
    pub fn count(&self, d: usize) -> usize {
        self.dims.get(d).map_or(0, |v| v.len() / (d + 1))
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.max_dim).map(|d| self.count(d)).collect()
    }

    pub fn total(&self) -> usize {
        (0..=self.max_dim).map(|d| self.count(d)).sum()
    }

    /// The `d`-simplices in lexicographic order.
    pub fn simplices(&self, d: usize) -> core::slice::ChunksExact<'_, u32> {
        match self.dims.get(d) {
            Some(v) => v.chunks_exact(d + 1),
            None => [].chunks_exact(d + 1),
        }
    }

    /// Position of `simplex` among the simplices of its dimension.
    pub fn index_of(&self, simplex: &[u32]) -> Option<usize> {
        let d = simplex.len().checked_sub(1)?;
        let flat = self.dims.get(d)?;
        let n = flat.len() / (d + 1);
        let (mut lo, mut hi) = (0, n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match flat[mid * (d + 1)..(mid + 1) * (d + 1)].cmp(simplex) {
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
                core::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        self.index_of(simplex).is_some()
    }

    /// Whether every simplex of `self` is a simplex of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        (0..=self.max_dim).all(|d| self.simplices(d).all(|s| other.contains(s)))
    }

    /// `Σ (-1)^d · #d-simplices`.
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.max_dim).map(|d| if d % 2 == 0 { self.count(d) as i64 } else { -(self.count(d) as i64) }).sum()
    }
}

/// Betti numbers `β₀..β_k` over GF(2).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    /// The first `k+1` entries, padded with zeros.
    pub fn truncated(&self, k: usize) -> BettiVector {
        BettiVector((0..=k).map(|d| self.0.get(d).copied().unwrap_or(0)).collect())
    }
}

impl From<Vec<usize>> for BettiVector {
    fn from(v: Vec<usize>) -> Self {
        BettiVector(v)
    }
}

/// Comma-separated, as in `1,2,1`.
impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Ground-truth Betti numbers of a catalog model.
pub fn betti_reference(model: &crate::geometry::ManifoldModel) -> BettiVector {
    BettiVector(model.betti_reference())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_lookup() {
        let c = SimplicialComplex::closure(4, &[[0u32, 1, 2]]).unwrap();
        assert_eq!(c.counts(), [4, 3, 1]);
        assert_eq!(c.index_of(&[1, 2]), Some(2));
        assert!(c.contains(&[0, 1, 2]));
        assert!(!c.contains(&[0, 3]));
        assert_eq!(c.euler_characteristic(), 2);
        let lex: Vec<&[u32]> = c.simplices(1).collect();
        assert_eq!(lex, [&[0, 1][..], &[0, 2], &[1, 2]]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(SimplicialComplex::from_simplices(3, &[vec![1u32, 0]]), Err(ComplexError::InvalidSimplex(_))));
        assert!(matches!(SimplicialComplex::from_simplices(2, &[vec![0u32, 2]]), Err(ComplexError::InvalidSimplex(_))));
        assert!(matches!(
            SimplicialComplex::from_simplices(3, &[vec![0u32, 1, 2], vec![0, 1]]),
            Err(ComplexError::MissingFace { .. })
        ));
    }

    #[test]
    fn reference_values() {
        use crate::geometry::ManifoldModel;
        assert_eq!(betti_reference(&ManifoldModel::circle(1.0).unwrap()).0, [1, 1]);
        assert_eq!(betti_reference(&ManifoldModel::torus(1.0, 1.0).unwrap()).0, [1, 2, 1]);
        assert_eq!(betti_reference(&ManifoldModel::sphere(1.0).unwrap()).0, [1, 0, 1]);
        assert_eq!(BettiVector(vec![1, 2, 1]).to_string(), "1,2,1");
    }
}
