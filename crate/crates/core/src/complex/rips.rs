use alloc::vec;
use alloc::vec::Vec;

use super::graph::{ones, NeighborGraph};
use super::{collapse_flag, ComplexError, Metric, SimplicialComplex, MAX_DIM};
use crate::geometry::ManifoldModel;
use crate::sampling::{SampleSet, SampleSource};

/// Clique expansion up to `max_dim`.
///
/// `upper[v]` lists the neighbours of `v` above `v`, ascending; `accept`
/// may veto a clique `σ ∪ {c}` given `σ` (already a simplex) and `c`.
/// Depth-first enumeration in ascending order emits every dimension in
/// lexicographic order.
pub(crate) fn expand(
    upper: &[Vec<u32>],
    max_dim: usize,
    budget: usize,
    mut accept: impl FnMut(&[u32], u32) -> bool,
) -> Result<SimplicialComplex, ComplexError> {
    let n = upper.len();
    if n > budget {
        return Err(ComplexError::BudgetExceeded { budget });
    }
    let mut c = SimplicialComplex::discrete(n, max_dim);
    let mut total = n;
    let mut simplex: Vec<u32> = Vec::with_capacity(max_dim + 1);
    let mut stack: Vec<Vec<u32>> = vec![Vec::new(); max_dim + 1];
    for v in 0..n as u32 {
        if max_dim == 0 {
            break;
        }
        simplex.clear();
        simplex.push(v);
        stack[0].clear();
        stack[0].extend_from_slice(&upper[v as usize]);
        grow(upper, max_dim, budget, &mut accept, &mut c.dims, &mut total, &mut simplex, &mut stack, 0)?;
    }
    Ok(c)
}

#[allow(clippy::too_many_arguments)]
fn grow(
    upper: &[Vec<u32>],
    max_dim: usize,
    budget: usize,
    accept: &mut impl FnMut(&[u32], u32) -> bool,
    dims: &mut [Vec<u32>],
    total: &mut usize,
    simplex: &mut Vec<u32>,
    stack: &mut [Vec<u32>],
    depth: usize,
) -> Result<(), ComplexError> {
    let d = simplex.len();
    let (cur, rest) = stack.split_at_mut(depth + 1);
    let cands = &cur[depth];
    for (i, &c) in cands.iter().enumerate() {
        if !accept(simplex, c) {
            continue;
        }
        *total += 1;
        if *total > budget {
            return Err(ComplexError::BudgetExceeded { budget });
        }
        dims[d].extend_from_slice(simplex);
        dims[d].push(c);
        if d < max_dim {
            let next = &mut rest[0];
            next.clear();
            intersect(&cands[i + 1..], &upper[c as usize], next);
            if !next.is_empty() {
                simplex.push(c);
                grow(upper, max_dim, budget, accept, dims, total, simplex, rest, 0)?;
                simplex.pop();
            }
        }
    }
    Ok(())
}

fn intersect(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

fn check_dim(max_dim: usize) -> Result<(), ComplexError> {
    if max_dim > MAX_DIM {
        Err(ComplexError::DimensionTooLarge(max_dim))
    } else {
        Ok(())
    }
}

/// Rips complex of `n` points: a set is a simplex iff all pairwise
/// distances are at most `scale`.
pub fn rips_from_distances(
    n: usize,
    dist: impl Fn(usize, usize) -> f64,
    scale: f64,
    max_dim: usize,
    budget: usize,
) -> Result<SimplicialComplex, ComplexError> {
    check_dim(max_dim)?;
    let mut upper = vec![Vec::new(); n];
    for (u, list) in upper.iter_mut().enumerate() {
        list.extend((u + 1..n).filter(|&v| dist(u, v) <= scale).map(|v| v as u32));
    }
    expand(&upper, max_dim, budget, |_, _| true)
}

/// Flag complex of the alive vertices of `g`, relabelled `0..k` in
/// increasing order. Also returns the original label of each vertex.
pub fn flag_complex(
    g: &NeighborGraph,
    max_dim: usize,
    budget: usize,
) -> Result<(SimplicialComplex, Vec<usize>), ComplexError> {
    check_dim(max_dim)?;
    let alive = g.alive();
    let mut relabel = vec![u32::MAX; g.len()];
    for (i, &v) in alive.iter().enumerate() {
        relabel[v] = i as u32;
    }
    let upper: Vec<Vec<u32>> =
        alive.iter().map(|&u| ones(g.row(u)).filter(|&v| v > u).map(|v| relabel[v]).collect()).collect();
    Ok((expand(&upper, max_dim, budget, |_, _| true)?, alive))
}

/// Flag complex of the collapsed scale graph: homotopy equivalent to the
/// Rips complex at `scale`, usually with far fewer simplices.
pub fn rips_core(
    n: usize,
    dist: impl Fn(usize, usize) -> f64,
    scale: f64,
    max_dim: usize,
    budget: usize,
) -> Result<SimplicialComplex, ComplexError> {
    check_dim(max_dim)?;
    let mut g = NeighborGraph::from_distances(n, &dist, scale);
    collapse_flag(&mut g, &dist);
    Ok(flag_complex(&g, max_dim, budget)?.0)
}

/// Distance between points `i` and `j` of a sample.
pub fn sample_distance(
    sample: &SampleSet,
    metric: Metric,
) -> Result<impl Fn(usize, usize) -> f64 + '_, ComplexError> {
    if metric == Metric::Intrinsic && !matches!(sample.source, SampleSource::OnManifold) {
        return Err(ComplexError::NotOnManifold);
    }
    let model: ManifoldModel = sample.model;
    let ambient = model.ambient();
    let pts = &sample.points;
    Ok(move |i: usize, j: usize| match metric {
        Metric::Ambient => ambient.distance_unchecked(&pts[i].coords, &pts[j].coords),
        Metric::Intrinsic => model.intrinsic_distance_unchecked(&pts[i].coords, &pts[j].coords),
    })
}

/// Vietoris–Rips complex of a sample at `scale`.
pub fn build_rips(
    sample: &SampleSet,
    scale: f64,
    max_dim: usize,
    metric: Metric,
    budget: usize,
) -> Result<SimplicialComplex, ComplexError> {
    let dist = sample_distance(sample, metric)?;
    rips_from_distances(sample.len(), dist, scale, max_dim, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{betti_numbers, DEFAULT_BUDGET};
    use crate::geometry::Point;
    use crate::math::{sin, PI, TAU};

    fn triangle_dist(i: usize, j: usize) -> f64 {
        if i == j {
            0.0
        } else {
            1.0
        }
    }

    #[test]
    fn equilateral_examples() {
        let c = rips_from_distances(3, triangle_dist, 1.1, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.counts(), [3, 3, 1]);
        assert_eq!(betti_numbers(&c).0, [1, 0, 0]);
        let c = rips_from_distances(3, triangle_dist, 0.9, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(betti_numbers(&c).0[0], 3);
    }

    #[test]
    fn octagon_is_a_cycle() {
        let model = ManifoldModel::circle(1.0).unwrap();
        let points: Vec<Point> = (0..8).map(|i| model.point_at(&[TAU * i as f64 / 8.0])).collect();
        let sample = SampleSet { model, source: SampleSource::OnManifold, seed: 0, points, acceptance_rate: None };
        let c = build_rips(&sample, 2.0 * sin(PI / 8.0) + 0.01, 2, Metric::Ambient, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.counts(), [8, 8, 0]);
        let edges: Vec<&[u32]> = c.simplices(1).collect();
        assert!(edges.iter().all(|e| e[1] - e[0] == 1 || (e[0], e[1]) == (0, 7)));
        assert_eq!(betti_numbers(&c).0, [1, 1, 0]);
    }

    #[test]
    fn budget_is_a_hard_error() {
        let err = rips_from_distances(10, |_, _| 0.0, 1.0, 3, 100).unwrap_err();
        assert_eq!(err, ComplexError::BudgetExceeded { budget: 100 });
        // 10 + 45 + 120 + 210 = 385 simplices
        assert_eq!(rips_from_distances(10, |_, _| 0.0, 1.0, 3, 385).unwrap().total(), 385);
        assert!(matches!(rips_from_distances(3, triangle_dist, 1.0, 4, 10), Err(ComplexError::DimensionTooLarge(4))));
    }

    #[test]
    fn intrinsic_needs_on_manifold_points() {
        let model = ManifoldModel::circle(1.0).unwrap();
        let sample = crate::sampling::sample_tube(&model, 5, 0.2, 1).unwrap();
        assert_eq!(build_rips(&sample, 0.5, 1, Metric::Intrinsic, 10).unwrap_err(), ComplexError::NotOnManifold);
    }

    #[test]
    fn core_matches_full_homology() {
        let model = ManifoldModel::circle(1.0).unwrap();
        for seed in 0..10 {
            let sample = crate::sampling::sample_uniform(&model, 60, seed).unwrap();
            let dist = sample_distance(&sample, Metric::Ambient).unwrap();
            let full = rips_from_distances(60, &dist, 0.45, 2, DEFAULT_BUDGET).unwrap();
            let core = rips_core(60, &dist, 0.45, 2, DEFAULT_BUDGET).unwrap();
            assert!(core.total() <= full.total());
            assert_eq!(betti_numbers(&core).truncated(1), betti_numbers(&full).truncated(1));
        }
    }
}
