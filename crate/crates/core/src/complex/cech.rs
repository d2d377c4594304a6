use alloc::vec;
use alloc::vec::Vec;

use super::rips::expand;
use super::{ComplexError, SimplicialComplex, MAX_DIM};
use crate::geometry::AmbientKind;
use crate::math::{dist_sq, sqrt};
use crate::sampling::SampleSet;

/// Relative slack on the enclosing-radius comparison, so that exact ties
/// such as a circumradius of exactly `eps` survive rounding.
pub const CECH_REL_TOL: f64 = 1e-12;

/// Radius of the smallest ball containing `points` (at most 4 of them).
///
/// Exact up to rounding: the optimum is the circumscribed ball of some
/// subset within its affine hull, so every subset is tried and the
/// smallest one enclosing all points wins.
pub fn minimal_enclosing_radius(points: &[&[f64]]) -> f64 {
    let k = points.len();
    assert!((1..=MAX_DIM + 1).contains(&k), "enclosing balls are computed for 1 to 4 points");
    if k == 1 {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for mask in 1u32..(1 << k) {
        let subset: Vec<&[f64]> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| points[i]).collect();
        let Some(center) = circumcenter(&subset) else { continue };
        let r2 = dist_sq(&center, subset[0]);
        if r2 >= best * best {
            continue;
        }
        if points.iter().all(|p| dist_sq(&center, p) <= r2 * (1.0 + CECH_REL_TOL)) {
            best = sqrt(r2);
        }
    }
    best
}

/// Center of the ball through `pts` within their affine hull, or `None` for
/// affinely dependent points.
fn circumcenter(pts: &[&[f64]]) -> Option<Vec<f64>> {
    let p0 = pts[0];
    let j = pts.len() - 1;
    if j == 0 {
        return Some(p0.to_vec());
    }
    let v: Vec<Vec<f64>> = pts[1..].iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    // Gram system 2·(vᵢ·vₖ) λₖ = |vᵢ|²
    let mut a = vec![vec![0.0; j + 1]; j];
    for i in 0..j {
        for k in 0..j {
            a[i][k] = 2.0 * dot(&v[i], &v[k]);
        }
        a[i][j] = dot(&v[i], &v[i]);
    }
    let scale = a.iter().map(|row| row[..j].iter().fold(0.0f64, |m, x| m.max(x.abs()))).fold(0.0, f64::max);
    for col in 0..j {
        let piv = (col..j).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[piv][col].abs() <= 1e-12 * scale {
            return None;
        }
        a.swap(col, piv);
        for row in 0..j {
            if row != col {
                let f = a[row][col] / a[col][col];
                for c in col..=j {
                    a[row][c] -= f * a[col][c];
                }
            }
        }
    }
    let mut center = p0.to_vec();
    for i in 0..j {
        let lambda = a[i][j] / a[i][i];
        for (c, x) in center.iter_mut().zip(&v[i]) {
            *c += lambda * x;
        }
    }
    Some(center)
}

/// Čech complex of Euclidean points: a set is a simplex iff its closed
/// `eps`-balls share a point, i.e. its minimal enclosing ball has radius
/// at most `eps`.
pub fn cech_from_points(
    points: &[&[f64]],
    eps: f64,
    max_dim: usize,
    budget: usize,
) -> Result<SimplicialComplex, ComplexError> {
    if max_dim > MAX_DIM {
        return Err(ComplexError::DimensionTooLarge(max_dim));
    }
    let n = points.len();
    let reach = 4.0 * eps * eps;
    let mut upper = vec![Vec::new(); n];
    for (u, list) in upper.iter_mut().enumerate() {
        list.extend((u + 1..n).filter(|&v| dist_sq(points[u], points[v]) <= reach).map(|v| v as u32));
    }
    let limit = eps * (1.0 + CECH_REL_TOL);
    let mut buf: Vec<&[f64]> = Vec::with_capacity(MAX_DIM + 1);
    expand(&upper, max_dim, budget, |simplex, c| {
        if simplex.len() < 2 {
            // edges are exactly the pairs within 2·eps
            return true;
        }
        buf.clear();
        buf.extend(simplex.iter().map(|&v| points[v as usize]));
        buf.push(points[c as usize]);
        minimal_enclosing_radius(&buf) <= limit
    })
}

/// Čech complex of a sample in Euclidean space.
pub fn build_cech_euclidean(
    sample: &SampleSet,
    eps: f64,
    max_dim: usize,
    budget: usize,
) -> Result<SimplicialComplex, ComplexError> {
    if sample.model.ambient().kind() != AmbientKind::Euclidean {
        return Err(ComplexError::NonEuclidean);
    }
    let pts: Vec<&[f64]> = sample.points.iter().map(|p| p.coords.as_slice()).collect();
    cech_from_points(&pts, eps, max_dim, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::DEFAULT_BUDGET;

    #[test]
    fn two_points_at_twice_eps() {
        let eps = 0.3;
        let c = cech_from_points(&[&[0.0, 0.0], &[2.0 * eps, 0.0]], eps, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.count(1), 1);
        let c = cech_from_points(&[&[0.0, 0.0], &[2.0 * eps + 1e-9, 0.0]], eps, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.count(1), 0);
    }

    #[test]
    fn equilateral_circumradius() {
        let eps = 0.7;
        let s = 3f64.sqrt() * eps;
        let pts: [&[f64]; 3] = [&[0.0, 0.0], &[s, 0.0], &[s / 2.0, s * 3f64.sqrt() / 2.0]];
        assert!((minimal_enclosing_radius(&pts) - eps).abs() < 1e-15);
        let c = cech_from_points(&pts, eps, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.counts(), [3, 3, 1]);
        let c = cech_from_points(&pts, eps * (1.0 - 1e-9), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.counts(), [3, 3, 0]);
    }

    #[test]
    fn collinear_points() {
        let eps = 0.25;
        let pts: [&[f64]; 3] = [&[0.0, 1.0], &[eps, 1.0], &[2.0 * eps, 1.0]];
        assert!((minimal_enclosing_radius(&pts) - eps).abs() < 1e-15);
        let c = cech_from_points(&pts, eps, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.counts(), [3, 3, 1]);
    }

    #[test]
    fn obtuse_triangle_uses_diameter() {
        // the longest side's diametral ball already contains the apex
        let pts: [&[f64]; 3] = [&[-1.0, 0.0], &[1.0, 0.0], &[0.0, 0.2]];
        assert!((minimal_enclosing_radius(&pts) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn regular_tetrahedron() {
        let pts: [&[f64]; 4] = [&[1.0, 1.0, 1.0], &[1.0, -1.0, -1.0], &[-1.0, 1.0, -1.0], &[-1.0, -1.0, 1.0]];
        assert!((minimal_enclosing_radius(&pts) - 3f64.sqrt()).abs() < 1e-14);
        // coplanar square: circumradius of the square
        let sq: [&[f64]; 4] = [&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[1.0, 1.0, 0.0], &[0.0, 1.0, 0.0]];
        assert!((minimal_enclosing_radius(&sq) - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn curved_ambient_rejected() {
        let m = crate::geometry::ManifoldModel::small_circle(0.5).unwrap();
        let s = crate::sampling::sample_uniform(&m, 5, 0).unwrap();
        assert_eq!(build_cech_euclidean(&s, 0.1, 2, DEFAULT_BUDGET).unwrap_err(), ComplexError::NonEuclidean);
    }
}
