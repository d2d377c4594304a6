//! Brute-force reach estimation, used to cross-check the closed-form τ.

use alloc::vec::Vec;

use super::{GeometryError, ManifoldModel};
use crate::math::{cos, sin, sinh, PI, TAU};

const MIN_RESOLUTION: usize = 50;

/// Estimates the reach of `model` from discretized medial-axis detection.
///
/// `M` is replaced by [`ManifoldModel::grid`] at `resolution`, and a
/// neighborhood of `M` in `N` by a lattice. A lattice point is marked
/// medial when its nearest manifold node and the nearest node lying more
/// than a third of `M`'s diameter away (intrinsically) are equidistant
/// within the squared grid spacing. The estimate is the smallest distance
/// from a marked point to the manifold grid, or `+∞` when nothing is
/// marked.
///
/// Lattices are chosen with odd per-axis counts on symmetric boxes, so the
/// ambient grid has about `resolution²` points whatever the dimension.
pub fn reach_estimate_bruteforce(model: &ManifoldModel, resolution: usize) -> Result<f64, GeometryError> {
    if resolution < MIN_RESOLUTION {
        return Err(GeometryError::ResolutionTooSmall { resolution, min: MIN_RESOLUTION });
    }
    let ambient = model.ambient();
    let nodes: Vec<Vec<f64>> = model.grid(resolution).into_iter().map(|p| p.coords).collect();
    let spacing = model.grid_spacing(resolution);
    let tol = spacing * spacing;
    let floor = model.diameter() / 3.0;

    let mut best = f64::INFINITY;
    let mut dists = alloc::vec![0.0; nodes.len()];
    for x in ambient_lattice(model, resolution) {
        let mut nearest = 0;
        for (k, q) in nodes.iter().enumerate() {
            dists[k] = ambient.distance_unchecked(&x, q);
            if dists[k] < dists[nearest] {
                nearest = k;
            }
        }
        let d1 = dists[nearest];
        if d1 >= best {
            continue;
        }
        let q1 = &nodes[nearest];
        let d2 = nodes
            .iter()
            .zip(&dists)
            .filter(|(q, _)| model.intrinsic_distance_unchecked(q1, q) > floor)
            .map(|(_, &d)| d)
            .fold(f64::INFINITY, f64::min);
        if d2 - d1 <= tol {
            best = d1;
        }
    }
    Ok(best)
}

fn odd(k: usize) -> usize {
    k | 1
}

/// Symmetric lattice in `[-half, half]^dim` with `per_axis` points per axis.
fn cube_lattice(dim: usize, per_axis: usize, half: f64) -> Vec<Vec<f64>> {
    let step = 2.0 * half / (per_axis - 1) as f64;
    let axis: Vec<f64> = (0..per_axis).map(|i| -half + i as f64 * step).collect();
    let total = per_axis.pow(dim as u32);
    (0..total)
        .map(|mut idx| {
            (0..dim)
                .map(|_| {
                    let c = axis[idx % per_axis];
                    idx /= per_axis;
                    c
                })
                .collect()
        })
        .collect()
}

fn ambient_lattice(model: &ManifoldModel, resolution: usize) -> Vec<Vec<f64>> {
    let res = resolution as f64;
    match *model {
        ManifoldModel::CircleR2 { radius } => cube_lattice(2, odd(resolution), 1.5 * radius),
        ManifoldModel::SphereR3 { radius } => {
            cube_lattice(3, odd(libm::ceil(libm::pow(res, 2.0 / 3.0)) as usize), 1.5 * radius)
        }
        ManifoldModel::TorusR4 { a, b } => cube_lattice(4, odd(libm::ceil(libm::sqrt(res)) as usize), 1.5 * a.max(b)),
        ManifoldModel::SmallCircleS2 { .. } => {
            // geographic lattice over the whole sphere, poles included
            let rows = resolution;
            let cols = 2 * resolution;
            let mut pts = Vec::with_capacity((rows + 1) * cols);
            for i in 0..=rows {
                let phi = PI * i as f64 / rows as f64;
                let count = if i == 0 || i == rows { 1 } else { cols };
                for j in 0..count {
                    let th = TAU * j as f64 / cols as f64;
                    pts.push(alloc::vec![sin(phi) * cos(th), sin(phi) * sin(th), cos(phi)]);
                }
            }
            pts
        }
        ManifoldModel::CircleH2 { rho } => {
            let ambient = model.ambient();
            cube_lattice(2, odd(resolution), sinh(2.0 * rho)).iter().map(|v| ambient.lift(v)).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_coarse_resolution() {
        let c = ManifoldModel::circle(1.0).unwrap();
        assert!(matches!(reach_estimate_bruteforce(&c, 10), Err(GeometryError::ResolutionTooSmall { .. })));
    }

    #[test]
    fn circle_reach() {
        let c = ManifoldModel::circle(1.0).unwrap();
        let est = reach_estimate_bruteforce(&c, 400).unwrap();
        assert!((est - 1.0).abs() <= 0.05, "{est}");
    }

    #[test]
    fn hyperbolic_circle_reach() {
        let h = ManifoldModel::hyperbolic_circle(0.5).unwrap();
        let est = reach_estimate_bruteforce(&h, 200).unwrap();
        assert!((est - 0.5).abs() <= 0.025, "{est}");
    }
}
