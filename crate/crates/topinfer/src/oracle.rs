//! Brute-force validators: reach estimates, ball-volume expansion against
//! closed forms, and Betti numbers against dense Gaussian elimination.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topinfer_core::bounds::ball_volume_lower_bound;
use topinfer_core::complex::{betti_numbers, rips_from_distances, DEFAULT_BUDGET, MAX_DIM};
use topinfer_core::geometry::reach_estimate_bruteforce;
use topinfer_core::{BoundsError, ManifoldModel, SimplicialComplex};

/// Catalog models with the lattice resolution their reach check uses.
pub const REACH_CASES: [(&str, usize); 6] = [
    ("circle-r2", 400),
    ("sphere2-r3", 100),
    ("torus-r4", 60),
    ("smallcircle-s2:rho=0.15", 400),
    ("greatcircle-s2", 400),
    ("circle-h2:rho=0.5", 200),
];

pub const REACH_TOLERANCE: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct ReachCheck {
    pub model: String,
    pub resolution: usize,
    pub estimate: f64,
    pub closed_form: f64,
    pub relative_error: f64,
}

impl ReachCheck {
    pub fn ok(&self) -> bool {
        self.relative_error <= REACH_TOLERANCE
    }
}

pub fn reach_check(id: &str, resolution: usize) -> Result<ReachCheck, topinfer_core::GeometryError> {
    let model = ManifoldModel::parse(id)?;
    let estimate = reach_estimate_bruteforce(&model, resolution)?;
    let closed_form = model.reach();
    Ok(ReachCheck {
        model: model.identifier(),
        resolution,
        estimate,
        closed_form,
        relative_error: (estimate - closed_form).abs() / closed_form,
    })
}

pub const VOLUME_TOLERANCE: f64 = 0.01;
pub const VOLUME_RADII: [f64; 6] = [0.05, 0.1, 0.15, 0.2, 0.25, 0.3];
pub const VOLUME_MODELS: [&str; 3] = ["circle-r2", "sphere2-r3", "torus-r4"];

#[derive(Debug, Clone, PartialEq)]
pub struct VolumeCheck {
    pub model: String,
    pub r: f64,
    pub expansion: f64,
    pub exact: f64,
    pub relative_error: f64,
}

impl VolumeCheck {
    pub fn ok(&self) -> bool {
        self.relative_error <= VOLUME_TOLERANCE
    }
}

/// Expansion `v_m r^m (1 − s r²/6(m+2))` against the exact intrinsic ball
/// volume of `model` at radius `r`.
pub fn volume_check(model: &ManifoldModel, r: f64) -> Result<VolumeCheck, BoundsError> {
    let expansion = ball_volume_lower_bound(model.dim(), r, model.scalar_curvature())?;
    let exact = model.intrinsic_ball_volume(r).ok_or(BoundsError::NoExactVolume { r })?;
    Ok(VolumeCheck { model: model.identifier(), r, expansion, exact, relative_error: (expansion - exact).abs() / exact })
}

/// A radius at which the curvature term of the unit sphere swallows the
/// whole expansion: `1 − 2·3.5²/24 < 0`.
pub fn vacuous_volume_case() -> Result<f64, BoundsError> {
    ball_volume_lower_bound(2, 3.5, 2.0)
}

/// Betti numbers by dense Gaussian elimination over GF(2), with boundary
/// matrices built from plain simplex lists.
pub fn dense_betti(n_vertices: usize, simplices: &[Vec<Vec<u32>>]) -> Vec<usize> {
    let top = simplices.len().saturating_sub(1);
    let counts: Vec<usize> = (0..=top).map(|d| if d == 0 { n_vertices } else { simplices[d].len() }).collect();
    let mut ranks = vec![0usize; top + 2];
    for d in 1..=top {
        let index: HashMap<&[u32], usize> = simplices[d - 1].iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut rows: Vec<Vec<bool>> = simplices[d]
            .iter()
            .map(|s| {
                let mut row = vec![false; counts[d - 1]];
                for skip in 0..s.len() {
                    let face: Vec<u32> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    let i = if d == 1 { face[0] as usize } else { index[face.as_slice()] };
                    row[i] = true;
                }
                row
            })
            .collect();
        ranks[d] = gf2_rank(&mut rows);
    }
    (0..=top).map(|d| counts[d] - ranks[d] - ranks[d + 1]).collect()
}

fn gf2_rank(rows: &mut [Vec<bool>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                for k in c..cols {
                    let bit = rows[rank][k];
                    rows[r][k] ^= bit;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A random complex on at most 12 vertices: the closure of random
/// simplices, a Rips complex of random plane points, or the flag complex
/// of a random graph.
pub fn random_complex(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    let n = rng.random_range(1..=12usize);
    match rng.random_range(0..3) {
        0 => {
            let k = rng.random_range(1..=10);
            let tops: Vec<Vec<u32>> = (0..k)
                .map(|_| {
                    let size = rng.random_range(1..=(MAX_DIM + 1).min(n));
                    let mut s: Vec<u32> = Vec::new();
                    while s.len() < size {
                        let v = rng.random_range(0..n as u32);
                        if !s.contains(&v) {
                            s.push(v);
                        }
                    }
                    s.sort_unstable();
                    s
                })
                .collect();
            SimplicialComplex::closure(n, &tops).expect("valid simplices").with_max_dim(MAX_DIM)
        }
        1 => {
            let pts: Vec<[f64; 2]> = (0..n).map(|_| [rng.random::<f64>(), rng.random::<f64>()]).collect();
            let scale = rng.random_range(0.1..0.8);
            let dist = |i: usize, j: usize| ((pts[i][0] - pts[j][0]).powi(2) + (pts[i][1] - pts[j][1]).powi(2)).sqrt();
            rips_from_distances(n, dist, scale, MAX_DIM, DEFAULT_BUDGET).expect("small complex")
        }
        _ => {
            let p: f64 = rng.random_range(0.2..0.8);
            let edges: Vec<bool> = (0..n * n).map(|_| rng.random_bool(p)).collect();
            let dist = |i: usize, j: usize| if edges[i.min(j) * n + i.max(j)] { 0.0 } else { 1.0 };
            rips_from_distances(n, dist, 0.5, MAX_DIM, DEFAULT_BUDGET).expect("small complex")
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomologyOracleSummary {
    pub cases: usize,
    pub betti_mismatches: usize,
    pub euler_failures: usize,
    /// First disagreement, for the error message.
    pub first_failure: Option<String>,
}

impl HomologyOracleSummary {
    pub fn ok(&self) -> bool {
        self.betti_mismatches == 0 && self.euler_failures == 0
    }
}

/// Compares [`betti_numbers`] with [`dense_betti`] on `cases` random
/// complexes and checks the Euler–Poincaré identity on each.
pub fn homology_oracle(cases: usize, seed: u64) -> HomologyOracleSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = HomologyOracleSummary { cases, betti_mismatches: 0, euler_failures: 0, first_failure: None };
    for case in 0..cases {
        let c = random_complex(&mut rng);
        let lists: Vec<Vec<Vec<u32>>> =
            (0..=c.max_dim()).map(|d| c.simplices(d).map(<[u32]>::to_vec).collect()).collect();
        let fast = betti_numbers(&c);
        let slow = dense_betti(c.n_vertices(), &lists);
        if fast.0 != slow {
            summary.betti_mismatches += 1;
            summary.first_failure.get_or_insert(format!("case {case}: {fast} vs oracle {slow:?}"));
        }
        if fast.euler_characteristic() != c.euler_characteristic() {
            summary.euler_failures += 1;
            summary.first_failure.get_or_insert(format!("case {case}: Euler characteristic mismatch"));
        }
    }
    summary
}
