use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{SampleSet, SampleSource, SamplingError};
use crate::geometry::{ManifoldModel, Point};
use crate::math::{cos, cosh, norm, sin, sinh, TAU};

/// Rejection sampling aborts once this many proposals have been made with
/// an acceptance rate below [`MIN_ACCEPTANCE`].
pub const MAX_PROPOSALS: u64 = 1_000_000;
pub const MIN_ACCEPTANCE: f64 = 1e-4;

/// `l` independent draws from the normalized volume measure of `M`.
///
/// Draws are sequential from one stream, so the sample for `l` is a prefix
/// of the sample for `l + 1` with the same seed.
pub fn sample_uniform(model: &ManifoldModel, l: usize, seed: u64) -> Result<SampleSet, SamplingError> {
    if l == 0 {
        return Err(SamplingError::EmptySample);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..l).map(|_| draw_on(model, &mut rng)).collect();
    Ok(SampleSet { model: *model, source: SampleSource::OnManifold, seed, points, acceptance_rate: None })
}

fn angle<R: Rng>(rng: &mut R) -> f64 {
    rng.random::<f64>() * TAU
}

fn draw_on<R: Rng>(model: &ManifoldModel, rng: &mut R) -> Point {
    match *model {
        ManifoldModel::SphereR3 { radius } => {
            let g: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
            let s = radius / norm(&g);
            Point::new(vec![g[0] * s, g[1] * s, g[2] * s])
        }
        ManifoldModel::TorusR4 { .. } => {
            let chart = [angle(rng), angle(rng)];
            model.point_at(&chart)
        }
        _ => model.point_at(&[angle(rng)]),
    }
}

/// `l` independent draws from the normalized volume measure of `T_r(M)`,
/// by rejection from a closed-form superset.
///
/// Supersets: the bounding box of the tube for the Euclidean models, the
/// polar band `|φ − ρ| ≤ r` (uniform in `z`) for the small circle, and the
/// annulus `|s − ρ| ≤ r` in geodesic polar coordinates for `H²`.
pub fn sample_tube(model: &ManifoldModel, l: usize, r: f64, seed: u64) -> Result<SampleSet, SamplingError> {
    if l == 0 {
        return Err(SamplingError::EmptySample);
    }
    let reach = model.reach();
    if !(r > 0.0 && r < reach) {
        return Err(SamplingError::InvalidTubeRadius { r, reach });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(l);
    let mut proposals: u64 = 0;
    while points.len() < l {
        let y = propose(model, r, &mut rng);
        proposals += 1;
        if model.distance_to(&y) < r {
            points.push(Point::new(y));
        } else if proposals >= MAX_PROPOSALS {
            let rate = points.len() as f64 / proposals as f64;
            if rate < MIN_ACCEPTANCE {
                return Err(SamplingError::LowAcceptance { rate, proposals });
            }
        }
    }
    let acceptance_rate = Some(l as f64 / proposals as f64);
    Ok(SampleSet { model: *model, source: SampleSource::Tube { r }, seed, points, acceptance_rate })
}

fn uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

fn propose<R: Rng>(model: &ManifoldModel, r: f64, rng: &mut R) -> Vec<f64> {
    match *model {
        ManifoldModel::CircleR2 { radius } => {
            let h = radius + r;
            vec![uniform(rng, -h, h), uniform(rng, -h, h)]
        }
        ManifoldModel::SphereR3 { radius } => {
            let h = radius + r;
            vec![uniform(rng, -h, h), uniform(rng, -h, h), uniform(rng, -h, h)]
        }
        ManifoldModel::TorusR4 { a, b } => {
            let (ha, hb) = (a + r, b + r);
            vec![uniform(rng, -ha, ha), uniform(rng, -ha, ha), uniform(rng, -hb, hb), uniform(rng, -hb, hb)]
        }
        ManifoldModel::SmallCircleS2 { rho } => {
            // area on S² is uniform in z
            let z = uniform(rng, cos(rho + r), cos(rho - r));
            let th = angle(rng);
            let s = libm::sqrt((1.0 - z * z).max(0.0));
            vec![s * cos(th), s * sin(th), z]
        }
        ManifoldModel::CircleH2 { rho } => {
            // the area element is sinh(s) ds dθ, so cosh(s) is uniform
            let (lo, hi) = ((rho - r).max(0.0), rho + r);
            let c = uniform(rng, cosh(lo), cosh(hi));
            let s = libm::acosh(c);
            let th = angle(rng);
            vec![cosh(s), sinh(s) * cos(th), sinh(s) * sin(th)]
        }
    }
}
