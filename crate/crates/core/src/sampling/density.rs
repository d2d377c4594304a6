use super::{sample_tube, sample_uniform, trial_seed, SamplingError};
use crate::geometry::{ManifoldModel, Point};

/// Distance used by a density test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityMetric {
    /// Geodesic distance in `M`; points must lie on `M`.
    Intrinsic,
    /// Geodesic distance in `N`.
    Ambient,
}

/// Sampling law and density notion of a coverage experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoverageMode {
    /// Uniform on `M`, density in `M`.
    InM,
    /// Uniform in `T_r(M)`, density with respect to `M`.
    WrtM { tube_r: f64 },
}

/// Smallest grid resolution whose spacing is at most `eps/10`.
pub fn density_resolution(model: &ManifoldModel, eps: f64) -> usize {
    model.resolution_for_spacing(eps / 10.0)
}

/// Conservative grid test of ε-density.
///
/// With grid spacing `h`, every node of [`ManifoldModel::grid`] must have a
/// sample point strictly closer than `eps − h`. Every point of `M` is
/// within `h` of a node, so a positive answer certifies density on all of
/// `M`; a negative one may be a false alarm.
pub fn is_dense(
    model: &ManifoldModel,
    points: &[Point],
    eps: f64,
    resolution: usize,
    metric: DensityMetric,
) -> Result<bool, SamplingError> {
    if !(eps > 0.0) {
        return Err(SamplingError::InvalidEps(eps));
    }
    if points.is_empty() {
        return Ok(false);
    }
    if metric == DensityMetric::Intrinsic && eps > model.diameter() {
        // one open ball of radius above the diameter is all of M
        return Ok(true);
    }
    let h = model.grid_spacing(resolution);
    if h > eps / 10.0 {
        return Err(SamplingError::ResolutionTooCoarse { spacing: h, required: eps / 10.0 });
    }
    let radius = eps - h;
    let ambient = model.ambient();
    let dist = |a: &[f64], b: &[f64]| match metric {
        DensityMetric::Intrinsic => model.intrinsic_distance_unchecked(a, b),
        DensityMetric::Ambient => ambient.distance_unchecked(a, b),
    };
    // neighbouring nodes are usually covered by the same point
    let mut last = 0;
    for node in model.grid(resolution) {
        let y = &node.coords;
        if dist(y, &points[last].coords) < radius {
            continue;
        }
        match points.iter().position(|x| dist(y, &x.coords) < radius) {
            Some(i) => last = i,
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// Outcome of trial `index`: draw `l` points with the derived seed and run
/// the density test of `mode` at the automatic resolution.
pub fn coverage_trial(
    model: &ManifoldModel,
    l: usize,
    eps: f64,
    mode: CoverageMode,
    seed: u64,
    index: u64,
) -> Result<bool, SamplingError> {
    if l == 0 {
        return Ok(false);
    }
    let s = trial_seed(seed, index);
    let resolution = density_resolution(model, eps);
    match mode {
        CoverageMode::InM => sample_uniform(model, l, s)?.is_eps_dense_in_m(eps, resolution),
        CoverageMode::WrtM { tube_r } => sample_tube(model, l, tube_r, s)?.is_eps_dense_wrt_m(eps, resolution),
    }
}

/// Fraction of `trials` seeded rounds whose sample passes the density test.
pub fn empirical_coverage_probability(
    model: &ManifoldModel,
    l: usize,
    eps: f64,
    trials: usize,
    mode: CoverageMode,
    seed: u64,
) -> Result<f64, SamplingError> {
    if trials == 0 {
        return Err(SamplingError::NoTrials);
    }
    let mut hits = 0usize;
    for i in 0..trials {
        hits += coverage_trial(model, l, eps, mode, seed, i as u64)? as usize;
    }
    Ok(hits as f64 / trials as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{cos, sin, TAU};
    use crate::sampling::{SampleSet, SampleSource};
    use alloc::vec;
    use alloc::vec::Vec;

    fn circle() -> ManifoldModel {
        ManifoldModel::circle(1.0).unwrap()
    }

    fn ring(n: usize) -> Vec<Point> {
        (0..n).map(|i| circle().point_at(&[TAU * i as f64 / n as f64])).collect()
    }

    fn on(points: Vec<Point>) -> SampleSet {
        SampleSet { model: circle(), source: SampleSource::OnManifold, seed: 0, points, acceptance_rate: None }
    }

    #[test]
    fn evenly_spaced_ring_is_dense() {
        let res = density_resolution(&circle(), 0.3);
        assert!(on(ring(63)).is_eps_dense_in_m(0.3, res).unwrap());
        assert!(!on(ring(1)).is_eps_dense_in_m(0.3, res).unwrap());
    }

    #[test]
    fn coarse_grid_rejected() {
        let err = on(ring(63)).is_eps_dense_in_m(0.3, 20).unwrap_err();
        assert!(matches!(err, SamplingError::ResolutionTooCoarse { .. }));
    }

    #[test]
    fn tube_sample_has_no_intrinsic_density() {
        let t = sample_tube(&circle(), 10, 0.5, 1).unwrap();
        assert_eq!(t.is_eps_dense_in_m(0.3, 1000), Err(SamplingError::TubeSample));
    }

    #[test]
    fn large_eps_and_empty_samples() {
        for m in [circle(), ManifoldModel::sphere(1.0).unwrap(), ManifoldModel::torus(1.0, 1.0).unwrap()] {
            let s = sample_uniform(&m, 1, 4).unwrap();
            assert!(s.is_eps_dense_in_m(m.diameter() + 0.1, 2).unwrap());
            let empty = SampleSet { points: Vec::new(), ..s };
            assert!(!empty.is_eps_dense_in_m(100.0, 2).unwrap());
            assert!(!empty.is_eps_dense_wrt_m(100.0, 2).unwrap());
        }
    }

    #[test]
    fn two_offset_points_cover_wrt() {
        let pts = vec![Point::new(vec![1.1, 0.0]), Point::new(vec![-1.1, 0.0])];
        let s = SampleSet { points: pts, source: SampleSource::Tube { r: 0.2 }, ..on(Vec::new()) };
        assert!(s.is_eps_dense_wrt_m(2.0, density_resolution(&circle(), 2.0)).unwrap());
        // the farthest circle point is (0, ±1), at √2.21 ≈ 1.487
        let worst = (0..100_000)
            .map(|i| {
                let t = TAU * i as f64 / 1e5;
                let d = |x: f64| libm::sqrt((cos(t) - x).powi(2) + sin(t).powi(2));
                d(1.1).min(d(-1.1))
            })
            .fold(0.0, f64::max);
        assert!((worst - 2.21f64.sqrt()).abs() < 1e-9);
        assert!(!s.is_eps_dense_wrt_m(1.45, density_resolution(&circle(), 1.45)).unwrap());
    }

    #[test]
    fn dense_in_implies_dense_wrt() {
        for seed in 0..20 {
            let s = sample_uniform(&circle(), 60, seed).unwrap();
            let res = density_resolution(&circle(), 0.3);
            if s.is_eps_dense_in_m(0.3, res).unwrap() {
                assert!(s.is_eps_dense_wrt_m(0.3, res).unwrap());
            }
        }
    }

    #[test]
    fn grid_test_is_conservative() {
        // a positive verdict survives a ten times finer grid and the exact gap
        let eps = 0.3;
        let res = density_resolution(&circle(), eps);
        let mut positives = 0;
        for seed in 0..200 {
            let s = sample_uniform(&circle(), 80, seed).unwrap();
            if s.is_eps_dense_in_m(eps, res).unwrap() {
                positives += 1;
                assert!(s.is_eps_dense_in_m(eps, 10 * res).unwrap());
                let mut angles: Vec<f64> =
                    s.points.iter().map(|p| libm::atan2(p.coords[1], p.coords[0]).rem_euclid(TAU)).collect();
                angles.sort_by(f64::total_cmp);
                let wrap = angles[0] + TAU - angles[angles.len() - 1];
                let gap = angles.windows(2).map(|w| w[1] - w[0]).fold(wrap, f64::max);
                assert!(gap / 2.0 < eps);
            }
        }
        assert!(positives > 20);
    }

    #[test]
    fn coverage_edge_cases() {
        assert_eq!(empirical_coverage_probability(&circle(), 0, 0.3, 10, CoverageMode::InM, 1).unwrap(), 0.0);
        assert_eq!(empirical_coverage_probability(&circle(), 1, 7.0, 10, CoverageMode::InM, 1).unwrap(), 1.0);
        assert_eq!(empirical_coverage_probability(&circle(), 5, 0.3, 0, CoverageMode::InM, 1), Err(SamplingError::NoTrials));
    }

    #[test]
    fn coverage_monotone_in_l() {
        // nested samples: the l-point sample is a prefix of the l+1 one
        let eps = 0.3;
        let res = density_resolution(&circle(), eps);
        for i in 0..30u64 {
            let full = sample_uniform(&circle(), 300, trial_seed(8, i)).unwrap();
            let mut was = false;
            for l in (50..=300).step_by(25) {
                let now = full.prefix(l).is_eps_dense_in_m(eps, res).unwrap();
                assert!(now || !was);
                was = now;
            }
        }
    }

    #[test]
    fn coverage_is_deterministic() {
        let a = empirical_coverage_probability(&circle(), 80, 0.3, 40, CoverageMode::InM, 5).unwrap();
        let b = empirical_coverage_probability(&circle(), 80, 0.3, 40, CoverageMode::InM, 5).unwrap();
        assert_eq!(a, b);
        assert!(a > 0.0 && a < 1.0, "{a}");
    }
}
