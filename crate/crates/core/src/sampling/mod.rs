//! Seeded uniform samples on a model or in its tube, and ε-density tests.

mod density;
mod draw;
mod seed;

use alloc::vec::Vec;

use crate::geometry::{ManifoldModel, Point};

pub use density::{density_resolution, empirical_coverage_probability, is_dense, coverage_trial, CoverageMode, DensityMetric};
pub use draw::{sample_tube, sample_uniform, MAX_PROPOSALS, MIN_ACCEPTANCE};
pub use seed::{splitmix64, trial_seed};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SamplingError {
    #[error("sample size must be at least 1")]
    EmptySample,
    #[error("tube radius {r} must lie in (0, {reach})")]
    InvalidTubeRadius { r: f64, reach: f64 },
    #[error("acceptance rate {rate:e} after {proposals} proposals is below the floor; superset too loose")]
    LowAcceptance { rate: f64, proposals: u64 },
    #[error("grid spacing {spacing} exceeds eps/10 = {required}")]
    ResolutionTooCoarse { spacing: f64, required: f64 },
    #[error("intrinsic density is undefined for tube samples")]
    TubeSample,
    #[error("eps must be positive, got {0}")]
    InvalidEps(f64),
    #[error("trials must be at least 1")]
    NoTrials,
}

/// Where the points of a [`SampleSet`] were drawn from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SampleSource {
    OnManifold,
    Tube { r: f64 },
}

/// `l` points drawn from a model, with enough provenance to replay them.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub model: ManifoldModel,
    pub source: SampleSource,
    pub seed: u64,
    pub points: Vec<Point>,
    /// Fraction of accepted proposals, for rejection-sampled tubes.
    pub acceptance_rate: Option<f64>,
}

impl SampleSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Whether every point of `M` has a sample point within intrinsic
    /// distance `eps`. Only defined for on-manifold samples.
    pub fn is_eps_dense_in_m(&self, eps: f64, resolution: usize) -> Result<bool, SamplingError> {
        if let SampleSource::Tube { .. } = self.source {
            return Err(SamplingError::TubeSample);
        }
        is_dense(&self.model, &self.points, eps, resolution, DensityMetric::Intrinsic)
    }

    /// Whether every point of `M` has a sample point within ambient
    /// distance `eps`.
    pub fn is_eps_dense_wrt_m(&self, eps: f64, resolution: usize) -> Result<bool, SamplingError> {
        is_dense(&self.model, &self.points, eps, resolution, DensityMetric::Ambient)
    }

    /// The first `l` points, which are exactly the sample drawn with `l`
    /// and the same seed.
    pub fn prefix(&self, l: usize) -> SampleSet {
        SampleSet { points: self.points[..l.min(self.len())].to_vec(), ..self.clone() }
    }
}

/// Intrinsic density test, with the model taken from the sample.
pub fn is_eps_dense_in_m(sample: &SampleSet, eps: f64, resolution: usize) -> Result<bool, SamplingError> {
    sample.is_eps_dense_in_m(eps, resolution)
}

/// Ambient density test, with the model taken from the sample.
pub fn is_eps_dense_wrt_m(sample: &SampleSet, eps: f64, resolution: usize) -> Result<bool, SamplingError> {
    sample.is_eps_dense_wrt_m(eps, resolution)
}
