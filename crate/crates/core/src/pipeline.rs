//! One trial of the end-to-end experiment: sample, test density, build a
//! complex and compare its Betti numbers with the model's.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::bounds::Regime;
use crate::complex::{betti_numbers, cech_from_points, rips_core, BettiVector, Metric, SimplicialComplex};
use crate::geometry::{AmbientKind, ManifoldModel};
use crate::sampling::{density_resolution, sample_tube, sample_uniform, trial_seed, SampleSet, SamplingError};

/// Which complex a trial builds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComplexKind {
    /// Čech complex of radius `eps`; Euclidean ambient only.
    Cech,
    /// Flag complex of the collapsed Rips graph at the given scale.
    RipsCore { scale: f64, metric: Metric },
}

impl ComplexKind {
    /// Čech for clean samples measured with the Euclidean ambient metric,
    /// otherwise Rips at scale `eps`.
    pub fn default_for(model: &ManifoldModel, regime: Regime, eps: f64, metric: Metric) -> Self {
        let euclidean = model.ambient().kind() == AmbientKind::Euclidean;
        match (regime, metric) {
            (Regime::Clean, Metric::Ambient) if euclidean => ComplexKind::Cech,
            (Regime::Clean, metric) => ComplexKind::RipsCore { scale: eps, metric },
            (Regime::Noisy { .. }, _) => ComplexKind::RipsCore { scale: eps, metric: Metric::Ambient },
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ComplexKind::Cech => "cech".to_string(),
            ComplexKind::RipsCore { scale, metric: Metric::Ambient } => alloc::format!("rips-ambient@{scale}"),
            ComplexKind::RipsCore { scale, metric: Metric::Intrinsic } => alloc::format!("rips-intrinsic@{scale}"),
        }
    }
}

/// Everything a trial needs besides its index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSpec {
    pub model: ManifoldModel,
    pub regime: Regime,
    pub eps: f64,
    pub l: usize,
    /// Highest homology dimension compared; complexes are built one
    /// dimension higher so that `β_max_dim` is exact.
    pub max_dim: usize,
    pub complex: ComplexKind,
    pub budget: usize,
    pub seed: u64,
}

impl TrialSpec {
    /// Radius of the density test: `eps` in `M`, or `eps/2` with respect to
    /// `M` in the noisy regime.
    pub fn density_radius(&self) -> f64 {
        match self.regime {
            Regime::Clean => self.eps,
            Regime::Noisy { .. } => self.eps / 2.0,
        }
    }

    pub fn reference(&self) -> BettiVector {
        BettiVector(self.model.betti_reference()).truncated(self.max_dim)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub index: u64,
    pub seed: u64,
    pub dense: bool,
    pub betti: Option<BettiVector>,
    pub matched: bool,
    /// Size of the complex whose homology was computed.
    pub simplices: usize,
    /// Why the trial produced no Betti numbers; counted as a failure.
    pub error: Option<String>,
}

/// Draws the sample of trial `index`.
pub fn trial_sample(spec: &TrialSpec, index: u64) -> Result<SampleSet, SamplingError> {
    let seed = trial_seed(spec.seed, index);
    match spec.regime {
        Regime::Clean => sample_uniform(&spec.model, spec.l, seed),
        Regime::Noisy { tube_r } => sample_tube(&spec.model, spec.l, tube_r, seed),
    }
}

/// Builds the complex of a trial sample.
pub fn trial_complex(spec: &TrialSpec, sample: &SampleSet) -> Result<SimplicialComplex, crate::ComplexError> {
    let dim = spec.max_dim + 1;
    match spec.complex {
        ComplexKind::Cech => {
            if sample.model.ambient().kind() != AmbientKind::Euclidean {
                return Err(crate::ComplexError::NonEuclidean);
            }
            let pts: Vec<&[f64]> = sample.points.iter().map(|p| p.coords.as_slice()).collect();
            cech_from_points(&pts, spec.eps, dim, spec.budget)
        }
        ComplexKind::RipsCore { scale, metric } => {
            let dist = crate::complex::sample_distance(sample, metric)?;
            rips_core(sample.len(), dist, scale, dim, spec.budget)
        }
    }
}

/// Runs trial `index`. Deterministic in `(spec, index)`.
pub fn run_trial(spec: &TrialSpec, index: u64) -> TrialOutcome {
    let seed = trial_seed(spec.seed, index);
    let mut out = TrialOutcome { index, seed, dense: false, betti: None, matched: false, simplices: 0, error: None };
    let sample = match trial_sample(spec, index) {
        Ok(s) => s,
        Err(e) => {
            out.error = Some(e.to_string());
            return out;
        }
    };
    let radius = spec.density_radius();
    let resolution = density_resolution(&spec.model, radius);
    let dense = match spec.regime {
        Regime::Clean => sample.is_eps_dense_in_m(radius, resolution),
        Regime::Noisy { .. } => sample.is_eps_dense_wrt_m(radius, resolution),
    };
    match dense {
        Ok(d) => out.dense = d,
        Err(e) => out.error = Some(e.to_string()),
    }
    match trial_complex(spec, &sample) {
        Ok(c) => {
            out.simplices = c.total();
            let betti = betti_numbers(&c).truncated(spec.max_dim);
            out.matched = out.error.is_none() && betti == spec.reference();
            out.betti = Some(betti);
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}

/// Fractions of dense and of matching trials.
pub fn rates(outcomes: &[TrialOutcome]) -> (f64, f64) {
    if outcomes.is_empty() {
        return (0.0, 0.0);
    }
    let n = outcomes.len() as f64;
    let dense = outcomes.iter().filter(|o| o.dense).count() as f64 / n;
    let matched = outcomes.iter().filter(|o| o.matched).count() as f64 / n;
    (dense, matched)
}
