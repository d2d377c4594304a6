//! Runs an [`ExperimentConfig`]: admissibility, sample size, seeded trials
//! in parallel, aggregation.

use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use topinfer_core::bounds::{
    check_clean_admissibility, check_noisy_admissibility, three_sigma, CoverageInputs,
};
use topinfer_core::complex::DEFAULT_BUDGET;
use topinfer_core::geometry::geometric_params;
use topinfer_core::pipeline::{rates, run_trial, ComplexKind, TrialSpec};
use topinfer_core::{AdmissibilityReport, BoundsError, GeometryError, Regime};

use crate::config::{ConfigError, ExperimentConfig};
use crate::report::{AdmissibilityRecord, ExperimentReport, TrialRecord, Verdict};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("inadmissible configuration\n{0}")]
    Inadmissible(AdmissibilityRecord),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("cannot start the worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("cannot write {path}: {message}")]
    Write { path: String, message: String },
}

/// The admissibility checks of the config's regime.
pub fn admissibility(config: &ExperimentConfig) -> Result<AdmissibilityReport, GeometryError> {
    let params = geometric_params(&config.model, None)?;
    Ok(match config.regime {
        Regime::Clean => check_clean_admissibility(&params, config.eps),
        Regime::Noisy { tube_r } => check_noisy_admissibility(&params, config.eps, tube_r),
    })
}

/// Checks admissibility, then runs every trial on `workers` threads and
/// assembles the report. Nothing is written to disk.
pub fn run_experiment(config: &ExperimentConfig, workers: usize) -> Result<ExperimentReport, RunError> {
    let report = admissibility(config)?;
    let admissibility = AdmissibilityRecord::from(&report);
    if !report.ok() {
        return Err(RunError::Inadmissible(admissibility));
    }
    let tube_r = match config.regime {
        Regime::Clean => None,
        Regime::Noisy { tube_r } => Some(tube_r),
    };
    let params = geometric_params(&config.model, tube_r)?;
    let complex = ComplexKind::default_for(&config.model, config.regime, config.eps, config.metric);
    let mut spec = TrialSpec {
        model: config.model,
        regime: config.regime,
        eps: config.eps,
        l: 0,
        max_dim: config.max_dim,
        complex,
        budget: DEFAULT_BUDGET,
        seed: config.seed,
    };
    let radius = spec.density_radius();
    let inputs = CoverageInputs::expansion(&params, radius, config.regime)?;
    let phi = inputs.sample_size(config.p)?;
    spec.l = config.l_override.unwrap_or(phi);
    let bound = inputs.bound(spec.l);

    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build()?;
    let outcomes: Vec<(topinfer_core::pipeline::TrialOutcome, f64)> = pool.install(|| {
        (0..config.trials as u64)
            .into_par_iter()
            .map(|i| {
                let start = Instant::now();
                let o = run_trial(&spec, i);
                (o, start.elapsed().as_secs_f64() * 1e3)
            })
            .collect()
    });
    let trials: Vec<TrialRecord> = outcomes
        .iter()
        .map(|(o, ms)| TrialRecord {
            trial: o.index,
            seed: o.seed,
            dense: o.dense,
            betti: o.betti.as_ref().map(|b| b.to_string()),
            matched: o.matched,
            simplices: o.simplices,
            error: o.error.clone(),
            wall_ms: *ms,
        })
        .collect();
    let just: Vec<_> = outcomes.into_iter().map(|(o, _)| o).collect();
    let (density_rate, homology_rate) = rates(&just);

    let homology_threshold = config.p - three_sigma(config.p, config.trials);
    let density_threshold = bound.g - three_sigma(0.5, config.trials);
    let homology_ok = homology_rate >= homology_threshold;
    let bound_consistent = density_rate >= density_threshold;
    let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    Ok(ExperimentReport {
        config: config.echo(),
        phi,
        l: spec.l,
        density_radius: radius,
        complex: complex.describe(),
        reference_betti: spec.reference().to_string(),
        admissibility,
        bound: bound.into(),
        bound_g: bound.g,
        trials,
        empirical_density_rate: density_rate,
        empirical_homology_rate: homology_rate,
        homology_threshold,
        density_threshold,
        homology_ok,
        bound_consistent,
        verdict: if homology_ok && bound_consistent { Verdict::Pass } else { Verdict::Fail },
        timestamp,
    })
}

/// Writes `<output>.report.json` and `<output>.trials.csv`.
pub fn write_outputs(config: &ExperimentConfig, report: &ExperimentReport) -> Result<(), RunError> {
    let json = config.report_path();
    report.write_json(&json).map_err(|e| RunError::Write { path: json.display().to_string(), message: e.to_string() })?;
    let csv = config.trials_path();
    report
        .write_trials_csv(&csv)
        .map_err(|e| RunError::Write { path: csv.display().to_string(), message: e.to_string() })
}

/// Worker count used when none is given: the available parallelism.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(text: &str) -> ExperimentConfig {
        ExperimentConfig::parse(text).unwrap()
    }

    #[test]
    fn two_points_fail() {
        let c = config("model = circle-r2\neps = 0.3\np = 0.95\nl_override = 2\ntrials = 50\nseed = 42");
        let r = run_experiment(&c, 2).unwrap();
        assert_eq!((r.phi, r.l), (221, 2));
        assert_eq!(r.empirical_homology_rate, 0.0);
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.bound.g, 0.0);
        assert!(r.bound_consistent);
    }

    #[test]
    fn inadmissible_config_is_rejected() {
        let c = config("model = circle-r2\neps = 1.5\np = 0.9");
        match run_experiment(&c, 1) {
            Err(RunError::Inadmissible(a)) => {
                assert!(!a.admissible);
                assert!(a.to_string().contains("[FAIL] eps < tau"));
            }
            other => panic!("{other:?}"),
        }
        let c = config("model = circle-r2\nregime = noisy\ntube_r = 0.6\neps = 0.45\np = 0.9");
        assert!(matches!(run_experiment(&c, 1), Err(RunError::Inadmissible(_))));
    }

    #[test]
    fn worker_count_does_not_change_the_report() {
        let c = config("model = circle-r2\neps = 0.3\np = 0.95\ntrials = 12\nseed = 9");
        let a = run_experiment(&c, 1).unwrap();
        let b = run_experiment(&c, 3).unwrap();
        assert_eq!(a.to_json_without_timestamp(), b.to_json_without_timestamp());
        assert!(a.to_json().contains("\"phi\": 221"));
    }
}
