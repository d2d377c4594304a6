use topinfer_core::bounds::{sample_size, Regime};
use topinfer_core::complex::{Metric, DEFAULT_BUDGET};
use topinfer_core::geometry::geometric_params;
use topinfer_core::pipeline::{run_trial, ComplexKind, TrialSpec};
use topinfer_core::ManifoldModel;

fn phi(id: &str, tube_r: Option<f64>, eps: f64, p: f64) -> usize {
    let m = ManifoldModel::parse(id).unwrap();
    let params = geometric_params(&m, tube_r).unwrap();
    match tube_r {
        None => sample_size(&params, eps, p, Regime::Clean).unwrap(),
        Some(tube_r) => sample_size(&params, eps / 2.0, p, Regime::Noisy { tube_r }).unwrap(),
    }
}

#[test]
fn sample_sizes_of_the_reference_experiments() {
    assert_eq!(phi("circle-r2", None, 0.3, 0.95), 221);
    // regression values
    assert_eq!(phi("torus-r4", None, 0.5, 0.9), 4301);
    assert_eq!(phi("smallcircle-s2:rho=0.15", Some(0.075), 0.07, 0.9), 3022);
    assert_eq!(phi("circle-r2", Some(0.5), 0.45, 0.9), 3294);
}

#[test]
fn complex_choice() {
    let circle = ManifoldModel::parse("circle-r2").unwrap();
    let h2 = ManifoldModel::parse("circle-h2").unwrap();
    assert_eq!(ComplexKind::default_for(&circle, Regime::Clean, 0.3, Metric::Ambient), ComplexKind::Cech);
    assert_eq!(
        ComplexKind::default_for(&h2, Regime::Clean, 0.3, Metric::Ambient),
        ComplexKind::RipsCore { scale: 0.3, metric: Metric::Ambient }
    );
    assert_eq!(
        ComplexKind::default_for(&circle, Regime::Noisy { tube_r: 0.5 }, 0.45, Metric::Intrinsic),
        ComplexKind::RipsCore { scale: 0.45, metric: Metric::Ambient }
    );
}

#[test]
fn noisy_small_circle_trial() {
    let model = ManifoldModel::parse("smallcircle-s2:rho=0.15").unwrap();
    let regime = Regime::Noisy { tube_r: 0.075 };
    let spec = TrialSpec {
        model,
        regime,
        eps: 0.07,
        l: 3022,
        max_dim: 1,
        complex: ComplexKind::default_for(&model, regime, 0.07, Metric::Ambient),
        budget: DEFAULT_BUDGET,
        seed: 42,
    };
    let o = run_trial(&spec, 0);
    assert_eq!(o.error, None);
    assert_eq!(o.betti.unwrap().0, [1, 1]);
    assert!(o.matched);
}
