use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use topinfer::oracle;
use topinfer::report::AdmissibilityRecord;
use topinfer::{formats, run_experiment, write_outputs, ExperimentConfig, RunError};
use topinfer_core::bounds::{check_clean_admissibility, check_noisy_admissibility, CoverageInputs};
use topinfer_core::complex::{betti_numbers, build_cech_euclidean, build_rips, rips_core, sample_distance, DEFAULT_BUDGET};
use topinfer_core::geometry::geometric_params;
use topinfer_core::sampling::{sample_tube, sample_uniform};
use topinfer_core::{ManifoldModel, Metric, Regime, VolumeMode};

/// Topology inference of submanifolds from random samples.
#[derive(Parser)]
#[command(name = "topinfer", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coverage bound, the sample size and admissibility as JSON.
    Bound {
        #[arg(long)]
        model: String,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value = "clean")]
        regime: RegimeArg,
        #[arg(long)]
        tube_r: Option<f64>,
        #[arg(long, value_enum, default_value = "expansion")]
        volume_mode: VolumeArg,
        /// Evaluate the bound at this sample size instead of phi.
        #[arg(long)]
        l: Option<usize>,
    },
    /// Draw a seeded sample and write it as CSV.
    Sample {
        #[arg(long)]
        model: String,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample the open tube of this radius instead of the manifold.
        #[arg(long)]
        tube_r: Option<f64>,
        /// Defaults to standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build a complex on a sample CSV and print its Betti numbers.
    Betti {
        #[arg(long)]
        input: PathBuf,
        /// Rips scale, or Čech ball radius.
        #[arg(long)]
        scale: f64,
        #[arg(long, default_value_t = 1)]
        max_dim: usize,
        #[arg(long, value_enum, default_value = "ambient")]
        metric: MetricArg,
        #[arg(long, value_enum, default_value = "rips")]
        complex: ComplexArg,
        /// Also write the complex in the text format.
        #[arg(long)]
        complex_out: Option<PathBuf>,
    },
    /// Run an experiment config and write its report.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// Parallel trial workers; defaults to the available cores.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Run the brute-force validators.
    Oracle {
        /// Random complexes for the homology oracle.
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Clean,
    Noisy,
}

#[derive(Clone, Copy, ValueEnum)]
enum VolumeArg {
    Expansion,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Ambient,
    Intrinsic,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComplexArg {
    /// Full Vietoris–Rips complex.
    Rips,
    /// Flag complex of the collapsed Rips graph; same homology, fewer
    /// simplices.
    RipsCore,
    /// Čech complex; Euclidean ambients only.
    Cech,
}

/// Failure of a subcommand: exit code and message.
struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(2, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bound { model, eps, p, regime, tube_r, volume_mode, l } => {
            bound(&model, eps, p, regime, tube_r, volume_mode, l)
        }
        Command::Sample { model, l, seed, tube_r, output } => sample(&model, l, seed, tube_r, output),
        Command::Betti { input, scale, max_dim, metric, complex, complex_out } => {
            betti(input, scale, max_dim, metric, complex, complex_out)
        }
        Command::Experiment { config, workers } => experiment(config, workers),
        Command::Oracle { cases, seed } => run_oracle(cases, seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, message)) => {
            if !message.is_empty() {
                eprintln!("error: {message}");
            }
            ExitCode::from(code)
        }
    }
}

#[derive(Serialize)]
struct BoundOutput {
    model: String,
    regime: &'static str,
    tube_r: Option<f64>,
    eps: f64,
    density_radius: f64,
    p: f64,
    volume_mode: &'static str,
    phi: usize,
    l: usize,
    p_min: f64,
    k_bound: f64,
    g_raw: f64,
    g: f64,
    admissibility: AdmissibilityRecord,
}

fn bound(
    id: &str,
    eps: f64,
    p: f64,
    regime: RegimeArg,
    tube_r: Option<f64>,
    mode: VolumeArg,
    l: Option<usize>,
) -> Result<(), Failure> {
    let model = ManifoldModel::parse(id)?;
    let regime = match (regime, tube_r) {
        (RegimeArg::Clean, None) => Regime::Clean,
        (RegimeArg::Noisy, Some(tube_r)) => Regime::Noisy { tube_r },
        (RegimeArg::Clean, Some(_)) => return Err(Failure(2, "--tube-r is only used with --regime noisy".into())),
        (RegimeArg::Noisy, None) => return Err(Failure(2, "--regime noisy needs --tube-r".into())),
    };
    let base = geometric_params(&model, None)?;
    let (admissibility, radius) = match regime {
        Regime::Clean => (check_clean_admissibility(&base, eps), eps),
        Regime::Noisy { tube_r } => (check_noisy_admissibility(&base, eps, tube_r), eps / 2.0),
    };
    let params = geometric_params(&model, tube_r)?;
    let mode = match mode {
        VolumeArg::Expansion => VolumeMode::Expansion,
        VolumeArg::Exact => VolumeMode::Exact,
    };
    let inputs = CoverageInputs::with_mode(mode, &model, &params, radius, regime)?;
    let phi = inputs.sample_size(p)?;
    let b = inputs.bound(l.unwrap_or(phi));
    let out = BoundOutput {
        model: model.identifier(),
        regime: regime.name(),
        tube_r,
        eps,
        density_radius: radius,
        p,
        volume_mode: match mode {
            VolumeMode::Expansion => "expansion",
            VolumeMode::Exact => "exact",
        },
        phi,
        l: b.l,
        p_min: b.p_min,
        k_bound: b.k_bound,
        g_raw: b.g_raw,
        g: b.g,
        admissibility: AdmissibilityRecord::from(&admissibility),
    };
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn sample(id: &str, l: usize, seed: u64, tube_r: Option<f64>, output: Option<PathBuf>) -> Result<(), Failure> {
    let model = ManifoldModel::parse(id)?;
    let s = match tube_r {
        None => sample_uniform(&model, l, seed)?,
        Some(r) => sample_tube(&model, l, r, seed)?,
    };
    match output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(&path).map_err(|e| format!("{}: {e}", path.display()))?);
            formats::write_sample_csv(&s, &mut w)?;
            w.flush()?;
        }
        None => formats::write_sample_csv(&s, std::io::stdout().lock())?,
    }
    Ok(())
}

fn betti(
    input: PathBuf,
    scale: f64,
    max_dim: usize,
    metric: MetricArg,
    kind: ComplexArg,
    complex_out: Option<PathBuf>,
) -> Result<(), Failure> {
    let file = File::open(&input).map_err(|e| format!("{}: {e}", input.display()))?;
    let s = formats::read_sample_csv(BufReader::new(file))?;
    let metric = match metric {
        MetricArg::Ambient => Metric::Ambient,
        MetricArg::Intrinsic => Metric::Intrinsic,
    };
    let dim = max_dim + 1;
    let c = match kind {
        ComplexArg::Rips => build_rips(&s, scale, dim, metric, DEFAULT_BUDGET)?,
        ComplexArg::RipsCore => rips_core(s.len(), sample_distance(&s, metric)?, scale, dim, DEFAULT_BUDGET)?,
        ComplexArg::Cech => build_cech_euclidean(&s, scale, dim, DEFAULT_BUDGET)?,
    };
    if let Some(path) = complex_out {
        let mut w = BufWriter::new(File::create(&path).map_err(|e| format!("{}: {e}", path.display()))?);
        formats::write_complex(&c, &mut w)?;
        w.flush()?;
    }
    println!("{}", betti_numbers(&c).truncated(max_dim));
    Ok(())
}

fn experiment(path: PathBuf, workers: Option<usize>) -> Result<(), Failure> {
    let config = ExperimentConfig::load(&path)?;
    let workers = workers.unwrap_or_else(topinfer::runner::default_workers);
    let report = match run_experiment(&config, workers) {
        Ok(r) => r,
        Err(RunError::Inadmissible(a)) => {
            print!("{a}");
            return Err(Failure(2, "inadmissible configuration".into()));
        }
        Err(e) => return Err(e.into()),
    };
    write_outputs(&config, &report)?;
    println!("{}", report.summary());
    println!("report: {}", config.report_path().display());
    if report.passed() {
        Ok(())
    } else {
        Err(Failure(1, String::new()))
    }
}

fn run_oracle(cases: usize, seed: u64) -> Result<(), Failure> {
    let mut ok = true;
    for (id, res) in oracle::REACH_CASES {
        let c = oracle::reach_check(id, res)?;
        ok &= c.ok();
        println!(
            "reach {:<26} estimate {:.6}  closed form {:.6}  error {:.2}%  {}",
            c.model,
            c.estimate,
            c.closed_form,
            100.0 * c.relative_error,
            mark(c.ok())
        );
    }
    for id in oracle::VOLUME_MODELS {
        let model = ManifoldModel::parse(id)?;
        for r in oracle::VOLUME_RADII {
            let c = oracle::volume_check(&model, r)?;
            ok &= c.ok();
            println!(
                "volume {:<12} r = {:<5} expansion {:.8}  exact {:.8}  error {:.4}%  {}",
                c.model,
                r,
                c.expansion,
                c.exact,
                100.0 * c.relative_error,
                mark(c.ok())
            );
        }
    }
    let vacuous = oracle::vacuous_volume_case();
    let vacuous_ok = matches!(vacuous, Err(topinfer_core::BoundsError::VacuousBound { .. }));
    ok &= vacuous_ok;
    match vacuous {
        Err(e) => println!("volume vacuous case: {e}  {}", mark(vacuous_ok)),
        Ok(v) => println!("volume vacuous case returned {v}  {}", mark(false)),
    }
    let h = oracle::homology_oracle(cases, seed);
    ok &= h.ok();
    println!(
        "homology {} random complexes: {} Betti mismatches, {} Euler failures  {}",
        h.cases,
        h.betti_mismatches,
        h.euler_failures,
        mark(h.ok())
    );
    if let Some(f) = h.first_failure {
        println!("  first failure: {f}");
    }
    if ok {
        Ok(())
    } else {
        Err(Failure(1, "some validators failed".into()))
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}
