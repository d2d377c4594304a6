//! The experiment config format.
//!
//! One `key = value` pair per line. Blank lines and lines starting with
//! `#` are ignored, and values may be wrapped in double quotes, so simple
//! TOML files parse too:
//!
//! ```text
//! model = smallcircle-s2:rho=0.15
//! regime = noisy
//! tube_r = 0.075
//! eps = 0.07
//! p = 0.9
//! trials = 100
//! seed = 42
//! ```
//!
//! Keys: `model` (required), `regime` (`clean` or `noisy`, default
//! `clean`), `tube_r` (required for and only allowed with `noisy`), `eps`
//! and `p` (required), `l_override`, `trials` (default 100), `seed`
//! (default 0), `max_dim` (default: the model's dimension), `metric`
//! (`ambient` or `intrinsic`, default `ambient`) and `output` (default
//! `experiment`). Unknown or repeated keys are errors.

use std::path::{Path, PathBuf};

use serde::Serialize;
use topinfer_core::complex::MAX_DIM;
use topinfer_core::{ManifoldModel, Metric, Regime};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

fn at(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError::Line { line, message: message.into() }
}

const KEYS: [&str; 11] = ["model", "regime", "tube_r", "eps", "p", "l_override", "trials", "seed", "max_dim", "metric", "output"];

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub model: ManifoldModel,
    pub regime: Regime,
    pub eps: f64,
    pub p: f64,
    pub l_override: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Highest homology dimension compared with the reference.
    pub max_dim: usize,
    pub metric: Metric,
    /// Path prefix of the report files.
    pub output: PathBuf,
}

/// The config as echoed in reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub model: String,
    pub regime: &'static str,
    pub tube_r: Option<f64>,
    pub eps: f64,
    pub p: f64,
    pub l_override: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub max_dim: usize,
    pub metric: &'static str,
    pub output: String,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text =
            std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut entries: Vec<(&'static str, usize, &str)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let (k, v) = s.split_once('=').ok_or_else(|| at(line, format!("expected `key = value`, found `{s}`")))?;
            let k = k.trim();
            let key = *KEYS.iter().find(|&&known| known == k).ok_or_else(|| at(line, format!("unknown key `{k}`")))?;
            if let Some((_, first, _)) = entries.iter().find(|(seen, _, _)| *seen == key) {
                return Err(at(line, format!("duplicate key `{key}` (first set on line {first})")));
            }
            let v = v.trim();
            let v = v.strip_prefix('"').and_then(|v| v.strip_suffix('"')).unwrap_or(v);
            entries.push((key, line, v));
        }
        let get = |key: &str| entries.iter().find(|(k, _, _)| *k == key).map(|&(_, line, v)| (line, v));
        let required = |key: &str| get(key).ok_or_else(|| ConfigError::Invalid(format!("missing required key `{key}`")));

        let (line, v) = required("model")?;
        let model = ManifoldModel::parse(v).map_err(|e| at(line, e.to_string()))?;
        let eps = number(required("eps")?)?;
        let p = number(required("p")?)?;
        if !(p > 0.0 && p < 1.0) {
            return Err(at(required("p")?.0, format!("p must lie in (0, 1), got {p}")));
        }
        if !(eps > 0.0) {
            return Err(at(required("eps")?.0, format!("eps must be positive, got {eps}")));
        }
        let tube_r = get("tube_r").map(number).transpose()?;
        let regime = match get("regime") {
            None | Some((_, "clean")) => {
                if let Some((line, _)) = get("tube_r") {
                    return Err(at(line, "tube_r is only used with regime = noisy"));
                }
                Regime::Clean
            }
            Some((line, "noisy")) => match tube_r {
                Some(tube_r) => Regime::Noisy { tube_r },
                None => return Err(at(line, "regime = noisy needs tube_r")),
            },
            Some((line, other)) => return Err(at(line, format!("regime must be `clean` or `noisy`, found `{other}`"))),
        };
        let metric = match get("metric") {
            None | Some((_, "ambient")) => Metric::Ambient,
            Some((line, "intrinsic")) => {
                if let Regime::Noisy { .. } = regime {
                    return Err(at(line, "the intrinsic metric needs on-manifold samples (regime = clean)"));
                }
                Metric::Intrinsic
            }
            Some((line, other)) => {
                return Err(at(line, format!("metric must be `ambient` or `intrinsic`, found `{other}`")))
            }
        };
        let l_override = get("l_override").map(integer).transpose()?;
        if let (Some(0), Some((line, _))) = (l_override, get("l_override")) {
            return Err(at(line, "l_override must be at least 1"));
        }
        let trials = get("trials").map(integer).transpose()?.unwrap_or(100);
        if trials == 0 {
            return Err(at(get("trials").map_or(0, |(l, _)| l), "trials must be at least 1"));
        }
        let seed = match get("seed") {
            Some((line, v)) => v.parse().map_err(|_| at(line, format!("expected an unsigned 64-bit seed, found `{v}`")))?,
            None => 0,
        };
        let max_dim = get("max_dim").map(integer).transpose()?.unwrap_or(model.dim());
        if max_dim + 1 > MAX_DIM {
            return Err(at(get("max_dim").map_or(0, |(l, _)| l), format!("max_dim must be at most {}", MAX_DIM - 1)));
        }
        let output = PathBuf::from(get("output").map_or("experiment", |(_, v)| v));
        Ok(Self { model, regime, eps, p, l_override, trials, seed, max_dim, metric, output })
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            model: self.model.identifier(),
            regime: self.regime.name(),
            tube_r: match self.regime {
                Regime::Noisy { tube_r } => Some(tube_r),
                Regime::Clean => None,
            },
            eps: self.eps,
            p: self.p,
            l_override: self.l_override,
            trials: self.trials,
            seed: self.seed,
            max_dim: self.max_dim,
            metric: metric_name(self.metric),
            output: self.output.display().to_string(),
        }
    }

    /// `<output>.report.json`
    pub fn report_path(&self) -> PathBuf {
        with_suffix(&self.output, ".report.json")
    }

    /// `<output>.trials.csv`
    pub fn trials_path(&self) -> PathBuf {
        with_suffix(&self.output, ".trials.csv")
    }
}

pub fn metric_name(metric: Metric) -> &'static str {
    match metric {
        Metric::Ambient => "ambient",
        Metric::Intrinsic => "intrinsic",
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn number((line, v): (usize, &str)) -> Result<f64, ConfigError> {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(at(line, format!("expected a number, found `{v}`"))),
    }
}

fn integer((line, v): (usize, &str)) -> Result<usize, ConfigError> {
    v.parse().map_err(|_| at(line, format!("expected a nonnegative integer, found `{v}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const NOISY: &str = "# noisy small circle\nmodel = smallcircle-s2:rho=0.15\nregime = noisy\ntube_r = 0.075\n\neps = 0.07\np = 0.9\ntrials = 100\nseed = 42\n";

    #[test]
    fn parses_noisy_config() {
        let c = ExperimentConfig::parse(NOISY).unwrap();
        assert_eq!(c.regime, Regime::Noisy { tube_r: 0.075 });
        assert_eq!((c.trials, c.seed, c.max_dim), (100, 42, 1));
        assert_eq!(c.metric, Metric::Ambient);
        assert_eq!(c.report_path(), PathBuf::from("experiment.report.json"));
    }

    #[test]
    fn toml_style_quotes() {
        let c = ExperimentConfig::parse("model = \"torus-r4\"\neps = 0.5\np = 0.9\nmetric = \"intrinsic\"\noutput = \"out/t\"").unwrap();
        assert_eq!(c.max_dim, 2);
        assert_eq!(c.metric, Metric::Intrinsic);
        assert_eq!(c.trials_path(), PathBuf::from("out/t.trials.csv"));
    }

    fn line_of(text: &str) -> usize {
        match ExperimentConfig::parse(text).unwrap_err() {
            ConfigError::Line { line, .. } => line,
            e => panic!("expected a line error, got {e}"),
        }
    }

    #[test]
    fn errors_name_the_line() {
        assert_eq!(line_of("model = circle-r2\neps = 0.3\np = 0.95\ncolour = red\n"), 4);
        assert_eq!(line_of("model = circle-r2\neps = 0.3\neps = 0.2\np = 0.95"), 3);
        assert_eq!(line_of("model = circle-r2\neps = abc\np = 0.95"), 2);
        assert_eq!(line_of("model = blob\neps = 0.3\np = 0.95"), 1);
        assert_eq!(line_of("model = circle-r2\neps = 0.3\np = 0.95\nregime = noisy"), 4);
        assert_eq!(line_of("model = circle-r2\neps = 0.3\np = 0.95\ntube_r = 0.2"), 4);
        assert_eq!(line_of("model = circle-r2\neps = 0.3\np = 1.0"), 3);
        assert_eq!(line_of("model = circle-r2\neps = 0.3\np = 0.9\njunk"), 4);
        assert!(matches!(ExperimentConfig::parse("eps = 0.3\np = 0.9"), Err(ConfigError::Invalid(_))));
    }
}
