//! Experiment reports: `<output>.report.json` and `<output>.trials.csv`.

use std::path::Path;

use serde::Serialize;
use topinfer_core::bounds::{Certificate, Condition};
use topinfer_core::{AdmissibilityReport, CoverageBound};

use crate::config::ConfigEcho;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct BoundRecord {
    pub p_min: f64,
    pub k_bound: f64,
    pub g_raw: f64,
    pub g: f64,
    pub l: usize,
}

impl From<CoverageBound> for BoundRecord {
    fn from(b: CoverageBound) -> Self {
        Self { p_min: b.p_min, k_bound: b.k_bound, g_raw: b.g_raw, g: b.g, l: b.l }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ConditionRecord {
    pub name: &'static str,
    pub value: f64,
    pub relation: &'static str,
    pub threshold: f64,
    pub holds: bool,
}

impl From<&Condition> for ConditionRecord {
    fn from(c: &Condition) -> Self {
        Self { name: c.name, value: c.value, relation: c.relation, threshold: c.threshold, holds: c.holds }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CertificateRecord {
    pub lambda: f64,
    pub kappa_max: f64,
    pub margin: f64,
    pub holds: bool,
}

impl From<Certificate> for CertificateRecord {
    fn from(c: Certificate) -> Self {
        Self { lambda: c.lambda, kappa_max: c.kappa_max, margin: c.margin, holds: c.holds() }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct AdmissibilityRecord {
    pub regime: &'static str,
    pub admissible: bool,
    pub conditions: Vec<ConditionRecord>,
    pub certificate: Option<CertificateRecord>,
}

impl From<&AdmissibilityReport> for AdmissibilityRecord {
    fn from(r: &AdmissibilityReport) -> Self {
        Self {
            regime: r.regime.name(),
            admissible: r.ok(),
            conditions: r.conditions.iter().map(ConditionRecord::from).collect(),
            certificate: r.certificate.map(CertificateRecord::from),
        }
    }
}

impl std::fmt::Display for AdmissibilityRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "admissibility ({}): {}", self.regime, if self.admissible { "ok" } else { "FAILED" })?;
        for c in &self.conditions {
            let mark = if c.holds { "ok  " } else { "FAIL" };
            writeln!(f, "  [{mark}] {}: {} {} {}", c.name, c.value, c.relation, c.threshold)?;
        }
        if let Some(c) = &self.certificate {
            writeln!(f, "  second-variation margin at lambda = {}: {}", c.lambda, c.margin)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    pub dense: bool,
    /// Comma-separated Betti numbers, absent when the trial errored.
    pub betti: Option<String>,
    #[serde(rename = "match")]
    pub matched: bool,
    pub simplices: usize,
    pub error: Option<String>,
    /// Not part of the JSON report, so that reruns are byte-identical.
    #[serde(skip)]
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ExperimentReport {
    pub config: ConfigEcho,
    pub phi: usize,
    /// Sample size actually used: `l_override` or `phi`.
    pub l: usize,
    pub density_radius: f64,
    pub complex: String,
    pub reference_betti: String,
    pub admissibility: AdmissibilityRecord,
    pub bound: BoundRecord,
    pub bound_g: f64,
    pub trials: Vec<TrialRecord>,
    pub empirical_density_rate: f64,
    pub empirical_homology_rate: f64,
    /// `p − 3·sqrt(p(1−p)/trials)`.
    pub homology_threshold: f64,
    /// `clamp(g) − 3·sqrt(0.25/trials)`.
    pub density_threshold: f64,
    pub homology_ok: bool,
    pub bound_consistent: bool,
    pub verdict: Verdict,
    /// Unix seconds; the only field that differs between reruns.
    pub timestamp: u64,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    /// The JSON report without its timestamp, for reproducibility checks.
    pub fn to_json_without_timestamp(&self) -> String {
        strip_timestamp(&self.to_json())
    }

    pub fn write_json(&self, path: &Path) -> std::io::Result<()> {
        create_parent(path)?;
        std::fs::write(path, self.to_json())
    }

    pub fn write_trials_csv(&self, path: &Path) -> Result<(), csv::Error> {
        create_parent(path)?;
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["trial", "seed", "dense", "betti", "match", "simplices", "wall_ms"])?;
        for t in &self.trials {
            w.write_record([
                t.trial.to_string(),
                t.seed.to_string(),
                t.dense.to_string(),
                t.betti.clone().unwrap_or_else(|| "error".to_string()),
                t.matched.to_string(),
                t.simplices.to_string(),
                format!("{:.3}", t.wall_ms),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// One-line summary for the terminal.
    pub fn summary(&self) -> String {
        format!(
            "{} {}: l = {} (phi = {}), homology {:.4} (threshold {:.4}), density {:.4} (threshold {:.4}), verdict {}",
            self.config.model,
            self.config.regime,
            self.l,
            self.phi,
            self.empirical_homology_rate,
            self.homology_threshold,
            self.empirical_density_rate,
            self.density_threshold,
            if self.passed() { "pass" } else { "fail" },
        )
    }
}

/// Removes the `"timestamp"` member from a report's JSON text.
pub fn strip_timestamp(json: &str) -> String {
    let mut v: serde_json::Value = serde_json::from_str(json).expect("valid report JSON");
    if let Some(map) = v.as_object_mut() {
        map.remove("timestamp");
    }
    serde_json::to_string_pretty(&v).expect("value serialises")
}

fn create_parent(path: &Path) -> std::io::Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => std::fs::create_dir_all(dir),
        _ => Ok(()),
    }
}
