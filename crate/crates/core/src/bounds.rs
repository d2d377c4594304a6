//! Coverage lower bounds, sample sizes and admissibility checks.
//!
//! A sample `A` of `l` uniform points is ε-dense once every ball of an
//! ε/3-net of `M` contains a point of `A`. With `k` net balls, each hit by
//! a single draw with probability at least `p_min`, the union bound gives
//!
//! ```text
//! P(A is ε-dense) ≥ g(l) = 1 − k·(1 − p_min)^l
//! ```
//!
//! where `p_min = vol(B_{ε/3}) / vol(M)` and `k ≤ (m+1)·vol(M) / vol(B_{ε/3})`.
//! Ball volumes come from the small-ball expansion
//! `v_m r^m (1 − s r² / 6(m+2))` or, for catalog models, exact formulas.
//!
//! In the noisy regime the same argument runs in the tube `T_r(M)`: `m`
//! becomes `n`, `vol(M)` becomes `vol(T_r(M))`, balls are ambient balls and
//! `s` bounds the scalar curvature of `N`.

use alloc::vec::Vec;

use crate::geometry::{GeometricParams, ManifoldModel};
use crate::math::{exp, log, log1p, pow, sqrt, PI};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BoundsError {
    #[error("vacuous ball-volume bound: 1 − s·r²/(6(m+2)) = {factor} ≤ 0 (m = {m}, r = {r}, s = {s})")]
    VacuousBound { m: usize, r: f64, s: f64, factor: f64 },
    #[error("noisy regime needs the tube volume for r = {tube_r}")]
    MissingTubeVolume { tube_r: f64 },
    #[error("net ball radius {ball_r} exceeds the tube radius {tube_r}")]
    BallExceedsTube { ball_r: f64, tube_r: f64 },
    #[error("no closed-form ball volume for radius {r}")]
    NoExactVolume { r: f64 },
    #[error("probability must lie in (0, 1), got {0}")]
    InvalidProbability(f64),
    #[error("invalid value {value} for `{name}`")]
    InvalidParameter { name: &'static str, value: f64 },
}

/// Which density notion a bound is about.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// Samples on `M`, density measured intrinsically.
    Clean,
    /// Samples in `T_r(M)`, density measured with ambient balls.
    Noisy { tube_r: f64 },
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::Clean => "clean",
            Regime::Noisy { .. } => "noisy",
        }
    }
}

/// How net-ball volumes are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VolumeMode {
    /// Small-ball expansion in terms of the scalar-curvature bound.
    #[default]
    Expansion,
    /// Closed-form ball volumes of the catalog model.
    Exact,
}

/// The three numbers the union bound is built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageInputs {
    /// Dimension of the sampled set (`m`, or `n` in the noisy regime).
    pub dim: usize,
    /// `vol(M)` or `vol(T_r(M))`.
    pub total_volume: f64,
    /// Volume (or lower bound) of one net ball.
    pub ball_volume: f64,
}

impl CoverageInputs {
    /// Inputs for density radius `eps` using the small-ball expansion.
    pub fn expansion(params: &GeometricParams, eps: f64, regime: Regime) -> Result<Self, BoundsError> {
        positive("eps", eps)?;
        let r = eps / 3.0;
        match regime {
            Regime::Clean => Ok(Self {
                dim: params.m,
                total_volume: params.vol_m,
                ball_volume: ball_volume_lower_bound(params.m, r, params.s)?,
            }),
            Regime::Noisy { tube_r } => {
                let total_volume = tube_volume(params, tube_r)?;
                check_ball_in_tube(r, tube_r)?;
                Ok(Self {
                    dim: params.n,
                    total_volume,
                    ball_volume: ball_volume_lower_bound(params.n, r, params.ambient_scalar_bound())?,
                })
            }
        }
    }

    /// Inputs for density radius `eps` using exact ball volumes.
    pub fn exact(model: &ManifoldModel, eps: f64, regime: Regime) -> Result<Self, BoundsError> {
        positive("eps", eps)?;
        let r = eps / 3.0;
        match regime {
            Regime::Clean => Ok(Self {
                dim: model.dim(),
                total_volume: model.volume(),
                ball_volume: model.intrinsic_ball_volume(r).ok_or(BoundsError::NoExactVolume { r })?,
            }),
            Regime::Noisy { tube_r } => {
                let total_volume = model.tube_volume(tube_r).map_err(|_| BoundsError::MissingTubeVolume { tube_r })?;
                check_ball_in_tube(r, tube_r)?;
                let ambient = model.ambient();
                Ok(Self {
                    dim: ambient.dim(),
                    total_volume,
                    ball_volume: ambient.ball_volume(r).ok_or(BoundsError::NoExactVolume { r })?,
                })
            }
        }
    }

    pub fn with_mode(
        mode: VolumeMode,
        model: &ManifoldModel,
        params: &GeometricParams,
        eps: f64,
        regime: Regime,
    ) -> Result<Self, BoundsError> {
        match mode {
            VolumeMode::Expansion => Self::expansion(params, eps, regime),
            VolumeMode::Exact => Self::exact(model, eps, regime),
        }
    }

    /// Single-draw hit probability of one net ball.
    pub fn p_min(&self) -> f64 {
        (self.ball_volume / self.total_volume).min(1.0)
    }

    /// Upper bound on the number of net balls. Never below 1: at least one
    /// ball is always needed.
    pub fn k_bound(&self) -> f64 {
        ((self.dim + 1) as f64 * self.total_volume / self.ball_volume).max(1.0)
    }

    /// Raw bound `1 − k·(1 − p_min)^l`.
    pub fn g_raw(&self, l: usize) -> f64 {
        let p = self.p_min();
        if p >= 1.0 {
            return if l == 0 { 1.0 - self.k_bound() } else { 1.0 };
        }
        1.0 - self.k_bound() * exp(l as f64 * log1p(-p))
    }

    pub fn bound(&self, l: usize) -> CoverageBound {
        let g_raw = self.g_raw(l);
        CoverageBound { p_min: self.p_min(), k_bound: self.k_bound(), g_raw, g: g_raw.clamp(0.0, 1.0), l }
    }

    /// Smallest `l` with `g(l) ≥ p`.
    pub fn sample_size(&self, p: f64) -> Result<usize, BoundsError> {
        if !(p > 0.0 && p < 1.0) {
            return Err(BoundsError::InvalidProbability(p));
        }
        let p_min = self.p_min();
        if p_min >= 1.0 {
            return Ok(1);
        }
        let guess = log(self.k_bound() / (1.0 - p)) / -log1p(-p_min);
        let mut l = if guess.is_finite() && guess > 1.0 { libm::ceil(guess) as usize } else { 1 };
        // the closed form can be off by one after rounding
        while self.g_raw(l) < p {
            l += 1;
        }
        while l > 1 && self.g_raw(l - 1) >= p {
            l -= 1;
        }
        Ok(l)
    }
}

/// The union bound evaluated at a sample size `l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageBound {
    pub p_min: f64,
    pub k_bound: f64,
    /// `1 − k·(1 − p_min)^l`, possibly negative.
    pub g_raw: f64,
    /// `g_raw` clamped to `[0, 1]`.
    pub g: f64,
    pub l: usize,
}

/// Volume of the unit ball in `R^m`.
pub fn unit_ball_volume(m: usize) -> f64 {
    let (mut v, start) = if m % 2 == 0 { (1.0, 2) } else { (2.0, 3) };
    let mut k = start;
    while k <= m {
        v *= 2.0 * PI / k as f64;
        k += 2;
    }
    v
}

/// Small-ball expansion `v_m r^m (1 − s r² / (6(m+2)))` of the volume of a
/// geodesic `r`-ball in an `m`-manifold with scalar curvature at most `s`.
pub fn ball_volume_lower_bound(m: usize, r: f64, s: f64) -> Result<f64, BoundsError> {
    positive("r", r)?;
    if m == 0 {
        return Err(BoundsError::InvalidParameter { name: "m", value: 0.0 });
    }
    let factor = 1.0 - s * r * r / (6 * (m + 2)) as f64;
    if factor <= 0.0 {
        return Err(BoundsError::VacuousBound { m, r, s, factor });
    }
    Ok(unit_ball_volume(m) * pow(r, m as f64) * factor)
}

/// Upper bound `(m+1)·vol(M) / vol(B_{ε/3})` on the number of ε/3-balls
/// needed to cover `M`, unrounded.
pub fn covering_number_upper_bound(params: &GeometricParams, eps: f64) -> Result<f64, BoundsError> {
    Ok(CoverageInputs::expansion(params, eps, Regime::Clean)?.k_bound())
}

/// The coverage lower bound `g(l)` for density radius `eps`.
pub fn coverage_probability_lower_bound(
    params: &GeometricParams,
    eps: f64,
    l: usize,
    regime: Regime,
) -> Result<CoverageBound, BoundsError> {
    if l == 0 {
        return Err(BoundsError::InvalidParameter { name: "l", value: 0.0 });
    }
    Ok(CoverageInputs::expansion(params, eps, regime)?.bound(l))
}

/// The sample size `φ`: the smallest `l` with `g(l) ≥ p`.
pub fn sample_size(params: &GeometricParams, eps: f64, p: f64, regime: Regime) -> Result<usize, BoundsError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(BoundsError::InvalidProbability(p));
    }
    CoverageInputs::expansion(params, eps, regime)?.sample_size(p)
}

/// One numeric comparison of an admissibility check.
#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub name: &'static str,
    pub value: f64,
    /// `"<"` or `"≤"`.
    pub relation: &'static str,
    pub threshold: f64,
    pub holds: bool,
}

impl Condition {
    fn less(name: &'static str, value: f64, threshold: f64) -> Self {
        Self { name, value, relation: "<", threshold, holds: value < threshold }
    }

    fn at_most(name: &'static str, value: f64, threshold: f64) -> Self {
        Self { name, value, relation: "≤", threshold, holds: value <= threshold }
    }
}

/// Margin of the second-variation inequality `λ² ∫₀¹ κ (1−t)² dt ≥ 1`
/// under a sectional-curvature cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    pub lambda: f64,
    pub kappa_max: f64,
    /// `1 − λ²κ/3`; positive when the inequality cannot hold.
    pub margin: f64,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.margin > 0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityReport {
    pub regime: Regime,
    pub conditions: Vec<Condition>,
    /// Evaluated at the largest length the noisy argument needs,
    /// `λ = τ + ε/2`.
    pub certificate: Option<Certificate>,
}

impl AdmissibilityReport {
    pub fn ok(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.holds)
    }
}

/// `0 < ε < min{τ, η}`.
pub fn check_clean_admissibility(params: &GeometricParams, eps: f64) -> AdmissibilityReport {
    AdmissibilityReport {
        regime: Regime::Clean,
        conditions: alloc::vec![
            Condition::less("eps > 0", 0.0, eps),
            Condition::less("eps < tau", eps, params.tau),
            Condition::less("eps < eta", eps, params.eta),
        ],
        certificate: None,
    }
}

/// `0 < ε < τ/2`, `T_r ⊂ T_{τ/2}` and `κ_N ≤ 1/(25τ²)`. The density
/// condition is a property of the sample and is checked there.
pub fn check_noisy_admissibility(params: &GeometricParams, eps: f64, tube_r: f64) -> AdmissibilityReport {
    let tau = params.tau;
    AdmissibilityReport {
        regime: Regime::Noisy { tube_r },
        conditions: alloc::vec![
            Condition::less("eps > 0", 0.0, eps),
            Condition::less("eps < tau/2", eps, tau / 2.0),
            Condition::less("tube_r > 0", 0.0, tube_r),
            Condition::at_most("tube_r <= tau/2", tube_r, tau / 2.0),
            Condition::at_most("kappa_max <= 1/(25 tau^2)", params.kappa_max, 1.0 / (25.0 * tau * tau)),
        ],
        certificate: Some(second_variation_certificate(tau + eps / 2.0, tau, params.kappa_max)),
    }
}

/// Evaluates `1 − λ²·κ_max/3`, using `∫₀¹ (1−t)² dt = 1/3`.
///
/// `tau` does not enter the margin; it is accepted so the call mirrors the
/// admissibility check it certifies.
pub fn second_variation_certificate(lambda: f64, tau: f64, kappa_max: f64) -> Certificate {
    let _ = tau;
    Certificate { lambda, kappa_max, margin: 1.0 - lambda * lambda * kappa_max / 3.0 }
}

/// Binomial 3σ allowance `3·sqrt(q(1−q)/trials)`.
pub fn three_sigma(q: f64, trials: usize) -> f64 {
    3.0 * sqrt(q * (1.0 - q) / trials as f64)
}

fn positive(name: &'static str, value: f64) -> Result<(), BoundsError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(BoundsError::InvalidParameter { name, value })
    }
}

fn tube_volume(params: &GeometricParams, tube_r: f64) -> Result<f64, BoundsError> {
    match params.tube {
        Some(t) if t.r == tube_r => Ok(t.volume),
        _ => Err(BoundsError::MissingTubeVolume { tube_r }),
    }
}

fn check_ball_in_tube(ball_r: f64, tube_r: f64) -> Result<(), BoundsError> {
    if ball_r > tube_r {
        Err(BoundsError::BallExceedsTube { ball_r, tube_r })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::geometric_params;
    use crate::math::cos;

    fn circle() -> GeometricParams {
        geometric_params(&ManifoldModel::circle(1.0).unwrap(), None).unwrap()
    }

    #[test]
    fn unit_balls() {
        assert_eq!(unit_ball_volume(0), 1.0);
        assert_eq!(unit_ball_volume(1), 2.0);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-15);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn expansion_examples() {
        assert!((ball_volume_lower_bound(1, 0.1, 0.0).unwrap() - 0.2).abs() < 1e-15);
        let v = ball_volume_lower_bound(2, 0.3, 2.0).unwrap();
        assert!((v - 0.280_620).abs() < 5e-6, "{v}");
        let cap = 2.0 * PI * (1.0 - cos(0.3));
        assert!((v - cap).abs() < 1e-4);
        for r in [12f64.sqrt() * (1.0 + 1e-12), 3.5, 10.0] {
            assert!(matches!(ball_volume_lower_bound(2, r, 2.0), Err(BoundsError::VacuousBound { .. })));
        }
        assert!(ball_volume_lower_bound(2, 12f64.sqrt() - 1e-9, 2.0).is_ok());
    }

    #[test]
    fn circle_covering_number() {
        let k = covering_number_upper_bound(&circle(), 0.3).unwrap();
        assert!((k - 20.0 * PI).abs() < 1e-10);
        // 63 arcs of half-length 0.1 centred every 2π/63 do cover
        assert!(PI / 63.0 < 0.1);
        // capped at one for huge radii
        assert_eq!(covering_number_upper_bound(&circle(), 100.0).unwrap(), 1.0);
    }

    #[test]
    fn circle_coverage_bound() {
        let b = coverage_probability_lower_bound(&circle(), 0.3, 221, Regime::Clean).unwrap();
        assert!((b.p_min - 0.1 / PI).abs() < 1e-15);
        assert!(b.g >= 0.95, "{b:?}");
        let b1 = coverage_probability_lower_bound(&circle(), 0.3, 1, Regime::Clean).unwrap();
        assert!(b1.g_raw < 0.0);
        assert_eq!(b1.g, 0.0);
    }

    #[test]
    fn circle_sample_size() {
        let c = circle();
        assert_eq!(sample_size(&c, 0.3, 0.95, Regime::Clean).unwrap(), 221);
        assert!(sample_size(&c, 0.3, 0.99, Regime::Clean).unwrap() > 221);
        assert!(sample_size(&c, 0.6, 0.95, Regime::Clean).unwrap() < 221);
        assert!(matches!(sample_size(&c, 0.3, 1.0, Regime::Clean), Err(BoundsError::InvalidProbability(_))));
    }

    #[test]
    fn noisy_needs_tube() {
        let c = circle();
        let err = sample_size(&c, 0.45, 0.9, Regime::Noisy { tube_r: 0.5 }).unwrap_err();
        assert_eq!(err, BoundsError::MissingTubeVolume { tube_r: 0.5 });
        let model = ManifoldModel::circle(1.0).unwrap();
        let t = geometric_params(&model, Some(0.1)).unwrap();
        let err = sample_size(&t, 0.45, 0.9, Regime::Noisy { tube_r: 0.1 }).unwrap_err();
        assert!(matches!(err, BoundsError::BallExceedsTube { .. }));
    }

    #[test]
    fn clean_admissibility() {
        assert!(check_clean_admissibility(&circle(), 0.3).ok());
        let r = check_clean_admissibility(&circle(), 1.0);
        assert!(!r.ok());
        assert_eq!(r.failed().next().unwrap().name, "eps < tau");
        let sc = geometric_params(&ManifoldModel::small_circle(0.15).unwrap(), None).unwrap();
        assert!(check_clean_admissibility(&sc, 0.1).ok());
    }

    #[test]
    fn noisy_admissibility() {
        assert!(check_noisy_admissibility(&circle(), 0.4, 0.5).ok());
        let gc = geometric_params(&ManifoldModel::small_circle(PI / 2.0).unwrap(), None).unwrap();
        let r = check_noisy_admissibility(&gc, 0.1, 0.1);
        assert!(!r.ok());
        let failed: Vec<_> = r.failed().map(|c| c.name).collect();
        assert_eq!(failed, ["kappa_max <= 1/(25 tau^2)"]);
        let bad = r.conditions.iter().find(|c| !c.holds).unwrap();
        assert!((bad.threshold - 0.016_211).abs() < 1e-6);

        let sc = geometric_params(&ManifoldModel::small_circle(0.15).unwrap(), None).unwrap();
        let r = check_noisy_admissibility(&sc, 0.07, 0.075);
        assert!(r.ok());
        let kappa = r.conditions.last().unwrap();
        assert!((kappa.threshold - 1.0 / (25.0 * 0.0225)).abs() < 1e-12);
        assert!(r.certificate.unwrap().holds());
    }

    #[test]
    fn certificate_examples() {
        let tau = 0.7;
        let c = second_variation_certificate(1.25 * tau, tau, 1.0 / (25.0 * tau * tau));
        assert!((c.margin - (1.0 - 1.0 / 48.0)).abs() < 1e-15);
        assert!(second_variation_certificate(3.0, 1.0, 0.0).margin >= 1.0);
        assert!(second_variation_certificate(3.0, 1.0, -1.0).margin >= 1.0);
        assert!(second_variation_certificate(2.0, 1.0, 0.75).margin <= 0.0);
    }
}
