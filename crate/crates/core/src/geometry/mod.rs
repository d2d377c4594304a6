//! Model submanifolds `M ⊂ N` with exact geometry.
//!
//! Every quantity the sample-size bounds depend on (reach, convexity
//! radius, curvature bounds, volumes of `M` and of its tubes) has a closed
//! form for the models in [`ManifoldModel`], so admissibility can be
//! checked rather than assumed.

mod ambient;
mod model;
mod reach;

use alloc::string::String;
use alloc::vec::Vec;

pub use ambient::{minkowski, AmbientKind, AmbientSpace, CONSTRAINT_TOL};
pub use model::{ManifoldModel, MEDIAL_TOL, ON_MANIFOLD_TOL};
pub use reach::reach_estimate_bruteforce;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point violates the ambient constraint (residual {residual:e})")]
    OffConstraint { residual: f64 },
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("point is not on the manifold (distance {distance:e})")]
    NotOnManifold { distance: f64 },
    #[error("no unique nearest point: within {distance:e} of the medial axis")]
    MedialAxis { distance: f64 },
    #[error("tube radius {r} must lie in (0, {reach})")]
    InvalidTubeRadius { r: f64, reach: f64 },
    #[error("invalid value {value} for parameter `{name}`")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("malformed model parameters in `{0}`")]
    MalformedModel(String),
    #[error("resolution {resolution} is below the minimum {min}")]
    ResolutionTooSmall { resolution: usize, min: usize },
}

/// A point of the ambient space, optionally carrying the intrinsic chart
/// coordinates it was generated from.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub coords: Vec<f64>,
    pub chart: Option<Vec<f64>>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Self { coords, chart: None }
    }

    pub fn with_chart(coords: Vec<f64>, chart: Vec<f64>) -> Self {
        Self { coords, chart: Some(chart) }
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Self {
        Point::new(coords)
    }
}

/// Volume of the open `r`-tube `T_r(M)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubeVolume {
    pub r: f64,
    pub volume: f64,
}

/// The geometric inputs of the sample-size bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricParams {
    /// Dimension of `M`.
    pub m: usize,
    /// Dimension of `N`.
    pub n: usize,
    /// Reach τ of `M` in `N`.
    pub tau: f64,
    /// Convexity radius η of `N` (may be infinite).
    pub eta: f64,
    /// Upper bound on the scalar curvature of `M`.
    pub s: f64,
    /// Upper bound on the sectional curvature of `N`.
    pub kappa_max: f64,
    pub vol_m: f64,
    pub tube: Option<TubeVolume>,
}

impl GeometricParams {
    /// Scalar-curvature bound for `N` implied by the sectional bound,
    /// `S ≤ n(n-1)·κ_max`.
    pub fn ambient_scalar_bound(&self) -> f64 {
        (self.n * (self.n - 1)) as f64 * self.kappa_max
    }
}

/// Closed-form [`GeometricParams`] of a model, with the tube volume for
/// `tube_r` when given.
pub fn geometric_params(model: &ManifoldModel, tube_r: Option<f64>) -> Result<GeometricParams, GeometryError> {
    let tube = match tube_r {
        Some(r) => Some(TubeVolume { r, volume: model.tube_volume(r)? }),
        None => None,
    };
    let ambient = model.ambient();
    Ok(GeometricParams {
        m: model.dim(),
        n: ambient.dim(),
        tau: model.reach(),
        eta: ambient.convexity_radius(),
        s: model.scalar_curvature(),
        kappa_max: ambient.curvature(),
        vol_m: model.volume(),
        tube,
    })
}

/// Geodesic distance between two points of `N`.
pub fn ambient_distance(x: &Point, y: &Point, ambient: &AmbientSpace) -> Result<f64, GeometryError> {
    ambient.distance(&x.coords, &y.coords)
}

/// Geodesic distance inside `M` between two points of `M`.
pub fn intrinsic_distance(p: &Point, q: &Point, model: &ManifoldModel) -> Result<f64, GeometryError> {
    model.intrinsic_distance(&p.coords, &q.coords)
}

/// The unique nearest point of `M` to `y`.
pub fn project_to_manifold(y: &Point, model: &ManifoldModel) -> Result<Point, GeometryError> {
    model.project(&y.coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{PI, TAU};

    #[test]
    fn circle_params() {
        let p = geometric_params(&ManifoldModel::circle(1.0).unwrap(), Some(0.5)).unwrap();
        assert_eq!((p.m, p.n), (1, 2));
        assert_eq!(p.tau, 1.0);
        assert!(p.eta.is_infinite());
        assert_eq!(p.s, 0.0);
        assert!((p.vol_m - TAU).abs() < 1e-15);
        // annulus area π(1.5² − 0.5²)
        assert!((p.tube.unwrap().volume - TAU).abs() < 1e-12);
    }

    #[test]
    fn catalog_params() {
        let s2 = geometric_params(&ManifoldModel::sphere(1.0).unwrap(), None).unwrap();
        assert_eq!(s2.s, 2.0);
        assert!((s2.vol_m - 4.0 * PI).abs() < 1e-12);
        assert_eq!(s2.tau, 1.0);

        let sc = geometric_params(&ManifoldModel::small_circle(0.15).unwrap(), None).unwrap();
        assert_eq!(sc.tau, 0.15);
        assert_eq!(sc.eta, PI / 2.0);
        assert_eq!(sc.kappa_max, 1.0);
        assert!((sc.vol_m - TAU * libm::sin(0.15)).abs() < 1e-15);
        assert_eq!(sc.ambient_scalar_bound(), 2.0);

        let t = geometric_params(&ManifoldModel::torus(1.0, 1.0).unwrap(), None).unwrap();
        assert_eq!((t.m, t.n, t.tau, t.s), (2, 4, 1.0, 0.0));
        assert!((t.vol_m - 4.0 * PI * PI).abs() < 1e-12);

        let h = geometric_params(&ManifoldModel::hyperbolic_circle(0.5).unwrap(), None).unwrap();
        assert_eq!(h.tau, 0.5);
        assert!(h.eta.is_infinite());
        assert!(h.kappa_max <= 0.0);
    }

    #[test]
    fn tube_radius_must_be_inside_reach() {
        let c = ManifoldModel::circle(1.0).unwrap();
        assert!(matches!(geometric_params(&c, Some(1.0)), Err(GeometryError::InvalidTubeRadius { .. })));
        assert!(matches!(geometric_params(&c, Some(0.0)), Err(GeometryError::InvalidTubeRadius { .. })));
        assert!(geometric_params(&c, Some(0.99)).is_ok());
    }
}
