use alloc::vec::Vec;

use super::GeometryError;
use crate::math::{asinh, atan2, dist_sq, sqrt, sum_norm, PI};

/// Tolerance on the sphere and hyperboloid constraints of stored points.
pub const CONSTRAINT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AmbientKind {
    Euclidean,
    /// Unit round sphere, embedded in `R^{n+1}`.
    RoundSphere,
    /// Unit hyperbolic space in the hyperboloid model: `⟨x,x⟩ = -1`,
    /// `x₀ > 0`, Minkowski signature `(-, +, …, +)`.
    Hyperbolic,
}

impl AmbientKind {
    pub fn curvature(self) -> f64 {
        match self {
            AmbientKind::Euclidean => 0.0,
            AmbientKind::RoundSphere => 1.0,
            AmbientKind::Hyperbolic => -1.0,
        }
    }
}

/// A complete constant-curvature ambient manifold `N` of dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AmbientSpace {
    kind: AmbientKind,
    n: usize,
}

impl AmbientSpace {
    pub fn euclidean(n: usize) -> Self {
        assert!(n >= 1, "ambient dimension must be at least 1");
        Self { kind: AmbientKind::Euclidean, n }
    }

    pub fn sphere(n: usize) -> Self {
        assert!(n >= 1, "ambient dimension must be at least 1");
        Self { kind: AmbientKind::RoundSphere, n }
    }

    pub fn hyperbolic(n: usize) -> Self {
        assert!(n >= 1, "ambient dimension must be at least 1");
        Self { kind: AmbientKind::Hyperbolic, n }
    }

    /// Builds a space from an explicit curvature, which must be the one
    /// fixed by `kind`.
    pub fn with_curvature(kind: AmbientKind, n: usize, curvature: f64) -> Result<Self, GeometryError> {
        if n == 0 {
            return Err(GeometryError::InvalidParameter { name: "n", value: 0.0 });
        }
        if curvature != kind.curvature() {
            return Err(GeometryError::InvalidParameter { name: "curvature", value: curvature });
        }
        Ok(Self { kind, n })
    }

    pub fn kind(&self) -> AmbientKind {
        self.kind
    }

    /// Intrinsic dimension of `N`.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Length of the coordinate vectors used for points of this space.
    pub fn coord_len(&self) -> usize {
        match self.kind {
            AmbientKind::Euclidean => self.n,
            AmbientKind::RoundSphere | AmbientKind::Hyperbolic => self.n + 1,
        }
    }

    pub fn curvature(&self) -> f64 {
        self.kind.curvature()
    }

    /// Scalar curvature `n(n-1)κ`.
    pub fn scalar_curvature(&self) -> f64 {
        (self.n * (self.n - 1)) as f64 * self.curvature()
    }

    /// Convexity radius η.
    pub fn convexity_radius(&self) -> f64 {
        match self.kind {
            AmbientKind::Euclidean | AmbientKind::Hyperbolic => f64::INFINITY,
            AmbientKind::RoundSphere => PI / 2.0,
        }
    }

    /// Volume of a geodesic ball of radius `r` (closed form; `n ≤ 2` for
    /// the curved kinds).
    pub fn ball_volume(&self, r: f64) -> Option<f64> {
        use crate::math::{cos, cosh};
        match (self.kind, self.n) {
            (AmbientKind::Euclidean, n) => Some(crate::bounds::unit_ball_volume(n) * crate::math::pow(r, n as f64)),
            (AmbientKind::RoundSphere, 1) => Some(2.0 * r.min(PI)),
            (AmbientKind::RoundSphere, 2) => Some(2.0 * PI * (1.0 - cos(r.min(PI)))),
            (AmbientKind::Hyperbolic, 1) => Some(2.0 * r),
            (AmbientKind::Hyperbolic, 2) => Some(2.0 * PI * (cosh(r) - 1.0)),
            _ => None,
        }
    }

    /// Checks dimension and the sphere/hyperboloid constraint.
    pub fn validate(&self, coords: &[f64]) -> Result<(), GeometryError> {
        if coords.len() != self.coord_len() {
            return Err(GeometryError::DimensionMismatch { expected: self.coord_len(), found: coords.len() });
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let residual = match self.kind {
            AmbientKind::Euclidean => 0.0,
            AmbientKind::RoundSphere => coords.iter().map(|x| x * x).sum::<f64>() - 1.0,
            AmbientKind::Hyperbolic => {
                if coords[0] <= 0.0 {
                    return Err(GeometryError::OffConstraint { residual: coords[0] });
                }
                minkowski(coords, coords) + 1.0
            }
        };
        if residual.abs() > CONSTRAINT_TOL {
            return Err(GeometryError::OffConstraint { residual });
        }
        Ok(())
    }

    /// Geodesic distance in `N`. Both points are validated first.
    pub fn distance(&self, x: &[f64], y: &[f64]) -> Result<f64, GeometryError> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(self.distance_unchecked(x, y))
    }

    /// Geodesic distance without validation.
    ///
    /// The sphere and hyperboloid branches use the half-chord forms
    /// `2·atan2(|x-y|, |x+y|)` and `2·asinh(|x-y|_M / 2)`, which equal
    /// `arccos⟨x,y⟩` and `arcosh(-⟨x,y⟩_M)` on the constraint surfaces but
    /// stay accurate for nearby points.
    #[inline]
    pub fn distance_unchecked(&self, x: &[f64], y: &[f64]) -> f64 {
        match self.kind {
            AmbientKind::Euclidean => sqrt(dist_sq(x, y)),
            AmbientKind::RoundSphere => 2.0 * atan2(sqrt(dist_sq(x, y)), sum_norm(x, y)),
            AmbientKind::Hyperbolic => {
                let t = x[0] - y[0];
                let q = dist_sq(&x[1..], &y[1..]) - t * t;
                2.0 * asinh(sqrt(q.max(0.0)) / 2.0)
            }
        }
    }

    /// Lifts `R^n` coordinates to a point of the space: identity for
    /// Euclidean space, normalization onto the sphere (`coords` in
    /// `R^{n+1}`), and `x₀ = √(1+|x|²)` onto the hyperboloid (`coords` the
    /// spatial part in `R^n`).
    pub fn lift(&self, coords: &[f64]) -> Vec<f64> {
        match self.kind {
            AmbientKind::Euclidean => coords.to_vec(),
            AmbientKind::RoundSphere => {
                let r = crate::math::norm(coords);
                coords.iter().map(|x| x / r).collect()
            }
            AmbientKind::Hyperbolic => {
                let mut v = Vec::with_capacity(coords.len() + 1);
                v.push(sqrt(1.0 + coords.iter().map(|x| x * x).sum::<f64>()));
                v.extend_from_slice(coords);
                v
            }
        }
    }
}

/// Minkowski product `-x₀y₀ + Σ xᵢyᵢ`.
#[inline]
pub fn minkowski(x: &[f64], y: &[f64]) -> f64 {
    -x[0] * y[0] + x[1..].iter().zip(&y[1..]).map(|(a, b)| a * b).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{cosh, sinh};

    #[test]
    fn euclidean_pythagorean() {
        let e = AmbientSpace::euclidean(2);
        assert_eq!(e.distance(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
    }

    #[test]
    fn sphere_orthogonal_vectors() {
        let s = AmbientSpace::sphere(2);
        let d = s.distance(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]).unwrap();
        assert!((d - PI / 2.0).abs() < 1e-15);
        let d = s.distance(&[1.0, 0.0, 0.0], &[-1.0, 0.0, 0.0]).unwrap();
        assert!((d - PI).abs() < 1e-15);
    }

    #[test]
    fn identity_is_zero() {
        let x = [cosh(0.7), sinh(0.7), 0.0];
        assert_eq!(AmbientSpace::hyperbolic(2).distance(&x, &x).unwrap(), 0.0);
        let y = [0.6, 0.8, 0.0];
        assert_eq!(AmbientSpace::sphere(2).distance(&y, &y).unwrap(), 0.0);
        assert_eq!(AmbientSpace::euclidean(3).distance(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap(), 0.0);
    }

    #[test]
    fn hyperbolic_matches_arcosh() {
        let h = AmbientSpace::hyperbolic(2);
        let x = [cosh(0.3), sinh(0.3), 0.0];
        let y = [cosh(1.1), 0.0, -sinh(1.1)];
        let expected = libm::acosh(-minkowski(&x, &y));
        assert!((h.distance(&x, &y).unwrap() - expected).abs() < 1e-12);
        // along a geodesic through the base point distances add
        let o = [1.0, 0.0, 0.0];
        let z = [cosh(1.1), -sinh(1.1), 0.0];
        let w = [cosh(0.4), sinh(0.4), 0.0];
        assert!((h.distance(&z, &w).unwrap() - 1.5).abs() < 1e-12);
        assert!((h.distance(&o, &z).unwrap() - 1.1).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_points() {
        let s = AmbientSpace::sphere(2);
        assert!(matches!(s.distance(&[1.0, 0.0], &[0.0, 1.0, 0.0]), Err(GeometryError::DimensionMismatch { .. })));
        assert!(matches!(s.distance(&[1.0, 1e-6, 0.0], &[0.0, 1.0, 0.0]), Err(GeometryError::OffConstraint { .. })));
        let h = AmbientSpace::hyperbolic(2);
        assert!(h.validate(&[1.0, 0.1, 0.0]).is_err());
        assert!(h.validate(&[-1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn curvature_is_fixed_by_kind() {
        assert!(AmbientSpace::with_curvature(AmbientKind::RoundSphere, 2, 1.0).is_ok());
        assert!(AmbientSpace::with_curvature(AmbientKind::RoundSphere, 2, 4.0).is_err());
        assert!(AmbientSpace::with_curvature(AmbientKind::Hyperbolic, 2, 0.0).is_err());
        assert_eq!(AmbientSpace::sphere(2).convexity_radius(), PI / 2.0);
        assert!(AmbientSpace::hyperbolic(2).convexity_radius().is_infinite());
        assert_eq!(AmbientSpace::sphere(2).scalar_curvature(), 2.0);
    }
}
