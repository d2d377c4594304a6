use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{AmbientSpace, GeometryError, Point};
use crate::math::{asinh, atan2, cos, cosh, norm, planar_angle, sin, sinh, sq, sqrt, PI, TAU};

/// Inputs within this distance of the medial axis have no unique nearest
/// point.
pub const MEDIAL_TOL: f64 = 1e-9;

/// Points farther than this from `M` are rejected as off-manifold.
pub const ON_MANIFOLD_TOL: f64 = 1e-9;

/// The model catalog. Each variant is a connected compact submanifold with
/// positive reach and closed-form geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ManifoldModel {
    /// Circle of the given radius centered at the origin of `R²`.
    CircleR2 { radius: f64 },
    /// Round 2-sphere of the given radius centered at the origin of `R³`.
    SphereR3 { radius: f64 },
    /// Flat torus `S¹(a) × S¹(b) ⊂ R² × R²`.
    TorusR4 { a: f64, b: f64 },
    /// Circle at geodesic distance `rho` from the north pole of the unit
    /// `S²`; `rho = π/2` is a great circle.
    SmallCircleS2 { rho: f64 },
    /// Circle of geodesic radius `rho` about the base point `(1,0,0)` of
    /// the hyperboloid `H²`.
    CircleH2 { rho: f64 },
}

impl ManifoldModel {
    pub fn circle(radius: f64) -> Result<Self, GeometryError> {
        positive("r", radius)?;
        Ok(Self::CircleR2 { radius })
    }

    pub fn sphere(radius: f64) -> Result<Self, GeometryError> {
        positive("r", radius)?;
        Ok(Self::SphereR3 { radius })
    }

    pub fn torus(a: f64, b: f64) -> Result<Self, GeometryError> {
        positive("a", a)?;
        positive("b", b)?;
        Ok(Self::TorusR4 { a, b })
    }

    pub fn small_circle(rho: f64) -> Result<Self, GeometryError> {
        if !(rho > 0.0 && rho < PI) {
            return Err(GeometryError::InvalidParameter { name: "rho", value: rho });
        }
        Ok(Self::SmallCircleS2 { rho })
    }

    pub fn hyperbolic_circle(rho: f64) -> Result<Self, GeometryError> {
        positive("rho", rho)?;
        Ok(Self::CircleH2 { rho })
    }

    /// Parses identifiers such as `circle-r2`, `torus-r4:a=1,b=2` or
    /// `smallcircle-s2:rho=0.15`.
    pub fn parse(id: &str) -> Result<Self, GeometryError> {
        let id = id.trim();
        let (family, params) = match id.split_once(':') {
            Some((f, p)) => (f, p),
            None => (id, ""),
        };
        let mut kv: Vec<(&str, f64)> = Vec::new();
        for part in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| GeometryError::MalformedModel(id.to_string()))?;
            let v: f64 = v.trim().parse().map_err(|_| GeometryError::MalformedModel(id.to_string()))?;
            kv.push((k.trim(), v));
        }
        let take = |allowed: &[&str]| -> Result<Vec<Option<f64>>, GeometryError> {
            if let Some((k, _)) = kv.iter().find(|(k, _)| !allowed.contains(k)) {
                return Err(GeometryError::MalformedModel(format!("{id}: unknown parameter `{k}`")));
            }
            Ok(allowed.iter().map(|a| kv.iter().rev().find(|(k, _)| k == a).map(|&(_, v)| v)).collect())
        };
        match family {
            "circle-r2" => {
                let p = take(&["r"])?;
                Self::circle(p[0].unwrap_or(1.0))
            }
            "sphere2-r3" => {
                let p = take(&["r"])?;
                Self::sphere(p[0].unwrap_or(1.0))
            }
            "torus-r4" => {
                let p = take(&["a", "b"])?;
                Self::torus(p[0].unwrap_or(1.0), p[1].unwrap_or(1.0))
            }
            "smallcircle-s2" => {
                let p = take(&["rho"])?;
                let rho = p[0].ok_or_else(|| GeometryError::MalformedModel(format!("{id}: `rho` is required")))?;
                Self::small_circle(rho)
            }
            "greatcircle-s2" => {
                take(&[])?;
                Self::small_circle(PI / 2.0)
            }
            "circle-h2" => {
                let p = take(&["rho"])?;
                Self::hyperbolic_circle(p[0].unwrap_or(0.5))
            }
            _ => Err(GeometryError::UnknownModel(id.to_string())),
        }
    }

    /// Canonical identifier; [`ManifoldModel::parse`] inverts it.
    pub fn identifier(&self) -> String {
        match *self {
            Self::CircleR2 { radius: 1.0 } => "circle-r2".to_string(),
            Self::CircleR2 { radius } => format!("circle-r2:r={radius}"),
            Self::SphereR3 { radius: 1.0 } => "sphere2-r3".to_string(),
            Self::SphereR3 { radius } => format!("sphere2-r3:r={radius}"),
            Self::TorusR4 { a, b } if a == 1.0 && b == 1.0 => "torus-r4".to_string(),
            Self::TorusR4 { a, b } => format!("torus-r4:a={a},b={b}"),
            Self::SmallCircleS2 { rho } if rho == PI / 2.0 => "greatcircle-s2".to_string(),
            Self::SmallCircleS2 { rho } => format!("smallcircle-s2:rho={rho}"),
            Self::CircleH2 { rho } => format!("circle-h2:rho={rho}"),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::CircleR2 { .. } => "circle-r2",
            Self::SphereR3 { .. } => "sphere2-r3",
            Self::TorusR4 { .. } => "torus-r4",
            Self::SmallCircleS2 { .. } => "smallcircle-s2",
            Self::CircleH2 { .. } => "circle-h2",
        }
    }

    pub fn ambient(&self) -> AmbientSpace {
        match self {
            Self::CircleR2 { .. } => AmbientSpace::euclidean(2),
            Self::SphereR3 { .. } => AmbientSpace::euclidean(3),
            Self::TorusR4 { .. } => AmbientSpace::euclidean(4),
            Self::SmallCircleS2 { .. } => AmbientSpace::sphere(2),
            Self::CircleH2 { .. } => AmbientSpace::hyperbolic(2),
        }
    }

    /// Intrinsic dimension `m`.
    pub fn dim(&self) -> usize {
        match self {
            Self::SphereR3 { .. } | Self::TorusR4 { .. } => 2,
            _ => 1,
        }
    }

    /// Ground-truth Betti numbers `β₀..β_m` over GF(2).
    pub fn betti_reference(&self) -> Vec<usize> {
        match self {
            Self::SphereR3 { .. } => vec![1, 0, 1],
            Self::TorusR4 { .. } => vec![1, 2, 1],
            _ => vec![1, 1],
        }
    }

    pub fn reach(&self) -> f64 {
        match *self {
            Self::CircleR2 { radius } | Self::SphereR3 { radius } => radius,
            Self::TorusR4 { a, b } => a.min(b),
            Self::SmallCircleS2 { rho } => rho.min(PI - rho),
            Self::CircleH2 { rho } => rho,
        }
    }

    /// Upper bound on the scalar curvature of `M` (exact: all catalog
    /// models are homogeneous).
    pub fn scalar_curvature(&self) -> f64 {
        match *self {
            Self::SphereR3 { radius } => 2.0 / sq(radius),
            _ => 0.0,
        }
    }

    /// Riemannian volume of `M`.
    pub fn volume(&self) -> f64 {
        match *self {
            Self::CircleR2 { radius } => TAU * radius,
            Self::SphereR3 { radius } => 2.0 * TAU * sq(radius),
            Self::TorusR4 { a, b } => TAU * TAU * a * b,
            Self::SmallCircleS2 { rho } => TAU * sin(rho),
            Self::CircleH2 { rho } => TAU * sinh(rho),
        }
    }

    /// Intrinsic diameter of `M`.
    pub fn diameter(&self) -> f64 {
        match *self {
            Self::SphereR3 { radius } => PI * radius,
            Self::TorusR4 { a, b } => PI * sqrt(a * a + b * b),
            _ => self.volume() / 2.0,
        }
    }

    /// Volume of `T_r(M)` for `0 < r < τ`.
    pub fn tube_volume(&self, r: f64) -> Result<f64, GeometryError> {
        let reach = self.reach();
        if !(r > 0.0 && r < reach) {
            return Err(GeometryError::InvalidTubeRadius { r, reach });
        }
        Ok(match *self {
            Self::CircleR2 { radius } => 2.0 * TAU * radius * r,
            Self::SphereR3 { radius } => 4.0 * PI * (crate::math::pow(radius + r, 3.0) - crate::math::pow(radius - r, 3.0)) / 3.0,
            Self::TorusR4 { a, b } => 4.0 * PI * PI * PI * a * b * r * r,
            Self::SmallCircleS2 { rho } => 2.0 * TAU * sin(rho) * sin(r),
            Self::CircleH2 { rho } => 2.0 * TAU * sinh(rho) * sinh(r),
        })
    }

    /// Exact volume of an intrinsic ball `B^M_r(y)`, when it has a closed
    /// form (the torus needs `r` below its injectivity radius).
    pub fn intrinsic_ball_volume(&self, r: f64) -> Option<f64> {
        match *self {
            Self::SphereR3 { radius } => Some(TAU * sq(radius) * (1.0 - cos((r / radius).min(PI)))),
            Self::TorusR4 { a, b } => (r <= PI * a.min(b)).then_some(PI * r * r),
            _ => Some((2.0 * r).min(self.volume())),
        }
    }

    /// Embeds intrinsic chart coordinates.
    pub fn point_at(&self, chart: &[f64]) -> Point {
        let coords = match *self {
            Self::CircleR2 { radius } => vec![radius * cos(chart[0]), radius * sin(chart[0])],
            Self::SphereR3 { radius } => {
                let (phi, theta) = (chart[0], chart[1]);
                vec![radius * sin(phi) * cos(theta), radius * sin(phi) * sin(theta), radius * cos(phi)]
            }
            Self::TorusR4 { a, b } => vec![a * cos(chart[0]), a * sin(chart[0]), b * cos(chart[1]), b * sin(chart[1])],
            Self::SmallCircleS2 { rho } => vec![sin(rho) * cos(chart[0]), sin(rho) * sin(chart[0]), cos(rho)],
            Self::CircleH2 { rho } => vec![cosh(rho), sinh(rho) * cos(chart[0]), sinh(rho) * sin(chart[0])],
        };
        Point::with_chart(coords, chart.to_vec())
    }

    /// Geodesic distance in `N` from `y` to `M`; `y` is assumed valid.
    pub fn distance_to(&self, y: &[f64]) -> f64 {
        match *self {
            Self::CircleR2 { radius } | Self::SphereR3 { radius } => (norm(y) - radius).abs(),
            Self::TorusR4 { a, b } => sqrt(sq(norm(&y[..2]) - a) + sq(norm(&y[2..]) - b)),
            Self::SmallCircleS2 { rho } => (polar_angle(y) - rho).abs(),
            Self::CircleH2 { rho } => (asinh(norm(&y[1..])) - rho).abs(),
        }
    }

    /// Geodesic distance in `N` from `y` to the medial axis of `M`.
    pub fn distance_to_medial_axis(&self, y: &[f64]) -> f64 {
        match self {
            Self::CircleR2 { .. } | Self::SphereR3 { .. } => norm(y),
            Self::TorusR4 { .. } => norm(&y[..2]).min(norm(&y[2..])),
            Self::SmallCircleS2 { .. } => {
                let phi = polar_angle(y);
                phi.min(PI - phi)
            }
            Self::CircleH2 { .. } => asinh(norm(&y[1..])),
        }
    }

    /// Nearest point of `M` to `y`.
    ///
    /// The catalog's medial axes are known exactly, so the projection is
    /// returned for every `y` farther than [`MEDIAL_TOL`] from the medial
    /// axis; this includes all of `T_τ(M)`.
    pub fn project(&self, y: &[f64]) -> Result<Point, GeometryError> {
        self.ambient().validate(y)?;
        let to_medial = self.distance_to_medial_axis(y);
        if to_medial <= MEDIAL_TOL {
            return Err(GeometryError::MedialAxis { distance: to_medial });
        }
        Ok(self.point_at(&self.chart_of(y)))
    }

    /// Intrinsic chart coordinates of the nearest point of `M` to `y`.
    pub fn chart_of(&self, y: &[f64]) -> Vec<f64> {
        match self {
            Self::CircleR2 { .. } | Self::SmallCircleS2 { .. } => vec![atan2(y[1], y[0])],
            Self::SphereR3 { .. } => vec![polar_angle(y), atan2(y[1], y[0])],
            Self::TorusR4 { .. } => vec![atan2(y[1], y[0]), atan2(y[3], y[2])],
            Self::CircleH2 { .. } => vec![atan2(y[2], y[1])],
        }
    }

    /// Checks that `p` is a valid ambient point within
    /// [`ON_MANIFOLD_TOL`] of `M`.
    pub fn check_on_manifold(&self, p: &[f64]) -> Result<(), GeometryError> {
        let ambient = self.ambient();
        if p.len() != ambient.coord_len() {
            return Err(GeometryError::DimensionMismatch { expected: ambient.coord_len(), found: p.len() });
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let distance = self.distance_to(p);
        if distance > ON_MANIFOLD_TOL {
            return Err(GeometryError::NotOnManifold { distance });
        }
        Ok(())
    }

    pub fn intrinsic_distance(&self, p: &[f64], q: &[f64]) -> Result<f64, GeometryError> {
        self.check_on_manifold(p)?;
        self.check_on_manifold(q)?;
        Ok(self.intrinsic_distance_unchecked(p, q))
    }

    /// Intrinsic distance between two points assumed to lie on `M`.
    #[inline]
    pub fn intrinsic_distance_unchecked(&self, p: &[f64], q: &[f64]) -> f64 {
        match *self {
            Self::CircleR2 { radius } => radius * planar_angle(p[0], p[1], q[0], q[1]),
            Self::SphereR3 { radius } => {
                let d = crate::math::dist_sq(p, q);
                let s = p.iter().zip(q).map(|(a, b)| sq(a + b)).sum::<f64>();
                radius * 2.0 * atan2(sqrt(d), sqrt(s))
            }
            Self::TorusR4 { a, b } => {
                let u = a * planar_angle(p[0], p[1], q[0], q[1]);
                let v = b * planar_angle(p[2], p[3], q[2], q[3]);
                sqrt(u * u + v * v)
            }
            Self::SmallCircleS2 { rho } => sin(rho) * planar_angle(p[0], p[1], q[0], q[1]),
            Self::CircleH2 { rho } => sinh(rho) * planar_angle(p[1], p[2], q[1], q[2]),
        }
    }

    /// A deterministic grid on `M` with `resolution` nodes per circle
    /// factor (the sphere uses `resolution/2 + 1` latitude rows).
    pub fn grid(&self, resolution: usize) -> Vec<Point> {
        let res = resolution.max(1);
        let step = TAU / res as f64;
        match self {
            Self::TorusR4 { .. } => {
                let mut pts = Vec::with_capacity(res * res);
                for i in 0..res {
                    for j in 0..res {
                        pts.push(self.point_at(&[i as f64 * step, j as f64 * step]));
                    }
                }
                pts
            }
            Self::SphereR3 { .. } => {
                let rows = (res / 2).max(1);
                let dphi = PI / rows as f64;
                let mut pts = Vec::new();
                pts.push(self.point_at(&[0.0, 0.0]));
                for i in 1..rows {
                    for j in 0..res {
                        pts.push(self.point_at(&[i as f64 * dphi, j as f64 * step]));
                    }
                }
                pts.push(self.point_at(&[PI, 0.0]));
                pts
            }
            _ => (0..res).map(|i| self.point_at(&[i as f64 * step])).collect(),
        }
    }

    /// Largest intrinsic edge length of [`ManifoldModel::grid`]; every
    /// point of `M` lies within this distance of a grid node.
    pub fn grid_spacing(&self, resolution: usize) -> f64 {
        let res = resolution.max(1) as f64;
        match *self {
            Self::TorusR4 { a, b } => TAU * a.max(b) / res,
            Self::SphereR3 { radius } => {
                let rows = (resolution / 2).max(1) as f64;
                (PI * radius / rows).max(TAU * radius / res)
            }
            _ => self.volume() / res,
        }
    }

    /// Smallest resolution whose grid spacing is at most `spacing`.
    pub fn resolution_for_spacing(&self, spacing: f64) -> usize {
        let mut res = match *self {
            Self::TorusR4 { a, b } => crate::math::ceil(TAU * a.max(b) / spacing) as usize,
            Self::SphereR3 { radius } => crate::math::ceil(TAU * radius / spacing) as usize,
            _ => crate::math::ceil(self.volume() / spacing) as usize,
        };
        res = res.max(2);
        while self.grid_spacing(res) > spacing {
            res += 1;
        }
        res
    }
}

fn positive(name: &'static str, value: f64) -> Result<(), GeometryError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(GeometryError::InvalidParameter { name, value })
    }
}

/// Polar angle from the `+z` axis of a point of `R³`.
#[inline]
fn polar_angle(y: &[f64]) -> f64 {
    atan2(sqrt(y[0] * y[0] + y[1] * y[1]), y[2])
}
