//! Float helpers for `no_std` builds.

pub(crate) use core::f64::consts::{PI, TAU};
pub(crate) use libm::{asinh, atan2, cos, cosh, exp, log, log1p, pow, sin, sinh, sqrt};

#[inline]
pub(crate) fn sq(x: f64) -> f64 {
    x * x
}

#[inline]
pub(crate) fn norm(v: &[f64]) -> f64 {
    sqrt(v.iter().map(|x| x * x).sum())
}

#[inline]
pub(crate) fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| sq(x - y)).sum()
}

#[inline]
pub(crate) fn sum_norm(a: &[f64], b: &[f64]) -> f64 {
    sqrt(a.iter().zip(b).map(|(x, y)| sq(x + y)).sum())
}

/// Angle between two planar vectors, in `[0, π]`.
#[inline]
pub(crate) fn planar_angle(ax: f64, ay: f64, bx: f64, by: f64) -> f64 {
    libm::fabs(atan2(ax * by - ay * bx, ax * bx + ay * by))
}

pub(crate) fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}
