//! Topology inference from random samples of submanifolds.
//!
//! The crate is split along the path a single experiment takes:
//!
//! - [`geometry`]: model submanifolds of constant-curvature spaces with
//!   closed-form distances, projections, reach and volumes.
//! - [`sampling`]: seeded uniform sampling on a model or in its tube, and
//!   conservative ε-density checks.
//! - [`bounds`]: the coverage lower bound `g(l)`, the sample size `φ(p)`
//!   and the admissibility conditions of the clean and noisy regimes.
//! - [`complex`]: Čech and Vietoris–Rips complexes and Betti numbers over
//!   GF(2).
//! - [`pipeline`]: one trial of the end-to-end experiment.
//!
//! Everything here is pure computation and builds without `std`; file
//! formats, the CLI and parallel trial execution live in the `topinfer`
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounds;
pub mod complex;
pub mod geometry;
pub(crate) mod math;
pub mod pipeline;
pub mod sampling;

pub use bounds::{AdmissibilityReport, BoundsError, CoverageBound, Regime, VolumeMode};
pub use complex::{BettiVector, ComplexError, Metric, SimplicialComplex};
pub use geometry::{AmbientKind, AmbientSpace, GeometricParams, GeometryError, ManifoldModel, Point};
pub use sampling::{SampleSet, SampleSource, SamplingError};
