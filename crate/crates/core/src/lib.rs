//! Killing algebras, isometry groups and holonomy analysis for locally
//! homogeneous affine connections on surfaces.
//!
//! The crate is layered:
//!
//! * [`algebra`]: exact rationals, bivariate rational functions, Taylor
//!   expansions and exact linear algebra.
//! * [`connection`]: the coordinate connection model, torsion, curvature,
//!   geodesics and numeric isometry checks.
//! * [`killing`]: the Killing equations, their jet prolongation at a point and
//!   the classification of the resulting Lie algebra.
//! * [`family`]: the four-parameter connection family with a four-dimensional
//!   Killing algebra, its isometry group and holonomy case analysis.
//! * [`models`]: homogeneous models of `SL(2,R)`, `SO(3)` and `Aff+(R)`.
//! * [`certify`]: the aggregated certificate suite.

pub mod algebra;
pub mod certify;
pub mod connection;
pub mod error;
pub mod family;
pub mod killing;
pub mod models;
pub mod par;

pub use error::{Error, Result};
