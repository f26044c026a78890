//! Calibration pairs for conformal plane metrics `|∇f|² (dx² + dy²)`.
//!
//! A pair of functions `f, g` with orthogonal, nonvanishing gradients turns
//! the level curves of `g` into weighted-length minimizers for the density
//! `|∇f|`: any curve joining two points of such a level curve has weighted
//! length at least `|f(p2) - f(p1)|`. This crate builds such pairs, keeps a
//! catalog of worked instances and certifies them numerically.
//!
//! Start with [`catalog::catalog_entries`] and
//! [`catalog::CatalogEntry::verify`]; the `examples/` directory has one
//! runnable program per capability.

pub mod builder;
pub mod calibration;
pub mod catalog;
pub mod cli;
pub mod curve;
pub mod error;
pub mod field;
pub mod geodesic;
pub mod geometry;
pub mod numfmt;
pub mod quadrature;

pub use calibration::{
    calibrated_bound, check_density, check_orthogonality, generate_competitor, verify_minimizer, CalibrationPair,
    Tolerances, VerificationReport, VerifyConfig,
};
pub use curve::{resample_arclength, Curve, Polyline};
pub use error::{Error, Result};
pub use field::{grad, ScalarField};
pub use geometry::{BBox, Domain, Point2, Vec2};
pub use quadrature::{exact_increment, weighted_length};
