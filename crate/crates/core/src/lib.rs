//! Curvature analysis of implicit surfaces and their intersection curves,
//! centered on one question: which circles of latitude on a quadric or a
//! surface of revolution are proper biharmonic curves.
//!
//! The crate has three layers:
//!
//! * generic differential geometry of implicit surfaces ([`curvature`],
//!   [`surface`], [`geometry`]): Gaussian curvature, normal curvature,
//!   and the curvature decomposition of a transversal intersection curve;
//! * closed forms and the existence classification for quadrics
//!   ([`quadrics`]) and for surfaces of revolution ([`revolution`]),
//!   including the superquadric parallel solver and the explicit profile
//!   whose every parallel is proper biharmonic;
//! * numerical verification ([`tracer`]): a predictor-corrector curve
//!   tracer and a finite-difference curvature oracle, independent of the
//!   closed forms so the two can check each other.

pub mod config;
pub mod curvature;
pub mod error;
pub mod geometry;
pub mod numfmt;
pub mod parse;
pub mod quadrics;
pub mod revolution;
pub mod surface;
pub mod tracer;

pub use error::{Error, Result};
pub use geometry::{Mat3, Vec3};
pub use surface::{Poly3, Profile, SurfaceSpec};
