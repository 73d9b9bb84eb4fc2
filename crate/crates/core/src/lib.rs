//! Numerical geometry of Minkowski planes.
//!
//! A chord `[u, v]` of the unit sphere `S` *supports* `ρS` when the
//! smallest norm along it equals `ρ`. This crate computes those chords, the
//! star map `u ↦ u*` that sends `u` to the next supporting endpoint, the
//! orbits it generates (ρ-polygons), the origin-centered ellipses through
//! `u`, `(u + u*)/2ρ` and `u*`, and sector areas of the unit ball, then uses
//! them to test whether a norm has the midpoint-support property: every
//! supporting chord touches `ρS` at its midpoint.

// `!(x < y)` guards below are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod area;
pub mod chord;
pub mod ellipse;
pub mod error;
pub mod lab;
pub mod minimize;
pub mod norm;
pub mod point;
pub mod polygon;
pub mod svg;

pub use error::{GeomError, Result};
pub use norm::{eval_norm, natural_param, NormSpec, UnitPoint};
pub use point::{precedes, wedge, Point};
