//! Numerical engine for the Funk-Finsler (Randers) metric on discs in the
//! three constant-curvature model geometries (eps in {-1, 0, +1}).
//!
//! The crate provides closed-form evaluation of the metric, its distance
//! function, spray, S-curvature, Riemann/Ricci/flag curvature, and Zermelo
//! navigation data, together with a generic dual-number Finsler oracle that
//! cross-verifies every closed form by differentiation alone.

pub mod curvature;
pub mod distance;
pub mod dual;
pub mod error;
pub mod geometry;
pub mod mat;
pub mod metric;
pub mod oracle;
pub mod sampling;
pub mod verify;
pub mod zermelo;

pub use error::{FunkError, Result};
pub use geometry::{DiscChart, Point2, Tangent2, TangentSample};
