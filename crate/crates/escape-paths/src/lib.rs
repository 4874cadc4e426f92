//! Search paths that meet every tangent line of the unit circle.
//!
//! The crate constructs the classical candidate paths (naive circuit,
//! quarter replacement, overshoot-and-return family, semicircle with tangent
//! extensions), verifies tangent coverage by three independent methods,
//! applies length-reducing rewrite moves, and minimizes length over path
//! families and free polylines with the optimal lengths acting as certified
//! lower bounds.

pub mod bounds;
pub mod candidates;
pub mod coverage;
pub mod doc;
pub mod geom;
pub mod optimize;
pub mod shortening;
pub mod svg;

pub use coverage::{CoverageReport, VerifyConfig};
pub use geom::{Angle, PathPiece, PiecewisePath, Point};
