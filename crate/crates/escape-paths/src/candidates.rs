//! Canonical constructions of every candidate path, in fixed coordinates,
//! plus the parametrized overshoot-and-return family.

use std::f64::consts::{FRAC_PI_6, PI, TAU};

use thiserror::Error;

use crate::bounds::ell;
use crate::geom::{Angle, PathPiece, PiecewisePath, Point};

#[derive(Debug, Error, PartialEq, Clone)]
pub enum CandidateError {
    #[error("alpha = {alpha} outside [0, pi/2)")]
    AlphaOutOfDomain { alpha: f64 },
    #[error("expected {expected} parameters, got {got}")]
    BadParamCount { expected: usize, got: usize },
}

/// A parametrized path generator with a parameter box.
pub struct PathFamily {
    pub name: &'static str,
    pub param_names: Vec<&'static str>,
    pub param_box: Vec<(f64, f64)>,
    pub build: Box<dyn Fn(&[f64]) -> Result<PiecewisePath, CandidateError> + Send + Sync>,
    pub closed_form_length: Option<Box<dyn Fn(&[f64]) -> f64 + Send + Sync>>,
}

/// Walk one radius out, then traverse the full circle counterclockwise.
/// Length `1 + 2*pi`.
pub fn naive_path() -> PiecewisePath {
    PiecewisePath::new(vec![
        PathPiece::segment(Point::ORIGIN, Point::new(1.0, 0.0)),
        PathPiece::arc(Point::ORIGIN, 1.0, 0.0, TAU, true),
    ])
    .unwrap()
}

/// Replace the last quarter of the naive circuit by a unit tangent segment.
/// Length `2 + 3*pi/2`.
pub fn figure1_path() -> PiecewisePath {
    PiecewisePath::new(vec![
        PathPiece::segment(Point::ORIGIN, Point::new(1.0, 0.0)),
        PathPiece::arc(Point::ORIGIN, 1.0, 0.0, 1.5 * PI, true),
        PathPiece::segment(Point::new(0.0, -1.0), Point::new(1.0, -1.0)),
    ])
    .unwrap()
}

/// The overshoot-and-return construction: radial overshoot to distance
/// `sec(alpha)`, tangent back to the circle, a clockwise arc of sweep
/// `3*pi/2 - 2*alpha` through the lower half-plane, then a unit tangent
/// segment. Length `ell(alpha)`.
///
/// At `alpha = 0` the tangent-back segment degenerates and is dropped; the
/// construction then reduces to the quarter-replacement path up to a rigid
/// motion, and is accepted as the family's limit case.
pub fn figure2_path(alpha: Angle) -> Result<PiecewisePath, CandidateError> {
    let a = alpha.radians();
    if !(0.0..PI / 2.0).contains(&a) {
        return Err(CandidateError::AlphaOutOfDomain { alpha: a });
    }
    let overshoot = Point::new(1.0 / a.cos(), 0.0);
    let touch = Point::new(a.cos(), -a.sin());
    let sweep = 1.5 * PI - 2.0 * a;
    let arc_end_angle = -a - sweep;
    let arc_end = Point::new(arc_end_angle.cos(), arc_end_angle.sin());
    // direction of clockwise travel at the arc end
    let exit_dir = Point::new(arc_end_angle.sin(), -arc_end_angle.cos());

    let mut pieces = vec![PathPiece::segment(Point::ORIGIN, overshoot)];
    if overshoot.distance(touch) > 1e-12 {
        pieces.push(PathPiece::segment(overshoot, touch));
    }
    pieces.push(PathPiece::arc(Point::ORIGIN, 1.0, -a, arc_end_angle, false));
    pieces.push(PathPiece::segment(arc_end, arc_end + exit_dir));
    Ok(PiecewisePath::new(pieces).unwrap())
}

/// The optimal center-start path: the family at `alpha = pi/6`.
/// Length `7*pi/6 + 1 + sqrt(3)`.
pub fn theorem1_path() -> PiecewisePath {
    figure2_path(Angle(FRAC_PI_6)).unwrap()
}

/// The optimal free-endpoint path: a semicircle extended on each side by a
/// unit tangent segment. Length `pi + 2`.
pub fn theorem2_path() -> PiecewisePath {
    PiecewisePath::new(vec![
        PathPiece::segment(Point::new(1.0, -1.0), Point::new(1.0, 0.0)),
        PathPiece::arc(Point::ORIGIN, 1.0, 0.0, PI, true),
        PathPiece::segment(Point::new(-1.0, 0.0), Point::new(-1.0, -1.0)),
    ])
    .unwrap()
}

/// The family over `alpha` in [0, 1.4], with the closed-form length wired to
/// [`ell`]. The upper bound stays below `pi/2` to avoid the secant
/// singularity.
pub fn figure2_family() -> PathFamily {
    PathFamily {
        name: "figure2",
        param_names: vec!["alpha"],
        param_box: vec![(0.0, 1.4)],
        build: Box::new(|params| {
            if params.len() != 1 {
                return Err(CandidateError::BadParamCount {
                    expected: 1,
                    got: params.len(),
                });
            }
            figure2_path(Angle(params[0]))
        }),
        closed_form_length: Some(Box::new(|params| ell(Angle(params[0])).unwrap())),
    }
}
