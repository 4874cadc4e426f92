//! Closed-form evaluators for the family length, the two optimal lengths,
//! the chord-exclusion constants, and the higher-dimensional bounds.

use std::f64::consts::PI;

use thiserror::Error;

use crate::geom::Angle;

#[derive(Debug, Error, PartialEq, Clone)]
pub enum BoundsError {
    #[error("alpha = {alpha} outside [0, pi/2)")]
    AlphaOutOfDomain { alpha: f64 },
    #[error("dimension n = {n} must be at least 2")]
    DimensionTooSmall { n: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Exact,
    LowerBound,
    UpperBound,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub name: &'static str,
    pub value: f64,
    pub kind: BoundKind,
    pub formula_text: String,
}

/// Length of the overshoot-and-return family:
/// `1/cos(alpha) + tan(alpha) + 3*pi/2 - 2*alpha + 1`.
pub fn ell(alpha: Angle) -> Result<f64, BoundsError> {
    let a = alpha.radians();
    if !(0.0..PI / 2.0).contains(&a) {
        return Err(BoundsError::AlphaOutOfDomain { alpha: a });
    }
    Ok(1.0 / a.cos() + a.tan() + 1.5 * PI - 2.0 * a + 1.0)
}

/// The two optimal lengths: `(7*pi/6 + 1 + sqrt(3), pi + 2)` for the
/// center-start and free-endpoint problems respectively.
pub fn theorem_lengths() -> (f64, f64) {
    (7.0 * PI / 6.0 + 1.0 + 3.0_f64.sqrt(), PI + 2.0)
}

/// Scalar constants of the chord-exclusion argument: the threshold
/// `T = 4/(pi-2) - (pi-2)/4`, the comparison value `2 + T` (a lower bound on
/// any path with a long chord, beating `pi + 2`), and the radius increment
/// `pi/2 - 1`.
pub fn eq3_constants() -> Vec<BoundReport> {
    let t = 4.0 / (PI - 2.0) - (PI - 2.0) / 4.0;
    vec![
        BoundReport {
            name: "chord_threshold",
            value: t,
            kind: BoundKind::Exact,
            formula_text: "4/(pi-2) - (pi-2)/4".to_string(),
        },
        BoundReport {
            name: "chord_comparison",
            value: 2.0 + t,
            kind: BoundKind::LowerBound,
            formula_text: "2 + 4/(pi-2) - (pi-2)/4".to_string(),
        },
        BoundReport {
            name: "free_endpoint_optimum",
            value: PI + 2.0,
            kind: BoundKind::Exact,
            formula_text: "pi + 2".to_string(),
        },
        BoundReport {
            name: "radius_increment",
            value: PI / 2.0 - 1.0,
            kind: BoundKind::Exact,
            formula_text: "pi/2 - 1".to_string(),
        },
    ]
}

/// Bounds for the shortest path meeting every tangent plane of the unit
/// sphere in three dimensions.
pub fn l3_bounds() -> (BoundReport, BoundReport) {
    let base = 2.0 + 3.0_f64.sqrt() + 7.0 * PI / 6.0;
    let lower = (base * base + 4.0).sqrt();
    let upper = 4.0 + 0.5 * 2.0_f64.sqrt() * 3.0 * PI;
    (
        BoundReport {
            name: "l3_lower",
            value: lower,
            kind: BoundKind::LowerBound,
            formula_text: "sqrt((2 + sqrt(3) + 7*pi/6)^2 + 4)".to_string(),
        },
        BoundReport {
            name: "l3_upper",
            value: upper,
            kind: BoundKind::UpperBound,
            formula_text: "4 + (1/2)*sqrt(2)*3*pi".to_string(),
        },
    )
}

/// Dimensional bounds `c_lower + 2n` and `c_upper * n^(3/2)`. The constants
/// are unspecified in the source material and must be supplied by the caller.
pub fn ln_bounds(
    n: u32,
    c_lower: f64,
    c_upper: f64,
) -> Result<(BoundReport, BoundReport), BoundsError> {
    if n < 2 {
        return Err(BoundsError::DimensionTooSmall { n });
    }
    Ok((
        BoundReport {
            name: "ln_lower",
            value: c_lower + 2.0 * n as f64,
            kind: BoundKind::LowerBound,
            formula_text: format!("c_lower + 2n with caller-supplied c_lower = {c_lower}"),
        },
        BoundReport {
            name: "ln_upper",
            value: c_upper * (n as f64).powf(1.5),
            kind: BoundKind::UpperBound,
            formula_text: format!("c_upper * n^(3/2) with caller-supplied c_upper = {c_upper}"),
        },
    ))
}
