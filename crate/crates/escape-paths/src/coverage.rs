//! Coverage verification: does a path meet every tangent of the unit circle?
//!
//! Three independent methods produce a [`CoverageReport`]: a certified grid
//! sweep with Lipschitz interval bounds, exhaustive tangent sampling, and a
//! convex-hull containment check. A connected path meets every tangent iff
//! its support function satisfies `h(theta) >= 1` for all theta.

use std::f64::consts::TAU;

use thiserror::Error;

use crate::geom::{Angle, PathPiece, PiecewisePath, Point};

#[derive(Debug, Error, PartialEq, Clone)]
pub enum CoverageError {
    /// Refinement budget exhausted with the deficit straddling the tolerance
    /// band. Distinct from a verdict and never coerced to one.
    #[error(
        "inconclusive: refinement budget exhausted near theta = {theta}, value {value} within tolerance band"
    )]
    Inconclusive { theta: f64, value: f64 },
    #[error("degenerate hull: sampled path spans a point or a segment")]
    DegenerateHull,
}

/// Which verifier produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    CertifiedGrid,
    IntersectionSampling,
    HullContainment,
}

/// Lipschitz certificate attached by the certified method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    pub grid_spacing: f64,
    pub lipschitz: f64,
}

/// Coverage verdict with the worst support deficit and a witness direction.
///
/// `deficit` is `min over theta of support(theta) - 1`; negative means some
/// tangent is unmet. `covered` holds iff `deficit >= -tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub covered: bool,
    pub deficit: f64,
    pub witness_theta: Angle,
    pub method: Method,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub tol: f64,
    pub initial_grid: usize,
    pub max_refinements: usize,
    pub sample_count: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            tol: 1e-9,
            initial_grid: 4096,
            max_refinements: 40,
            sample_count: 100_000,
        }
    }
}

impl VerifyConfig {
    /// Cheap settings for optimization inner loops; final claims must be
    /// re-verified with the defaults.
    pub fn relaxed() -> Self {
        VerifyConfig {
            tol: 1e-9,
            initial_grid: 512,
            max_refinements: 8,
            sample_count: 4096,
        }
    }
}

/// Support function of the path: `max over pieces of piece support`, equal to
/// the support function of the path's convex hull in direction `theta`.
pub fn support_value(path: &PiecewisePath, theta: Angle) -> f64 {
    path.pieces()
        .iter()
        .map(|p| p.support(theta))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn support_lower_bound(path: &PiecewisePath, lo: f64, hi: f64) -> f64 {
    path.pieces()
        .iter()
        .map(|p| p.support_lower_bound(lo, hi))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Ternary-search refinement of a local minimum of the support function on
/// [lo, hi]. Works on the V-shaped kinks that boundary-tight paths produce.
fn refine_minimum(path: &PiecewisePath, lo: f64, hi: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    for _ in 0..160 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if support_value(path, Angle(m1)) <= support_value(path, Angle(m2)) {
            b = m2;
        } else {
            a = m1;
        }
    }
    let mid = 0.5 * (a + b);
    (mid, support_value(path, Angle(mid)))
}

/// Certified coverage decision.
///
/// Evaluates the support function on a theta grid. An interval is certified
/// once its support lower bound (exact arc-span bound where available,
/// Lipschitz midpoint bound otherwise) clears `1 - tol`; intervals that fail
/// are bisected up to `max_refinements` deep. Any evaluated point below
/// `1 - tol` yields an uncovered verdict with a refined witness.
pub fn verify_certified(
    path: &PiecewisePath,
    cfg: &VerifyConfig,
) -> Result<CoverageReport, CoverageError> {
    let n = cfg.initial_grid.max(16);
    let spacing = TAU / n as f64;
    let lipschitz = path
        .pieces()
        .iter()
        .map(|p| p.lipschitz_bound())
        .fold(0.0, f64::max);

    // global minimum over every point evaluated, ties to the smaller theta
    let mut min_val = f64::INFINITY;
    let mut min_theta = 0.0;
    let observe = |theta: f64, value: f64, min_val: &mut f64, min_theta: &mut f64| {
        if value < *min_val - 1e-18 || (value <= *min_val && theta < *min_theta) {
            *min_val = value;
            *min_theta = theta;
        }
    };

    let mut exhausted: Option<(f64, f64)> = None;
    // depth-first over [k, k+1) * spacing intervals, deterministic order
    let mut stack: Vec<(f64, f64, usize)> = Vec::new();
    for k in (0..n).rev() {
        stack.push((k as f64 * spacing, (k + 1) as f64 * spacing, 0));
    }
    while let Some((lo, hi, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let value = support_value(path, Angle(mid));
        observe(mid, value, &mut min_val, &mut min_theta);
        if value < 1.0 - cfg.tol {
            // definite failure; refine the witness location below
            continue;
        }
        if support_lower_bound(path, lo, hi) >= 1.0 - cfg.tol {
            continue;
        }
        if depth >= cfg.max_refinements {
            if exhausted.is_none() {
                exhausted = Some((mid, value));
            }
            continue;
        }
        stack.push((mid, hi, depth + 1));
        stack.push((lo, mid, depth + 1));
    }

    // sharpen the deficit estimate around the observed argmin
    let (w_theta, w_value) = refine_minimum(path, min_theta - spacing, min_theta + spacing);
    let (deficit, witness) = if w_value < min_val {
        (w_value - 1.0, w_theta)
    } else {
        (min_val - 1.0, min_theta)
    };

    if deficit < -cfg.tol {
        return Ok(CoverageReport {
            covered: false,
            deficit,
            witness_theta: Angle(witness.rem_euclid(TAU)),
            method: Method::CertifiedGrid,
            certificate: Some(Certificate {
                grid_spacing: spacing,
                lipschitz,
            }),
        });
    }
    if let Some((theta, value)) = exhausted {
        return Err(CoverageError::Inconclusive { theta, value });
    }
    Ok(CoverageReport {
        covered: true,
        deficit,
        witness_theta: Angle(witness.rem_euclid(TAU)),
        method: Method::CertifiedGrid,
        certificate: Some(Certificate {
            grid_spacing: spacing,
            lipschitz,
        }),
    })
}

/// Does any piece of the path intersect the tangent line
/// `{p : p . u(theta) = 1}` within `tol`?
pub fn meets_tangent(path: &PiecewisePath, theta: Angle, tol: f64) -> bool {
    let opposite = Angle(theta.radians() + std::f64::consts::PI);
    path.pieces().iter().any(|p| {
        let sup = p.support(theta);
        let inf = -p.support(opposite);
        sup >= 1.0 - tol && inf <= 1.0 + tol
    })
}

/// Independent oracle: check `meets_tangent` on `sample_count` uniformly
/// spaced tangents; the deficit estimate is sharpened by local refinement
/// around the sampled argmin.
pub fn verify_by_sampling(path: &PiecewisePath, cfg: &VerifyConfig) -> CoverageReport {
    let n = cfg.sample_count.max(16);
    let spacing = TAU / n as f64;
    let mut all_met = true;
    let mut min_val = f64::INFINITY;
    let mut min_theta = 0.0;
    for k in 0..n {
        let theta = k as f64 * spacing;
        if !meets_tangent(path, Angle(theta), cfg.tol) {
            all_met = false;
        }
        let value = support_value(path, Angle(theta));
        if value < min_val {
            min_val = value;
            min_theta = theta;
        }
    }
    let (w_theta, w_value) = refine_minimum(path, min_theta - spacing, min_theta + spacing);
    let (deficit, witness) = if w_value < min_val {
        (w_value - 1.0, w_theta)
    } else {
        (min_val - 1.0, min_theta)
    };
    CoverageReport {
        covered: all_met,
        deficit,
        witness_theta: Angle(witness.rem_euclid(TAU)),
        method: Method::IntersectionSampling,
        certificate: None,
    }
}

/// Andrew's monotone chain; returns the hull in ccw order.
fn convex_hull(points: &mut Vec<Point>) -> Vec<Point> {
    points.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    points.dedup_by(|a, b| a.distance(*b) < 1e-15);
    let n = points.len();
    if n < 3 {
        return points.clone();
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * n);
    for &p in points.iter() {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if (b - a).cross(p - a) <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in points.iter().rev() {
        while hull.len() >= lower_len {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if (b - a).cross(p - a) <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Hull-containment check: sample the path densely (arcs subdivided so the
/// sagitta stays below `tol / 4`), take the convex hull, and require every
/// hull edge's supporting line to lie at signed distance `>= 1 - tol` from
/// the origin. Sampling is inscribed only, so coverage is never over-reported
/// beyond the recorded sagitta bound.
pub fn verify_by_hull(
    path: &PiecewisePath,
    cfg: &VerifyConfig,
) -> Result<CoverageReport, CoverageError> {
    let mut points = Vec::new();
    for p in path.pieces() {
        match *p {
            PathPiece::Segment { from, to } => {
                points.push(from);
                points.push(to);
            }
            PathPiece::Arc { radius, .. } => {
                // sagitta r*(1 - cos(d/2)) <= tol/4  =>  d <= 2*acos(1 - tol/(4r))
                let max_step = 2.0 * (1.0 - cfg.tol / (4.0 * radius)).clamp(-1.0, 1.0).acos();
                let max_step = max_step.max(1e-5);
                let subdivisions = (p.sweep() / max_step).ceil().max(1.0) as usize;
                for k in 0..=subdivisions {
                    points.push(p.point_at(k as f64 / subdivisions as f64));
                }
            }
        }
    }
    let hull = convex_hull(&mut points);
    if hull.len() < 3 {
        return Err(CoverageError::DegenerateHull);
    }
    let mut min_dist = f64::INFINITY;
    let mut min_theta = 0.0;
    for i in 0..hull.len() {
        let a = hull[i];
        let b = hull[(i + 1) % hull.len()];
        let edge = b - a;
        let len = edge.norm();
        if len < 1e-15 {
            continue;
        }
        // outward normal of a ccw hull edge
        let normal = Point::new(edge.y / len, -edge.x / len);
        let dist = a.dot(normal);
        let theta = normal.y.atan2(normal.x).rem_euclid(TAU);
        if dist < min_dist - 1e-18 || (dist <= min_dist && theta < min_theta) {
            min_dist = dist;
            min_theta = theta;
        }
    }
    let deficit = min_dist - 1.0;
    Ok(CoverageReport {
        covered: deficit >= -cfg.tol,
        deficit,
        witness_theta: Angle(min_theta),
        method: Method::HullContainment,
        certificate: None,
    })
}
