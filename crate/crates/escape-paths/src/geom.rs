//! Geometric primitives: points, angles, tangent lines, path pieces and
//! piecewise paths with arc-length parametrization and support values.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Chain continuity tolerance for piecewise paths, in circle radii.
pub const CHAIN_TOL: f64 = 1e-9;
/// Degeneracy tolerance: zero-length pieces and on-circle tangent queries.
pub const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq, Clone)]
pub enum GeomError {
    #[error("piece {index} is degenerate (zero length)")]
    DegeneratePiece { index: usize },
    #[error("piece {index} has invalid arc radius {radius}")]
    BadArc { index: usize, radius: f64 },
    #[error("path has no pieces")]
    EmptyPath,
    #[error("chain broken between pieces {index} and {next}: gap {gap:.3e}", next = index + 1)]
    BrokenChain { index: usize, gap: f64 },
    #[error("arc length {s} outside [0, {len}]")]
    OutOfRange { s: f64, len: f64 },
    #[error("point ({x}, {y}) is not strictly exterior to the unit circle")]
    InteriorPoint { x: f64, y: f64 },
}

/// A point of the plane, coordinates in circle radii.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    /// Panics on non-finite coordinates; the rest of the crate relies on it.
    pub fn new(x: f64, y: f64) -> Self {
        assert!(x.is_finite() && y.is_finite(), "non-finite point ({x}, {y})");
        Point { x, y }
    }

    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Counterclockwise rotation about the origin.
    pub fn rotated(self, phi: f64) -> Point {
        let (s, c) = phi.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Left-hand perpendicular (rotation by +pi/2).
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

/// An angle in radians. The raw value is preserved; normalization to
/// [0, 2*pi) is available on demand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Angle(pub f64);

impl Angle {
    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn normalized(self) -> f64 {
        self.0.rem_euclid(TAU)
    }
}

impl From<f64> for Angle {
    fn from(radians: f64) -> Self {
        Angle(radians)
    }
}

/// The tangent line of the unit circle at touch angle theta:
/// `{p : p . u(theta) = 1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tangent {
    pub theta: Angle,
}

impl Tangent {
    pub fn new(theta: Angle) -> Self {
        Tangent { theta }
    }

    /// The touch point `u(theta)`, at distance exactly 1 from the origin.
    pub fn touch_point(self) -> Point {
        unit_direction(self.theta)
    }

    /// Direction along the tangent line (perpendicular to the touch radius).
    pub fn direction(self) -> Point {
        self.touch_point().perp()
    }
}

/// Direction vector `u(theta) = (cos theta, sin theta)`.
pub fn unit_direction(theta: Angle) -> Point {
    let (s, c) = theta.radians().sin_cos();
    Point::new(c, s)
}

/// The two unit-norm points where the tangents from an exterior point `x`
/// touch the circle, ordered `(P+, P-)` so that, seen from `x`, the circle
/// lies left of the tangent through `P+`.
pub fn tangent_touch_points(x: Point) -> Result<(Point, Point), GeomError> {
    let d = x.norm();
    if d <= 1.0 + DEGENERACY_TOL {
        return Err(GeomError::InteriorPoint { x: x.x, y: x.y });
    }
    let radial = x * (1.0 / (d * d));
    let lateral = x.perp() * ((1.0 - 1.0 / (d * d)).sqrt() / d);
    Ok((radial + lateral, radial - lateral))
}

/// A line segment or a circular arc; the building blocks of a path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathPiece {
    Segment {
        from: Point,
        to: Point,
    },
    Arc {
        center: Point,
        radius: f64,
        start_angle: Angle,
        end_angle: Angle,
        ccw: bool,
    },
}

impl PathPiece {
    pub fn segment(from: Point, to: Point) -> Self {
        PathPiece::Segment { from, to }
    }

    pub fn arc(center: Point, radius: f64, start_angle: f64, end_angle: f64, ccw: bool) -> Self {
        PathPiece::Arc {
            center,
            radius,
            start_angle: Angle(start_angle),
            end_angle: Angle(end_angle),
            ccw,
        }
    }

    pub fn validate(&self, index: usize) -> Result<(), GeomError> {
        match *self {
            PathPiece::Segment { from, to } => {
                if from.distance(to) <= DEGENERACY_TOL {
                    return Err(GeomError::DegeneratePiece { index });
                }
            }
            PathPiece::Arc { radius, .. } => {
                if !(radius > 0.0) || !radius.is_finite() {
                    return Err(GeomError::BadArc { index, radius });
                }
                if self.length() <= DEGENERACY_TOL {
                    return Err(GeomError::DegeneratePiece { index });
                }
            }
        }
        Ok(())
    }

    /// Angular sweep in (0, 2*pi], measured in the traversal direction.
    pub fn sweep(&self) -> f64 {
        match *self {
            PathPiece::Segment { .. } => 0.0,
            PathPiece::Arc {
                start_angle,
                end_angle,
                ccw,
                ..
            } => {
                let d = if ccw {
                    end_angle.radians() - start_angle.radians()
                } else {
                    start_angle.radians() - end_angle.radians()
                };
                if d > 0.0 && d <= TAU + 1e-12 {
                    d.min(TAU)
                } else {
                    d.rem_euclid(TAU)
                }
            }
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            PathPiece::Segment { from, to } => from.distance(to),
            PathPiece::Arc { radius, .. } => radius * self.sweep(),
        }
    }

    pub fn start_point(&self) -> Point {
        match *self {
            PathPiece::Segment { from, .. } => from,
            PathPiece::Arc {
                center,
                radius,
                start_angle,
                ..
            } => center + unit_direction(start_angle) * radius,
        }
    }

    pub fn end_point(&self) -> Point {
        match *self {
            PathPiece::Segment { to, .. } => to,
            PathPiece::Arc { .. } => self.point_at(1.0),
        }
    }

    /// Point at traversal fraction `t` in [0, 1].
    pub fn point_at(&self, t: f64) -> Point {
        match *self {
            PathPiece::Segment { from, to } => from + (to - from) * t,
            PathPiece::Arc {
                center,
                radius,
                start_angle,
                ccw,
                ..
            } => {
                let phi = if ccw {
                    start_angle.radians() + t * self.sweep()
                } else {
                    start_angle.radians() - t * self.sweep()
                };
                center + unit_direction(Angle(phi)) * radius
            }
        }
    }

    /// Unit direction of travel at traversal fraction `t`.
    pub fn direction_at(&self, t: f64) -> Point {
        match *self {
            PathPiece::Segment { from, to } => {
                let d = to - from;
                d * (1.0 / d.norm())
            }
            PathPiece::Arc {
                start_angle, ccw, ..
            } => {
                let phi = if ccw {
                    start_angle.radians() + t * self.sweep()
                } else {
                    start_angle.radians() - t * self.sweep()
                };
                let radial = unit_direction(Angle(phi));
                if ccw {
                    radial.perp()
                } else {
                    radial.perp() * -1.0
                }
            }
        }
    }

    /// Sub-piece covering traversal fractions [t0, t1], 0 <= t0 < t1 <= 1.
    pub fn sub_piece(&self, t0: f64, t1: f64) -> PathPiece {
        match *self {
            PathPiece::Segment { .. } => PathPiece::segment(self.point_at(t0), self.point_at(t1)),
            PathPiece::Arc {
                center,
                radius,
                start_angle,
                ccw,
                ..
            } => {
                let sweep = self.sweep();
                let (a0, a1) = if ccw {
                    (
                        start_angle.radians() + t0 * sweep,
                        start_angle.radians() + t1 * sweep,
                    )
                } else {
                    (
                        start_angle.radians() - t0 * sweep,
                        start_angle.radians() - t1 * sweep,
                    )
                };
                PathPiece::arc(center, radius, a0, a1, ccw)
            }
        }
    }

    /// Start of the ccw-ordered angular interval covered by an arc; `None`
    /// for segments. The covered set is `[span_start, span_start + sweep)`
    /// modulo 2*pi, half-open so the seam is not double counted.
    pub fn span_start(&self) -> Option<f64> {
        match *self {
            PathPiece::Segment { .. } => None,
            PathPiece::Arc {
                start_angle,
                end_angle,
                ccw,
                ..
            } => Some(if ccw {
                start_angle.normalized()
            } else {
                end_angle.normalized()
            }),
        }
    }

    fn span_contains(&self, theta: f64) -> bool {
        match self.span_start() {
            None => false,
            Some(start) => (theta - start).rem_euclid(TAU) < self.sweep(),
        }
    }

    /// `max_{q in piece} q . u(theta)`: the piece's support value in
    /// direction `theta`.
    pub fn support(&self, theta: Angle) -> f64 {
        let u = unit_direction(theta);
        match *self {
            PathPiece::Segment { from, to } => from.dot(u).max(to.dot(u)),
            PathPiece::Arc {
                center,
                radius,
                start_angle,
                end_angle,
                ccw: _,
                ..
            } => {
                let base = center.dot(u);
                if self.span_contains(theta.normalized()) {
                    base + radius
                } else {
                    let t = theta.radians();
                    let c1 = (start_angle.radians() - t).cos();
                    let c2 = (end_angle.radians() - t).cos();
                    base + radius * c1.max(c2)
                }
            }
        }
    }

    /// Lower bound for the piece's support over the whole direction interval
    /// [theta_lo, theta_hi]. Exact for arcs whose span covers the interval;
    /// otherwise a Lipschitz bound around the midpoint.
    pub fn support_lower_bound(&self, theta_lo: f64, theta_hi: f64) -> f64 {
        let half = 0.5 * (theta_hi - theta_lo);
        let mid = Angle(0.5 * (theta_lo + theta_hi));
        if let PathPiece::Arc { center, radius, .. } = *self {
            if let Some(start) = self.span_start() {
                let off = (theta_lo.rem_euclid(TAU) - start).rem_euclid(TAU);
                if off + (theta_hi - theta_lo) <= self.sweep() {
                    // whole interval inside the arc's covered span
                    return radius + center.dot(unit_direction(mid)) - center.norm() * half;
                }
            }
        }
        self.support(mid) - self.lipschitz_bound() * half
    }

    /// Lipschitz constant for `theta -> support(theta)`: an upper bound on
    /// the norm of any point of the piece.
    pub fn lipschitz_bound(&self) -> f64 {
        match *self {
            PathPiece::Segment { from, to } => from.norm().max(to.norm()),
            PathPiece::Arc { center, radius, .. } => center.norm() + radius,
        }
    }

    pub fn rotated(&self, phi: f64) -> PathPiece {
        match *self {
            PathPiece::Segment { from, to } => {
                PathPiece::segment(from.rotated(phi), to.rotated(phi))
            }
            PathPiece::Arc {
                center,
                radius,
                start_angle,
                end_angle,
                ccw,
            } => PathPiece::arc(
                center.rotated(phi),
                radius,
                start_angle.radians() + phi,
                end_angle.radians() + phi,
                ccw,
            ),
        }
    }

    pub fn scaled(&self, factor: f64) -> PathPiece {
        match *self {
            PathPiece::Segment { from, to } => PathPiece::segment(from * factor, to * factor),
            PathPiece::Arc {
                center,
                radius,
                start_angle,
                end_angle,
                ccw,
            } => PathPiece::arc(
                center * factor,
                radius * factor,
                start_angle.radians(),
                end_angle.radians(),
                ccw,
            ),
        }
    }
}

/// An ordered, continuous chain of pieces; the curve under study.
///
/// Constructed only through [`PiecewisePath::new`], which rejects empty,
/// degenerate, or discontinuous chains rather than repairing them.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePath {
    pieces: Vec<PathPiece>,
}

impl PiecewisePath {
    pub fn new(pieces: Vec<PathPiece>) -> Result<Self, GeomError> {
        if pieces.is_empty() {
            return Err(GeomError::EmptyPath);
        }
        for (i, p) in pieces.iter().enumerate() {
            p.validate(i)?;
        }
        for i in 0..pieces.len() - 1 {
            let gap = pieces[i].end_point().distance(pieces[i + 1].start_point());
            if gap > CHAIN_TOL {
                return Err(GeomError::BrokenChain { index: i, gap });
            }
        }
        Ok(PiecewisePath { pieces })
    }

    pub fn pieces(&self) -> &[PathPiece] {
        &self.pieces
    }

    pub fn start_point(&self) -> Point {
        self.pieces[0].start_point()
    }

    pub fn end_point(&self) -> Point {
        self.pieces[self.pieces.len() - 1].end_point()
    }

    pub fn length(&self) -> f64 {
        self.pieces.iter().map(|p| p.length()).sum()
    }

    /// Point reached after traversing arc length `s` from the start.
    pub fn point_at(&self, s: f64) -> Result<Point, GeomError> {
        let len = self.length();
        if s < -DEGENERACY_TOL || s > len + DEGENERACY_TOL {
            return Err(GeomError::OutOfRange { s, len });
        }
        let mut remaining = s.clamp(0.0, len);
        for p in &self.pieces {
            let l = p.length();
            if remaining <= l {
                return Ok(p.point_at(remaining / l));
            }
            remaining -= l;
        }
        Ok(self.end_point())
    }

    /// Unit direction of travel at arc length `s` (from the piece containing
    /// `s`; at piece boundaries the earlier piece wins).
    pub fn direction_at(&self, s: f64) -> Result<Point, GeomError> {
        let len = self.length();
        if s < -DEGENERACY_TOL || s > len + DEGENERACY_TOL {
            return Err(GeomError::OutOfRange { s, len });
        }
        let mut remaining = s.clamp(0.0, len);
        for p in &self.pieces {
            let l = p.length();
            if remaining <= l {
                return Ok(p.direction_at(remaining / l));
            }
            remaining -= l;
        }
        Ok(self.pieces[self.pieces.len() - 1].direction_at(1.0))
    }

    /// Pieces covering arc lengths [a, b], with partial end pieces cut.
    /// Returns an empty vector when b - a is below the degeneracy tolerance.
    pub fn sub_path(&self, a: f64, b: f64) -> Result<Vec<PathPiece>, GeomError> {
        let len = self.length();
        if a < -DEGENERACY_TOL || a > len + DEGENERACY_TOL {
            return Err(GeomError::OutOfRange { s: a, len });
        }
        if b < a - DEGENERACY_TOL || b > len + DEGENERACY_TOL {
            return Err(GeomError::OutOfRange { s: b, len });
        }
        let (a, b) = (a.clamp(0.0, len), b.clamp(0.0, len));
        let mut out = Vec::new();
        let mut offset = 0.0;
        for p in &self.pieces {
            let l = p.length();
            let lo = (a - offset).clamp(0.0, l);
            let hi = (b - offset).clamp(0.0, l);
            if hi - lo > DEGENERACY_TOL {
                if lo <= DEGENERACY_TOL && hi >= l - DEGENERACY_TOL {
                    out.push(*p);
                } else {
                    out.push(p.sub_piece(lo / l, hi / l));
                }
            }
            offset += l;
        }
        Ok(out)
    }

    /// Piece boundary points: start of each piece plus the final endpoint.
    pub fn boundary_points(&self) -> Vec<Point> {
        let mut pts: Vec<Point> = self.pieces.iter().map(|p| p.start_point()).collect();
        pts.push(self.end_point());
        pts
    }

    /// The vertex list when every piece is a segment; `None` otherwise.
    pub fn vertices(&self) -> Option<Vec<Point>> {
        if self
            .pieces
            .iter()
            .all(|p| matches!(p, PathPiece::Segment { .. }))
        {
            Some(self.boundary_points())
        } else {
            None
        }
    }

    pub fn rotated(&self, phi: f64) -> PiecewisePath {
        PiecewisePath {
            pieces: self.pieces.iter().map(|p| p.rotated(phi)).collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> PiecewisePath {
        assert!(factor > 0.0);
        PiecewisePath {
            pieces: self.pieces.iter().map(|p| p.scaled(factor)).collect(),
        }
    }

    /// Build a path from consecutive polyline vertices.
    pub fn from_vertices(vertices: &[Point]) -> Result<PiecewisePath, GeomError> {
        let pieces = vertices
            .windows(2)
            .map(|w| PathPiece::segment(w[0], w[1]))
            .collect();
        PiecewisePath::new(pieces)
    }
}
