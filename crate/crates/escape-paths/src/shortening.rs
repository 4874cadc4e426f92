//! Length-reducing rewrite moves. Each move either returns a strictly
//! shorter path with the coverage verdict preserved, or declines.

use std::f64::consts::TAU;

use thiserror::Error;

use crate::coverage::{verify_certified, CoverageError, VerifyConfig};
use crate::geom::{GeomError, PathPiece, PiecewisePath, Point, CHAIN_TOL, DEGENERACY_TOL};

/// Strict-decrease floor: a move only applies when it saves more than this,
/// two orders above the coverage tolerance so boundary-tight optima cannot
/// oscillate.
pub const MIN_SAVING: f64 = 1e-7;

#[derive(Debug, Error, PartialEq, Clone)]
pub enum ShortenError {
    #[error("pieces {k} and {next} are not both segments", next = k + 1)]
    NotAJunction { k: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Coverage(#[from] CoverageError),
}

/// Result of attempting one move.
#[derive(Debug, Clone)]
pub struct MoveOutcome {
    pub applied: bool,
    pub path: PiecewisePath,
    pub length_saved: f64,
    pub move_name: &'static str,
    /// Piece indices touched by the move (empty when declined).
    pub location: Vec<usize>,
}

impl MoveOutcome {
    fn declined(path: &PiecewisePath, move_name: &'static str) -> Self {
        MoveOutcome {
            applied: false,
            path: path.clone(),
            length_saved: 0.0,
            move_name,
            location: Vec::new(),
        }
    }
}

/// Parametric proper-intersection test. Returns true when the segments cross
/// at an interior point of at least one of them (shared endpoints and
/// collinear overlaps are excluded).
fn segments_cross(a0: Point, a1: Point, b0: Point, b1: Point) -> bool {
    let r = a1 - a0;
    let s = b1 - b0;
    let denom = r.cross(s);
    if denom.abs() < 1e-14 {
        return false; // parallel or collinear
    }
    let q = b0 - a0;
    let t = q.cross(s) / denom;
    let u = q.cross(r) / denom;
    let eps = 1e-12;
    let on_both = (-eps..=1.0 + eps).contains(&t) && (-eps..=1.0 + eps).contains(&u);
    let interior = (t > eps && t < 1.0 - eps) || (u > eps && u < 1.0 - eps);
    on_both && interior
}

/// Uncrossing: find the first pair of non-adjacent crossing segments of a
/// polyline and reconnect them, reversing the intermediate subpath. The
/// vertex set (hence the convex hull, hence coverage) is unchanged while the
/// length strictly decreases.
pub fn uncross(path: &PiecewisePath) -> MoveOutcome {
    let Some(vertices) = path.vertices() else {
        return MoveOutcome::declined(path, "uncross");
    };
    let n = vertices.len() - 1; // segment count
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 && vertices[0].distance(vertices[n]) < CHAIN_TOL {
                continue; // closed seam: effectively adjacent
            }
            if !segments_cross(vertices[i], vertices[i + 1], vertices[j], vertices[j + 1]) {
                continue;
            }
            let old = vertices[i].distance(vertices[i + 1]) + vertices[j].distance(vertices[j + 1]);
            let new = vertices[i].distance(vertices[j]) + vertices[i + 1].distance(vertices[j + 1]);
            let saved = old - new;
            if saved <= MIN_SAVING {
                continue;
            }
            let mut reordered = vertices[..=i].to_vec();
            reordered.extend(vertices[i + 1..=j].iter().rev());
            reordered.extend_from_slice(&vertices[j + 1..]);
            if let Ok(new_path) = PiecewisePath::from_vertices(&reordered) {
                return MoveOutcome {
                    applied: true,
                    path: new_path,
                    length_saved: saved,
                    move_name: "uncross",
                    location: vec![i, j],
                };
            }
        }
    }
    MoveOutcome::declined(path, "uncross")
}

/// Splice the pieces `prefix ++ [bridge?] ++ suffix` into a path.
fn splice(
    prefix: Vec<PathPiece>,
    bridge: Option<PathPiece>,
    suffix: Vec<PathPiece>,
) -> Result<PiecewisePath, GeomError> {
    let mut pieces = prefix;
    if let Some(b) = bridge {
        pieces.push(b);
    }
    pieces.extend(suffix);
    PiecewisePath::new(pieces)
}

/// Candidate produced by replacing the subpath between arc-length positions
/// `i` and `j` with the straight segment between its endpoints (a pure
/// splice when the endpoints coincide).
fn shortcut_candidate(
    path: &PiecewisePath,
    i: f64,
    j: f64,
) -> Result<(PiecewisePath, f64), GeomError> {
    let p_i = path.point_at(i)?;
    let p_j = path.point_at(j)?;
    let chord = p_i.distance(p_j);
    let bridge = if chord > DEGENERACY_TOL {
        Some(PathPiece::segment(p_i, p_j))
    } else {
        None
    };
    let prefix = path.sub_path(0.0, i)?;
    let suffix = path.sub_path(j, path.length())?;
    let candidate = splice(prefix, bridge, suffix)?;
    Ok((candidate, (j - i) - chord))
}

/// Replace the subpath between arc-length positions `i < j` by the straight
/// segment between them; applied only when the candidate still covers all
/// tangents (certified) and saves more than the strict-decrease floor.
pub fn shortcut_repeating(
    path: &PiecewisePath,
    i: f64,
    j: f64,
    cfg: &VerifyConfig,
) -> Result<MoveOutcome, ShortenError> {
    let len = path.length();
    if i < -DEGENERACY_TOL || j > len + DEGENERACY_TOL || i >= j {
        return Err(ShortenError::Geom(GeomError::OutOfRange { s: i.max(j), len }));
    }
    let Ok((candidate, saved)) = shortcut_candidate(path, i, j) else {
        return Ok(MoveOutcome::declined(path, "shortcut_repeating"));
    };
    if saved <= MIN_SAVING {
        return Ok(MoveOutcome::declined(path, "shortcut_repeating"));
    }
    match verify_certified(&candidate, cfg) {
        Ok(report) if report.covered => Ok(MoveOutcome {
            applied: true,
            path: candidate,
            length_saved: saved,
            move_name: "shortcut_repeating",
            location: Vec::new(),
        }),
        _ => Ok(MoveOutcome::declined(path, "shortcut_repeating")),
    }
}

/// Find the overlap (as a ccw interval `(start, sweep)`) of two circular
/// intervals, returning the largest component.
fn span_overlap(a_start: f64, a_sweep: f64, b_start: f64, b_sweep: f64) -> Option<(f64, f64)> {
    // components of b relative to a's coordinate frame
    let rel = (b_start - a_start).rem_euclid(TAU);
    let mut best: Option<(f64, f64)> = None;
    // candidate component 1: starts at b's start if inside a
    if rel < a_sweep {
        let sweep = (a_sweep - rel).min(b_sweep);
        if sweep > 0.0 {
            best = Some((b_start, sweep));
        }
    }
    // candidate component 2: b wraps past a's start
    if rel + b_sweep > TAU {
        let sweep = (rel + b_sweep - TAU).min(a_sweep);
        if sweep > 0.0 && best.map_or(true, |(_, s)| sweep > s) {
            best = Some((a_start, sweep));
        }
    }
    best
}

/// Chord shortening: when two arc pieces on the same circle overlap on a
/// sub-arc of positive sweep, one traversal of the overlap is replaced by
/// its chord. The other traversal keeps covering the overlap's tangents, so
/// no verification is needed.
pub fn chord_shortcut(path: &PiecewisePath) -> MoveOutcome {
    let pieces = path.pieces();
    for q in 1..pieces.len() {
        let PathPiece::Arc {
            center: cq,
            radius: rq,
            ccw: ccw_q,
            ..
        } = pieces[q]
        else {
            continue;
        };
        for p in 0..q {
            let PathPiece::Arc {
                center: cp,
                radius: rp,
                ..
            } = pieces[p]
            else {
                continue;
            };
            if cp.distance(cq) > CHAIN_TOL || (rp - rq).abs() > CHAIN_TOL {
                continue;
            }
            let (pa, ps) = (pieces[p].span_start().unwrap(), pieces[p].sweep());
            let (qa, qs) = (pieces[q].span_start().unwrap(), pieces[q].sweep());
            let Some((o_start, o_sweep)) = span_overlap(pa, ps, qa, qs) else {
                continue;
            };
            let saved = rq * (o_sweep - 2.0 * (o_sweep / 2.0).sin());
            if saved <= MIN_SAVING {
                continue;
            }
            // overlap as traversal fractions of piece q
            let off = (o_start - qa).rem_euclid(TAU).min(qs);
            let (x0, x1) = (off, (off + o_sweep).min(qs));
            let (t0, t1) = if ccw_q {
                (x0 / qs, x1 / qs)
            } else {
                (1.0 - x1 / qs, 1.0 - x0 / qs)
            };
            let mut new_pieces: Vec<PathPiece> = pieces[..q].to_vec();
            if t0 > DEGENERACY_TOL {
                new_pieces.push(pieces[q].sub_piece(0.0, t0));
            }
            new_pieces.push(PathPiece::segment(
                pieces[q].point_at(t0),
                pieces[q].point_at(t1),
            ));
            if t1 < 1.0 - DEGENERACY_TOL {
                new_pieces.push(pieces[q].sub_piece(t1, 1.0));
            }
            new_pieces.extend_from_slice(&pieces[q + 1..]);
            if let Ok(new_path) = PiecewisePath::new(new_pieces) {
                let saved = path.length() - new_path.length();
                if saved > MIN_SAVING {
                    return MoveOutcome {
                        applied: true,
                        path: new_path,
                        length_saved: saved,
                        move_name: "chord_shortcut",
                        location: vec![p, q],
                    };
                }
            }
        }
    }
    MoveOutcome::declined(path, "chord_shortcut")
}

/// A constraint line through a junction, given by a point and a direction.
#[derive(Debug, Clone, Copy)]
pub struct ConstraintLine {
    pub point: Point,
    pub direction: Point,
}

fn reflect_across(p: Point, line: &ConstraintLine) -> Point {
    let d = line.direction * (1.0 / line.direction.norm());
    let v = p - line.point;
    let along = d * v.dot(d);
    let across = v - along;
    line.point + along - across
}

/// Equal-angle junction move: pieces `k` and `k+1` must be segments meeting
/// at a vertex on a constraint line `d` (supplied, or inferred as the circle
/// tangent when the vertex lies on the unit circle). The vertex is moved to
/// the reflection optimum on `d`; applied only when the saving clears the
/// floor and the coverage verdict is unchanged.
pub fn reflect_junction(
    path: &PiecewisePath,
    k: usize,
    line: Option<ConstraintLine>,
    cfg: &VerifyConfig,
) -> Result<MoveOutcome, ShortenError> {
    let pieces = path.pieces();
    if k + 1 >= pieces.len() {
        return Err(ShortenError::NotAJunction { k });
    }
    let (PathPiece::Segment { from: x, to: z }, PathPiece::Segment { to: y, .. }) =
        (pieces[k], pieces[k + 1])
    else {
        return Err(ShortenError::NotAJunction { k });
    };
    let line = match line {
        Some(l) => l,
        None => {
            if (z.norm() - 1.0).abs() <= 1e-9 {
                ConstraintLine {
                    point: z,
                    direction: z.perp(),
                }
            } else {
                return Ok(MoveOutcome::declined(path, "reflect_junction"));
            }
        }
    };
    let x_mirror = reflect_across(x, &line);
    let chord = y - x_mirror;
    let denom = chord.cross(line.direction);
    if denom.abs() < 1e-14 {
        return Ok(MoveOutcome::declined(path, "reflect_junction"));
    }
    let t = (line.point - x_mirror).cross(line.direction) / denom;
    let z_star = x_mirror + chord * t;
    let saved = (x.distance(z) + z.distance(y)) - (x.distance(z_star) + z_star.distance(y));
    if saved <= MIN_SAVING {
        return Ok(MoveOutcome::declined(path, "reflect_junction"));
    }
    let mut new_pieces = pieces[..k].to_vec();
    if x.distance(z_star) > DEGENERACY_TOL {
        new_pieces.push(PathPiece::segment(x, z_star));
    }
    if z_star.distance(y) > DEGENERACY_TOL {
        new_pieces.push(PathPiece::segment(z_star, y));
    }
    new_pieces.extend_from_slice(&pieces[k + 2..]);
    let Ok(candidate) = PiecewisePath::new(new_pieces) else {
        return Ok(MoveOutcome::declined(path, "reflect_junction"));
    };
    let before = verify_certified(path, cfg);
    let after = verify_certified(&candidate, cfg);
    match (before, after) {
        (Ok(b), Ok(a)) if b.covered == a.covered => Ok(MoveOutcome {
            applied: true,
            path: candidate,
            length_saved: saved,
            move_name: "reflect_junction",
            location: vec![k, k + 1],
        }),
        _ => Ok(MoveOutcome::declined(path, "reflect_junction")),
    }
}

/// Loop removal: find a subpath that starts and ends at the same point and
/// whose removal keeps the path covered, and splice it out.
pub fn remove_loops(path: &PiecewisePath, cfg: &VerifyConfig) -> MoveOutcome {
    let boundaries = path.boundary_points();
    let n = path.pieces().len();
    for a in 0..n {
        // prefer the largest removable loop starting at a
        for b in (a + 1..=n).rev() {
            if boundaries[a].distance(boundaries[b]) > CHAIN_TOL {
                continue;
            }
            let removed: f64 = path.pieces()[a..b].iter().map(|p| p.length()).sum();
            if removed <= MIN_SAVING {
                continue;
            }
            let mut new_pieces = path.pieces()[..a].to_vec();
            new_pieces.extend_from_slice(&path.pieces()[b..]);
            let Ok(candidate) = PiecewisePath::new(new_pieces) else {
                continue;
            };
            if let Ok(report) = verify_certified(&candidate, cfg) {
                if report.covered {
                    return MoveOutcome {
                        applied: true,
                        path: candidate,
                        length_saved: removed,
                        move_name: "remove_loops",
                        location: vec![a, b],
                    };
                }
            }
        }
    }
    MoveOutcome::declined(path, "remove_loops")
}

/// Candidate produced by cutting the path at arc length `i` (a point on the
/// unit circle) and appending a unit tangent segment in the direction of
/// travel. This is how a terminal circle arc gets traded for a tangent.
fn tangent_tail_candidate(
    path: &PiecewisePath,
    i: f64,
) -> Result<Option<(PiecewisePath, f64)>, GeomError> {
    let p = path.point_at(i)?;
    if (p.norm() - 1.0).abs() > 1e-9 {
        return Ok(None);
    }
    let dir = path.direction_at(i)?;
    let prefix = path.sub_path(0.0, i)?;
    if prefix.is_empty() {
        return Ok(None);
    }
    let candidate = splice(prefix, Some(PathPiece::segment(p, p + dir)), Vec::new())?;
    let saved = path.length() - candidate.length();
    Ok(Some((candidate, saved)))
}

fn is_covered(path: &PiecewisePath, cfg: &VerifyConfig) -> bool {
    matches!(verify_certified(path, cfg), Ok(r) if r.covered)
}

/// Tail move used by the greedy driver: scan cut positions, find the
/// earliest whose tangent-tail candidate stays covered, then sharpen that
/// position by bisection against the coverage boundary.
fn tangent_tail(path: &PiecewisePath, cfg: &VerifyConfig) -> MoveOutcome {
    let len = path.length();
    let steps = 256;
    let mut last_infeasible = 0.0;
    for k in 1..steps {
        let i = len * k as f64 / steps as f64;
        let Ok(Some((candidate, saved))) = tangent_tail_candidate(path, i) else {
            continue;
        };
        if saved <= MIN_SAVING || !is_covered(&candidate, cfg) {
            last_infeasible = i;
            continue;
        }
        // bisect for the smallest feasible cut in (last_infeasible, i]
        let (mut lo, mut hi) = (last_infeasible, i);
        for _ in 0..45 {
            let mid = 0.5 * (lo + hi);
            match tangent_tail_candidate(path, mid) {
                Ok(Some((c, s))) if s > MIN_SAVING && is_covered(&c, cfg) => hi = mid,
                _ => lo = mid,
            }
        }
        if let Ok(Some((candidate, saved))) = tangent_tail_candidate(path, hi) {
            if saved > MIN_SAVING && is_covered(&candidate, cfg) {
                return MoveOutcome {
                    applied: true,
                    path: candidate,
                    length_saved: saved,
                    move_name: "tangent_tail",
                    location: Vec::new(),
                };
            }
        }
        return MoveOutcome::declined(path, "tangent_tail");
    }
    MoveOutcome::declined(path, "tangent_tail")
}

/// Fixpoint driver: repeatedly applies uncrossing, loop removal, chord
/// shortening, junction reflection, the tangent-tail trade, and straight
/// shortcuts on a coarse grid until no move saves more than the floor.
/// Every applied move strictly decreases the length, so termination is
/// guaranteed; the output verdict matches the input's.
pub fn greedy_shorten(
    path: &PiecewisePath,
    cfg: &VerifyConfig,
) -> Result<(PiecewisePath, Vec<MoveOutcome>), ShortenError> {
    let mut current = path.clone();
    let mut log: Vec<MoveOutcome> = Vec::new();
    let grid = 24;
    'outer: for _ in 0..200 {
        let outcome = uncross(&current);
        if outcome.applied {
            current = outcome.path.clone();
            log.push(outcome);
            continue;
        }
        let outcome = remove_loops(&current, cfg);
        if outcome.applied {
            current = outcome.path.clone();
            log.push(outcome);
            continue;
        }
        let outcome = chord_shortcut(&current);
        if outcome.applied {
            current = outcome.path.clone();
            log.push(outcome);
            continue;
        }
        for k in 0..current.pieces().len().saturating_sub(1) {
            if let Ok(outcome) = reflect_junction(&current, k, None, cfg) {
                if outcome.applied {
                    current = outcome.path.clone();
                    log.push(outcome);
                    continue 'outer;
                }
            }
        }
        let outcome = tangent_tail(&current, cfg);
        if outcome.applied {
            current = outcome.path.clone();
            log.push(outcome);
            continue;
        }
        // Straight shortcuts on the coarse grid, best saving first. Certified
        // verification is the expensive step, so candidates are screened by
        // sampled support first (a sampled value below 1 - tol is an exact
        // disproof of coverage, never a false reject).
        let len = current.length();
        let mut candidates: Vec<(f64, f64, f64)> = Vec::new();
        for a in 0..grid {
            for b in a + 1..=grid {
                let (i, j) = (len * a as f64 / grid as f64, len * b as f64 / grid as f64);
                if let Ok((_, saved)) = shortcut_candidate(&current, i, j) {
                    if saved > MIN_SAVING {
                        candidates.push((saved, i, j));
                    }
                }
            }
        }
        candidates.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());
        for &(_, i, j) in &candidates {
            let Ok((candidate, _)) = shortcut_candidate(&current, i, j) else {
                continue;
            };
            if quick_uncovered(&candidate, cfg.tol) {
                continue;
            }
            if let Ok(outcome) = shortcut_repeating(&current, i, j, cfg) {
                if outcome.applied {
                    current = outcome.path.clone();
                    log.push(outcome);
                    continue 'outer;
                }
            }
        }
        break;
    }
    Ok((current, log))
}

/// Cheap disproof of coverage: any sampled support value below `1 - tol`
/// certifies the path uncovered (sampling never under-reports the support at
/// a sampled direction). Returns false when no disproof is found.
fn quick_uncovered(path: &PiecewisePath, tol: f64) -> bool {
    const DIRS: usize = 256;
    (0..DIRS).any(|k| {
        let theta = TAU * k as f64 / DIRS as f64;
        crate::coverage::support_value(path, crate::geom::Angle(theta)) < 1.0 - tol
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::{naive_path, theorem1_path, theorem2_path};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn polyline(points: &[(f64, f64)]) -> PiecewisePath {
        let pts: Vec<Point> = points.iter().map(|&(x, y)| Point::new(x, y)).collect();
        PiecewisePath::from_vertices(&pts).unwrap()
    }

    #[test]
    fn uncross_reconnects_crossing() {
        let p = polyline(&[(0.0, 0.0), (2.0, 2.0), (2.0, 0.0), (0.0, 2.0)]);
        assert!((p.length() - 7.656854249).abs() < 1e-8);
        let outcome = uncross(&p);
        assert!(outcome.applied);
        assert!((outcome.path.length() - 6.0).abs() < 1e-12);
        assert!((outcome.length_saved - (p.length() - 6.0)).abs() < 1e-12);
        let vertices = outcome.path.vertices().unwrap();
        assert_eq!(
            vertices,
            vec![
                Point::new(0.0, 0.0),
                Point::new(2.0, 0.0),
                Point::new(2.0, 2.0),
                Point::new(0.0, 2.0)
            ]
        );
    }

    #[test]
    fn uncross_declines_convex() {
        let p = polyline(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]);
        assert!(!uncross(&p).applied);
    }

    #[test]
    fn uncross_preserves_vertex_hull() {
        let p = polyline(&[(0.0, 0.0), (2.0, 2.0), (2.0, 0.0), (0.0, 2.0)]);
        let outcome = uncross(&p);
        let mut before = p.vertices().unwrap();
        let mut after = outcome.path.vertices().unwrap();
        before.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
        after.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
        assert_eq!(before, after);
    }

    #[test]
    fn shortcut_declines_chord_of_last_quarter() {
        // replacing the naive circuit's last quarter arc by its chord leaves
        // the tangents near -pi/4 unmet
        let cfg = VerifyConfig::default();
        let p = naive_path();
        let i = 1.0 + 1.5 * PI;
        let j = p.length();
        let outcome = shortcut_repeating(&p, i, j, &cfg).unwrap();
        assert!(!outcome.applied);
    }

    #[test]
    fn shortcut_removes_retraced_detour() {
        let cfg = VerifyConfig::default();
        let p = PiecewisePath::new(vec![
            PathPiece::segment(Point::ORIGIN, Point::new(1.0, 0.0)),
            PathPiece::segment(Point::new(1.0, 0.0), Point::new(0.8, 0.0)),
            PathPiece::segment(Point::new(0.8, 0.0), Point::new(1.0, 0.0)),
            PathPiece::arc(Point::ORIGIN, 1.0, 0.0, TAU, true),
        ])
        .unwrap();
        let outcome = shortcut_repeating(&p, 1.0, 1.4, &cfg).unwrap();
        assert!(outcome.applied);
        assert!((outcome.length_saved - 0.4).abs() < 1e-12);
        assert!((outcome.path.length() - naive_path().length()).abs() < 1e-12);
    }

    #[test]
    fn shortcut_declines_on_optimum() {
        let cfg = VerifyConfig::default();
        let p = theorem1_path();
        for (i, j) in [(0.5, 1.2), (2.0, 4.0), (1.0, 6.0), (5.0, 6.3)] {
            let outcome = shortcut_repeating(&p, i, j, &cfg).unwrap();
            assert!(!outcome.applied, "shortcut ({i}, {j}) applied");
        }
        assert!(shortcut_repeating(&p, -1.0, 2.0, &cfg).is_err());
    }

    #[test]
    fn chord_shortcut_on_overlapping_arcs() {
        let a1 = PathPiece::arc(Point::ORIGIN, 1.0, 0.0, PI, true);
        let a2 = PathPiece::arc(Point::ORIGIN, 1.0, PI, 0.75 * PI, false);
        let a3 = PathPiece::arc(Point::ORIGIN, 1.0, 0.75 * PI, 1.5 * PI, true);
        let p = PiecewisePath::new(vec![a1, a2, a3]).unwrap();
        let outcome = chord_shortcut(&p);
        assert!(outcome.applied);
        let expected = FRAC_PI_2 / 2.0 - 2.0 * (PI / 8.0).sin();
        assert!(
            (outcome.length_saved - expected).abs() < 1e-9,
            "saved {} expected {expected}",
            outcome.length_saved
        );
    }

    #[test]
    fn chord_shortcut_declines_single_arcs() {
        assert!(!chord_shortcut(&naive_path()).applied);
        assert!(!chord_shortcut(&theorem2_path()).applied);
    }

    #[test]
    fn reflect_junction_example() {
        // X = (-1, 0), Y = (1, 0), junction at (0.5, -1) on the line y = -1;
        // the reflection optimum is (0, -1)
        let cfg = VerifyConfig::default();
        let p = polyline(&[(-1.0, 0.0), (0.5, -1.0), (1.0, 0.0)]);
        let line = ConstraintLine {
            point: Point::new(0.0, -1.0),
            direction: Point::new(1.0, 0.0),
        };
        let outcome = reflect_junction(&p, 0, Some(line), &cfg).unwrap();
        assert!(outcome.applied);
        let old = (1.5_f64 * 1.5 + 1.0).sqrt() + (0.25_f64 + 1.0).sqrt();
        let saved = old - 2.0 * 2.0_f64.sqrt();
        assert!((outcome.length_saved - saved).abs() < 1e-12);
        let z = outcome.path.vertices().unwrap()[1];
        assert!(z.distance(Point::new(0.0, -1.0)) < 1e-9);
    }

    #[test]
    fn reflect_junction_fixpoint_declines() {
        let cfg = VerifyConfig::default();
        let p = polyline(&[(-1.0, 0.0), (0.0, -1.0), (1.0, 0.0)]);
        let line = ConstraintLine {
            point: Point::new(0.0, -1.0),
            direction: Point::new(1.0, 0.0),
        };
        let outcome = reflect_junction(&p, 0, Some(line), &cfg).unwrap();
        assert!(!outcome.applied);
    }

    #[test]
    fn reflect_junction_rejects_arcs() {
        let cfg = VerifyConfig::default();
        assert!(matches!(
            reflect_junction(&naive_path(), 0, None, &cfg),
            Err(ShortenError::NotAJunction { k: 0 })
        ));
    }

    #[test]
    fn remove_loops_strips_spike() {
        let cfg = VerifyConfig::default();
        let mid = Point::new(0.0, 1.0);
        let spike = Point::new(0.0, 1.2);
        let p = PiecewisePath::new(vec![
            PathPiece::segment(Point::new(1.0, -1.0), Point::new(1.0, 0.0)),
            PathPiece::arc(Point::ORIGIN, 1.0, 0.0, FRAC_PI_2, true),
            PathPiece::segment(mid, spike),
            PathPiece::segment(spike, mid),
            PathPiece::arc(Point::ORIGIN, 1.0, FRAC_PI_2, PI, true),
            PathPiece::segment(Point::new(-1.0, 0.0), Point::new(-1.0, -1.0)),
        ])
        .unwrap();
        let outcome = remove_loops(&p, &cfg);
        assert!(outcome.applied);
        assert!((outcome.length_saved - 0.4).abs() < 1e-12);
        assert!((outcome.path.length() - (PI + 2.0)).abs() < 1e-9);
    }

    #[test]
    fn remove_loops_declines_on_optimum() {
        let cfg = VerifyConfig::default();
        assert!(!remove_loops(&theorem1_path(), &cfg).applied);
    }

    #[test]
    fn greedy_fixpoint_at_optima() {
        let cfg = VerifyConfig::default();
        for p in [theorem1_path(), theorem2_path()] {
            let (result, log) = greedy_shorten(&p, &cfg).unwrap();
            assert!(log.is_empty(), "moves applied: {:?}", log.len());
            assert_eq!(result.pieces().len(), p.pieces().len());
        }
    }
}
