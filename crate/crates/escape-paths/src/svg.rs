//! SVG rendering of paths around the unit circle. Output is deterministic
//! (fixed 6-decimal formatting) so files are byte-comparable in tests.

use std::f64::consts::{PI, TAU};
use std::fmt::Write;

use crate::geom::{unit_direction, Angle, PathPiece, PiecewisePath};

/// Which tangent lines to draw, if any.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TangentOverlay {
    None,
    /// A single tangent at the given touch angle (e.g. a verifier witness).
    Witness(f64),
    /// `n` tangents at uniformly spaced touch angles.
    Grid(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    pub tangents: TangentOverlay,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            tangents: TangentOverlay::None,
        }
    }
}

const SIZE: f64 = 600.0;
const SPAN: f64 = 3.0; // problem units from center to viewBox edge

fn fmt(v: f64) -> String {
    format!("{:.6}", v)
}

// problem coordinates [-3, 3]^2 -> 600x600 viewBox, y flipped so the
// rendered figures keep the mathematical y-up orientation
fn tx(x: f64) -> String {
    fmt((x + SPAN) * (SIZE / (2.0 * SPAN)))
}

fn ty(y: f64) -> String {
    fmt((SPAN - y) * (SIZE / (2.0 * SPAN)))
}

fn scale(v: f64) -> f64 {
    v * (SIZE / (2.0 * SPAN))
}

/// Render a path with the unit circle, start and end markers, and optional
/// tangent lines.
pub fn render_svg(path: &PiecewisePath, options: &RenderOptions) -> String {
    let mut out = String::new();
    writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {s} {s}" width="{s}" height="{s}">"##,
        s = fmt(SIZE)
    )
    .unwrap();
    writeln!(
        out,
        r##"  <circle cx="{}" cy="{}" r="{}" fill="none" stroke="#888888" stroke-width="1"/>"##,
        tx(0.0),
        ty(0.0),
        fmt(scale(1.0))
    )
    .unwrap();

    match options.tangents {
        TangentOverlay::None => {}
        TangentOverlay::Witness(theta) => render_tangent(&mut out, theta),
        TangentOverlay::Grid(n) => {
            for k in 0..n {
                render_tangent(&mut out, TAU * k as f64 / n as f64);
            }
        }
    }

    for piece in path.pieces() {
        match *piece {
            PathPiece::Segment { from, to } => {
                writeln!(
                    out,
                    r##"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#003366" stroke-width="2"/>"##,
                    tx(from.x),
                    ty(from.y),
                    tx(to.x),
                    ty(to.y)
                )
                .unwrap();
            }
            PathPiece::Arc { radius, .. } => {
                let start = piece.start_point();
                let end = piece.end_point();
                let sweep = piece.sweep();
                let ccw = matches!(piece, PathPiece::Arc { ccw: true, .. });
                let large_arc = i32::from(sweep > PI);
                // math-ccw appears clockwise after the y flip, which is
                // SVG sweep-flag 1
                let sweep_flag = i32::from(ccw);
                if sweep >= TAU - 1e-12 {
                    // full circle: one arc command cannot express it; split
                    let mid = piece.point_at(0.5);
                    writeln!(
                        out,
                        r##"  <path d="M {} {} A {} {} 0 0 {sf} {} {} A {} {} 0 0 {sf} {} {}" fill="none" stroke="#003366" stroke-width="2"/>"##,
                        tx(start.x),
                        ty(start.y),
                        fmt(scale(radius)),
                        fmt(scale(radius)),
                        tx(mid.x),
                        ty(mid.y),
                        fmt(scale(radius)),
                        fmt(scale(radius)),
                        tx(end.x),
                        ty(end.y),
                        sf = sweep_flag
                    )
                    .unwrap();
                } else {
                    writeln!(
                        out,
                        r##"  <path d="M {} {} A {} {} 0 {large_arc} {sweep_flag} {} {}" fill="none" stroke="#003366" stroke-width="2"/>"##,
                        tx(start.x),
                        ty(start.y),
                        fmt(scale(radius)),
                        fmt(scale(radius)),
                        tx(end.x),
                        ty(end.y)
                    )
                    .unwrap();
                }
            }
        }
    }

    let start = path.start_point();
    let end = path.end_point();
    writeln!(
        out,
        r##"  <circle cx="{}" cy="{}" r="5" fill="#007700"/>"##,
        tx(start.x),
        ty(start.y)
    )
    .unwrap();
    writeln!(
        out,
        r##"  <circle cx="{}" cy="{}" r="5" fill="#aa0000"/>"##,
        tx(end.x),
        ty(end.y)
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

fn render_tangent(out: &mut String, theta: f64) {
    let touch = unit_direction(Angle(theta));
    let dir = touch.perp();
    let a = touch + dir * SPAN;
    let b = touch + dir * -SPAN;
    writeln!(
        out,
        r##"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#bbbbbb" stroke-width="1" stroke-dasharray="4 4"/>"##,
        tx(a.x),
        ty(a.y),
        tx(b.x),
        ty(b.y)
    )
    .unwrap();
}
