//! On-disk path format: a versioned JSON document listing pieces, angles in
//! radians and lengths in circle radii. Round-trip stable: parsing a
//! serialized document reproduces every coordinate exactly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{GeomError, PathPiece, PiecewisePath, Point};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed path document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported document version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("invalid path: {0}")]
    Geometry(#[from] GeomError),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum PieceRecord {
    Segment {
        from: [f64; 2],
        to: [f64; 2],
    },
    Arc {
        center: [f64; 2],
        radius: f64,
        start_angle: f64,
        end_angle: f64,
        ccw: bool,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PathDocument {
    pub version: u32,
    pub pieces: Vec<PieceRecord>,
}

impl From<&PiecewisePath> for PathDocument {
    fn from(path: &PiecewisePath) -> Self {
        let pieces = path
            .pieces()
            .iter()
            .map(|p| match *p {
                PathPiece::Segment { from, to } => PieceRecord::Segment {
                    from: [from.x, from.y],
                    to: [to.x, to.y],
                },
                PathPiece::Arc {
                    center,
                    radius,
                    start_angle,
                    end_angle,
                    ccw,
                } => PieceRecord::Arc {
                    center: [center.x, center.y],
                    radius,
                    start_angle: start_angle.radians(),
                    end_angle: end_angle.radians(),
                    ccw,
                },
            })
            .collect();
        PathDocument {
            version: FORMAT_VERSION,
            pieces,
        }
    }
}

impl PathDocument {
    pub fn to_path(&self) -> Result<PiecewisePath, DocError> {
        if self.version != FORMAT_VERSION {
            return Err(DocError::Version(self.version));
        }
        let pieces = self
            .pieces
            .iter()
            .map(|r| match *r {
                PieceRecord::Segment { from, to } => PathPiece::segment(
                    Point::new(from[0], from[1]),
                    Point::new(to[0], to[1]),
                ),
                PieceRecord::Arc {
                    center,
                    radius,
                    start_angle,
                    end_angle,
                    ccw,
                } => PathPiece::arc(
                    Point::new(center[0], center[1]),
                    radius,
                    start_angle,
                    end_angle,
                    ccw,
                ),
            })
            .collect();
        Ok(PiecewisePath::new(pieces)?)
    }
}

/// Serialize a path to the canonical JSON text (trailing newline included).
pub fn serialize(path: &PiecewisePath) -> String {
    let doc = PathDocument::from(path);
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    text
}

/// Parse JSON text into a path, rejecting broken chains with a diagnostic
/// naming the first discontinuity.
pub fn parse(text: &str) -> Result<PiecewisePath, DocError> {
    let doc: PathDocument = serde_json::from_str(text)?;
    doc.to_path()
}
