//! JSON documents written by the `detect` command.

use serde::Serialize;

use crate::geom::edge::{ArcEdge, EdgeGeometry, EdgeSource, Orientation};
use crate::geom::Point;
use crate::hdao::{BoundaryPoint, Hole, HoleKind};

#[derive(Debug, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EdgeDoc {
    Segment {
        start: [f64; 2],
        end: [f64; 2],
        source: EdgeSource,
    },
    Arc {
        center: [f64; 2],
        radius: f64,
        start: [f64; 2],
        end: [f64; 2],
        orientation: Orientation,
        full_circle: bool,
        source: EdgeSource,
    },
}

fn xy(p: Point) -> [f64; 2] {
    [p.x, p.y]
}

impl From<&ArcEdge> for EdgeDoc {
    fn from(e: &ArcEdge) -> Self {
        match e.geometry {
            EdgeGeometry::Segment => EdgeDoc::Segment {
                start: xy(e.start),
                end: xy(e.end),
                source: e.source,
            },
            EdgeGeometry::Arc {
                center,
                radius,
                orientation,
            } => EdgeDoc::Arc {
                center: xy(center),
                radius,
                start: xy(e.start),
                end: xy(e.end),
                orientation,
                full_circle: e.full_circle,
                source: e.source,
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct HoleDoc {
    pub area: f64,
    pub kind: HoleKind,
    pub outer: Vec<EdgeDoc>,
    pub inner: Vec<Vec<EdgeDoc>>,
    /// Closed polylines approximating each cycle, outer first.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chords: Option<Vec<Vec<[f64; 2]>>>,
}

fn polyline(cycle: &[ArcEdge], k: usize) -> Vec<[f64; 2]> {
    let mut out: Vec<[f64; 2]> = Vec::new();
    for e in cycle {
        let pts = e.chord_points(k);
        out.extend(pts[..pts.len() - 1].iter().map(|&p| xy(p)));
    }
    if let Some(&first) = out.first() {
        out.push(first);
    }
    out
}

impl HoleDoc {
    pub fn new(h: &Hole, chords: Option<usize>) -> Self {
        HoleDoc {
            area: h.area,
            kind: h.kind,
            outer: h.outer.iter().map(EdgeDoc::from).collect(),
            inner: h
                .inner
                .iter()
                .map(|c| c.iter().map(EdgeDoc::from).collect())
                .collect(),
            chords: chords.map(|k| h.cycles().map(|c| polyline(c, k)).collect()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct HolesDoc<'a> {
    pub roi_area: f64,
    pub free_area: f64,
    pub total_hole_area: f64,
    pub holes: Vec<HoleDoc>,
    pub boundary_points: &'a [BoundaryPoint],
}
