//! Hole detection without obstacles.
//!
//! Boundary points are the uncovered crossings of neighboring sensor
//! circles, of circles with the RoI boundary, and the uncovered RoI
//! vertices. Each circle is marched clockwise between its boundary points,
//! keeping the uncovered arcs; together with the uncovered pieces of the RoI
//! boundary they are stitched into hole cycles.

pub mod stitch;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::awvd::{build_neighbor_graph, AwvdNeighborGraph, Strategy};
use crate::error::Result;
use crate::geom::edge::{cycle_area, ArcEdge, EdgeSource, Orientation};
use crate::geom::region::Region;
use crate::geom::{
    circle_circle, circle_segment, point_segment_distance, BBox, CircleContact, CoverageMode, Disk,
    Location, Point, SensorId, SensorIndex, SimplePolygon, EPS,
};
pub use stitch::stitch_holes;
use stitch::NodeMap;

/// One curve a boundary point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PointSource {
    Sensor { id: SensorId },
    Roi { edge: usize },
    RoiVertex { vertex: usize },
    Obstacle { obstacle: usize, edge: usize },
    ObstacleVertex { obstacle: usize, vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryPoint {
    pub location: Point,
    pub provenance: (PointSource, PointSource),
    /// Polar angle of the point about each incident sensor circle.
    pub angles: Vec<(SensorId, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HoleKind {
    Open,
    Closed,
}

/// A connected uncovered region: a counter-clockwise outer cycle and
/// clockwise inner cycles around covered islands.
#[derive(Debug, Clone, PartialEq)]
pub struct Hole {
    pub outer: Vec<ArcEdge>,
    pub inner: Vec<Vec<ArcEdge>>,
    pub area: f64,
    pub kind: HoleKind,
    pub bbox: BBox,
}

impl Hole {
    pub fn new(outer: Vec<ArcEdge>, inner: Vec<Vec<ArcEdge>>) -> Self {
        let mut h = Hole {
            outer,
            inner,
            area: 0.0,
            kind: HoleKind::Closed,
            bbox: BBox::empty(),
        };
        h.refresh();
        h
    }

    pub(crate) fn refresh(&mut self) {
        self.area = cycle_area(&self.outer) + self.inner.iter().map(|c| cycle_area(c)).sum::<f64>();
        self.kind = stitch::kind_of(&self.outer, &self.inner);
        self.bbox = self
            .outer
            .iter()
            .fold(BBox::empty(), |b, e| b.union(&e.bbox()));
    }

    pub fn cycles(&self) -> impl Iterator<Item = &[ArcEdge]> {
        std::iter::once(self.outer.as_slice()).chain(self.inner.iter().map(Vec::as_slice))
    }

    pub fn edges(&self) -> impl Iterator<Item = &ArcEdge> {
        self.outer.iter().chain(self.inner.iter().flatten())
    }

    pub fn edge_count(&self) -> usize {
        self.outer.len() + self.inner.iter().map(Vec::len).sum::<usize>()
    }
}

impl Region for Hole {
    fn for_each_edge(&self, f: &mut dyn FnMut(&ArcEdge)) {
        self.edges().for_each(f);
    }

    fn bbox(&self) -> BBox {
        self.bbox
    }
}

/// Full output of a detection run.
#[derive(Debug, Clone)]
pub struct Detection {
    pub graph: AwvdNeighborGraph,
    pub points: Vec<BoundaryPoint>,
    pub holes: Vec<Hole>,
}

impl Detection {
    pub fn total_area(&self) -> f64 {
        self.holes.iter().map(|h| h.area).sum()
    }

    /// Boundary points lying on two sensor circles.
    pub fn sensor_pair_points(&self) -> usize {
        self.points
            .iter()
            .filter(|p| {
                matches!(
                    p.provenance,
                    (PointSource::Sensor { .. }, PointSource::Sensor { .. })
                )
            })
            .count()
    }
}

fn live_sensors(sensors: &[Disk], graph: &AwvdNeighborGraph) -> Vec<Disk> {
    let mut live: Vec<Disk> = sensors
        .iter()
        .filter(|s| !graph.is_dominated(s.id))
        .copied()
        .collect();
    live.sort_by_key(|s| s.id);
    live
}

fn add_point(
    nodes: &mut NodeMap,
    points: &mut Vec<BoundaryPoint>,
    p: Point,
    provenance: (PointSource, PointSource),
    circles: &[&Disk],
) {
    let before = nodes.nodes.len();
    let i = nodes.intern(p);
    if i == before {
        points.push(BoundaryPoint {
            location: p,
            provenance,
            angles: Vec::new(),
        });
    }
    let bp = &mut points[i];
    for d in circles {
        if !bp.angles.iter().any(|(id, _)| *id == d.id) {
            bp.angles.push((d.id, (bp.location - d.center).angle()));
        }
    }
}

/// All boundary points, deduplicated within `EPS`. Points found from several
/// source pairs keep the first provenance and list every incident circle.
pub fn collect_boundary_points(
    sensors: &[Disk],
    roi: &SimplePolygon,
    graph: &AwvdNeighborGraph,
) -> Vec<BoundaryPoint> {
    let index = SensorIndex::new(sensors.to_vec());
    let live = live_sensors(sensors, graph);
    let by_id: BTreeMap<SensorId, &Disk> = live.iter().map(|d| (d.id, d)).collect();
    let mut nodes = NodeMap::new(EPS);
    let mut points = Vec::new();

    let pair_hits: Vec<Vec<(Point, SensorId, SensorId)>> = graph
        .adjacency
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&&(a, b)| {
            let (da, db) = (by_id[&a], by_id[&b]);
            match circle_circle(&da.circle(), &db.circle()) {
                CircleContact::Crossing(ps) => ps
                    .into_iter()
                    .filter(|&p| roi.contains_closed(p) && !index.covered(p, CoverageMode::Strict))
                    .map(|p| (p, a, b))
                    .collect(),
                _ => Vec::new(),
            }
        })
        .collect();
    for (p, a, b) in pair_hits.into_iter().flatten() {
        add_point(
            &mut nodes,
            &mut points,
            p,
            (PointSource::Sensor { id: a }, PointSource::Sensor { id: b }),
            &[by_id[&a], by_id[&b]],
        );
    }

    for d in &live {
        for (e, (a, b)) in roi.edges().enumerate() {
            for hit in circle_segment(&d.circle(), a, b) {
                if !hit.tangent && !index.covered(hit.point, CoverageMode::Strict) {
                    add_point(
                        &mut nodes,
                        &mut points,
                        hit.point,
                        (
                            PointSource::Sensor { id: d.id },
                            PointSource::Roi { edge: e },
                        ),
                        &[d],
                    );
                }
            }
        }
    }

    let nv = roi.len();
    for (v, &p) in roi.vertices().iter().enumerate() {
        if !index.covered(p, CoverageMode::Strict) {
            let prev = (v + nv - 1) % nv;
            add_point(
                &mut nodes,
                &mut points,
                p,
                (
                    PointSource::RoiVertex { vertex: v },
                    PointSource::Roi { edge: prev },
                ),
                &[],
            );
        }
    }
    points
}

/// Sorts points on `sensor`'s circle clockwise (descending polar angle).
pub fn sort_clockwise(sensor: &Disk, points: &mut [Point]) {
    points.sort_by(|a, b| {
        (*b - sensor.center)
            .angle()
            .total_cmp(&(*a - sensor.center).angle())
    });
}

/// Uncovered clockwise arcs of `sensor` between consecutive boundary points
/// (`points` sorted clockwise). `index` holds every sensor.
pub fn uncovered_arcs(
    sensor: &Disk,
    points: &[Point],
    index: &SensorIndex,
    roi: &SimplePolygon,
) -> Vec<ArcEdge> {
    let circle = sensor.circle();
    let src = EdgeSource::Sensor { id: sensor.id };
    let free = |p: Point| {
        roi.locate(p) == Location::Inside
            && !index.covered_excluding(p, CoverageMode::Strict, sensor.id)
    };
    match points.len() {
        0 => {
            let probe = circle.point_at(0.7);
            if free(probe) {
                vec![ArcEdge::full_circle(
                    circle,
                    Orientation::Cw,
                    circle.point_at(0.0),
                    src,
                )]
            } else {
                Vec::new()
            }
        }
        1 => {
            let e = ArcEdge::full_circle(circle, Orientation::Cw, points[0], src);
            if free(e.midpoint()) {
                vec![e]
            } else {
                Vec::new()
            }
        }
        n => {
            let mut out = Vec::new();
            for k in 0..n {
                let (a, b) = (points[k], points[(k + 1) % n]);
                if a.dist(b) <= EPS {
                    continue;
                }
                let e = ArcEdge::arc(circle, Orientation::Cw, a, b, src);
                if free(e.midpoint()) {
                    out.push(e);
                }
            }
            out
        }
    }
}

/// Uncovered pieces of the RoI boundary, split at boundary points.
pub fn roi_fragments(
    roi: &SimplePolygon,
    points: &[BoundaryPoint],
    index: &SensorIndex,
) -> Vec<ArcEdge> {
    let mut out = Vec::new();
    for (e, (a, b)) in roi.edges().enumerate() {
        let d = b - a;
        let len2 = d.dot(d);
        let mut stops: Vec<(f64, Point)> = points
            .iter()
            .map(|bp| bp.location)
            .filter(|&p| point_segment_distance(p, a, b) <= EPS)
            .map(|p| (((p - a).dot(d) / len2).clamp(0.0, 1.0), p))
            .collect();
        if !stops.iter().any(|s| s.1.approx_eq(a)) {
            stops.push((0.0, a));
        }
        if !stops.iter().any(|s| s.1.approx_eq(b)) {
            stops.push((1.0, b));
        }
        stops.sort_by(|x, y| x.0.total_cmp(&y.0));
        for w in stops.windows(2) {
            let (p, q) = (w[0].1, w[1].1);
            if p.dist(q) <= EPS {
                continue;
            }
            if !index.covered(p.lerp(q, 0.5), CoverageMode::Strict) {
                out.push(ArcEdge::segment(p, q, EdgeSource::Roi { edge: e }));
            }
        }
    }
    out
}

/// Every boundary edge: uncovered sensor arcs and RoI fragments.
pub fn boundary_edges(
    sensors: &[Disk],
    roi: &SimplePolygon,
    graph: &AwvdNeighborGraph,
    points: &[BoundaryPoint],
) -> Vec<ArcEdge> {
    let index = SensorIndex::new(sensors.to_vec());
    let live = live_sensors(sensors, graph);
    let mut on_circle: BTreeMap<SensorId, Vec<Point>> = BTreeMap::new();
    for bp in points {
        for (id, _) in &bp.angles {
            on_circle.entry(*id).or_default().push(bp.location);
        }
    }
    let arcs: Vec<Vec<ArcEdge>> = live
        .par_iter()
        .map(|s| {
            let mut pts = on_circle.get(&s.id).cloned().unwrap_or_default();
            sort_clockwise(s, &mut pts);
            uncovered_arcs(s, &pts, &index, roi)
        })
        .collect();
    let mut edges: Vec<ArcEdge> = arcs.into_iter().flatten().collect();
    edges.extend(roi_fragments(roi, points, &index));
    edges
}

pub fn detect(sensors: &[Disk], roi: &SimplePolygon, strategy: Strategy) -> Result<Detection> {
    detect_from_graph(sensors, roi, build_neighbor_graph(sensors, strategy)?)
}

/// Detection given a neighbor graph already built over `sensors`.
pub fn detect_from_graph(
    sensors: &[Disk],
    roi: &SimplePolygon,
    graph: AwvdNeighborGraph,
) -> Result<Detection> {
    let points = collect_boundary_points(sensors, roi, &graph);
    let edges = boundary_edges(sensors, roi, &graph, &points);
    let holes = stitch_holes(edges)?;
    Ok(Detection {
        graph,
        points,
        holes,
    })
}

pub fn hdao(sensors: &[Disk], roi: &SimplePolygon) -> Result<Vec<Hole>> {
    Ok(detect(sensors, roi, Strategy::Exact)?.holes)
}
