//! Hole detection with transparent obstacles: obstacle-free holes are
//! computed first, then each obstacle is cut out of them in turn.

use rayon::prelude::*;

use crate::awvd::Strategy;
use crate::error::{Error, Result};
use crate::geom::edge::{edge_intersections, ArcEdge, EdgeSource};
use crate::geom::region::Region;
use crate::geom::{
    circle_segment, point_segment_distance, BBox, CoverageMode, Disk, Location, Point, SensorIndex,
    SimplePolygon, EPS,
};
use crate::hdao::{self, stitch_holes, BoundaryPoint, Detection, Hole, PointSource};
use crate::scenario::{validate_obstacles, Scenario};

/// Pairwise disjoint obstacles inside an RoI.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstacleSet {
    obstacles: Vec<SimplePolygon>,
}

impl ObstacleSet {
    pub fn new(roi: &SimplePolygon, obstacles: Vec<SimplePolygon>) -> Result<Self> {
        validate_obstacles(roi, &obstacles)?;
        Ok(ObstacleSet { obstacles })
    }

    pub fn as_slice(&self) -> &[SimplePolygon] {
        &self.obstacles
    }

    pub fn len(&self) -> usize {
        self.obstacles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.obstacles.is_empty()
    }

    /// Total vertex count over all obstacles.
    pub fn vertex_count(&self) -> usize {
        self.obstacles.iter().map(SimplePolygon::len).sum()
    }
}

fn obstacle_edges(o: &SimplePolygon, index: usize) -> Vec<ArcEdge> {
    o.edges()
        .enumerate()
        .map(|(edge, (a, b))| {
            ArcEdge::segment(
                a,
                b,
                EdgeSource::Obstacle {
                    obstacle: index,
                    edge,
                },
            )
        })
        .collect()
}

/// Direction of the obstacle edge through `p`, if `p` is on the boundary.
fn boundary_direction(o: &SimplePolygon, p: Point) -> Option<Point> {
    o.edges()
        .find(|&(a, b)| point_segment_distance(p, a, b) <= EPS)
        .map(|(a, b)| b - a)
}

fn subtract_from_hole(hole: &Hole, o: &SimplePolygon, index: usize) -> Result<Vec<Hole>> {
    let ob = obstacle_edges(o, index);
    let hole_edges: Vec<ArcEdge> = hole.edges().copied().collect();
    let mut cuts_hole: Vec<Vec<Point>> = vec![Vec::new(); hole_edges.len()];
    let mut cuts_ob: Vec<Vec<Point>> = vec![Vec::new(); ob.len()];
    for (i, h) in hole_edges.iter().enumerate() {
        for (j, e) in ob.iter().enumerate() {
            let pts = edge_intersections(h, e);
            cuts_hole[i].extend_from_slice(&pts);
            cuts_ob[j].extend_from_slice(&pts);
        }
    }
    let mut kept = Vec::new();
    for (h, cuts) in hole_edges.iter().zip(&cuts_hole) {
        for piece in h.split_at(cuts) {
            let m = piece.midpoint();
            let keep = match o.locate(m) {
                Location::Outside => true,
                Location::Inside => false,
                // Shared boundary: kept only where the obstacle lies across it.
                Location::Boundary => {
                    boundary_direction(o, m).is_some_and(|d| d.dot(piece.tangent_at(m)) < 0.0)
                }
            };
            if keep {
                kept.push(piece);
            }
        }
    }
    for (e, cuts) in ob.iter().zip(&cuts_ob) {
        for piece in e.split_at(cuts) {
            if hole.locate(piece.midpoint()) == Location::Inside {
                kept.push(piece.reversed());
            }
        }
    }
    stitch_holes(kept)
}

/// Replaces every hole by its difference with obstacle `o`.
pub fn subtract_obstacle(holes: &[Hole], o: &SimplePolygon, index: usize) -> Result<Vec<Hole>> {
    let obox = o.bbox();
    let parts: Vec<Vec<Hole>> = holes
        .par_iter()
        .map(|h| {
            if h.bbox.expanded(EPS).intersects(&obox) {
                subtract_from_hole(h, o, index)
            } else {
                Ok(vec![h.clone()])
            }
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<Hole> = parts.into_iter().flatten().collect();
    out.sort_by(|a, b| a.outer[0].start.lex_cmp(&b.outer[0].start));
    Ok(out)
}

fn check_sensors(sensors: &[Disk], obstacles: &ObstacleSet) -> Result<()> {
    for s in sensors {
        if let Some(k) = obstacles
            .as_slice()
            .iter()
            .position(|o| o.locate(s.center) == Location::Inside)
        {
            return Err(Error::invalid(format!(
                "sensor {} lies inside obstacle {k}",
                s.id
            )));
        }
    }
    Ok(())
}

/// Holes of the deployment with the obstacles cut out, in insertion order.
pub fn hdpo(sensors: &[Disk], roi: &SimplePolygon, obstacles: &ObstacleSet) -> Result<Vec<Hole>> {
    Ok(detect_with_obstacles(sensors, roi, obstacles, Strategy::Exact)?.holes)
}

/// Uncovered sensor crossings of obstacle edges and uncovered obstacle vertices.
pub fn obstacle_boundary_points(sensors: &[Disk], obstacles: &ObstacleSet) -> Vec<BoundaryPoint> {
    let index = SensorIndex::new(sensors.to_vec());
    let mut out = Vec::new();
    for (k, o) in obstacles.as_slice().iter().enumerate() {
        for (e, (a, b)) in o.edges().enumerate() {
            let bb = BBox::of_points(&[a, b]);
            for disk in index.near_bbox(&bb) {
                for hit in circle_segment(&disk.circle(), a, b) {
                    if hit.tangent || index.covered(hit.point, CoverageMode::Strict) {
                        continue;
                    }
                    if out
                        .iter()
                        .any(|q: &BoundaryPoint| q.location.approx_eq(hit.point))
                    {
                        continue;
                    }
                    out.push(BoundaryPoint {
                        location: hit.point,
                        provenance: (
                            PointSource::Sensor { id: disk.id },
                            PointSource::Obstacle {
                                obstacle: k,
                                edge: e,
                            },
                        ),
                        angles: vec![(disk.id, (hit.point - disk.center).angle())],
                    });
                }
            }
        }
        for (v, &p) in o.vertices().iter().enumerate() {
            if !index.covered(p, CoverageMode::Strict)
                && !out.iter().any(|q| q.location.approx_eq(p))
            {
                let prev = (v + o.len() - 1) % o.len();
                out.push(BoundaryPoint {
                    location: p,
                    provenance: (
                        PointSource::Obstacle {
                            obstacle: k,
                            edge: prev,
                        },
                        PointSource::ObstacleVertex {
                            obstacle: k,
                            vertex: v,
                        },
                    ),
                    angles: Vec::new(),
                });
            }
        }
    }
    out
}

/// Full detection with obstacles: obstacle-free detection followed by one
/// subtraction per obstacle. Boundary points strictly inside an obstacle are
/// dropped and the obstacle boundary points added.
pub fn detect_with_obstacles(
    sensors: &[Disk],
    roi: &SimplePolygon,
    obstacles: &ObstacleSet,
    strategy: Strategy,
) -> Result<Detection> {
    check_sensors(sensors, obstacles)?;
    clip(hdao::detect(sensors, roi, strategy)?, sensors, obstacles)
}

/// Cuts the obstacles out of an obstacle-free detection.
pub fn clip(mut d: Detection, sensors: &[Disk], obstacles: &ObstacleSet) -> Result<Detection> {
    for (k, o) in obstacles.as_slice().iter().enumerate() {
        d.holes = subtract_obstacle(&d.holes, o, k)?;
    }
    if !obstacles.is_empty() {
        d.points.retain(|bp| {
            obstacles
                .as_slice()
                .iter()
                .all(|o| o.locate(bp.location) != Location::Inside)
        });
        d.points
            .extend(obstacle_boundary_points(sensors, obstacles));
    }
    Ok(d)
}

/// Detection on a whole scenario.
pub fn detect_scenario(s: &Scenario, strategy: Strategy) -> Result<Detection> {
    let obstacles = ObstacleSet::new(&s.roi, s.obstacles.clone())?;
    detect_with_obstacles(&s.sensors, &s.roi, &obstacles, strategy)
}
