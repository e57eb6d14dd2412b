//! Directed boundary edges (segments and circular arcs) and closed cycles of them.
//!
//! Orientation convention: a region lies to the left of each of its directed
//! boundary edges. Outer cycles therefore run counter-clockwise, inner cycles
//! clockwise, and an arc's own orientation is counted about its center.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{
    circle_circle, circle_segment, point_segment_distance, segment_segment_intersections, BBox,
    Circle, CircleContact, Point, SensorId, EPS,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EdgeSource {
    Sensor { id: SensorId },
    Roi { edge: usize },
    Obstacle { obstacle: usize, edge: usize },
}

impl EdgeSource {
    pub fn is_environment(&self) -> bool {
        !matches!(self, EdgeSource::Sensor { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Ccw => 1.0,
            Orientation::Cw => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeGeometry {
    Segment,
    Arc {
        center: Point,
        radius: f64,
        orientation: Orientation,
    },
}

/// A directed boundary edge with provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcEdge {
    pub start: Point,
    pub end: Point,
    pub geometry: EdgeGeometry,
    pub source: EdgeSource,
    /// Closed arc sweeping the whole circle; `start == end`.
    pub full_circle: bool,
}

impl ArcEdge {
    pub fn segment(start: Point, end: Point, source: EdgeSource) -> Self {
        ArcEdge {
            start,
            end,
            geometry: EdgeGeometry::Segment,
            source,
            full_circle: false,
        }
    }

    pub fn arc(
        circle: Circle,
        orientation: Orientation,
        start: Point,
        end: Point,
        source: EdgeSource,
    ) -> Self {
        ArcEdge {
            start,
            end,
            geometry: EdgeGeometry::Arc {
                center: circle.center,
                radius: circle.radius,
                orientation,
            },
            source,
            full_circle: false,
        }
    }

    pub fn full_circle(
        circle: Circle,
        orientation: Orientation,
        start: Point,
        source: EdgeSource,
    ) -> Self {
        ArcEdge {
            start,
            end: start,
            geometry: EdgeGeometry::Arc {
                center: circle.center,
                radius: circle.radius,
                orientation,
            },
            source,
            full_circle: true,
        }
    }

    pub fn circle(&self) -> Option<(Circle, Orientation)> {
        match self.geometry {
            EdgeGeometry::Segment => None,
            EdgeGeometry::Arc {
                center,
                radius,
                orientation,
            } => Some((Circle::new(center, radius), orientation)),
        }
    }

    pub fn is_segment(&self) -> bool {
        matches!(self.geometry, EdgeGeometry::Segment)
    }

    /// Angle swept about the arc's center, in `(0, 2π]`; zero for segments.
    pub fn sweep(&self) -> f64 {
        match self.geometry {
            EdgeGeometry::Segment => 0.0,
            EdgeGeometry::Arc {
                center,
                orientation,
                ..
            } => {
                if self.full_circle {
                    return TAU;
                }
                let a0 = (self.start - center).angle();
                let a1 = (self.end - center).angle();
                (orientation.sign() * (a1 - a0)).rem_euclid(TAU)
            }
        }
    }

    pub fn length(&self) -> f64 {
        match self.geometry {
            EdgeGeometry::Segment => self.start.dist(self.end),
            EdgeGeometry::Arc { radius, .. } => radius * self.sweep(),
        }
    }

    /// Contribution of this edge to the enclosed signed area (Green's theorem).
    ///
    /// Equals the chord's shoelace term plus a circular-segment correction of
    /// `±r²/2 (θ − sin θ)`, positive for counter-clockwise arcs.
    pub fn area_term(&self) -> f64 {
        let (p, q) = (self.start, self.end);
        match self.geometry {
            EdgeGeometry::Segment => 0.5 * p.cross(q),
            EdgeGeometry::Arc {
                radius,
                orientation,
                ..
            } => {
                let theta = self.sweep();
                0.5 * p.cross(q)
                    + orientation.sign() * 0.5 * radius * radius * (theta - theta.sin())
            }
        }
    }

    /// Point at fraction `f ∈ [0, 1]` of the way along the edge.
    pub fn point_at(&self, f: f64) -> Point {
        match self.geometry {
            EdgeGeometry::Segment => self.start.lerp(self.end, f),
            EdgeGeometry::Arc {
                center,
                radius,
                orientation,
            } => {
                let a0 = (self.start - center).angle();
                Circle::new(center, radius).point_at(a0 + orientation.sign() * self.sweep() * f)
            }
        }
    }

    pub fn midpoint(&self) -> Point {
        self.point_at(0.5)
    }

    /// Unit direction of travel at a point on the edge.
    pub fn tangent_at(&self, p: Point) -> Point {
        match self.geometry {
            EdgeGeometry::Segment => (self.end - self.start).normalized(),
            EdgeGeometry::Arc {
                center,
                orientation,
                ..
            } => (p - center).perp().normalized() * orientation.sign(),
        }
    }

    pub fn start_tangent(&self) -> Point {
        self.tangent_at(self.start)
    }

    pub fn end_tangent(&self) -> Point {
        self.tangent_at(self.end)
    }

    /// Signed curvature; positive when the edge turns left.
    pub fn curvature(&self) -> f64 {
        match self.geometry {
            EdgeGeometry::Segment => 0.0,
            EdgeGeometry::Arc {
                radius,
                orientation,
                ..
            } => orientation.sign() / radius,
        }
    }

    pub fn reversed(&self) -> ArcEdge {
        let geometry = match self.geometry {
            EdgeGeometry::Segment => EdgeGeometry::Segment,
            EdgeGeometry::Arc {
                center,
                radius,
                orientation,
            } => EdgeGeometry::Arc {
                center,
                radius,
                orientation: orientation.flipped(),
            },
        };
        ArcEdge {
            start: self.end,
            end: self.start,
            geometry,
            source: self.source,
            full_circle: self.full_circle,
        }
    }

    pub fn bbox(&self) -> BBox {
        let mut b = BBox::of_points([&self.start, &self.end]);
        if let EdgeGeometry::Arc {
            center,
            radius,
            orientation,
        } = self.geometry
        {
            let a0 = (self.start - center).angle();
            let sweep = self.sweep();
            for k in 0..4 {
                let axis = k as f64 * PI / 2.0;
                let off = (orientation.sign() * (axis - a0)).rem_euclid(TAU);
                if off <= sweep {
                    b.include(Circle::new(center, radius).point_at(axis));
                }
            }
        }
        b
    }

    /// Position of `p` (assumed on the edge's curve) as a fraction of the edge,
    /// or `None` when it falls outside the edge.
    pub fn param_of(&self, p: Point) -> Option<f64> {
        if p.approx_eq(self.start) {
            return Some(0.0);
        }
        if !self.full_circle && p.approx_eq(self.end) {
            return Some(1.0);
        }
        match self.geometry {
            EdgeGeometry::Segment => {
                let d = self.end - self.start;
                let len2 = d.dot(d);
                let t = (p - self.start).dot(d) / len2;
                let tol = EPS / len2.sqrt();
                (t >= -tol && t <= 1.0 + tol).then(|| t.clamp(0.0, 1.0))
            }
            EdgeGeometry::Arc {
                center,
                radius,
                orientation,
            } => {
                let sweep = self.sweep();
                let a0 = (self.start - center).angle();
                let off = (orientation.sign() * ((p - center).angle() - a0)).rem_euclid(TAU);
                let tol = EPS / radius;
                if off <= sweep + tol {
                    Some((off / sweep).min(1.0))
                } else if off >= TAU - tol {
                    Some(0.0)
                } else {
                    None
                }
            }
        }
    }

    pub fn distance_to(&self, p: Point) -> f64 {
        match self.geometry {
            EdgeGeometry::Segment => point_segment_distance(p, self.start, self.end),
            EdgeGeometry::Arc { center, radius, .. } => {
                let v = p - center;
                if v.norm() > 0.0 {
                    let on = center + v.normalized() * radius;
                    if self.param_of(on).is_some() {
                        return (v.norm() - radius).abs();
                    }
                }
                p.dist(self.start).min(p.dist(self.end))
            }
        }
    }

    /// Signed angle subtended by the edge as seen from `p` (winding contribution).
    pub fn winding_angle(&self, p: Point) -> f64 {
        let chord = {
            let a = self.start - p;
            let b = self.end - p;
            a.cross(b).atan2(a.dot(b))
        };
        match self.geometry {
            EdgeGeometry::Segment => chord,
            EdgeGeometry::Arc {
                center,
                radius,
                orientation,
            } => {
                if p.dist(center) >= radius {
                    return chord;
                }
                if self.full_circle {
                    return orientation.sign() * TAU;
                }
                // Seen from inside the disk the arc turns monotonically.
                let s = orientation.sign();
                let a0 = (self.start - p).angle();
                let a1 = (self.end - p).angle();
                s * (s * (a1 - a0)).rem_euclid(TAU)
            }
        }
    }

    /// Cuts the edge at the given points (those not on it are ignored).
    /// Pieces shorter than `EPS` are dropped.
    pub fn split_at(&self, points: &[Point]) -> Vec<ArcEdge> {
        let mut cuts: Vec<(f64, Point)> = points
            .iter()
            .filter_map(|&p| self.param_of(p).map(|t| (t, p)))
            .collect();
        if self.full_circle {
            if cuts.is_empty() {
                return vec![*self];
            }
            // Re-anchor at the first cut, then split as an ordinary arc.
            cuts.sort_by(|a, b| a.0.total_cmp(&b.0));
            let anchor = cuts[0].1;
            let (circle, o) = self.circle().unwrap();
            let full = ArcEdge::full_circle(circle, o, anchor, self.source);
            let rest: Vec<Point> = cuts[1..].iter().map(|c| c.1).collect();
            return full.split_open(&rest, true);
        }
        self.split_open(&cuts.into_iter().map(|c| c.1).collect::<Vec<_>>(), false)
    }

    fn split_open(&self, points: &[Point], closed: bool) -> Vec<ArcEdge> {
        let mut cuts: Vec<(f64, Point)> = points
            .iter()
            .filter_map(|&p| self.param_of(p).map(|t| (t, p)))
            .filter(|(_, p)| !p.approx_eq(self.start) && (closed || !p.approx_eq(self.end)))
            .collect();
        cuts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut stops: Vec<Point> = Vec::with_capacity(cuts.len() + 2);
        stops.push(self.start);
        for (_, p) in cuts {
            if !stops.last().unwrap().approx_eq(p) {
                stops.push(p);
            }
        }
        if closed {
            if stops.len() == 1 {
                return vec![*self];
            }
            stops.push(self.start);
        } else {
            if stops.len() > 1 && stops.last().unwrap().approx_eq(self.end) {
                stops.pop();
            }
            stops.push(self.end);
        }
        let mut out = Vec::with_capacity(stops.len() - 1);
        for w in stops.windows(2) {
            let piece = ArcEdge {
                start: w[0],
                end: w[1],
                full_circle: false,
                ..*self
            };
            if piece.start.dist(piece.end) > EPS {
                out.push(piece);
            }
        }
        out
    }

    /// Chord polyline with `k` pieces per arc (segments are returned as-is).
    pub fn chord_points(&self, k: usize) -> Vec<Point> {
        match self.geometry {
            EdgeGeometry::Segment => vec![self.start, self.end],
            EdgeGeometry::Arc { .. } => {
                let k = k.max(1);
                (0..=k)
                    .map(|i| self.point_at(i as f64 / k as f64))
                    .collect()
            }
        }
    }
}

/// Points where two edges meet. Coincident arcs and collinear segments report
/// the endpoints of their overlap; tangential contacts are ignored.
pub fn edge_intersections(a: &ArcEdge, b: &ArcEdge) -> Vec<Point> {
    if !a.bbox().expanded(EPS).intersects(&b.bbox().expanded(EPS)) {
        return Vec::new();
    }
    let candidates: Vec<Point> = match (a.circle(), b.circle()) {
        (None, None) => return segment_segment_intersections(a.start, a.end, b.start, b.end),
        (Some((c, _)), None) => circle_segment(&c, b.start, b.end)
            .into_iter()
            .filter(|h| !h.tangent)
            .map(|h| h.point)
            .collect(),
        (None, Some((c, _))) => circle_segment(&c, a.start, a.end)
            .into_iter()
            .filter(|h| !h.tangent)
            .map(|h| h.point)
            .collect(),
        (Some((ca, _)), Some((cb, _))) => match circle_circle(&ca, &cb) {
            CircleContact::Crossing(p) => p.to_vec(),
            CircleContact::Coincident => {
                let mut v = vec![a.start, b.start];
                if !a.full_circle {
                    v.push(a.end);
                }
                if !b.full_circle {
                    v.push(b.end);
                }
                v
            }
            _ => Vec::new(),
        },
    };
    let mut out: Vec<Point> = Vec::new();
    for p in candidates {
        if a.param_of(p).is_some() && b.param_of(p).is_some() && !out.iter().any(|q| q.approx_eq(p))
        {
            out.push(p);
        }
    }
    out
}

/// Signed area enclosed by a closed cycle of edges.
pub fn cycle_area(cycle: &[ArcEdge]) -> f64 {
    cycle.iter().map(ArcEdge::area_term).sum()
}

/// Total signed area of a set of cycles; fails on the first gap between
/// consecutive edges.
pub fn arc_polygon_area(cycles: &[Vec<ArcEdge>]) -> Result<f64> {
    let mut total = 0.0;
    for cycle in cycles {
        check_closed(cycle)?;
        total += cycle_area(cycle);
    }
    Ok(total)
}

pub fn check_closed(cycle: &[ArcEdge]) -> Result<()> {
    let n = cycle.len();
    for i in 0..n {
        let cur = &cycle[i];
        let next = &cycle[(i + 1) % n];
        let gap = cur.end.dist(next.start);
        if gap > EPS {
            return Err(Error::OpenCycle { at: cur.end, gap });
        }
    }
    Ok(())
}

/// Winding number of a set of cycles about `p`.
pub fn winding_number<'a>(edges: impl IntoIterator<Item = &'a ArcEdge>, p: Point) -> i32 {
    let total: f64 = edges.into_iter().map(|e| e.winding_angle(p)).sum();
    (total / TAU).round() as i32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn src() -> EdgeSource {
        EdgeSource::Sensor { id: 1 }
    }

    fn square(side: f64) -> Vec<ArcEdge> {
        let p = [
            Point::new(0.0, 0.0),
            Point::new(side, 0.0),
            Point::new(side, side),
            Point::new(0.0, side),
        ];
        (0..4)
            .map(|i| ArcEdge::segment(p[i], p[(i + 1) % 4], EdgeSource::Roi { edge: i }))
            .collect()
    }

    #[test]
    fn unit_circle_from_two_half_arcs() {
        let c = Circle::new(Point::new(0.0, 0.0), 1.0);
        let a = Point::new(1.0, 0.0);
        let b = Point::new(-1.0, 0.0);
        let cycle = vec![
            ArcEdge::arc(c, Orientation::Ccw, a, b, src()),
            ArcEdge::arc(c, Orientation::Ccw, b, a, src()),
        ];
        let area = arc_polygon_area(&[cycle]).unwrap();
        assert!((area - PI).abs() < 1e-12);
    }

    #[test]
    fn unit_square() {
        assert!((arc_polygon_area(&[square(1.0)]).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lens_of_two_unit_disks() {
        let h = 0.75f64.sqrt();
        let top = Point::new(0.5, h);
        let bot = Point::new(0.5, -h);
        let c1 = Circle::new(Point::new(0.0, 0.0), 1.0);
        let c2 = Circle::new(Point::new(1.0, 0.0), 1.0);
        // Right flank is circle 1 (bottom to top), left flank is circle 2 (top to bottom).
        let cycle = vec![
            ArcEdge::arc(c1, Orientation::Ccw, bot, top, src()),
            ArcEdge::arc(c2, Orientation::Ccw, top, bot, src()),
        ];
        let area = arc_polygon_area(&[cycle]).unwrap();
        let expected = 2.0 * PI / 3.0 - 3f64.sqrt() / 2.0;
        assert!((area - expected).abs() < 1e-12, "{area} vs {expected}");
        assert!((expected - 1.22837).abs() < 1e-5);
    }

    #[test]
    fn open_cycle_is_reported() {
        let mut sq = square(1.0);
        sq[2].end = Point::new(0.0, 0.9);
        match arc_polygon_area(&[sq]) {
            Err(Error::OpenCycle { gap, .. }) => assert!((gap - 0.1).abs() < 1e-12),
            other => panic!("expected open-cycle error, got {other:?}"),
        }
    }

    #[test]
    fn full_circle_area_and_winding() {
        let c = Circle::new(Point::new(2.0, 3.0), 2.0);
        let e = ArcEdge::full_circle(c, Orientation::Cw, c.point_at(0.0), src());
        assert!((e.area_term() + 4.0 * PI).abs() < 1e-12);
        assert_eq!(winding_number([&e], Point::new(2.5, 3.0)), -1);
        assert_eq!(winding_number([&e], Point::new(9.0, 3.0)), 0);
    }

    #[test]
    fn winding_of_arc_cycle() {
        let h = 0.75f64.sqrt();
        let top = Point::new(0.5, h);
        let bot = Point::new(0.5, -h);
        let c1 = Circle::new(Point::new(0.0, 0.0), 1.0);
        let c2 = Circle::new(Point::new(1.0, 0.0), 1.0);
        let lens = [
            ArcEdge::arc(c1, Orientation::Ccw, bot, top, src()),
            ArcEdge::arc(c2, Orientation::Ccw, top, bot, src()),
        ];
        assert_eq!(winding_number(&lens, Point::new(0.5, 0.0)), 1);
        assert_eq!(winding_number(&lens, Point::new(0.5, 0.8)), 1);
        assert_eq!(winding_number(&lens, Point::new(-0.5, 0.0)), 0);
        assert_eq!(winding_number(&lens, Point::new(1.5, 0.0)), 0);
        assert_eq!(winding_number(&lens, Point::new(0.5, 0.9)), 0);
    }

    #[test]
    fn split_arc_preserves_area_terms() {
        let c = Circle::new(Point::new(0.0, 0.0), 2.0);
        let e = ArcEdge::arc(c, Orientation::Cw, c.point_at(2.0), c.point_at(-1.0), src());
        let pieces = e.split_at(&[c.point_at(0.5), c.point_at(1.5), c.point_at(3.0)]);
        assert_eq!(pieces.len(), 3);
        let total: f64 = pieces.iter().map(ArcEdge::area_term).sum();
        assert!((total - e.area_term()).abs() < 1e-12);
        assert_eq!(pieces[0].start, e.start);
        assert_eq!(pieces[2].end, e.end);
    }

    #[test]
    fn split_full_circle() {
        let c = Circle::new(Point::new(0.0, 0.0), 1.0);
        let e = ArcEdge::full_circle(c, Orientation::Ccw, c.point_at(0.0), src());
        let pieces = e.split_at(&[c.point_at(1.0), c.point_at(4.0)]);
        assert_eq!(pieces.len(), 2);
        let total: f64 = pieces.iter().map(ArcEdge::area_term).sum();
        assert!((total - PI).abs() < 1e-12);
    }

    #[test]
    fn arc_bbox_includes_extremes() {
        let c = Circle::new(Point::new(0.0, 0.0), 1.0);
        let e = ArcEdge::arc(
            c,
            Orientation::Ccw,
            c.point_at(-0.5),
            c.point_at(0.5),
            src(),
        );
        let b = e.bbox();
        assert!((b.max.x - 1.0).abs() < 1e-15);
        assert!(b.min.x > 0.8);
    }

    #[test]
    fn arc_segment_crossing() {
        let c = Circle::new(Point::new(0.0, 0.0), 1.0);
        let arc = ArcEdge::arc(
            c,
            Orientation::Ccw,
            c.point_at(-1.2),
            c.point_at(1.2),
            src(),
        );
        let seg = ArcEdge::segment(
            Point::new(0.5, -2.0),
            Point::new(0.5, 2.0),
            EdgeSource::Roi { edge: 0 },
        );
        let pts = edge_intersections(&arc, &seg);
        assert_eq!(pts.len(), 2);
        let seg2 = ArcEdge::segment(
            Point::new(-0.5, -2.0),
            Point::new(-0.5, 2.0),
            EdgeSource::Roi { edge: 0 },
        );
        assert!(edge_intersections(&arc, &seg2).is_empty());
    }
}
