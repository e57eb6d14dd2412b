//! Planar primitives shared by every other module: points, disks, simple
//! polygons, curve intersections and coverage tests.

pub mod edge;
pub mod region;

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Point-equality and on-curve tolerance, in meters.
pub const EPS: f64 = 1e-9;

pub type SensorId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Point {
        let n = self.norm();
        if n == 0.0 {
            self
        } else {
            self * (1.0 / n)
        }
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }

    pub fn approx_eq(self, o: Point) -> bool {
        self.dist(o) <= EPS
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Lexicographic (x, then y) comparison used for canonical orderings.
    pub fn lex_cmp(&self, o: &Point) -> std::cmp::Ordering {
        self.x.total_cmp(&o.x).then(self.y.total_cmp(&o.y))
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    pub fn empty() -> Self {
        BBox {
            min: Point::new(f64::INFINITY, f64::INFINITY),
            max: Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    pub fn of_points<'a>(pts: impl IntoIterator<Item = &'a Point>) -> Self {
        let mut b = BBox::empty();
        for p in pts {
            b.include(*p);
        }
        b
    }

    pub fn include(&mut self, p: Point) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn union(mut self, o: &BBox) -> BBox {
        self.include(o.min);
        self.include(o.max);
        self
    }

    pub fn expanded(self, m: f64) -> BBox {
        BBox {
            min: Point::new(self.min.x - m, self.min.y - m),
            max: Point::new(self.max.x + m, self.max.y + m),
        }
    }

    pub fn intersects(&self, o: &BBox) -> bool {
        self.min.x <= o.max.x
            && o.min.x <= self.max.x
            && self.min.y <= o.max.y
            && o.min.y <= self.max.y
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Self {
        Circle { center, radius }
    }

    pub fn point_at(&self, angle: f64) -> Point {
        self.center + Point::new(angle.cos(), angle.sin()) * self.radius
    }

    pub fn angle_of(&self, p: Point) -> f64 {
        (p - self.center).angle()
    }

    pub fn bbox(&self) -> BBox {
        BBox {
            min: Point::new(self.center.x - self.radius, self.center.y - self.radius),
            max: Point::new(self.center.x + self.radius, self.center.y + self.radius),
        }
    }

    fn key(&self) -> (f64, f64, f64) {
        (self.center.x, self.center.y, self.radius)
    }
}

/// A sensor's sensing region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub id: SensorId,
    pub center: Point,
    pub radius: f64,
    pub mobile: bool,
}

impl Disk {
    pub fn new(id: SensorId, center: Point, radius: f64, mobile: bool) -> Self {
        Disk {
            id,
            center,
            radius,
            mobile,
        }
    }

    pub fn circle(&self) -> Circle {
        Circle::new(self.center, self.radius)
    }

    pub fn area(&self) -> f64 {
        PI * self.radius * self.radius
    }

    pub fn covers(&self, p: Point, mode: CoverageMode) -> bool {
        let d = self.center.dist(p);
        match mode {
            CoverageMode::Strict => d < self.radius - EPS,
            CoverageMode::Closed => d <= self.radius + EPS,
        }
    }

    /// True when `other` lies inside this disk (within tolerance).
    pub fn contains_disk(&self, other: &Disk) -> bool {
        self.center.dist(other.center) + other.radius <= self.radius + EPS
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverageMode {
    /// Point lies in some open disk shrunk by `EPS`.
    Strict,
    /// Point lies in some closed disk grown by `EPS`.
    Closed,
}

/// Linear-scan coverage test. See [`SensorIndex`] for the bucketed version.
pub fn covered(p: Point, sensors: &[Disk], mode: CoverageMode) -> bool {
    sensors.iter().any(|s| s.covers(p, mode))
}

/// Where a query point sits relative to a closed region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Counter-clockwise simple polygon with at least three vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplePolygon {
    vertices: Vec<Point>,
}

impl SimplePolygon {
    /// Validates and normalizes to counter-clockwise order.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() >= 2 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(Error::invalid(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(p) = vertices.iter().find(|p| !p.is_finite()) {
            return Err(Error::invalid(format!(
                "non-finite polygon vertex ({}, {})",
                p.x, p.y
            )));
        }
        let area = signed_area(&vertices);
        if area.abs() <= EPS {
            return Err(Error::invalid("polygon has zero area"));
        }
        if area < 0.0 {
            vertices.reverse();
        }
        let poly = SimplePolygon { vertices };
        if let Some((i, j)) = poly.self_intersection() {
            return Err(Error::invalid(format!(
                "polygon edges {i} and {j} intersect"
            )));
        }
        Ok(poly)
    }

    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        SimplePolygon::new(vec![
            Point::new(x0, y0),
            Point::new(x1, y0),
            Point::new(x1, y1),
            Point::new(x0, y1),
        ])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1` (cyclically).
    pub fn edge(&self, i: usize) -> (Point, Point) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        (0..self.vertices.len()).map(move |i| self.edge(i))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn bbox(&self) -> BBox {
        BBox::of_points(&self.vertices)
    }

    pub fn locate(&self, p: Point) -> Location {
        if self
            .edges()
            .any(|(a, b)| point_segment_distance(p, a, b) <= EPS)
        {
            return Location::Boundary;
        }
        if self.crossing_parity(p) {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    /// Inside or on the boundary.
    pub fn contains_closed(&self, p: Point) -> bool {
        self.locate(p) != Location::Outside
    }

    fn crossing_parity(&self, p: Point) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if x > p.x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    fn self_intersection(&self) -> Option<(usize, usize)> {
        let n = self.vertices.len();
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let (a, b) = self.edge(i);
                let (c, d) = self.edge(j);
                let hits = segment_segment_intersections(a, b, c, d);
                let bad = if adjacent {
                    // Adjacent edges may only share their common vertex.
                    let shared = if j == i + 1 { b } else { a };
                    hits.iter().any(|h| !h.approx_eq(shared))
                } else {
                    !hits.is_empty()
                };
                if bad {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// True if the polygons share any point (boundaries touch or one contains the other).
    pub fn touches_or_overlaps(&self, other: &SimplePolygon) -> bool {
        if !self.bbox().expanded(EPS).intersects(&other.bbox()) {
            return false;
        }
        for (a, b) in self.edges() {
            for (c, d) in other.edges() {
                if !segment_segment_intersections(a, b, c, d).is_empty() {
                    return true;
                }
            }
        }
        self.locate(other.vertices[0]) != Location::Outside
            || other.locate(self.vertices[0]) != Location::Outside
    }
}

pub fn signed_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    let mut s = 0.0;
    for i in 0..n {
        s += pts[i].cross(pts[(i + 1) % n]);
    }
    0.5 * s
}

pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    p.dist(a + d * t)
}

/// Result of intersecting two circles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircleContact {
    Disjoint,
    /// Single contact point; zero-width, ignored for hole topology.
    Tangent(Point),
    Crossing([Point; 2]),
    /// Same circle (identical center and radius).
    Coincident,
    /// Distinct radii, same center.
    Concentric,
}

impl CircleContact {
    /// Transversal intersection points only.
    pub fn crossings(&self) -> &[Point] {
        match self {
            CircleContact::Crossing(p) => p,
            _ => &[],
        }
    }

    /// All contact points, tangent included.
    pub fn points(&self) -> Vec<Point> {
        match *self {
            CircleContact::Tangent(p) => vec![p],
            CircleContact::Crossing(p) => p.to_vec(),
            _ => Vec::new(),
        }
    }
}

/// Intersections of two circles. Symmetric in its arguments bit-for-bit:
/// the pair is put into a canonical order before any arithmetic.
pub fn circle_circle(a: &Circle, b: &Circle) -> CircleContact {
    let (a, b) = if a.key() <= b.key() { (a, b) } else { (b, a) };
    let dv = b.center - a.center;
    let d = dv.norm();
    if d <= EPS {
        return if (a.radius - b.radius).abs() <= EPS {
            CircleContact::Coincident
        } else {
            CircleContact::Concentric
        };
    }
    let sum = a.radius + b.radius;
    let diff = (a.radius - b.radius).abs();
    if d > sum + EPS || d < diff - EPS {
        return CircleContact::Disjoint;
    }
    let along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    let base = a.center + dv * (along / d);
    if (d - sum).abs() <= EPS || (d - diff).abs() <= EPS {
        return CircleContact::Tangent(base);
    }
    let h2 = (a.radius - along) * (a.radius + along);
    if h2 <= 0.0 {
        return CircleContact::Tangent(base);
    }
    let h = h2.sqrt();
    if h <= EPS {
        return CircleContact::Tangent(base);
    }
    let off = dv.perp() * (h / d);
    CircleContact::Crossing([base + off, base - off])
}

/// Intersection points of two sensor circles.
pub fn circle_circle_intersections(a: &Disk, b: &Disk) -> CircleContact {
    circle_circle(&a.circle(), &b.circle())
}

/// A point where a circle meets a segment `a + t (b - a)`, `t ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentHit {
    pub t: f64,
    pub point: Point,
    pub tangent: bool,
}

/// Circle/segment intersections ordered by `t`. Endpoints within `EPS` of the
/// circle are snapped to the exact endpoint and reported once.
pub fn circle_segment(c: &Circle, a: Point, b: Point) -> Vec<SegmentHit> {
    let dv = b - a;
    let len2 = dv.dot(dv);
    if len2 == 0.0 {
        return Vec::new();
    }
    let len = len2.sqrt();
    let t0 = (c.center - a).dot(dv) / len2;
    let foot = a + dv * t0;
    let dist = foot.dist(c.center);
    if dist > c.radius + EPS {
        return Vec::new();
    }
    let tol = EPS / len;
    let mut hits = Vec::with_capacity(2);
    let mut push = |t: f64, tangent: bool| {
        if t < -tol || t > 1.0 + tol {
            return;
        }
        let (t, point) = if t.abs() <= tol {
            (0.0, a)
        } else if (t - 1.0).abs() <= tol {
            (1.0, b)
        } else {
            (t, a + dv * t)
        };
        hits.push(SegmentHit { t, point, tangent });
    };
    if (dist - c.radius).abs() <= EPS {
        push(t0, true);
        return hits;
    }
    let half = ((c.radius - dist) * (c.radius + dist)).sqrt() / len;
    push(t0 - half, false);
    push(t0 + half, false);
    if hits.len() == 2 && hits[0].point == hits[1].point {
        hits.pop();
    }
    hits
}

/// Intersections of a sensor circle with the segment `[a, b]`.
pub fn circle_segment_intersections(d: &Disk, a: Point, b: Point) -> Vec<Point> {
    circle_segment(&d.circle(), a, b)
        .into_iter()
        .map(|h| h.point)
        .collect()
}

/// Intersections of two closed segments. Collinear overlaps report the
/// overlap's endpoints.
pub fn segment_segment_intersections(a: Point, b: Point, c: Point, d: Point) -> Vec<Point> {
    let r = b - a;
    let s = d - c;
    let denom = r.cross(s);
    let rl = r.norm();
    let sl = s.norm();
    if rl == 0.0 || sl == 0.0 {
        return Vec::new();
    }
    let qp = c - a;
    if denom.abs() <= 1e-14 * rl * sl {
        // Parallel: only collinear overlaps produce points.
        if qp.cross(r).abs() / rl > EPS {
            return Vec::new();
        }
        let mut out: Vec<Point> = Vec::new();
        let mut add = |p: Point| {
            if !out.iter().any(|q| q.approx_eq(p)) {
                out.push(p);
            }
        };
        for p in [c, d] {
            if point_segment_distance(p, a, b) <= EPS {
                add(p);
            }
        }
        for p in [a, b] {
            if point_segment_distance(p, c, d) <= EPS {
                add(p);
            }
        }
        return out;
    }
    let t = qp.cross(s) / denom;
    let u = qp.cross(r) / denom;
    let tt = EPS / rl;
    let tu = EPS / sl;
    if t < -tt || t > 1.0 + tt || u < -tu || u > 1.0 + tu {
        return Vec::new();
    }
    // Snap to shared endpoints so stitching sees identical coordinates.
    let p = if u.abs() <= tu {
        c
    } else if (u - 1.0).abs() <= tu {
        d
    } else if t.abs() <= tt {
        a
    } else if (t - 1.0).abs() <= tt {
        b
    } else {
        a + r * t
    };
    vec![p]
}

/// Bucket grid over sensor centers for local coverage queries.
#[derive(Debug, Clone)]
pub struct SensorIndex {
    disks: Vec<Disk>,
    cell: f64,
    origin: Point,
    cols: usize,
    rows: usize,
    buckets: Vec<Vec<u32>>,
    max_radius: f64,
}

impl SensorIndex {
    pub fn new(disks: Vec<Disk>) -> Self {
        let max_radius = disks.iter().map(|d| d.radius).fold(0.0, f64::max);
        let bbox = BBox::of_points(disks.iter().map(|d| &d.center));
        let cell = if disks.is_empty() {
            1.0
        } else {
            let extent = bbox.width().max(bbox.height()).max(1e-6);
            // At most ~4 buckets per disk along the larger axis, at least one radius wide.
            max_radius
                .max(extent / (2.0 * (disks.len() as f64).sqrt()))
                .max(1e-6)
        };
        let origin = if disks.is_empty() {
            Point::default()
        } else {
            bbox.min
        };
        let cols = if disks.is_empty() {
            1
        } else {
            ((bbox.width() / cell).floor() as usize) + 1
        };
        let rows = if disks.is_empty() {
            1
        } else {
            ((bbox.height() / cell).floor() as usize) + 1
        };
        let mut buckets = vec![Vec::new(); cols * rows];
        for (i, d) in disks.iter().enumerate() {
            let cx = (((d.center.x - origin.x) / cell).floor() as usize).min(cols - 1);
            let cy = (((d.center.y - origin.y) / cell).floor() as usize).min(rows - 1);
            buckets[cy * cols + cx].push(i as u32);
        }
        SensorIndex {
            disks,
            cell,
            origin,
            cols,
            rows,
            buckets,
            max_radius,
        }
    }

    pub fn disks(&self) -> &[Disk] {
        &self.disks
    }

    pub fn max_radius(&self) -> f64 {
        self.max_radius
    }

    /// Disks whose centers fall in buckets overlapping `bbox` grown by the largest radius.
    pub fn near_bbox(&self, bbox: &BBox) -> impl Iterator<Item = &Disk> + '_ {
        let m = self.max_radius + EPS;
        let lo_x = ((bbox.min.x - m - self.origin.x) / self.cell).floor();
        let hi_x = ((bbox.max.x + m - self.origin.x) / self.cell).floor();
        let lo_y = ((bbox.min.y - m - self.origin.y) / self.cell).floor();
        let hi_y = ((bbox.max.y + m - self.origin.y) / self.cell).floor();
        let clamp = |v: f64, hi: usize| -> Option<usize> {
            if v < 0.0 {
                Some(0)
            } else if v > (hi - 1) as f64 {
                Some(hi - 1)
            } else {
                Some(v as usize)
            }
        };
        let empty = self.disks.is_empty()
            || hi_x < 0.0
            || hi_y < 0.0
            || lo_x > (self.cols - 1) as f64
            || lo_y > (self.rows - 1) as f64;
        let (x0, x1, y0, y1) = if empty {
            (1, 0, 1, 0)
        } else {
            (
                clamp(lo_x, self.cols).unwrap(),
                clamp(hi_x, self.cols).unwrap(),
                clamp(lo_y, self.rows).unwrap(),
                clamp(hi_y, self.rows).unwrap(),
            )
        };
        (y0..=y1)
            .flat_map(move |y| (x0..=x1).map(move |x| y * self.cols + x))
            .flat_map(move |b| {
                self.buckets[b]
                    .iter()
                    .map(move |&i| &self.disks[i as usize])
            })
    }

    pub fn near_point(&self, p: Point) -> impl Iterator<Item = &Disk> + '_ {
        self.near_bbox(&BBox { min: p, max: p })
    }

    pub fn covered(&self, p: Point, mode: CoverageMode) -> bool {
        self.near_point(p).any(|d| d.covers(p, mode))
    }

    pub fn covered_excluding(&self, p: Point, mode: CoverageMode, skip: SensorId) -> bool {
        self.near_point(p)
            .any(|d| d.id != skip && d.covers(p, mode))
    }
}
