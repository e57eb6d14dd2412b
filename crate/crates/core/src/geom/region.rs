//! Point location in arc-bounded regions and disk/region overlap areas.

use super::edge::{edge_intersections, ArcEdge, Orientation};
use super::{BBox, Circle, Location, Point, EPS};

/// A closed planar region bounded by oriented arc/segment cycles
/// (interior on the left of every edge).
pub trait Region {
    fn for_each_edge(&self, f: &mut dyn FnMut(&ArcEdge));

    fn bbox(&self) -> BBox;

    fn locate(&self, p: Point) -> Location {
        if !self.bbox().expanded(EPS).contains(p) {
            return Location::Outside;
        }
        let mut on_boundary = false;
        let mut angle = 0.0;
        self.for_each_edge(&mut |e| {
            if !on_boundary {
                if e.distance_to(p) <= EPS {
                    on_boundary = true;
                } else {
                    angle += e.winding_angle(p);
                }
            }
        });
        if on_boundary {
            Location::Boundary
        } else if (angle / std::f64::consts::TAU).round() as i32 != 0 {
            Location::Inside
        } else {
            Location::Outside
        }
    }
}

/// A single closed cycle viewed as a region.
#[derive(Debug, Clone, Copy)]
pub struct EdgeCycle<'a>(pub &'a [ArcEdge]);

impl Region for EdgeCycle<'_> {
    fn for_each_edge(&self, f: &mut dyn FnMut(&ArcEdge)) {
        self.0.iter().for_each(f);
    }

    fn bbox(&self) -> BBox {
        self.0.iter().fold(BBox::empty(), |b, e| b.union(&e.bbox()))
    }
}

/// Location of `p` in the union of interior-disjoint regions.
pub fn locate_in_union<R: Region>(regions: &[R], p: Point) -> Location {
    let mut result = Location::Outside;
    for r in regions {
        match r.locate(p) {
            Location::Inside => return Location::Inside,
            Location::Boundary => result = Location::Boundary,
            Location::Outside => {}
        }
    }
    result
}

/// Area of `disk ∩ (union of regions)`, integrated over the boundary pieces
/// of the intersection without re-stitching them into cycles.
pub fn disk_overlap_area<R: Region>(circle: Circle, regions: &[R]) -> f64 {
    let dbox = circle.bbox();
    let relevant: Vec<&R> = regions
        .iter()
        .filter(|r| r.bbox().intersects(&dbox))
        .collect();
    if relevant.is_empty() {
        return 0.0;
    }
    let rim = ArcEdge::full_circle(
        circle,
        Orientation::Ccw,
        circle.point_at(0.0),
        super::edge::EdgeSource::Roi { edge: usize::MAX },
    );
    let mut cuts: Vec<Point> = Vec::new();
    let mut total = 0.0;
    for r in &relevant {
        r.for_each_edge(&mut |e| {
            if !e.bbox().intersects(&dbox) {
                return;
            }
            let pts = edge_intersections(&rim, e);
            for piece in e.split_at(&pts) {
                if piece.midpoint().dist(circle.center) < circle.radius - EPS {
                    total += piece.area_term();
                }
            }
            cuts.extend(pts);
        });
    }
    for piece in rim.split_at(&cuts) {
        let m = piece.midpoint();
        let mut inside = false;
        let mut shared: Option<bool> = None;
        for r in &relevant {
            match r.locate(m) {
                Location::Inside => inside = true,
                Location::Boundary => {
                    // Coincident boundaries count once, and only when both
                    // regions lie on the same side.
                    let t = piece.tangent_at(m);
                    r.for_each_edge(&mut |e| {
                        if shared.is_none() && e.distance_to(m) <= EPS {
                            shared = Some(e.tangent_at(m).dot(t) > 0.0);
                        }
                    });
                }
                Location::Outside => {}
            }
            if inside {
                break;
            }
        }
        if inside || shared == Some(true) {
            total += piece.area_term();
        }
    }
    total.max(0.0)
}

#[cfg(test)]
mod tests {
    use super::super::edge::EdgeSource;
    use super::*;
    use std::f64::consts::PI;

    struct Cycles(Vec<Vec<ArcEdge>>);

    impl Region for Cycles {
        fn for_each_edge(&self, f: &mut dyn FnMut(&ArcEdge)) {
            self.0.iter().flatten().for_each(f);
        }
        fn bbox(&self) -> BBox {
            self.0
                .iter()
                .flatten()
                .fold(BBox::empty(), |b, e| b.union(&e.bbox()))
        }
    }

    fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Vec<ArcEdge> {
        let p = [
            Point::new(x0, y0),
            Point::new(x1, y0),
            Point::new(x1, y1),
            Point::new(x0, y1),
        ];
        (0..4)
            .map(|i| ArcEdge::segment(p[i], p[(i + 1) % 4], EdgeSource::Roi { edge: i }))
            .collect()
    }

    #[test]
    fn disk_inside_big_square() {
        let r = Cycles(vec![rect(0.0, 0.0, 10.0, 10.0)]);
        let a = disk_overlap_area(Circle::new(Point::new(5.0, 5.0), 1.0), &[r]);
        assert!((a - PI).abs() < 1e-12);
    }

    #[test]
    fn disk_on_half_plane_edge() {
        let r = Cycles(vec![rect(0.0, 0.0, 10.0, 10.0)]);
        let a = disk_overlap_area(Circle::new(Point::new(0.0, 5.0), 1.0), &[r]);
        assert!((a - PI / 2.0).abs() < 1e-12, "{a}");
    }

    #[test]
    fn disk_outside_region() {
        let r = Cycles(vec![rect(0.0, 0.0, 10.0, 10.0)]);
        assert_eq!(
            disk_overlap_area(Circle::new(Point::new(20.0, 5.0), 1.0), &[r]),
            0.0
        );
    }

    #[test]
    fn disk_over_region_with_circular_island() {
        let island = Circle::new(Point::new(5.0, 5.0), 1.0);
        let r = Cycles(vec![
            rect(0.0, 0.0, 10.0, 10.0),
            vec![ArcEdge::full_circle(
                island,
                Orientation::Cw,
                island.point_at(0.0),
                EdgeSource::Sensor { id: 1 },
            )],
        ]);
        assert_eq!(r.locate(Point::new(5.0, 5.0)), Location::Outside);
        assert_eq!(r.locate(Point::new(6.0, 5.0)), Location::Boundary);
        assert_eq!(r.locate(Point::new(8.0, 5.0)), Location::Inside);
        let a = disk_overlap_area(
            Circle::new(Point::new(5.0, 5.0), 2.0),
            std::slice::from_ref(&r),
        );
        assert!((a - 3.0 * PI).abs() < 1e-12, "{a}");
        // Disk identical to the island: boundaries coincide with opposite sides.
        let a = disk_overlap_area(island, std::slice::from_ref(&r));
        assert!(a.abs() < 1e-12, "{a}");
    }

    #[test]
    fn coincident_boundary_same_side_counts_once() {
        let c = Circle::new(Point::new(0.0, 0.0), 1.0);
        let r = Cycles(vec![vec![ArcEdge::full_circle(
            c,
            Orientation::Ccw,
            c.point_at(1.0),
            EdgeSource::Sensor { id: 1 },
        )]]);
        let a = disk_overlap_area(c, &[r]);
        assert!((a - PI).abs() < 1e-12, "{a}");
    }
}
