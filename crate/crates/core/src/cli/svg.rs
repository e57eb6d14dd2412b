//! SVG rendering of a scenario and its holes: gray holes, black obstacles,
//! solid static sensors and dashed mobile sensors.

use std::f64::consts::PI;
use std::fmt::Write;

use crate::geom::edge::{ArcEdge, EdgeGeometry, Orientation};
use crate::geom::Point;
use crate::hdao::Hole;
use crate::heal::Move;
use crate::scenario::Scenario;

const SCALE: f64 = 4.0;

fn f(v: f64) -> String {
    let s = format!("{:.4}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn arc_to(out: &mut String, r: f64, sweep: f64, orientation: Orientation, end: Point) {
    let large = u8::from(sweep.abs() > PI);
    let positive = u8::from(orientation == Orientation::Ccw);
    let _ = write!(
        out,
        " A{} {} 0 {} {} {} {}",
        f(r),
        f(r),
        large,
        positive,
        f(end.x),
        f(end.y)
    );
}

fn cycle_path(out: &mut String, cycle: &[ArcEdge]) {
    let _ = write!(out, "M{} {}", f(cycle[0].start.x), f(cycle[0].start.y));
    for e in cycle {
        match e.geometry {
            EdgeGeometry::Segment => {
                let _ = write!(out, " L{} {}", f(e.end.x), f(e.end.y));
            }
            EdgeGeometry::Arc {
                radius,
                orientation,
                ..
            } => {
                if e.full_circle {
                    let half = e.point_at(0.5);
                    arc_to(out, radius, PI, orientation, half);
                    arc_to(out, radius, PI, orientation, e.end);
                } else {
                    arc_to(out, radius, e.sweep(), orientation, e.end);
                }
            }
        }
    }
    out.push_str(" Z ");
}

fn polygon_points(pts: &[Point]) -> String {
    pts.iter()
        .map(|p| format!("{},{}", f(p.x), f(p.y)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders the scenario with its holes; `moves` are drawn as arrows.
pub fn render(s: &Scenario, holes: &[Hole], moves: &[Move]) -> String {
    let b = s.roi.bbox();
    let margin = 0.05 * b.width().max(b.height());
    let (x0, y0) = (b.min.x - margin, b.min.y - margin);
    let (w, h) = (b.width() + 2.0 * margin, b.height() + 2.0 * margin);
    let stroke = 0.002 * w.max(h);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        f(w * SCALE),
        f(h * SCALE),
        f(x0),
        f(-(y0 + h)),
        f(w),
        f(h)
    );
    out.push_str("<g transform=\"scale(1,-1)\">\n");
    let _ = writeln!(
        out,
        r#"<polygon points="{}" fill="white" stroke="black" stroke-width="{}"/>"#,
        polygon_points(s.roi.vertices()),
        f(stroke)
    );
    for hole in holes {
        let mut d = String::new();
        for c in hole.cycles() {
            cycle_path(&mut d, c);
        }
        let _ = writeln!(
            out,
            r#"<path d="{}" fill="gray" fill-rule="evenodd" stroke="none"/>"#,
            d.trim_end()
        );
    }
    for o in &s.obstacles {
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="black"/>"#,
            polygon_points(o.vertices())
        );
    }
    for d in &s.sensors {
        let dash = if d.mobile {
            format!(
                r#" stroke-dasharray="{} {}""#,
                f(4.0 * stroke),
                f(3.0 * stroke)
            )
        } else {
            String::new()
        };
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="{}" stroke-width="{}"{}/>"#,
            f(d.center.x),
            f(d.center.y),
            f(d.radius),
            if d.mobile { "blue" } else { "black" },
            f(stroke),
            dash
        );
    }
    for m in moves {
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="red" stroke-width="{}"/>"#,
            f(m.from.x),
            f(m.from.y),
            f(m.to.x),
            f(m.to.y),
            f(stroke)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Disk, SimplePolygon};
    use crate::hdao::hdao;

    #[test]
    fn numbers_are_compact() {
        assert_eq!(f(1.0), "1");
        assert_eq!(f(-0.00001), "0");
        assert_eq!(f(2.50), "2.5");
    }

    #[test]
    fn renders_all_layers() {
        let roi = SimplePolygon::rectangle(0.0, 0.0, 20.0, 20.0).unwrap();
        let sensors = vec![
            Disk::new(1, Point::new(5.0, 5.0), 3.0, false),
            Disk::new(2, Point::new(15.0, 15.0), 2.0, true),
        ];
        let s = Scenario::new(
            0,
            roi.clone(),
            vec![SimplePolygon::rectangle(9.0, 1.0, 11.0, 3.0).unwrap()],
            sensors.clone(),
        )
        .unwrap();
        let holes = hdao(&sensors, &roi).unwrap();
        let svg = render(&s, &holes, &[]);
        assert!(svg.contains("fill=\"gray\""));
        assert!(svg.contains("fill=\"black\""));
        assert!(svg.contains("stroke-dasharray"));
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg, render(&s, &holes, &[]));
    }
}
