//! Independent ground truth for the analytic modules: Monte-Carlo coverage,
//! scanline quadrature of coverage areas, and exhaustive healing.
//!
//! Nothing here uses the arc-edge machinery; point tests and areas are
//! computed directly from the scenario's disks and polygons.

pub mod scanline;

use std::collections::HashMap;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{Point, SensorId};
use crate::scenario::Scenario;
use scanline::{
    circle_pair_breaks, circle_polygon_breaks, disk_common, disk_span, integrate, intersect,
    length, polygon_span, subtract,
};

/// Fractions of the RoI by class, estimated from uniform samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageEstimate {
    /// Outside obstacles and inside some closed sensor disk.
    pub covered_fraction: f64,
    /// Outside obstacles and outside every disk.
    pub hole_fraction: f64,
    /// Inside an obstacle and outside every disk.
    pub obstacle_uncovered_fraction: f64,
    /// Inside an obstacle and inside some disk.
    pub obstacle_covered_fraction: f64,
    pub samples: u64,
    pub covered_std_error: f64,
    pub hole_std_error: f64,
    pub obstacle_uncovered_std_error: f64,
    pub seed: u64,
}

/// Closed interval `[lo, hi]` on a scanline.
type Span = (f64, f64);

const CHUNK: u64 = 1 << 16;

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn in_polygon(poly: &[Point], p: Point) -> bool {
    let mut inside = false;
    let n = poly.len();
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if (a.y > p.y) != (b.y > p.y) && p.x < a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x) {
            inside = !inside;
        }
    }
    inside
}

/// Buckets of disks overlapping each cell of a grid over a box.
struct DiskGrid {
    min: Point,
    cell: f64,
    cols: usize,
    rows: usize,
    cells: Vec<Vec<(Point, f64)>>,
}

impl DiskGrid {
    fn new(disks: &[(Point, f64)], min: Point, max: Point) -> Self {
        let w = (max.x - min.x).max(1e-9);
        let h = (max.y - min.y).max(1e-9);
        let target = ((disks.len().max(1) as f64) * 4.0).sqrt().ceil();
        let cell = (w.max(h) / target).max(1e-9);
        let cols = (w / cell).ceil() as usize + 1;
        let rows = (h / cell).ceil() as usize + 1;
        let mut cells = vec![Vec::new(); cols * rows];
        for &(c, r) in disks {
            let x0 = (((c.x - r - min.x) / cell).floor().max(0.0) as usize).min(cols - 1);
            let x1 = (((c.x + r - min.x) / cell).floor().max(0.0) as usize).min(cols - 1);
            let y0 = (((c.y - r - min.y) / cell).floor().max(0.0) as usize).min(rows - 1);
            let y1 = (((c.y + r - min.y) / cell).floor().max(0.0) as usize).min(rows - 1);
            if c.x + r < min.x || c.y + r < min.y || c.x - r > max.x || c.y - r > max.y {
                continue;
            }
            for y in y0..=y1 {
                for x in x0..=x1 {
                    cells[y * cols + x].push((c, r));
                }
            }
        }
        DiskGrid {
            min,
            cell,
            cols,
            rows,
            cells,
        }
    }

    fn covered(&self, p: Point) -> bool {
        let x = (((p.x - self.min.x) / self.cell) as usize).min(self.cols - 1);
        let y = (((p.y - self.min.y) / self.cell) as usize).min(self.rows - 1);
        self.cells[y * self.cols + x].iter().any(|&(c, r)| {
            let d = p - c;
            d.dot(d) <= r * r
        })
    }
}

fn bbox_of(poly: &[Point]) -> (Point, Point) {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in poly {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (lo, hi)
}

/// Monte-Carlo classification of `samples` uniform RoI points (closed
/// disks). Chunk `k` of 65536 samples draws from ChaCha8 stream `k` of
/// `seed`, so the estimate is independent of thread count.
pub fn mc_coverage(s: &Scenario, samples: u64, seed: u64) -> CoverageEstimate {
    let roi: Vec<Point> = s.roi.vertices().to_vec();
    let obstacles: Vec<Vec<Point>> = s.obstacles.iter().map(|o| o.vertices().to_vec()).collect();
    let (lo, hi) = bbox_of(&roi);
    let disks: Vec<(Point, f64)> = s.sensors.iter().map(|d| (d.center, d.radius)).collect();
    let grid = DiskGrid::new(&disks, lo, hi);
    let chunks = samples.div_ceil(CHUNK);
    let counts: Vec<[u64; 4]> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let quota = CHUNK.min(samples - k * CHUNK);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let mut c = [0u64; 4];
            let mut done = 0;
            while done < quota {
                let p = Point::new(
                    lo.x + (hi.x - lo.x) * uniform(&mut rng),
                    lo.y + (hi.y - lo.y) * uniform(&mut rng),
                );
                if !in_polygon(&roi, p) {
                    continue;
                }
                done += 1;
                let blocked = obstacles.iter().any(|o| in_polygon(o, p));
                let covered = grid.covered(p);
                c[match (blocked, covered) {
                    (false, true) => 0,
                    (false, false) => 1,
                    (true, false) => 2,
                    (true, true) => 3,
                }] += 1;
            }
            c
        })
        .collect();
    let mut total = [0u64; 4];
    for c in counts {
        for k in 0..4 {
            total[k] += c[k];
        }
    }
    let n = samples.max(1) as f64;
    let frac = |k: usize| total[k] as f64 / n;
    let se = |f: f64| (f * (1.0 - f) / n).sqrt();
    CoverageEstimate {
        covered_fraction: frac(0),
        hole_fraction: frac(1),
        obstacle_uncovered_fraction: frac(2),
        obstacle_covered_fraction: frac(3),
        samples,
        covered_std_error: se(frac(0)),
        hole_std_error: se(frac(1)),
        obstacle_uncovered_std_error: se(frac(2)),
        seed,
    }
}

/// Areas of the RoI's parts, by scanline quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactAreas {
    pub roi: f64,
    /// Free space (outside obstacles) covered by some disk.
    pub covered: f64,
    /// Free space covered by no disk.
    pub holes: f64,
    pub obstacle_uncovered: f64,
    pub obstacle_covered: f64,
}

struct Field {
    roi: Vec<Point>,
    obstacles: Vec<Vec<Point>>,
    width: f64,
}

impl Field {
    fn of(s: &Scenario) -> Self {
        let roi = s.roi.vertices().to_vec();
        let (lo, hi) = bbox_of(&roi);
        Field {
            roi,
            obstacles: s.obstacles.iter().map(|o| o.vertices().to_vec()).collect(),
            width: hi.x - lo.x,
        }
    }

    fn polygon_breaks(&self, disks: &[(Point, f64)], out: &mut Vec<f64>) {
        out.extend(self.roi.iter().map(|p| p.y));
        for o in &self.obstacles {
            out.extend(o.iter().map(|p| p.y));
        }
        for &d in disks {
            circle_polygon_breaks(d, &self.roi, out);
            for o in &self.obstacles {
                circle_polygon_breaks(d, o, out);
            }
        }
    }

    /// Free-space spans at height `y`, and the obstacle spans.
    fn spans(&self, obstacles: &[usize], y: f64) -> (Vec<Span>, Vec<Span>) {
        let mut roi = Vec::new();
        polygon_span(&self.roi, y, &mut roi);
        let mut blocked = Vec::new();
        let mut tmp = Vec::new();
        for &k in obstacles {
            polygon_span(&self.obstacles[k], y, &mut tmp);
            blocked.extend_from_slice(&tmp);
        }
        blocked.sort_by(|a, b| a.0.total_cmp(&b.0));
        (subtract(&roi, &blocked), blocked)
    }

    fn obstacles_in(&self, lo: f64, hi: f64) -> Vec<usize> {
        (0..self.obstacles.len())
            .filter(|&k| {
                let (a, b) = bbox_of(&self.obstacles[k]);
                b.y > lo && a.y < hi
            })
            .collect()
    }
}

fn disks_in(disks: &[(Point, f64)], lo: f64, hi: f64) -> Vec<(Point, f64)> {
    disks
        .iter()
        .copied()
        .filter(|(c, r)| c.y + r > lo && c.y - r < hi)
        .collect()
}

/// Heights where any two of the disks cross.
fn pair_breaks(disks: &[(Point, f64)], out: &mut Vec<f64>) {
    let mut order: Vec<usize> = (0..disks.len()).collect();
    order.sort_by(|&a, &b| (disks[a].0.x - disks[a].1).total_cmp(&(disks[b].0.x - disks[b].1)));
    for (i, &a) in order.iter().enumerate() {
        let reach = disks[a].0.x + disks[a].1;
        for &b in &order[i + 1..] {
            if disks[b].0.x - disks[b].1 > reach {
                break;
            }
            circle_pair_breaks(disks[a], disks[b], out);
        }
    }
}

fn exact_areas_with(field: &Field, disks: &[(Point, f64)]) -> ExactAreas {
    let (lo, hi) = bbox_of(&field.roi);
    let disks = disks_in(disks, lo.y, hi.y);
    let mut breaks = Vec::new();
    for &(c, r) in &disks {
        breaks.push(c.y - r);
        breaks.push(c.y + r);
    }
    pair_breaks(&disks, &mut breaks);
    field.polygon_breaks(&disks, &mut breaks);
    let [covered, holes, ob_un, ob_cov] =
        integrate(lo.y, hi.y, breaks, 1e-10 * field.width.max(1.0), |a, b| {
            let active = disks_in(&disks, a, b);
            let obstacles = field.obstacles_in(a, b);
            move |y: f64| {
                let (free, blocked) = field.spans(&obstacles, y);
                let mut d = Vec::new();
                disk_span(&active, y, &mut d);
                [
                    length(&intersect(&free, &d)),
                    length(&subtract(&free, &d)),
                    length(&subtract(&blocked, &d)),
                    length(&intersect(&blocked, &d)),
                ]
            }
        });
    ExactAreas {
        roi: covered + holes + ob_un + ob_cov,
        covered,
        holes,
        obstacle_uncovered: ob_un,
        obstacle_covered: ob_cov,
    }
}

pub fn scanline_areas(s: &Scenario) -> ExactAreas {
    let disks: Vec<(Point, f64)> = s.sensors.iter().map(|d| (d.center, d.radius)).collect();
    exact_areas_with(&Field::of(s), &disks)
}

/// Area of free space inside all of `must` and outside every disk of `avoid`.
fn common_uncovered(field: &Field, must: &[(Point, f64)], avoid: &[(Point, f64)]) -> f64 {
    let lo = must
        .iter()
        .map(|(c, r)| c.y - r)
        .fold(f64::NEG_INFINITY, f64::max);
    let hi = must
        .iter()
        .map(|(c, r)| c.y + r)
        .fold(f64::INFINITY, f64::min);
    let x_lo = must
        .iter()
        .map(|(c, r)| c.x - r)
        .fold(f64::NEG_INFINITY, f64::max);
    let x_hi = must
        .iter()
        .map(|(c, r)| c.x + r)
        .fold(f64::INFINITY, f64::min);
    if lo >= hi || x_lo >= x_hi {
        return 0.0;
    }
    let avoid: Vec<(Point, f64)> = avoid
        .iter()
        .copied()
        .filter(|(c, r)| c.y + r > lo && c.y - r < hi && c.x + r > x_lo && c.x - r < x_hi)
        .collect();
    let mut all = must.to_vec();
    all.extend_from_slice(&avoid);
    let mut breaks: Vec<f64> = all.iter().flat_map(|(c, r)| [c.y - r, c.y + r]).collect();
    pair_breaks(&all, &mut breaks);
    field.polygon_breaks(&all, &mut breaks);
    let [a] = integrate(lo, hi, breaks, 1e-11 * (x_hi - x_lo), |a, b| {
        let active = disks_in(&avoid, a, b);
        let obstacles = field.obstacles_in(a, b);
        move |y: f64| {
            let Some(span) = disk_common(must, y) else {
                return [0.0];
            };
            let (free, _) = field.spans(&obstacles, y);
            let mut d = Vec::new();
            disk_span(&active, y, &mut d);
            [length(&subtract(&intersect(&free, &[span]), &d))]
        }
    });
    a
}

/// Best placement of the mobile sensors over a discrete site set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimalHealing {
    /// Covered free-space area of the best assignment.
    pub coverage: f64,
    /// Covered free-space area with every mobile left in place.
    pub current: f64,
    /// Final center of each mobile sensor, by id.
    pub assignment: Vec<(SensorId, Point)>,
    pub evaluated: usize,
}

pub const MAX_EXHAUSTIVE_MOBILES: usize = 3;
pub const MAX_EXHAUSTIVE_SITES: usize = 50;

/// Maximizes covered area over all injective mobile→site assignments, each
/// mobile also allowed to stay put. Coverage of an assignment is the static
/// coverage plus the inclusion–exclusion sum of the mobiles' disks over the
/// area the static sensors leave uncovered.
pub fn exhaustive_optimal_healing(s: &Scenario, sites: &[Point]) -> Result<OptimalHealing> {
    let mobiles: Vec<_> = s.mobiles().copied().collect();
    if mobiles.len() > MAX_EXHAUSTIVE_MOBILES || sites.len() > MAX_EXHAUSTIVE_SITES {
        return Err(Error::LimitExceeded(format!(
            "exhaustive healing handles at most {MAX_EXHAUSTIVE_MOBILES} mobiles and {MAX_EXHAUSTIVE_SITES} sites, got {} and {}",
            mobiles.len(),
            sites.len()
        )));
    }
    let field = Field::of(s);
    let statics: Vec<(Point, f64)> = s
        .sensors
        .iter()
        .filter(|d| !d.mobile)
        .map(|d| (d.center, d.radius))
        .collect();
    let base = exact_areas_with(&field, &statics).covered;
    let stay = sites.len();
    let m = mobiles.len();
    let disk = |i: usize, opt: usize| -> (Point, f64) {
        (
            if opt == stay {
                mobiles[i].center
            } else {
                sites[opt]
            },
            mobiles[i].radius,
        )
    };
    let overlap = |a: (Point, f64), b: (Point, f64)| a.0.dist(b.0) < a.1 + b.1;

    let singles: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            (0..=stay)
                .into_par_iter()
                .map(|o| common_uncovered(&field, &[disk(i, o)], &statics))
                .collect()
        })
        .collect();

    let mut keys2 = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for oa in 0..=stay {
                for ob in 0..=stay {
                    if (oa != ob || oa == stay) && overlap(disk(a, oa), disk(b, ob)) {
                        keys2.push((a, oa, b, ob));
                    }
                }
            }
        }
    }
    let pairs: HashMap<(usize, usize, usize, usize), f64> = keys2
        .par_iter()
        .map(|&(a, oa, b, ob)| {
            (
                (a, oa, b, ob),
                common_uncovered(&field, &[disk(a, oa), disk(b, ob)], &statics),
            )
        })
        .collect();

    let mut keys3 = Vec::new();
    if m == 3 {
        for o0 in 0..=stay {
            for o1 in 0..=stay {
                for o2 in 0..=stay {
                    let distinct = (o0 != o1 || o0 == stay)
                        && (o0 != o2 || o0 == stay)
                        && (o1 != o2 || o1 == stay);
                    // The triple region lies inside every pair region.
                    let live =
                        |k: (usize, usize, usize, usize)| pairs.get(&k).is_some_and(|&a| a > 0.0);
                    if distinct
                        && live((0, o0, 1, o1))
                        && live((0, o0, 2, o2))
                        && live((1, o1, 2, o2))
                    {
                        keys3.push((o0, o1, o2));
                    }
                }
            }
        }
    }
    let triples: HashMap<(usize, usize, usize), f64> = keys3
        .par_iter()
        .map(|&(o0, o1, o2)| {
            (
                (o0, o1, o2),
                common_uncovered(&field, &[disk(0, o0), disk(1, o1), disk(2, o2)], &statics),
            )
        })
        .collect();

    let value = |opts: &[usize]| -> f64 {
        let mut v = base;
        for (i, &o) in opts.iter().enumerate() {
            v += singles[i][o];
        }
        for a in 0..opts.len() {
            for b in a + 1..opts.len() {
                v -= pairs.get(&(a, opts[a], b, opts[b])).copied().unwrap_or(0.0);
            }
        }
        if opts.len() == 3 {
            v += triples
                .get(&(opts[0], opts[1], opts[2]))
                .copied()
                .unwrap_or(0.0);
        }
        v
    };

    let current = value(&vec![stay; m]);
    let mut best = (current, vec![stay; m]);
    let mut evaluated = 0;
    let mut opts = vec![0usize; m];
    loop {
        let injective = (0..m).all(|a| (a + 1..m).all(|b| opts[a] != opts[b] || opts[a] == stay));
        if injective {
            evaluated += 1;
            let v = value(&opts);
            if v > best.0 + 1e-12 * best.0.abs().max(1.0) {
                best = (v, opts.clone());
            }
        }
        // Odometer increment over {0..=stay}^m.
        let mut k = m;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            opts[k] += 1;
            if opts[k] <= stay {
                break;
            }
            opts[k] = 0;
            if k == 0 {
                k = usize::MAX;
                break;
            }
        }
        if m == 0 || k == usize::MAX {
            break;
        }
    }
    if m == 0 {
        evaluated = 1;
    }
    let assignment = mobiles
        .iter()
        .zip(&best.1)
        .map(|(d, &o)| (d.id, disk_pos(sites, o, d.center)))
        .collect();
    Ok(OptimalHealing {
        coverage: best.0,
        current,
        assignment,
        evaluated,
    })
}

fn disk_pos(sites: &[Point], opt: usize, home: Point) -> Point {
    sites.get(opt).copied().unwrap_or(home)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Disk, SimplePolygon};
    use std::f64::consts::PI;

    fn scenario(w: f64, h: f64, sensors: Vec<Disk>, obstacles: Vec<SimplePolygon>) -> Scenario {
        Scenario::new(
            0,
            SimplePolygon::rectangle(0.0, 0.0, w, h).unwrap(),
            obstacles,
            sensors,
        )
        .unwrap()
    }

    #[test]
    fn no_sensors_nothing_covered() {
        let s = scenario(10.0, 10.0, vec![], vec![]);
        let e = mc_coverage(&s, 10_000, 1);
        assert_eq!(e.covered_fraction, 0.0);
        assert_eq!(e.hole_fraction, 1.0);
    }

    #[test]
    fn full_cover() {
        let s = scenario(
            10.0,
            10.0,
            vec![Disk::new(1, Point::new(5.0, 5.0), 100.0, false)],
            vec![],
        );
        assert_eq!(mc_coverage(&s, 10_000, 1).covered_fraction, 1.0);
        let a = scanline_areas(&s);
        assert!((a.covered - 100.0).abs() < 1e-9 && a.holes.abs() < 1e-9);
    }

    #[test]
    fn centered_disk_fraction() {
        let s = scenario(
            20.0,
            20.0,
            vec![Disk::new(1, Point::new(10.0, 10.0), 5.0, false)],
            vec![],
        );
        let e = mc_coverage(&s, 1_000_000, 7);
        let expected = 25.0 * PI / 400.0;
        assert!(
            (e.covered_fraction - expected).abs() <= 3.0 * e.covered_std_error,
            "{e:?}"
        );
        assert_eq!(mc_coverage(&s, 1_000_000, 7), e);
        let a = scanline_areas(&s);
        assert!((a.holes - (400.0 - 25.0 * PI)).abs() < 1e-9);
    }

    #[test]
    fn fractions_partition_the_roi() {
        let ob = SimplePolygon::rectangle(2.0, 2.0, 6.0, 5.0).unwrap();
        let s = scenario(
            10.0,
            10.0,
            vec![Disk::new(1, Point::new(7.0, 5.0), 3.0, false)],
            vec![ob],
        );
        let e = mc_coverage(&s, 200_000, 3);
        let sum = e.covered_fraction
            + e.hole_fraction
            + e.obstacle_uncovered_fraction
            + e.obstacle_covered_fraction;
        assert!((sum - 1.0).abs() < 1e-12);
        let a = scanline_areas(&s);
        assert!((a.roi - 100.0).abs() < 1e-9);
        assert!((a.obstacle_covered + a.obstacle_uncovered - 12.0).abs() < 1e-9);
        assert!((e.hole_fraction * 100.0 - a.holes).abs() <= 3.0 * e.hole_std_error * 100.0);
    }

    #[test]
    fn exhaustive_limits() {
        let mobiles: Vec<Disk> = (0..4)
            .map(|i| Disk::new(i, Point::new(1.0 + i as f64, 1.0), 1.0, true))
            .collect();
        let s = scenario(10.0, 10.0, mobiles, vec![]);
        assert_eq!(
            exhaustive_optimal_healing(&s, &[]).unwrap_err().code(),
            "limit_exceeded"
        );
        let s = scenario(10.0, 10.0, vec![], vec![]);
        let sites = vec![Point::new(1.0, 1.0); 51];
        assert!(exhaustive_optimal_healing(&s, &sites).is_err());
    }

    #[test]
    fn exhaustive_zero_mobiles_is_current() {
        let s = scenario(
            10.0,
            10.0,
            vec![Disk::new(1, Point::new(5.0, 5.0), 2.0, false)],
            vec![],
        );
        let o = exhaustive_optimal_healing(&s, &[Point::new(1.0, 1.0)]).unwrap();
        assert!((o.coverage - 4.0 * PI).abs() < 1e-9);
        assert_eq!(o.coverage, o.current);
    }

    #[test]
    fn exhaustive_single_site() {
        // Mobile staged outside the RoI; one site deep inside the hole.
        let s = scenario(
            20.0,
            20.0,
            vec![Disk::new(1, Point::new(-10.0, -10.0), 2.0, true)],
            vec![],
        );
        let o = exhaustive_optimal_healing(&s, &[Point::new(10.0, 10.0)]).unwrap();
        assert!((o.coverage - 4.0 * PI).abs() < 1e-9);
        assert_eq!(o.assignment, vec![(1, Point::new(10.0, 10.0))]);
        assert_eq!(o.evaluated, 2);
    }

    #[test]
    fn assignment_count_two_mobiles_twelve_sites() {
        let s = scenario(
            40.0,
            40.0,
            vec![
                Disk::new(1, Point::new(5.0, 5.0), 3.0, true),
                Disk::new(2, Point::new(30.0, 30.0), 4.0, true),
            ],
            vec![],
        );
        let sites: Vec<Point> = (0..12)
            .map(|k| Point::new(3.0 + 3.0 * k as f64, 20.0))
            .collect();
        let o = exhaustive_optimal_healing(&s, &sites).unwrap();
        assert_eq!(o.evaluated, 157);
        // Both disks fit inside the RoI without overlapping: nothing beats π(9 + 16).
        assert!((o.coverage - 25.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn inclusion_exclusion_matches_direct_union() {
        let statics = vec![Disk::new(1, Point::new(10.0, 10.0), 4.0, false)];
        let mut sensors = statics.clone();
        sensors.extend([
            Disk::new(2, Point::new(12.0, 12.0), 3.0, true),
            Disk::new(3, Point::new(13.0, 9.0), 3.5, true),
            Disk::new(4, Point::new(9.0, 13.5), 2.5, true),
        ]);
        let s = scenario(
            20.0,
            20.0,
            sensors.clone(),
            vec![SimplePolygon::rectangle(14.0, 2.0, 18.0, 6.0).unwrap()],
        );
        let o = exhaustive_optimal_healing(&s, &[]).unwrap();
        let direct = scanline_areas(&s).covered;
        assert!(
            (o.current - direct).abs() < 1e-8,
            "{} vs {direct}",
            o.current
        );
    }
}
