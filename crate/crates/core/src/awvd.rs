//! Neighbor structure of the additively weighted Voronoi (Apollonius) diagram.
//!
//! Only adjacency and dominance are computed, never the hyperbolic edges
//! themselves. The `Exact` strategy tiles a window around the sensors and,
//! inside each tile, tests the bisector branch of every pair of locally
//! relevant sites against the other local sites.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geom::{BBox, Disk, Point, SensorId, EPS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Exact,
    Bruteforce,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Strategy::Exact),
            "bruteforce" => Ok(Strategy::Bruteforce),
            other => Err(Error::invalid(format!("unknown strategy `{other}`"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Exact => "exact",
            Strategy::Bruteforce => "bruteforce",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AwvdNeighborGraph {
    /// All sensor ids, ascending.
    pub nodes: Vec<SensorId>,
    /// Unordered pairs stored as `(lo, hi)`.
    pub adjacency: BTreeSet<(SensorId, SensorId)>,
    pub dominated: BTreeSet<SensorId>,
}

impl AwvdNeighborGraph {
    pub fn contains(&self, a: SensorId, b: SensorId) -> bool {
        self.adjacency.contains(&(a.min(b), a.max(b)))
    }

    pub fn is_dominated(&self, id: SensorId) -> bool {
        self.dominated.contains(&id)
    }
}

pub fn build_neighbor_graph(sensors: &[Disk], strategy: Strategy) -> Result<AwvdNeighborGraph> {
    let mut ids = HashSet::with_capacity(sensors.len());
    for s in sensors {
        if !ids.insert(s.id) {
            return Err(Error::invalid(format!("duplicate sensor id {}", s.id)));
        }
        if !(s.radius > 0.0 && s.radius.is_finite() && s.center.is_finite()) {
            return Err(Error::invalid(format!(
                "sensor {} has invalid geometry",
                s.id
            )));
        }
    }
    let mut nodes: Vec<SensorId> = sensors.iter().map(|s| s.id).collect();
    nodes.sort_unstable();

    let dominated = dominated_sensors(sensors);
    let mut sites: Vec<Disk> = sensors
        .iter()
        .filter(|s| !dominated.contains(&s.id))
        .copied()
        .collect();
    sites.sort_by_key(|s| s.id);

    let adjacency = match strategy {
        Strategy::Bruteforce => {
            let mut adj = BTreeSet::new();
            for (i, a) in sites.iter().enumerate() {
                for b in &sites[i + 1..] {
                    adj.insert((a.id, b.id));
                }
            }
            adj
        }
        Strategy::Exact => exact_adjacency(&sites)
            .into_iter()
            .map(|(i, j)| {
                let (a, b) = (sites[i].id, sites[j].id);
                (a.min(b), a.max(b))
            })
            .collect(),
    };
    Ok(AwvdNeighborGraph {
        nodes,
        adjacency,
        dominated,
    })
}

/// Sensors whose disk lies inside another's. Of two identical disks the
/// higher id is the dominated one.
pub fn dominated_sensors(sensors: &[Disk]) -> BTreeSet<SensorId> {
    let mut out = BTreeSet::new();
    if sensors.len() < 2 {
        return out;
    }
    let r_max = sensors.iter().map(|s| s.radius).fold(0.0, f64::max);
    let grid = CenterGrid::new(sensors, r_max.max(1e-6));
    for (j, sj) in sensors.iter().enumerate() {
        let probe = BBox {
            min: sj.center,
            max: sj.center,
        }
        .expanded(r_max + EPS);
        let mut buf = Vec::new();
        grid.query(&probe, &mut buf);
        for &i in &buf {
            if i == j {
                continue;
            }
            let si = &sensors[i];
            if si.contains_disk(sj) && (!sj.contains_disk(si) || si.id < sj.id) {
                out.insert(sj.id);
                break;
            }
        }
    }
    out
}

/// Weighted distance `|p − c| − r`.
fn weighted(d: &Disk, p: Point) -> f64 {
    p.dist(d.center) - d.radius
}

fn min_dist(b: &BBox, p: Point) -> f64 {
    let dx = (b.min.x - p.x).max(0.0).max(p.x - b.max.x);
    let dy = (b.min.y - p.y).max(0.0).max(p.y - b.max.y);
    dx.hypot(dy)
}

fn max_dist(b: &BBox, p: Point) -> f64 {
    let dx = (p.x - b.min.x).abs().max((b.max.x - p.x).abs());
    let dy = (p.y - b.min.y).abs().max((b.max.y - p.y).abs());
    dx.hypot(dy)
}

const MAX_LOCAL: usize = 12;
const MAX_DEPTH: u32 = 8;

fn exact_adjacency(sites: &[Disk]) -> BTreeSet<(usize, usize)> {
    let n = sites.len();
    let mut found = BTreeSet::new();
    if n < 2 {
        return found;
    }
    if n == 2 {
        found.insert((0, 1));
        return found;
    }
    let mut window = sites
        .iter()
        .fold(BBox::empty(), |b, s| b.union(&s.circle().bbox()));
    let margin = 0.05 * window.width().max(window.height()) + 1e-3;
    window = window.expanded(margin);
    let side = (window.width() * window.height() / n as f64).sqrt();
    let r_max = sites.iter().map(|s| s.radius).fold(0.0, f64::max);
    let grid = CenterGrid::new(sites, side);

    let nx = (window.width() / side).ceil().max(1.0) as usize;
    let ny = (window.height() / side).ceil().max(1.0) as usize;
    let mut stack: Vec<(BBox, u32)> = Vec::with_capacity(nx * ny);
    for iy in (0..ny).rev() {
        for ix in (0..nx).rev() {
            let min = Point::new(
                window.min.x + ix as f64 * side,
                window.min.y + iy as f64 * side,
            );
            let max = Point::new(
                (min.x + side).min(window.max.x),
                (min.y + side).min(window.max.y),
            );
            stack.push((BBox { min, max }, 0));
        }
    }

    let mut buf = Vec::new();
    let mut local = Vec::new();
    while let Some((tile, depth)) = stack.pop() {
        local_sites(sites, &grid, &tile, side, r_max, &mut buf, &mut local);
        if local.len() > MAX_LOCAL && depth < MAX_DEPTH {
            let c = Point::new(
                0.5 * (tile.min.x + tile.max.x),
                0.5 * (tile.min.y + tile.max.y),
            );
            for (lo, hi) in [
                (tile.min, c),
                (Point::new(c.x, tile.min.y), Point::new(tile.max.x, c.y)),
                (Point::new(tile.min.x, c.y), Point::new(c.x, tile.max.y)),
                (c, tile.max),
            ] {
                stack.push((BBox { min: lo, max: hi }, depth + 1));
            }
            continue;
        }
        for (x, &a) in local.iter().enumerate() {
            for &b in &local[x + 1..] {
                let key = (a.min(b), a.max(b));
                if !found.contains(&key) && bisector_visible(sites, a, b, &local, &tile) {
                    found.insert(key);
                }
            }
        }
    }
    found
}

/// Sites that can be weighted-nearest somewhere in `tile`.
fn local_sites(
    sites: &[Disk],
    grid: &CenterGrid,
    tile: &BBox,
    side: f64,
    r_max: f64,
    buf: &mut Vec<usize>,
    out: &mut Vec<usize>,
) {
    let mut reach = side;
    loop {
        grid.query(&tile.expanded(reach), buf);
        if !buf.is_empty() {
            break;
        }
        reach *= 2.0;
    }
    let mut best_ub = buf
        .iter()
        .map(|&k| max_dist(tile, sites[k].center) - sites[k].radius)
        .fold(f64::INFINITY, f64::min);
    grid.query(&tile.expanded(best_ub + r_max + EPS), buf);
    best_ub = buf
        .iter()
        .map(|&k| max_dist(tile, sites[k].center) - sites[k].radius)
        .fold(best_ub, f64::min);
    out.clear();
    out.extend(
        buf.iter()
            .copied()
            .filter(|&k| min_dist(tile, sites[k].center) - sites[k].radius <= best_ub + EPS),
    );
    out.sort_unstable();
}

/// Whether a stretch of positive length of the `a`/`b` bisector inside
/// `tile` is weighted-closest to `a` and `b`.
fn bisector_visible(sites: &[Disk], a: usize, b: usize, local: &[usize], tile: &BBox) -> bool {
    let (sa, sb) = (&sites[a], &sites[b]);
    let dvec = sb.center - sa.center;
    let dist = dvec.norm();
    let c = 0.5 * dist;
    let delta = sa.radius - sb.radius;
    let beta2 = c * c - 0.25 * delta * delta;
    if dist <= 0.0 || beta2 <= 0.0 {
        return false;
    }
    let beta = beta2.sqrt();
    let e1 = dvec * (1.0 / dist);
    let e2 = e1.perp();
    let m = sa.center.lerp(sb.center, 0.5);
    let rsum = 0.5 * (sa.radius + sb.radius);
    let at = |t: f64| m + e1 * (0.5 * delta * t.cosh()) + e2 * (beta * t.sinh());

    let reach = m.dist(Point::new(
        0.5 * (tile.min.x + tile.max.x),
        0.5 * (tile.min.y + tile.max.y),
    )) + tile.width()
        + tile.height();
    let t_max = (reach / beta).asinh() + 1.0;
    let mut ts = vec![-t_max, t_max];

    // Tile sides: n·p ≤ h.
    for (nrm, h) in [
        (Point::new(1.0, 0.0), tile.max.x),
        (Point::new(-1.0, 0.0), -tile.min.x),
        (Point::new(0.0, 1.0), tile.max.y),
        (Point::new(0.0, -1.0), -tile.min.y),
    ] {
        push_roots(
            nrm.dot(e1) * 0.5 * delta,
            nrm.dot(e2) * beta,
            nrm.dot(m) - h,
            t_max,
            &mut ts,
        );
    }
    for &k in local {
        if k == a || k == b {
            continue;
        }
        let q = sites[k].center - m;
        let (qx, qy) = (q.dot(e1), q.dot(e2));
        let g = sites[k].radius - rsum;
        push_roots(
            -(delta * qx + 2.0 * c * g),
            -2.0 * beta * qy,
            q.dot(q) - g * g - beta2,
            t_max,
            &mut ts,
        );
        let x0 = -g / c;
        if x0 >= 1.0 {
            let t = x0.acosh();
            ts.extend([t, -t]);
        }
    }
    ts.retain(|t| t.abs() <= t_max);
    ts.sort_by(f64::total_cmp);

    let inside = tile.expanded(EPS);
    for w in ts.windows(2) {
        if w[1] - w[0] <= 1e-14 {
            continue;
        }
        let t = 0.5 * (w[0] + w[1]);
        let p = at(t);
        if !inside.contains(p) {
            continue;
        }
        let wd = c * t.cosh() - rsum;
        if local
            .iter()
            .all(|&k| k == a || k == b || weighted(&sites[k], p) >= wd - EPS)
        {
            return true;
        }
    }
    false
}

/// Roots `t` of `A cosh t + B sinh t + C = 0`.
fn push_roots(a: f64, b: f64, c: f64, t_max: f64, out: &mut Vec<f64>) {
    // With u = e^t: (A+B)u² + 2Cu + (A−B) = 0.
    let qa = a + b;
    let qb = 2.0 * c;
    let qc = a - b;
    let scale = a.abs() + b.abs() + c.abs();
    if scale == 0.0 {
        return;
    }
    let mut push = |u: f64| {
        if u > 0.0 && u.is_finite() {
            let t = u.ln();
            if t.abs() <= t_max {
                out.push(t);
            }
        }
    };
    if qa.abs() <= 1e-15 * scale {
        if qb != 0.0 {
            push(-qc / qb);
        }
        return;
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return;
    }
    let sq = disc.sqrt();
    let q = -0.5 * (qb + qb.signum() * sq);
    if q != 0.0 {
        push(q / qa);
        push(qc / q);
    } else {
        push(0.0);
    }
}

/// Uniform bucket grid over disk centers.
struct CenterGrid {
    origin: Point,
    cell: f64,
    cols: usize,
    rows: usize,
    buckets: Vec<Vec<usize>>,
}

impl CenterGrid {
    fn new(disks: &[Disk], cell: f64) -> Self {
        let bbox = BBox::of_points(disks.iter().map(|d| &d.center));
        let cell = cell.max(1e-9);
        let cols = (bbox.width() / cell).floor() as usize + 1;
        let rows = (bbox.height() / cell).floor() as usize + 1;
        let mut buckets = vec![Vec::new(); cols * rows];
        for (i, d) in disks.iter().enumerate() {
            let cx = (((d.center.x - bbox.min.x) / cell) as usize).min(cols - 1);
            let cy = (((d.center.y - bbox.min.y) / cell) as usize).min(rows - 1);
            buckets[cy * cols + cx].push(i);
        }
        CenterGrid {
            origin: bbox.min,
            cell,
            cols,
            rows,
            buckets,
        }
    }

    /// Indices of centers inside `b`, ascending bucket order.
    fn query(&self, b: &BBox, out: &mut Vec<usize>) {
        out.clear();
        let span = |lo: f64, hi: f64, o: f64, n: usize| -> Option<(usize, usize)> {
            let a = ((lo - o) / self.cell).floor();
            let z = ((hi - o) / self.cell).floor();
            if z < 0.0 || a > (n - 1) as f64 {
                return None;
            }
            Some((a.max(0.0) as usize, (z as usize).min(n - 1)))
        };
        let (Some((x0, x1)), Some((y0, y1))) = (
            span(b.min.x, b.max.x, self.origin.x, self.cols),
            span(b.min.y, b.max.y, self.origin.y, self.rows),
        ) else {
            return;
        };
        for y in y0..=y1 {
            for x in x0..=x1 {
                out.extend(self.buckets[y * self.cols + x].iter().copied());
            }
        }
    }
}
