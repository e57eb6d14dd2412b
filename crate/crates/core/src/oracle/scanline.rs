//! Area by horizontal scanlines: the measure of each scanline's
//! intersection with the set is integrated over `y` with Gauss–Legendre
//! quadrature between breakpoints where that measure is not smooth.

use std::sync::OnceLock;

use crate::geom::Point;

const NODES: usize = 20;
const MAX_DEPTH: u32 = 12;

/// Nodes and weights on `[-1, 1]`.
fn gauss_legendre() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = NODES;
        let mut xs = vec![0.0; n];
        let mut ws = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            xs[i] = -x;
            xs[n - 1 - i] = x;
            ws[i] = w;
            ws[n - 1 - i] = w;
        }
        (xs, ws)
    })
}

/// `∫ g` over `[lo, hi]` with `y = mid − half·cos θ`, which absorbs
/// square-root behavior at both ends.
fn band<const K: usize>(g: &impl Fn(f64) -> [f64; K], lo: f64, hi: f64) -> [f64; K] {
    let (xs, ws) = gauss_legendre();
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut acc = [0.0; K];
    for (x, w) in xs.iter().zip(ws) {
        let theta = std::f64::consts::FRAC_PI_2 * (x + 1.0);
        let y = mid - half * theta.cos();
        let jac = half * theta.sin() * std::f64::consts::FRAC_PI_2 * w;
        let v = g(y);
        for k in 0..K {
            acc[k] += jac * v[k];
        }
    }
    acc
}

fn adaptive<const K: usize>(
    g: &impl Fn(f64) -> [f64; K],
    lo: f64,
    hi: f64,
    tol: f64,
    depth: u32,
) -> [f64; K] {
    let mid = 0.5 * (lo + hi);
    let whole = band(g, lo, hi);
    let l = band(g, lo, mid);
    let r = band(g, mid, hi);
    let mut split = [0.0; K];
    let mut err: f64 = 0.0;
    for k in 0..K {
        split[k] = l[k] + r[k];
        err = err.max((split[k] - whole[k]).abs());
    }
    if depth == 0 || err <= tol * (hi - lo) {
        return split;
    }
    let a = adaptive(g, lo, mid, tol, depth - 1);
    let b = adaptive(g, mid, hi, tol, depth - 1);
    let mut out = [0.0; K];
    for k in 0..K {
        out[k] = a[k] + b[k];
    }
    out
}

/// Integrates over `[y0, y1]`, split at `breaks`. `setup(lo, hi)` builds the
/// integrand for one band. `tol` bounds the error per unit of height.
pub fn integrate<const K: usize, G, S>(
    y0: f64,
    y1: f64,
    mut breaks: Vec<f64>,
    tol: f64,
    setup: S,
) -> [f64; K]
where
    G: Fn(f64) -> [f64; K],
    S: Fn(f64, f64) -> G,
{
    breaks.retain(|y| *y > y0 && *y < y1);
    breaks.push(y0);
    breaks.push(y1);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-13 * (1.0 + b.abs()));
    let mut total = [0.0; K];
    for w in breaks.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let g = setup(w[0], w[1]);
        let v = adaptive(&g, w[0], w[1], tol, MAX_DEPTH);
        for k in 0..K {
            total[k] += v[k];
        }
    }
    total
}

/// Sorted, disjoint open intervals on a scanline.
pub type Intervals = Vec<(f64, f64)>;

/// Even-odd crossings of a closed polygon with the line at height `y`.
pub fn polygon_span(poly: &[Point], y: f64, out: &mut Intervals) {
    out.clear();
    let mut xs: Vec<f64> = Vec::new();
    let n = poly.len();
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if (a.y > y) != (b.y > y) {
            xs.push(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
        }
    }
    xs.sort_by(f64::total_cmp);
    for pair in xs.chunks_exact(2) {
        out.push((pair[0], pair[1]));
    }
}

/// Union of the chords cut from the given disks.
pub fn disk_span(disks: &[(Point, f64)], y: f64, out: &mut Intervals) {
    out.clear();
    for &(c, r) in disks {
        let dy = y - c.y;
        let h2 = r * r - dy * dy;
        if h2 > 0.0 {
            let h = h2.sqrt();
            out.push((c.x - h, c.x + h));
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Intervals = Vec::with_capacity(out.len());
    for &(a, b) in out.iter() {
        match merged.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => merged.push((a, b)),
        }
    }
    *out = merged;
}

/// Intersection of all disks' chords.
pub fn disk_common(disks: &[(Point, f64)], y: f64) -> Option<(f64, f64)> {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for &(c, r) in disks {
        let dy = y - c.y;
        let h2 = r * r - dy * dy;
        if h2 <= 0.0 {
            return None;
        }
        let h = h2.sqrt();
        lo = lo.max(c.x - h);
        hi = hi.min(c.x + h);
    }
    (lo < hi).then_some((lo, hi))
}

pub fn length(a: &[(f64, f64)]) -> f64 {
    a.iter().map(|(l, r)| r - l).sum()
}

pub fn intersect(a: &[(f64, f64)], b: &[(f64, f64)]) -> Intervals {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let lo = a[i].0.max(b[j].0);
        let hi = a[i].1.min(b[j].1);
        if lo < hi {
            out.push((lo, hi));
        }
        if a[i].1 < b[j].1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

pub fn subtract(a: &[(f64, f64)], b: &[(f64, f64)]) -> Intervals {
    let mut out = Vec::new();
    let mut j = 0;
    for &(mut lo, hi) in a {
        while j < b.len() && b[j].1 <= lo {
            j += 1;
        }
        let mut k = j;
        while k < b.len() && b[k].0 < hi {
            if b[k].0 > lo {
                out.push((lo, b[k].0));
            }
            lo = lo.max(b[k].1);
            k += 1;
        }
        if lo < hi {
            out.push((lo, hi));
        }
    }
    out
}

/// Heights where two circles cross.
pub fn circle_pair_breaks(a: (Point, f64), b: (Point, f64), out: &mut Vec<f64>) {
    let d = b.0 - a.0;
    let dist = d.norm();
    if dist == 0.0 || dist >= a.1 + b.1 || dist <= (a.1 - b.1).abs() {
        return;
    }
    let along = (dist * dist + a.1 * a.1 - b.1 * b.1) / (2.0 * dist);
    let h = (a.1 * a.1 - along * along).max(0.0).sqrt();
    let base = a.0 + d * (along / dist);
    let off = Point::new(-d.y, d.x) * (h / dist);
    out.push(base.y + off.y);
    out.push(base.y - off.y);
}

/// Heights where a circle crosses the polygon's edges.
pub fn circle_polygon_breaks(c: (Point, f64), poly: &[Point], out: &mut Vec<f64>) {
    let n = poly.len();
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        let d = b - a;
        let f = a - c.0;
        let qa = d.dot(d);
        let qb = 2.0 * f.dot(d);
        let qc = f.dot(f) - c.1 * c.1;
        let disc = qb * qb - 4.0 * qa * qc;
        if qa == 0.0 || disc < 0.0 {
            continue;
        }
        let s = disc.sqrt();
        for t in [(-qb - s) / (2.0 * qa), (-qb + s) / (2.0 * qa)] {
            if (0.0..=1.0).contains(&t) {
                out.push(a.y + d.y * t);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let (xs, ws) = gauss_legendre();
        let s: f64 = ws.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let x38: f64 = xs.iter().zip(ws).map(|(x, w)| w * x.powi(38)).sum();
        assert!((x38 - 2.0 / 39.0).abs() < 1e-14);
    }

    #[test]
    fn disk_area_from_chords() {
        let disks = [(Point::new(1.0, 2.0), 3.0)];
        let [a] = integrate(-1.0, 5.0, vec![], 1e-12, |_, _| {
            |y: f64| {
                let mut v = Vec::new();
                disk_span(&disks, y, &mut v);
                [length(&v)]
            }
        });
        assert!((a - 9.0 * PI).abs() < 1e-10, "{a}");
    }

    #[test]
    fn lens_area() {
        let disks = [(Point::new(0.0, 0.0), 1.0), (Point::new(1.0, 0.0), 1.0)];
        let mut breaks = vec![-1.0, 1.0];
        circle_pair_breaks(disks[0], disks[1], &mut breaks);
        let [a] = integrate(-1.0, 1.0, breaks, 1e-12, |_, _| {
            |y: f64| [disk_common(&disks, y).map_or(0.0, |(l, r)| r - l)]
        });
        let expected = 2.0 * PI / 3.0 - 3f64.sqrt() / 2.0;
        assert!((a - expected).abs() < 1e-10, "{a} vs {expected}");
    }

    #[test]
    fn interval_algebra() {
        let a = vec![(0.0, 4.0), (6.0, 10.0)];
        let b = vec![(1.0, 2.0), (3.0, 7.0), (9.0, 12.0)];
        assert_eq!(
            intersect(&a, &b),
            vec![(1.0, 2.0), (3.0, 4.0), (6.0, 7.0), (9.0, 10.0)]
        );
        assert_eq!(subtract(&a, &b), vec![(0.0, 1.0), (2.0, 3.0), (7.0, 9.0)]);
        assert_eq!(length(&subtract(&a, &b)), 4.0);
    }

    #[test]
    fn triangle_span() {
        let tri = [
            Point::new(0.0, 0.0),
            Point::new(4.0, 0.0),
            Point::new(0.0, 4.0),
        ];
        let mut v = Vec::new();
        polygon_span(&tri, 1.0, &mut v);
        assert_eq!(v.len(), 1);
        assert!((v[0].0 - 0.0).abs() < 1e-15 && (v[0].1 - 3.0).abs() < 1e-15);
    }
}
