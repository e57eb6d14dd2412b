//! Assembles directed boundary edges into closed cycles and groups the cycles
//! into holes.

use std::collections::HashMap;
use std::f64::consts::TAU;

use super::{Hole, HoleKind};
use crate::error::{Error, Result};
use crate::geom::edge::{cycle_area, ArcEdge};
use crate::geom::region::{EdgeCycle, Region};
use crate::geom::{Location, Point, EPS};

/// Cycles with less enclosed area than this are numerical slivers.
pub const MIN_CYCLE_AREA: f64 = 1e-14;

/// Merges points closer than a tolerance into shared nodes.
#[derive(Debug)]
pub(crate) struct NodeMap {
    cell: f64,
    tol: f64,
    grid: HashMap<(i64, i64), Vec<usize>>,
    pub nodes: Vec<Point>,
}

impl NodeMap {
    pub fn new(tol: f64) -> Self {
        NodeMap {
            cell: tol * 100.0,
            tol,
            grid: HashMap::new(),
            nodes: Vec::new(),
        }
    }

    fn key(&self, p: Point) -> (i64, i64) {
        (
            (p.x / self.cell).floor() as i64,
            (p.y / self.cell).floor() as i64,
        )
    }

    pub fn find(&self, p: Point) -> Option<usize> {
        let (kx, ky) = self.key(p);
        let mut best: Option<(usize, f64)> = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.grid.get(&(kx + dx, ky + dy)) {
                    for &i in ids {
                        let d = self.nodes[i].dist(p);
                        if d <= self.tol && best.is_none_or(|(_, bd)| d < bd) {
                            best = Some((i, d));
                        }
                    }
                }
            }
        }
        best.map(|(i, _)| i)
    }

    pub fn intern(&mut self, p: Point) -> usize {
        if let Some(i) = self.find(p) {
            return i;
        }
        let i = self.nodes.len();
        self.nodes.push(p);
        let k = self.key(p);
        self.grid.entry(k).or_default().push(i);
        i
    }
}

/// Clockwise angle from direction `from` to direction `to`, in `(0, 2π]`.
fn clockwise_turn(from: Point, to: Point) -> f64 {
    let a = (from.angle() - to.angle()).rem_euclid(TAU);
    if a < 1e-12 {
        TAU
    } else {
        a
    }
}

/// Traces every edge into closed cycles, turning clockwise-most (relative to
/// the reversed incoming direction) at junctions.
pub fn trace_cycles(edges: &[ArcEdge]) -> Result<Vec<Vec<ArcEdge>>> {
    let mut nodes = NodeMap::new(EPS);
    let ends: Vec<(usize, usize)> = edges
        .iter()
        .map(|e| (nodes.intern(e.start), nodes.intern(e.end)))
        .collect();
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); nodes.nodes.len()];
    for (i, &(s, _)) in ends.iter().enumerate() {
        outgoing[s].push(i);
    }
    let mut used = vec![false; edges.len()];
    let mut cycles = Vec::new();
    for first in 0..edges.len() {
        if used[first] {
            continue;
        }
        used[first] = true;
        let mut cycle = vec![edges[first]];
        let mut cur = first;
        loop {
            let v = ends[cur].1;
            let back = -edges[cur].end_tangent();
            let mut best: Option<(usize, f64, f64)> = None;
            for &cand in &outgoing[v] {
                if used[cand] && cand != first {
                    continue;
                }
                let turn = clockwise_turn(back, edges[cand].start_tangent());
                let curv = edges[cand].curvature();
                let better = match best {
                    None => true,
                    Some((_, bt, bc)) => turn < bt - 1e-12 || (turn <= bt + 1e-12 && curv > bc),
                };
                if better {
                    best = Some((cand, turn, curv));
                }
            }
            let Some((next, _, _)) = best else {
                return Err(Error::Dangling {
                    at: nodes.nodes[v],
                    detail: format!("no edge continues after {:?}", edges[cur].source),
                });
            };
            if next == first {
                break;
            }
            used[next] = true;
            cycle.push(edges[next]);
            cur = next;
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Rotates a cycle so it starts at its lexicographically smallest vertex.
fn canonical_rotation(cycle: &mut [ArcEdge]) {
    if let Some(k) = (0..cycle.len()).min_by(|&a, &b| cycle[a].start.lex_cmp(&cycle[b].start)) {
        cycle.rotate_left(k);
    }
}

fn smallest_vertex(cycle: &[ArcEdge]) -> Point {
    cycle[0].start
}

/// A point of `inner` that is safely away from `outer`'s boundary, classified.
fn inner_within(inner: &[ArcEdge], outer: &[ArcEdge]) -> bool {
    let region = EdgeCycle(outer);
    for f in [0.5, 0.25, 0.75] {
        for e in inner {
            match region.locate(e.point_at(f)) {
                Location::Inside => return true,
                Location::Outside => return false,
                Location::Boundary => {}
            }
        }
    }
    true
}

/// Partitions the edges into cycles and groups them into holes: positive
/// cycles become outer boundaries, negative ones are attached to the
/// smallest outer cycle containing them.
pub fn stitch_holes(edges: Vec<ArcEdge>) -> Result<Vec<Hole>> {
    let mut outers: Vec<(Vec<ArcEdge>, f64)> = Vec::new();
    let mut inners: Vec<(Vec<ArcEdge>, f64)> = Vec::new();
    for mut cycle in trace_cycles(&edges)? {
        let area = cycle_area(&cycle);
        canonical_rotation(&mut cycle);
        if area > MIN_CYCLE_AREA {
            outers.push((cycle, area));
        } else if area < -MIN_CYCLE_AREA {
            inners.push((cycle, area));
        }
    }
    let outer_boxes: Vec<_> = outers.iter().map(|(c, _)| EdgeCycle(c).bbox()).collect();
    let mut holes: Vec<Hole> = outers
        .iter()
        .map(|(c, _)| Hole::new(c.clone(), Vec::new()))
        .collect();
    for (inner, _) in inners {
        let ibox = EdgeCycle(&inner).bbox();
        let host = outers
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                outer_boxes[*i].expanded(EPS).contains(ibox.min)
                    && outer_boxes[*i].expanded(EPS).contains(ibox.max)
            })
            .filter(|(_, (c, _))| inner_within(&inner, c))
            .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
            .map(|(i, _)| i);
        match host {
            Some(i) => holes[i].inner.push(inner),
            None => {
                return Err(Error::Dangling {
                    at: inner[0].start,
                    detail: "inner boundary cycle lies in no hole".into(),
                })
            }
        }
    }
    for h in &mut holes {
        h.inner
            .sort_by(|a, b| smallest_vertex(a).lex_cmp(&smallest_vertex(b)));
        h.refresh();
    }
    holes.retain(|h| h.area > MIN_CYCLE_AREA);
    holes.sort_by(|a, b| smallest_vertex(&a.outer).lex_cmp(&smallest_vertex(&b.outer)));
    Ok(holes)
}

pub(crate) fn kind_of(outer: &[ArcEdge], inner: &[Vec<ArcEdge>]) -> HoleKind {
    if outer
        .iter()
        .chain(inner.iter().flatten())
        .any(|e| e.source.is_environment())
    {
        HoleKind::Open
    } else {
        HoleKind::Closed
    }
}
