//! Greedy hole healing: mobile sensors are moved one at a time to the
//! candidate site with the largest net coverage gain.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::awvd::Strategy;
use crate::error::{Error, Result};
use crate::geom::region::{disk_overlap_area, Region};
use crate::geom::{Circle, Disk, Location, Point, SensorId, EPS};
use crate::hdao::Hole;
use crate::hdpo::{detect_with_obstacles, ObstacleSet};
use crate::scenario::Scenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SiteOrigin {
    Centroid,
    DeepestPoint,
    Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CandidateSite {
    pub location: Point,
    pub origin: SiteOrigin,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Move {
    pub sensor: SensorId,
    pub from: Point,
    pub to: Point,
    pub gain: f64,
}

/// Moves in selection order, with covered free-space area before and after.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HealingPlan {
    pub moves: Vec<Move>,
    pub coverage_before: f64,
    pub coverage_after: f64,
}

impl HealingPlan {
    pub fn apply(&self, s: &Scenario) -> Scenario {
        self.moves
            .iter()
            .fold(s.clone(), |acc, m| acc.with_moved(m.sensor, m.to))
    }
}

fn in_holes(holes: &[Hole], p: Point) -> bool {
    holes.iter().any(|h| h.locate(p) == Location::Inside)
}

/// Area centroid of the hole's chord approximation.
fn chord_centroid(h: &Hole) -> Option<Point> {
    let (mut a, mut cx, mut cy) = (0.0, 0.0, 0.0);
    for cycle in h.cycles() {
        let pts: Vec<Point> = cycle
            .iter()
            .flat_map(|e| {
                let mut c = e.chord_points(16);
                c.pop();
                c
            })
            .collect();
        for i in 0..pts.len() {
            let (p, q) = (pts[i], pts[(i + 1) % pts.len()]);
            let w = p.cross(q);
            a += w;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
    }
    (a.abs() > 1e-300).then(|| Point::new(cx / (3.0 * a), cy / (3.0 * a)))
}

/// The sample of a grid over the hole that lies farthest from its boundary.
fn deepest_point(h: &Hole) -> Option<Point> {
    const N: usize = 24;
    let b = h.bbox;
    let mut best: Option<(f64, Point)> = None;
    for j in 0..N {
        for i in 0..N {
            let p = Point::new(
                b.min.x + (i as f64 + 0.5) / N as f64 * b.width(),
                b.min.y + (j as f64 + 0.5) / N as f64 * b.height(),
            );
            if h.locate(p) != Location::Inside {
                continue;
            }
            let depth = h
                .edges()
                .map(|e| e.distance_to(p))
                .fold(f64::INFINITY, f64::min);
            if best.is_none_or(|(d, _)| depth > d) {
                best = Some((depth, p));
            }
        }
    }
    best.map(|(_, p)| p)
}

fn lattice(holes: &[Hole], pitch: f64) -> Vec<Point> {
    let mut cells = BTreeSet::new();
    for (k, h) in holes.iter().enumerate() {
        let b = h.bbox;
        let (i0, i1) = (
            (b.min.x / pitch - 0.5).ceil() as i64,
            (b.max.x / pitch - 0.5).floor() as i64,
        );
        let (j0, j1) = (
            (b.min.y / pitch - 0.5).ceil() as i64,
            (b.max.y / pitch - 0.5).floor() as i64,
        );
        for j in j0..=j1 {
            for i in i0..=i1 {
                let p = Point::new((i as f64 + 0.5) * pitch, (j as f64 + 0.5) * pitch);
                if h.locate(p) == Location::Inside
                    && !holes[..k].iter().any(|o| o.locate(p) == Location::Inside)
                {
                    cells.insert((j, i));
                }
            }
        }
    }
    cells
        .into_iter()
        .map(|(j, i)| Point::new((i as f64 + 0.5) * pitch, (j as f64 + 0.5) * pitch))
        .collect()
}

/// Deterministic candidate sites inside the holes: one centroid (or deepest
/// point) per hole, largest holes first, then an evenly thinned grid filling
/// the rest of the budget. Sorted lexicographically.
pub fn candidate_sites(holes: &[Hole], budget: usize) -> Vec<CandidateSite> {
    let mut out: Vec<CandidateSite> = Vec::new();
    if holes.is_empty() || budget == 0 {
        return out;
    }
    let mut by_area: Vec<&Hole> = holes.iter().collect();
    by_area.sort_by(|a, b| b.area.total_cmp(&a.area));
    for h in by_area {
        if out.len() == budget {
            break;
        }
        let site = match chord_centroid(h).filter(|&c| h.locate(c) == Location::Inside) {
            Some(c) => Some(CandidateSite {
                location: c,
                origin: SiteOrigin::Centroid,
            }),
            None => deepest_point(h).map(|p| CandidateSite {
                location: p,
                origin: SiteOrigin::DeepestPoint,
            }),
        };
        out.extend(site);
    }
    let remaining = budget - out.len();
    if remaining > 0 {
        let area: f64 = holes.iter().map(|h| h.area).sum();
        let mut pitch = (area / remaining as f64).sqrt();
        let mut grid = Vec::new();
        for _ in 0..48 {
            grid = lattice(holes, pitch);
            grid.retain(|p| !out.iter().any(|s| s.location.dist(*p) <= EPS));
            if grid.len() >= remaining {
                break;
            }
            pitch *= 0.8;
        }
        let n = grid.len();
        let take = remaining.min(n);
        out.extend((0..take).map(|k| CandidateSite {
            location: grid[k * n / take],
            origin: SiteOrigin::Grid,
        }));
    }
    out.sort_by(|a, b| a.location.lex_cmp(&b.location));
    out
}

/// Current configuration of a healing run.
pub struct HealState {
    pub scenario: Scenario,
    pub holes: Vec<Hole>,
    obstacles: ObstacleSet,
    strategy: Strategy,
}

impl HealState {
    pub fn new(scenario: Scenario, strategy: Strategy) -> Result<Self> {
        let obstacles = ObstacleSet::new(&scenario.roi, scenario.obstacles.clone())?;
        let holes =
            detect_with_obstacles(&scenario.sensors, &scenario.roi, &obstacles, strategy)?.holes;
        Ok(HealState {
            scenario,
            holes,
            obstacles,
            strategy,
        })
    }

    /// Covered free-space area.
    pub fn coverage(&self) -> f64 {
        self.scenario.free_area() - self.holes.iter().map(|h| h.area).sum::<f64>()
    }

    fn sensor(&self, id: SensorId) -> Result<Disk> {
        self.scenario
            .sensors
            .iter()
            .find(|d| d.id == id)
            .copied()
            .ok_or_else(|| Error::invalid(format!("no sensor with id {id}")))
    }

    /// Area of `circle` left uncovered once `without` is removed.
    fn uncovered_without(&self, circle: Circle, without: SensorId) -> Result<f64> {
        let local: Vec<Disk> = self
            .scenario
            .sensors
            .iter()
            .filter(|d| d.id != without && d.center.dist(circle.center) < d.radius + circle.radius)
            .copied()
            .collect();
        let holes =
            detect_with_obstacles(&local, &self.scenario.roi, &self.obstacles, self.strategy)?
                .holes;
        Ok(disk_overlap_area(circle, &holes))
    }

    /// Area only `sensor` covers at its current position.
    pub fn vacate_loss(&self, sensor: SensorId) -> Result<f64> {
        let d = self.sensor(sensor)?;
        self.uncovered_without(d.circle(), sensor)
    }

    fn gain_with_loss(&self, d: &Disk, site: Point, loss: f64) -> Result<f64> {
        let to = Circle::new(site, d.radius);
        let fresh = if site.dist(d.center) < 2.0 * d.radius {
            self.uncovered_without(to, d.id)?
        } else {
            disk_overlap_area(to, &self.holes)
        };
        Ok(fresh - loss)
    }

    /// Net change in covered area from moving `sensor` to `site`.
    pub fn coverage_gain(&self, sensor: SensorId, site: Point) -> Result<f64> {
        let d = self.sensor(sensor)?;
        self.gain_with_loss(&d, site, self.vacate_loss(sensor)?)
    }

    pub fn apply(&mut self, sensor: SensorId, to: Point) -> Result<()> {
        self.scenario = self.scenario.with_moved(sensor, to);
        self.holes = detect_with_obstacles(
            &self.scenario.sensors,
            &self.scenario.roi,
            &self.obstacles,
            self.strategy,
        )?
        .holes;
        Ok(())
    }
}

/// Smallest gain worth a move.
pub fn min_gain(s: &Scenario) -> f64 {
    1e-9 * s.roi_area().max(1.0)
}

/// Greedy healing over a fixed site set. Each step evaluates every unmoved
/// mobile against every unused site and applies the best pair (ties go to the
/// lower sensor id, then the lexicographically smaller site).
pub fn greedy_hhp(
    s: &Scenario,
    sites: &[CandidateSite],
    strategy: Strategy,
) -> Result<HealingPlan> {
    let mut state = HealState::new(s.clone(), strategy)?;
    let coverage_before = state.coverage();
    let mut order: Vec<Point> = sites.iter().map(|c| c.location).collect();
    order.sort_by(|a, b| a.lex_cmp(b));
    let mut free_sites = vec![true; order.len()];
    let mut mobiles: Vec<SensorId> = s.mobiles().map(|d| d.id).collect();
    mobiles.sort_unstable();
    let threshold = min_gain(s);
    let mut moves = Vec::new();
    let mut total = coverage_before;
    while !mobiles.is_empty() {
        let losses: Vec<f64> = mobiles
            .par_iter()
            .map(|&m| state.vacate_loss(m))
            .collect::<Result<_>>()?;
        let pairs: Vec<(usize, usize)> = (0..mobiles.len())
            .flat_map(|i| {
                (0..order.len())
                    .filter(|&k| free_sites[k])
                    .map(move |k| (i, k))
            })
            .collect();
        let gains: Vec<f64> = pairs
            .par_iter()
            .map(|&(i, k)| {
                let d = state.sensor(mobiles[i])?;
                state.gain_with_loss(&d, order[k], losses[i])
            })
            .collect::<Result<_>>()?;
        let mut best: Option<(usize, f64)> = None;
        for (p, &g) in gains.iter().enumerate() {
            if best.is_none_or(|(_, b)| g > b + 1e-12 * b.abs().max(1.0)) {
                best = Some((p, g));
            }
        }
        let Some((p, gain)) = best.filter(|&(_, g)| g > threshold) else {
            break;
        };
        let (i, k) = pairs[p];
        let id = mobiles.remove(i);
        let from = state.sensor(id)?.center;
        free_sites[k] = false;
        state.apply(id, order[k])?;
        total += gain;
        moves.push(Move {
            sensor: id,
            from,
            to: order[k],
            gain,
        });
    }
    Ok(HealingPlan {
        moves,
        coverage_before,
        coverage_after: total,
    })
}

/// Candidate sites from the scenario's holes followed by greedy healing.
pub fn heal(
    s: &Scenario,
    budget: usize,
    strategy: Strategy,
) -> Result<(Vec<CandidateSite>, HealingPlan)> {
    let state = HealState::new(s.clone(), strategy)?;
    let sites = candidate_sites(&state.holes, budget);
    let plan = greedy_hhp(s, &sites, strategy)?;
    Ok((sites, plan))
}

/// Whether every site is strictly inside some hole.
pub fn sites_inside(holes: &[Hole], sites: &[CandidateSite]) -> bool {
    sites.iter().all(|c| in_holes(holes, c.location))
}
