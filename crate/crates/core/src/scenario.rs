//! Scenario model, JSON file format and seeded generators.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{circle_segment, Disk, Location, Point, SimplePolygon};

pub const FORMAT_VERSION: u32 = 1;

/// Sensors deployed over a polygonal region of interest with obstacles.
/// All lengths are meters.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub seed: u64,
    pub roi: SimplePolygon,
    pub obstacles: Vec<SimplePolygon>,
    pub sensors: Vec<Disk>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SensorRecord {
    id: u32,
    x: f64,
    y: f64,
    r: f64,
    mobile: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    version: u32,
    seed: u64,
    roi: Vec<[f64; 2]>,
    obstacles: Vec<Vec<[f64; 2]>>,
    sensors: Vec<SensorRecord>,
}

fn to_pairs(poly: &SimplePolygon) -> Vec<[f64; 2]> {
    poly.vertices().iter().map(|p| [p.x, p.y]).collect()
}

fn from_pairs(v: &[[f64; 2]]) -> Vec<Point> {
    v.iter().map(|&[x, y]| Point::new(x, y)).collect()
}

impl Scenario {
    pub fn new(
        seed: u64,
        roi: SimplePolygon,
        obstacles: Vec<SimplePolygon>,
        sensors: Vec<Disk>,
    ) -> Result<Self> {
        let s = Scenario {
            seed,
            roi,
            obstacles,
            sensors,
        };
        s.validate()?;
        Ok(s)
    }

    /// Checks sensor, obstacle and RoI invariants. Mobile sensors may be
    /// staged outside the RoI; static ones must lie in it.
    pub fn validate(&self) -> Result<()> {
        let mut ids = std::collections::HashSet::new();
        for s in &self.sensors {
            if !ids.insert(s.id) {
                return Err(Error::invalid(format!("duplicate sensor id {}", s.id)));
            }
            if !s.center.is_finite() || !(s.radius.is_finite() && s.radius > 0.0) {
                return Err(Error::invalid(format!(
                    "sensor {} needs a finite center and positive radius",
                    s.id
                )));
            }
            if !s.mobile && !self.roi.contains_closed(s.center) {
                return Err(Error::invalid(format!(
                    "static sensor {} lies outside the RoI",
                    s.id
                )));
            }
            if let Some(k) = self
                .obstacles
                .iter()
                .position(|o| o.contains_closed(s.center))
            {
                return Err(Error::invalid(format!(
                    "sensor {} lies on obstacle {k}",
                    s.id
                )));
            }
        }
        validate_obstacles(&self.roi, &self.obstacles)
    }

    pub fn roi_area(&self) -> f64 {
        self.roi.area()
    }

    /// RoI area not occupied by obstacles.
    pub fn free_area(&self) -> f64 {
        self.roi.area() - self.obstacles.iter().map(SimplePolygon::area).sum::<f64>()
    }

    pub fn mobiles(&self) -> impl Iterator<Item = &Disk> {
        self.sensors.iter().filter(|s| s.mobile)
    }

    pub fn to_json(&self) -> String {
        let file = ScenarioFile {
            version: FORMAT_VERSION,
            seed: self.seed,
            roi: to_pairs(&self.roi),
            obstacles: self.obstacles.iter().map(to_pairs).collect(),
            sensors: self
                .sensors
                .iter()
                .map(|s| SensorRecord {
                    id: s.id,
                    x: s.center.x,
                    y: s.center.y,
                    r: s.radius,
                    mobile: s.mobile,
                })
                .collect(),
        };
        serde_json::to_string(&file).expect("scenario serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ScenarioFile = serde_json::from_str(text)?;
        if file.version != FORMAT_VERSION {
            return Err(Error::invalid(format!(
                "unsupported scenario version {}",
                file.version
            )));
        }
        let roi = SimplePolygon::new(from_pairs(&file.roi))?;
        let obstacles = file
            .obstacles
            .iter()
            .map(|o| SimplePolygon::new(from_pairs(o)))
            .collect::<Result<Vec<_>>>()?;
        let sensors = file
            .sensors
            .iter()
            .map(|s| Disk::new(s.id, Point::new(s.x, s.y), s.r, s.mobile))
            .collect();
        Scenario::new(file.seed, roi, obstacles, sensors)
    }

    /// Same scenario with sensor `id` moved to `to`.
    pub fn with_moved(&self, id: u32, to: Point) -> Scenario {
        let mut s = self.clone();
        for d in &mut s.sensors {
            if d.id == id {
                d.center = to;
            }
        }
        s
    }
}

/// Obstacles must lie in the RoI (touching its boundary is fine) and be
/// pairwise disjoint, touching included.
pub fn validate_obstacles(roi: &SimplePolygon, obstacles: &[SimplePolygon]) -> Result<()> {
    for (k, o) in obstacles.iter().enumerate() {
        if o.vertices().iter().any(|&v| !roi.contains_closed(v)) {
            return Err(Error::invalid(format!(
                "obstacle {k} extends outside the RoI"
            )));
        }
        for (i, (a, b)) in o.edges().enumerate() {
            let mid = a.lerp(b, 0.5);
            if roi.locate(mid) == Location::Outside {
                return Err(Error::invalid(format!(
                    "obstacle {k} edge {i} leaves the RoI"
                )));
            }
        }
        for (j, p) in obstacles[..k].iter().enumerate() {
            if o.touches_or_overlaps(p) {
                return Err(Error::invalid(format!("obstacles {j} and {k} intersect")));
            }
        }
    }
    Ok(())
}

/// Seeded source of uniform draws.
///
/// Stream format version 1: ChaCha8 seeded with `seed_from_u64`, and each
/// uniform double is `(next_u64 >> 11) · 2⁻⁵³`.
pub struct ScenarioRng(ChaCha8Rng);

impl ScenarioRng {
    pub fn new(seed: u64) -> Self {
        ScenarioRng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }
}

/// Parameters of a uniform random deployment.
#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub width: f64,
    pub height: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub mobile_fraction: f64,
    pub obstacles: Vec<SimplePolygon>,
    pub seed: u64,
}

impl GenParams {
    pub fn new(n: usize, width: f64, height: f64, r_min: f64, r_max: f64, seed: u64) -> Self {
        GenParams {
            n,
            width,
            height,
            r_min,
            r_max,
            mobile_fraction: 0.0,
            obstacles: Vec::new(),
            seed,
        }
    }
}

const MAX_ATTEMPTS: usize = 10_000;

/// Uniform centers over the RoI minus obstacles and uniform radii; the first
/// `⌊mobile_fraction · n⌋` sensors are mobile. Ids start at 1.
pub fn generate(p: &GenParams) -> Result<Scenario> {
    if !(p.r_min > 0.0 && p.r_min <= p.r_max && p.r_max.is_finite()) {
        return Err(Error::invalid("radii must satisfy 0 < r_min <= r_max"));
    }
    if !(p.width > 0.0 && p.height > 0.0) {
        return Err(Error::invalid("RoI dimensions must be positive"));
    }
    if !(0.0..=1.0).contains(&p.mobile_fraction) {
        return Err(Error::invalid("mobile fraction must lie in [0, 1]"));
    }
    let roi = SimplePolygon::rectangle(0.0, 0.0, p.width, p.height)?;
    validate_obstacles(&roi, &p.obstacles)?;
    let mut rng = ScenarioRng::new(p.seed);
    let mobiles = (p.mobile_fraction * p.n as f64).floor() as usize;
    let mut sensors = Vec::with_capacity(p.n);
    for i in 0..p.n {
        let mut attempts = 0;
        let center = loop {
            let c = Point::new(rng.range(0.0, p.width), rng.range(0.0, p.height));
            if !p.obstacles.iter().any(|o| o.contains_closed(c)) {
                break c;
            }
            attempts += 1;
            if attempts >= MAX_ATTEMPTS {
                return Err(Error::invalid("obstacles leave no room for sensor centers"));
            }
        };
        let r = if p.r_min == p.r_max {
            p.r_min
        } else {
            rng.range(p.r_min, p.r_max)
        };
        sensors.push(Disk::new(i as u32 + 1, center, r, i < mobiles));
    }
    Scenario::new(p.seed, roi, p.obstacles.clone(), sensors)
}

/// Random pairwise-separated axis-aligned rectangles inside a `width × height`
/// RoI, sides in `[min_side, max_side]`, at least `gap` apart and from the border.
pub fn random_obstacles(
    count: usize,
    width: f64,
    height: f64,
    min_side: f64,
    max_side: f64,
    gap: f64,
    seed: u64,
) -> Result<Vec<SimplePolygon>> {
    let mut rng = ScenarioRng::new(seed ^ 0x6f62_7374_6163_6c65);
    let mut boxes: Vec<(f64, f64, f64, f64)> = Vec::with_capacity(count);
    let mut attempts = 0;
    while boxes.len() < count {
        attempts += 1;
        if attempts > MAX_ATTEMPTS {
            return Err(Error::invalid("cannot place the requested obstacles"));
        }
        let w = rng.range(min_side, max_side);
        let h = rng.range(min_side, max_side);
        if w + 2.0 * gap >= width || h + 2.0 * gap >= height {
            continue;
        }
        let x0 = rng.range(gap, width - gap - w);
        let y0 = rng.range(gap, height - gap - h);
        let b = (x0, y0, x0 + w, y0 + h);
        let clear = boxes
            .iter()
            .all(|o| b.0 > o.2 + gap || o.0 > b.2 + gap || b.1 > o.3 + gap || o.1 > b.3 + gap);
        if clear {
            boxes.push(b);
        }
    }
    boxes
        .into_iter()
        .map(|(a, b, c, d)| SimplePolygon::rectangle(a, b, c, d))
        .collect()
}

/// Apex angle of the stressor cap.
const CAP_ANGLE: f64 = 2.0 * std::f64::consts::FRAC_PI_3;

/// A cap-shaped obstacle whose `z` edges each cross all `n` sensor circles
/// twice, giving exactly `2·n·z` circle/edge intersections.
///
/// The obstacle's vertices lie on an arc of radius `ρ` around `O`; the
/// sensors are equal circles centered near `O` whose radius lies strictly
/// between `ρ` and the distance from `O` to every edge.
pub fn lower_bound_stressor(n: usize, z: usize) -> Result<Scenario> {
    if n == 0 || z < 3 {
        return Err(Error::invalid("stressor needs n >= 1 and z >= 3"));
    }
    let rho = 50.0;
    let origin = Point::new(100.0, 60.0);
    let start = std::f64::consts::FRAC_PI_2 - CAP_ANGLE / 2.0;
    let vertices: Vec<Point> = (0..z)
        .map(|k| {
            let a = start + CAP_ANGLE * k as f64 / (z - 1) as f64;
            origin + Point::new(a.cos(), a.sin()) * rho
        })
        .collect();
    let obstacle = SimplePolygon::new(vertices)?;
    // The short arc-side edges come closest to the arc; the closing chord is farther in.
    let near = (CAP_ANGLE / (2.0 * (z - 1) as f64)).cos();
    let r = rho * (1.0 + near) / 2.0;
    let spread = 0.2 * rho * (1.0 - near);
    let sensors = (0..n)
        .map(|i| {
            let f = if n == 1 {
                0.0
            } else {
                2.0 * i as f64 / (n - 1) as f64 - 1.0
            };
            Disk::new(i as u32 + 1, origin + Point::new(f * spread, 0.0), r, false)
        })
        .collect();
    let roi = SimplePolygon::rectangle(0.0, 0.0, 200.0, 200.0)?;
    Scenario::new(0, roi, vec![obstacle], sensors)
}

/// Number of transversal sensor-circle/obstacle-edge intersections.
pub fn obstacle_crossings(s: &Scenario) -> usize {
    let mut count = 0;
    for d in &s.sensors {
        for o in &s.obstacles {
            for (a, b) in o.edges() {
                count += circle_segment(&d.circle(), a, b)
                    .iter()
                    .filter(|h| !h.tangent)
                    .count();
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_deployment() {
        let s = generate(&GenParams::new(0, 10.0, 10.0, 1.0, 1.0, 3)).unwrap();
        assert!(s.sensors.is_empty());
    }

    #[test]
    fn same_seed_same_bytes() {
        let p = GenParams {
            mobile_fraction: 0.25,
            ..GenParams::new(40, 200.0, 200.0, 5.0, 20.0, 42)
        };
        assert_eq!(
            generate(&p).unwrap().to_json(),
            generate(&p).unwrap().to_json()
        );
        let q = GenParams {
            seed: 43,
            ..p.clone()
        };
        assert_ne!(
            generate(&p).unwrap().to_json(),
            generate(&q).unwrap().to_json()
        );
    }

    #[test]
    fn fixed_radius_setup() {
        let s = generate(&GenParams::new(100, 200.0, 200.0, 5.0, 5.0, 1)).unwrap();
        assert_eq!(s.sensors.len(), 100);
        assert!(s.sensors.iter().all(|d| d.radius == 5.0));
    }

    #[test]
    fn mobile_prefix() {
        let p = GenParams {
            mobile_fraction: 0.3,
            ..GenParams::new(10, 50.0, 50.0, 2.0, 4.0, 9)
        };
        let s = generate(&p).unwrap();
        let flags: Vec<bool> = s.sensors.iter().map(|d| d.mobile).collect();
        assert_eq!(
            flags,
            [true, true, true, false, false, false, false, false, false, false]
        );
    }

    #[test]
    fn uniform_is_53_bit() {
        let mut rng = ScenarioRng::new(0);
        for _ in 0..1000 {
            let u = rng.uniform();
            assert!((0.0..1.0).contains(&u));
            assert_eq!(u * (1u64 << 53) as f64, (u * (1u64 << 53) as f64).floor());
        }
    }

    #[test]
    fn json_layout_and_round_trip() {
        let roi = SimplePolygon::rectangle(0.0, 0.0, 10.0, 8.0).unwrap();
        let s = Scenario::new(
            7,
            roi,
            vec![],
            vec![Disk::new(1, Point::new(2.5, 3.0), 1.5, true)],
        )
        .unwrap();
        let text = s.to_json();
        assert_eq!(
            text,
            r#"{"version":1,"seed":7,"roi":[[0.0,0.0],[10.0,0.0],[10.0,8.0],[0.0,8.0]],"obstacles":[],"sensors":[{"id":1,"x":2.5,"y":3.0,"r":1.5,"mobile":true}]}"#
        );
        assert_eq!(Scenario::from_json(&text).unwrap().to_json(), text);
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{"version":1,"seed":7,"roi":[[0,0],[1,0],[1,1]],"obstacles":[],"sensors":[],"extra":1}"#;
        assert_eq!(
            Scenario::from_json(text).unwrap_err().code(),
            "input_invalid"
        );
        let text = r#"{"version":1,"seed":7,"roi":[[0,0],[1,0],[1,1]],"obstacles":[],"sensors":[{"id":1,"x":0.5,"y":0.2,"r":1,"mobile":false,"z":0}]}"#;
        assert!(Scenario::from_json(text).is_err());
    }

    #[test]
    fn invalid_scenarios_rejected() {
        let roi = SimplePolygon::rectangle(0.0, 0.0, 10.0, 10.0).unwrap();
        let ob = SimplePolygon::rectangle(2.0, 2.0, 4.0, 4.0).unwrap();
        let on_obstacle = Disk::new(1, Point::new(3.0, 3.0), 1.0, false);
        assert!(Scenario::new(0, roi.clone(), vec![ob.clone()], vec![on_obstacle]).is_err());
        let touching = SimplePolygon::rectangle(4.0, 2.0, 6.0, 4.0).unwrap();
        assert!(Scenario::new(0, roi.clone(), vec![ob.clone(), touching], vec![]).is_err());
        let outside = SimplePolygon::rectangle(8.0, 8.0, 12.0, 9.0).unwrap();
        assert!(Scenario::new(0, roi.clone(), vec![outside], vec![]).is_err());
        let on_border = SimplePolygon::rectangle(0.0, 0.0, 2.0, 1.0).unwrap();
        assert!(Scenario::new(0, roi.clone(), vec![on_border], vec![]).is_ok());
        let stray = Disk::new(1, Point::new(-3.0, 3.0), 1.0, false);
        assert!(Scenario::new(0, roi.clone(), vec![], vec![stray]).is_err());
        let staged = Disk::new(1, Point::new(-3.0, 3.0), 1.0, true);
        assert!(Scenario::new(0, roi, vec![], vec![staged]).is_ok());
    }

    #[test]
    fn stressor_counts() {
        assert_eq!(obstacle_crossings(&lower_bound_stressor(1, 3).unwrap()), 6);
        assert_eq!(obstacle_crossings(&lower_bound_stressor(2, 3).unwrap()), 12);
        for n in [1, 5, 20] {
            for z in [3, 8, 16] {
                assert_eq!(
                    obstacle_crossings(&lower_bound_stressor(n, z).unwrap()),
                    2 * n * z
                );
            }
        }
    }

    #[test]
    fn infeasible_obstacles_error() {
        let full = vec![SimplePolygon::rectangle(0.0, 0.0, 10.0, 10.0).unwrap()];
        let p = GenParams {
            obstacles: full,
            ..GenParams::new(1, 10.0, 10.0, 1.0, 1.0, 0)
        };
        assert!(generate(&p).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn generated_scenarios_are_valid(seed in any::<u64>(), n in 0usize..60, obs in 0usize..4) {
            let obstacles = random_obstacles(obs, 200.0, 200.0, 10.0, 30.0, 2.0, seed).unwrap();
            let p = GenParams { mobile_fraction: 0.2, obstacles, ..GenParams::new(n, 200.0, 200.0, 5.0, 20.0, seed) };
            let s = generate(&p).unwrap();
            prop_assert!(s.validate().is_ok());
            prop_assert!(s.sensors.iter().all(|d| (5.0..=20.0).contains(&d.radius)));
            let text = s.to_json();
            prop_assert_eq!(Scenario::from_json(&text).unwrap().to_json(), text);
        }
    }
}
