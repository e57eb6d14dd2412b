use holeweaver::awvd::Strategy;
use holeweaver::geom::edge::EdgeSource;
use holeweaver::hdao::HoleKind;
use holeweaver::hdpo::detect_scenario;
use holeweaver::oracle::{mc_coverage, scanline_areas};
use holeweaver::scenario::Scenario;

fn load(name: &str) -> Scenario {
    let path = format!("{}/tests/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    Scenario::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

const ALL: [&str; 6] = [
    "zero_sensors_10x10",
    "disk_r5_20x20",
    "full_cover_mobile_10x10",
    "roi100x80_23",
    "roi100x80_34_obstacles",
    "setup_a_200x200_n100",
];

fn sorted_areas(s: &Scenario) -> Vec<f64> {
    let mut a: Vec<f64> = detect_scenario(s, Strategy::Exact)
        .unwrap()
        .holes
        .iter()
        .map(|h| h.area)
        .collect();
    a.sort_by(f64::total_cmp);
    a
}

fn assert_areas(got: &[f64], want: &[f64]) {
    assert_eq!(got.len(), want.len(), "{got:?}");
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() <= 1e-9 * w.max(1.0), "{g} vs {w}");
    }
}

#[test]
fn twenty_three_sensors_without_obstacles() {
    let s = load("roi100x80_23");
    assert_eq!(s.sensors.len(), 23);
    assert_eq!(s.mobiles().count(), 4);
    let d = detect_scenario(&s, Strategy::Exact).unwrap();
    assert_eq!(d.points.len(), 45);
    assert_eq!(
        d.holes
            .iter()
            .filter(|h| h.kind == HoleKind::Closed)
            .count(),
        1
    );
    assert_areas(
        &sorted_areas(&s),
        &[
            0.1294382193948742,
            0.2784085234911089,
            0.5888356444240017,
            21.367269193077618,
            75.25604125421233,
            4302.567944650305,
        ],
    );
}

#[test]
fn thirty_four_sensors_three_obstacles() {
    let s = load("roi100x80_34_obstacles");
    assert_eq!((s.sensors.len(), s.obstacles.len()), (34, 3));
    let d = detect_scenario(&s, Strategy::Exact).unwrap();
    assert_eq!(d.points.len(), 70);
    assert!(d.holes.iter().all(|h| h.kind == HoleKind::Open));
    // Obstacles overlapping open holes contribute boundary edges.
    let obstacle_edges = d
        .holes
        .iter()
        .flat_map(|h| h.edges())
        .filter(|e| matches!(e.source, EdgeSource::Obstacle { .. }))
        .count();
    assert!(obstacle_edges > 0);
    assert_areas(
        &sorted_areas(&s),
        &[
            17.19263589053635,
            28.53883521666512,
            56.39444395750678,
            108.3774208138449,
            143.98102453046775,
            256.3243934356056,
            1454.1094154805742,
        ],
    );
    let exact = scanline_areas(&s);
    assert!((exact.obstacle_uncovered - 200.29797695986298).abs() < 1e-8);
}

#[test]
fn identical_range_setup() {
    let s = load("setup_a_200x200_n100");
    assert!(s.sensors.iter().all(|d| d.radius == 5.0));
    assert_areas(&sorted_areas(&s), &[32848.76617693512]);
}

#[test]
fn analytic_areas_match_quadrature() {
    for name in ALL {
        let s = load(name);
        let holes: f64 = sorted_areas(&s).iter().sum();
        let exact = scanline_areas(&s);
        assert!(
            (holes - exact.holes).abs() <= 1e-9 * s.roi_area(),
            "{name}: {holes} vs {}",
            exact.holes
        );
        let identity = s.roi_area()
            - exact.covered
            - exact.obstacle_covered
            - holes
            - exact.obstacle_uncovered;
        assert!(identity.abs() <= 1e-6 * s.roi_area(), "{name}: {identity}");
    }
}

#[test]
fn analytic_areas_match_monte_carlo() {
    for name in ALL {
        let s = load(name);
        let holes: f64 = sorted_areas(&s).iter().sum();
        let e = mc_coverage(&s, 1_000_000, 17);
        let p = holes / s.roi_area();
        let sigma = (p * (1.0 - p) / 1e6).sqrt().max(e.hole_std_error);
        assert!(
            (p - e.hole_fraction).abs() <= 3.0 * sigma,
            "{name}: {p} vs {}",
            e.hole_fraction
        );
    }
}

#[test]
fn monte_carlo_is_seeded() {
    let s = load("roi100x80_34_obstacles");
    assert_eq!(mc_coverage(&s, 300_000, 9), mc_coverage(&s, 300_000, 9));
    assert_ne!(mc_coverage(&s, 300_000, 9), mc_coverage(&s, 300_000, 10));
}

#[test]
fn fixtures_round_trip() {
    for name in ALL {
        let text = std::fs::read_to_string(format!(
            "{}/tests/fixtures/{name}.json",
            env!("CARGO_MANIFEST_DIR")
        ))
        .unwrap();
        assert_eq!(
            Scenario::from_json(&text).unwrap().to_json(),
            text.trim_end()
        );
    }
}
