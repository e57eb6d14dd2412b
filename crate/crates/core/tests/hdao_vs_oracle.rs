use holeweaver::awvd::Strategy;
use holeweaver::hdao::detect;
use holeweaver::oracle::scanline_areas;
use holeweaver::scenario::{generate, GenParams};

#[test]
fn hole_areas_match_scanline_quadrature() {
    for seed in 0..60u64 {
        let n = 5 + (seed as usize * 37) % 200;
        let s = generate(&GenParams::new(n, 200.0, 200.0, 5.0, 20.0, seed)).unwrap();
        let d = detect(&s.sensors, &s.roi, Strategy::Exact).unwrap();
        let exact = scanline_areas(&s);
        let err = (d.total_area() - exact.holes).abs();
        assert!(
            err <= 1e-6 * s.roi_area(),
            "seed {seed} n {n}: {} vs {}",
            d.total_area(),
            exact.holes
        );
    }
}
