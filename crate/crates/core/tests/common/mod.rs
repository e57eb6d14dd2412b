#![allow(dead_code)]

use holeweaver::scenario::{generate, random_obstacles, GenParams, Scenario};

/// 200 obstacle-free scenarios on a 200×200 RoI, n spread over 10..=300.
pub fn open_corpus() -> Vec<Scenario> {
    (0..200u64)
        .map(|i| {
            let n = 10 + (i as usize * 97) % 291;
            let mut p = GenParams::new(n, 200.0, 200.0, 5.0, 20.0, 1000 + i);
            p.mobile_fraction = 0.1;
            generate(&p).unwrap()
        })
        .collect()
}

/// 50 scenarios on a 100×80 RoI with 3 to 5 obstacles.
pub fn obstacle_corpus() -> Vec<Scenario> {
    (0..50u64)
        .map(|i| {
            let k = 3 + (i as usize % 3);
            let n = 20 + (i as usize * 13) % 41;
            let mut p = GenParams::new(n, 100.0, 80.0, 5.0, 20.0, 5000 + i);
            p.mobile_fraction = 0.1;
            p.obstacles = random_obstacles(k, 100.0, 80.0, 4.0, 20.0, 1.0, 5000 + i).unwrap();
            generate(&p).unwrap()
        })
        .collect()
}

pub fn corpus() -> Vec<Scenario> {
    let mut c = open_corpus();
    c.extend(obstacle_corpus());
    c
}

/// Small healing instance: 1 to 3 mobiles among a few static sensors.
pub fn small_instance(i: u64) -> Scenario {
    let m = 1 + (i as usize % 3);
    let n = 8 + (i as usize * 7) % 23;
    let mut p = GenParams::new(n, 100.0, 80.0, 5.0, 20.0, 9000 + i);
    p.mobile_fraction = (m as f64 + 0.5) / n as f64;
    generate(&p).unwrap()
}
