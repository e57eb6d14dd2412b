//! The `holeweaver` command line.
//!
//! Artifacts (`--out`, `--svg`) depend only on the inputs; the run report on
//! stdout carries wall-clock timings. Failures print one JSON line on stderr
//! and exit with 1 (usage), 2 (invalid input) or 3 (validation failure).

pub mod export;
pub mod svg;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::awvd::{build_neighbor_graph, Strategy};
use crate::error::{Error, Result};
use crate::geom::{Point, SimplePolygon};
use crate::hdao::{detect_from_graph, Detection};
use crate::hdpo::{clip, ObstacleSet};
use crate::heal::{heal, HealingPlan};
use crate::oracle::{mc_coverage, CoverageEstimate};
use crate::scenario::{generate, lower_bound_stressor, obstacle_crossings, GenParams, Scenario};
use export::{HoleDoc, HolesDoc};

pub const THREADS_ENV: &str = "HOLEWEAVER_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "holeweaver",
    version,
    about = "Coverage-hole detection and healing for sensor fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a random scenario.
    Gen(GenArgs),
    /// Detect coverage holes.
    Detect(DetectArgs),
    /// Plan mobile-sensor moves that shrink the holes.
    Heal(HealArgs),
    /// Check hole areas against a Monte-Carlo estimate.
    Oracle(OracleArgs),
    /// Build the many-crossings stress scenario and count its boundary points.
    Stress(StressArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    /// RoI size as WIDTHxHEIGHT in meters.
    #[arg(long, default_value = "200x200")]
    roi: String,
    #[arg(long, default_value_t = 5.0)]
    rmin: f64,
    #[arg(long, default_value_t = 20.0)]
    rmax: f64,
    #[arg(long, default_value_t = 0.0)]
    mobile_frac: f64,
    /// JSON file with a list of polygons, or `none`.
    #[arg(long, default_value = "none")]
    obstacles: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct DetectArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long, default_value = "exact")]
    strategy: Strategy,
    /// Also export each cycle as a polyline with K chords per arc.
    #[arg(long)]
    chords: Option<usize>,
}

#[derive(Debug, Args)]
struct HealArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Candidate site budget.
    #[arg(long, default_value_t = 50)]
    sites: usize,
    #[arg(long)]
    out: PathBuf,
    /// BEFORE.svg,AFTER.svg
    #[arg(long)]
    svg: Option<String>,
    #[arg(long, default_value = "exact")]
    strategy: Strategy,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the estimate here as well.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StressArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    z: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize)]
pub struct Phases {
    pub awvd: f64,
    pub detect: f64,
    pub clip: f64,
    pub heal: f64,
}

#[derive(Debug, Serialize)]
pub struct PlanSummary {
    pub moves: usize,
    pub coverage_before: f64,
    pub coverage_after: f64,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub scenario: String,
    pub hole_count: usize,
    pub hole_areas: Vec<f64>,
    /// Covered free space over the whole RoI.
    pub coverage_roi_pct: f64,
    /// Covered free space over the free space.
    pub coverage_free_pct: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<PlanSummary>,
    pub phases_ms: Phases,
}

#[derive(Debug, Serialize)]
struct OracleReport {
    estimate: CoverageEstimate,
    analytic_hole_fraction: f64,
    /// |analytic − estimate| in standard errors.
    deviation_sigma: f64,
    agrees: bool,
}

#[derive(Debug, Serialize)]
struct StressReport {
    n: usize,
    z: usize,
    obstacle_crossings: usize,
    boundary_points: usize,
    holes: usize,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn read_scenario(path: &Path) -> Result<Scenario> {
    Scenario::from_json(&std::fs::read_to_string(path)?)
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(Error::from)
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn parse_roi(text: &str) -> Result<(f64, f64)> {
    let bad = || Error::invalid(format!("--roi expects WIDTHxHEIGHT, got {text:?}"));
    let (w, h) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    let w: f64 = w.trim().parse().map_err(|_| bad())?;
    let h: f64 = h.trim().parse().map_err(|_| bad())?;
    if !(w > 0.0 && h > 0.0 && w.is_finite() && h.is_finite()) {
        return Err(bad());
    }
    Ok((w, h))
}

fn read_obstacles(arg: &str) -> Result<Vec<SimplePolygon>> {
    if arg == "none" {
        return Ok(Vec::new());
    }
    let raw: Vec<Vec<[f64; 2]>> = serde_json::from_str(&std::fs::read_to_string(arg)?)?;
    raw.into_iter()
        .map(|poly| SimplePolygon::new(poly.into_iter().map(|[x, y]| Point::new(x, y)).collect()))
        .collect()
}

/// Timed detection with obstacles.
fn timed_detection(s: &Scenario, strategy: Strategy, phases: &mut Phases) -> Result<Detection> {
    let obstacles = ObstacleSet::new(&s.roi, s.obstacles.clone())?;
    let t = Instant::now();
    let graph = build_neighbor_graph(&s.sensors, strategy)?;
    phases.awvd = ms(t);
    let t = Instant::now();
    let d = detect_from_graph(&s.sensors, &s.roi, graph)?;
    phases.detect = ms(t);
    let t = Instant::now();
    let d = clip(d, &s.sensors, &obstacles)?;
    phases.clip = ms(t);
    Ok(d)
}

fn report(
    path: &Path,
    s: &Scenario,
    holes_area: &[f64],
    plan: Option<&HealingPlan>,
    phases: Phases,
) -> RunReport {
    let covered = s.free_area() - holes_area.iter().sum::<f64>();
    let pct = |num: f64, den: f64| {
        if den > 0.0 {
            (100.0 * num / den).clamp(0.0, 100.0)
        } else {
            0.0
        }
    };
    RunReport {
        scenario: path.display().to_string(),
        hole_count: holes_area.len(),
        hole_areas: holes_area.to_vec(),
        coverage_roi_pct: pct(covered, s.roi_area()),
        coverage_free_pct: pct(covered, s.free_area()),
        plan: plan.map(|p| PlanSummary {
            moves: p.moves.len(),
            coverage_before: p.coverage_before,
            coverage_after: p.coverage_after,
        }),
        phases_ms: phases,
    }
}

fn cmd_gen(a: GenArgs) -> Result<i32> {
    let (width, height) = parse_roi(&a.roi)?;
    if !(a.rmin > 0.0 && a.rmin <= a.rmax) {
        return Err(Error::invalid("need 0 < rmin <= rmax"));
    }
    if !(0.0..=1.0).contains(&a.mobile_frac) {
        return Err(Error::invalid("--mobile-frac must lie in [0, 1]"));
    }
    let mut p = GenParams::new(a.n, width, height, a.rmin, a.rmax, a.seed);
    p.mobile_fraction = a.mobile_frac;
    p.obstacles = read_obstacles(&a.obstacles)?;
    write(&a.out, &generate(&p)?.to_json())?;
    Ok(0)
}

fn cmd_detect(a: DetectArgs) -> Result<i32> {
    let s = read_scenario(&a.scenario)?;
    let mut phases = Phases::default();
    let d = timed_detection(&s, a.strategy, &mut phases)?;
    let areas: Vec<f64> = d.holes.iter().map(|h| h.area).collect();
    let doc = HolesDoc {
        roi_area: s.roi_area(),
        free_area: s.free_area(),
        total_hole_area: d.total_area(),
        holes: d.holes.iter().map(|h| HoleDoc::new(h, a.chords)).collect(),
        boundary_points: &d.points,
    };
    write(&a.out, &to_json(&doc)?)?;
    if let Some(path) = &a.svg {
        write(path, &svg::render(&s, &d.holes, &[]))?;
    }
    println!(
        "{}",
        serde_json::to_string(&report(&a.scenario, &s, &areas, None, phases))?
    );
    Ok(0)
}

fn cmd_heal(a: HealArgs) -> Result<i32> {
    let svgs = match &a.svg {
        None => None,
        Some(list) => match list.split_once(',') {
            Some((b, f)) if !b.is_empty() && !f.is_empty() => {
                Some((PathBuf::from(b), PathBuf::from(f)))
            }
            _ => return Err(Error::invalid("--svg expects BEFORE.svg,AFTER.svg")),
        },
    };
    if a.sites == 0 {
        return Err(Error::invalid("--sites must be at least 1"));
    }
    let s = read_scenario(&a.scenario)?;
    let mut phases = Phases::default();
    let before = timed_detection(&s, a.strategy, &mut phases)?;
    let t = Instant::now();
    let (_, plan) = heal(&s, a.sites, a.strategy)?;
    phases.heal = ms(t);
    let healed = plan.apply(&s);
    let after = crate::hdpo::detect_scenario(&healed, a.strategy)?;
    write(&a.out, &to_json(&plan)?)?;
    if let Some((b, f)) = svgs {
        write(&b, &svg::render(&s, &before.holes, &[]))?;
        write(&f, &svg::render(&healed, &after.holes, &plan.moves))?;
    }
    let areas: Vec<f64> = after.holes.iter().map(|h| h.area).collect();
    println!(
        "{}",
        serde_json::to_string(&report(&a.scenario, &healed, &areas, Some(&plan), phases))?
    );
    Ok(0)
}

/// Standard error of a fraction `p` over `n` samples.
fn sigma(p: f64, n: u64) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

fn cmd_oracle(a: OracleArgs) -> Result<i32> {
    if a.samples == 0 {
        return Err(Error::invalid("--samples must be at least 1"));
    }
    let s = read_scenario(&a.scenario)?;
    let d = crate::hdpo::detect_scenario(&s, Strategy::Exact)?;
    let estimate = mc_coverage(&s, a.samples, a.seed);
    let analytic = d.total_area() / s.roi_area();
    let se = sigma(analytic, a.samples).max(estimate.hole_std_error);
    let diff = (analytic - estimate.hole_fraction).abs();
    let deviation_sigma = if se > 0.0 {
        diff / se
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    let agrees = deviation_sigma <= 3.0;
    if let Some(path) = &a.out {
        write(path, &to_json(&estimate)?)?;
    }
    let r = OracleReport {
        estimate,
        analytic_hole_fraction: analytic,
        deviation_sigma,
        agrees,
    };
    println!("{}", serde_json::to_string(&r)?);
    if agrees {
        Ok(0)
    } else {
        Err(Error::Validation(format!(
            "analytic hole fraction {analytic} differs from the Monte-Carlo estimate by {deviation_sigma:.2} standard errors"
        )))
    }
}

fn cmd_stress(a: StressArgs) -> Result<i32> {
    let s = lower_bound_stressor(a.n, a.z)?;
    let d = crate::hdpo::detect_scenario(&s, Strategy::Exact)?;
    if let Some(path) = &a.out {
        write(path, &s.to_json())?;
    }
    let r = StressReport {
        n: a.n,
        z: a.z,
        obstacle_crossings: obstacle_crossings(&s),
        boundary_points: d.points.len(),
        holes: d.holes.len(),
    };
    println!("{}", serde_json::to_string(&r)?);
    Ok(0)
}

fn error_line(code: &str, message: &str) -> String {
    serde_json::json!({ "error": code, "message": message }).to_string()
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Validation(_) | Error::Dangling { .. } | Error::OpenCycle { .. } => 3,
        _ => 2,
    }
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {v:?}"))?;
    // A pool may already exist when running in-process; the first one wins.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            eprintln!("{}", error_line("usage", first));
            return 1;
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("{}", error_line("usage", &msg));
        return 1;
    }
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Detect(a) => cmd_detect(a),
        Command::Heal(a) => cmd_heal(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Stress(a) => cmd_stress(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", error_line(e.code(), &e.to_string()));
            exit_code(&e)
        }
    }
}

pub fn main() -> ! {
    std::process::exit(run(std::env::args_os()))
}
