//! Experiment drivers behind the subcommands.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use billiards_core::mirror::embedding::{billiard_state, states_from_events};
use billiards_core::mirror::{
    classify_tachyonic, conjugacy_h_inverse, count_tachyonic, fixed_points, limit_products, limit_velocities, period,
    reduced_trajectory, rotation_angle, tachyon_scale_bound, FixedPoints, MirrorError, MirrorParams, MirrorState,
    Period, TachyonicClass, TachyonicCount,
};
use billiards_core::{simulate, Arithmetic, BilliardState, Direction, Rational, Scalar, StopCondition};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::{MirrorSetup, Output, ScenarioConfig, ScenarioKind};
use crate::error::{CliError, ConfigError, EXIT_CROSS_CHECK, EXIT_OK};
use crate::record::{attach_mirror_states, read_events, write_events, write_mirror, RecordError};
use crate::render::render_spacetime;

/// Relative deviation above which a cross-check fails.
pub const CROSS_CHECK_TOL: f64 = 1e-9;

/// Text for the terminal plus the process exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub exit: i32,
    pub files: Vec<PathBuf>,
}

impl Outcome {
    fn ok(text: String, files: Vec<PathBuf>) -> Self {
        Outcome {
            text,
            exit: EXIT_OK,
            files,
        }
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("output");
    let tmp = dir.join(format!(".{name}.tmp"));
    fs::write(&tmp, bytes).map_err(|e| CliError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
}

fn record_error(path: &Path, e: RecordError) -> CliError {
    CliError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

fn embed<S: Scalar>(setup: &MirrorSetup<S>) -> Result<BilliardState<S>, CliError> {
    billiard_state(&setup.params, &setup.initial).map_err(|e| match e {
        MirrorError::FixedPointOrbit { .. } => ConfigError::new("mirror.sigma1", e.to_string()).into(),
        other => other.into(),
    })
}

fn direction_name(direction: Direction) -> &'static str {
    match direction {
        Direction::Forward => "forward",
        Direction::Backward => "backward",
    }
}

/// Full event simulation of a scenario file.
pub fn run_simulate(config: &ScenarioConfig, out_dir: &Path) -> Result<Outcome, CliError> {
    match config.arithmetic()? {
        Arithmetic::Float => simulate_in::<f64>(config, out_dir),
        Arithmetic::Rational => simulate_in::<Rational>(config, out_dir),
    }
}

fn simulate_in<S: Scalar>(config: &ScenarioConfig, out_dir: &Path) -> Result<Outcome, CliError> {
    let scenario = config.build::<S>()?;
    let (start, setup) = match &scenario.kind {
        ScenarioKind::General(state) => (state.clone(), None),
        ScenarioKind::Mirror(setup) => (embed(setup)?, Some(setup)),
    };
    let mut report = String::new();
    let mut files = Vec::new();
    let several = scenario.directions.len() > 1;
    for &direction in &scenario.directions {
        let sim = simulate(&start, direction, &scenario.stop)?;
        let suffix = if several {
            format!("_{}", direction_name(direction))
        } else {
            String::new()
        };
        let states = match setup {
            Some(setup) => states_from_events(&setup.initial, &sim.events, direction),
            None => Vec::new(),
        };

        let tachyonic = sim.events.iter().filter(|e| e.tachyonic).count();
        let scale: f64 = start
            .particles
            .iter()
            .map(|p| p.energy.as_f64().abs() + p.momentum.as_f64().abs())
            .sum();
        let drift_e = (sim.state.total_energy() - start.total_energy()).as_f64().abs() / scale;
        let drift_p = (sim.state.total_momentum() - start.total_momentum()).as_f64().abs() / scale;
        let _ = writeln!(report, "direction: {}", direction_name(direction));
        let _ = writeln!(report, "events: {} ({} tachyonic)", sim.events.len(), tachyonic);
        let _ = writeln!(report, "final time: {}", sim.state.t.to_literal());
        let _ = writeln!(report, "relative drift: energy {drift_e:.3e}, momentum {drift_p:.3e}");
        if setup.is_some() {
            let _ = writeln!(report, "mirror states: {}", states.len());
        }

        for output in &scenario.outputs {
            match output {
                Output::Events => {
                    let path = out_dir.join(format!("events{suffix}.csv"));
                    let mut buf = Vec::new();
                    write_events(&mut buf, &attach_mirror_states(&sim.events, &states))
                        .map_err(|e| record_error(&path, e))?;
                    write_atomic(&path, &buf)?;
                    files.push(path);
                }
                Output::Mirror => {
                    let path = out_dir.join(format!("mirror{suffix}.csv"));
                    let mut buf = Vec::new();
                    write_mirror(&mut buf, &states).map_err(|e| record_error(&path, e))?;
                    write_atomic(&path, &buf)?;
                    files.push(path);
                }
                Output::Spacetime if !sim.events.is_empty() => {
                    let path = out_dir.join(format!("spacetime{suffix}.svg"));
                    write_atomic(&path, render_spacetime(&sim.events).as_bytes())?;
                    files.push(path);
                }
                Output::Spacetime | Output::Report => {}
            }
        }
    }
    if let Some(setup) = setup {
        report.push_str(&describe_mirror(&setup.params.to_f64(), &setup.initial.to_f64()));
    }
    if scenario.outputs.contains(&Output::Report) {
        let path = out_dir.join("report.txt");
        write_atomic(&path, report.as_bytes())?;
        files.push(path);
    }
    Ok(Outcome::ok(report, files))
}

/// Runs several scenario files concurrently, each into its own subdirectory
/// named after the file. `prepare` adjusts each loaded file before it runs.
pub fn run_simulate_batch<F>(
    configs: &[PathBuf],
    out_dir: &Path,
    prepare: F,
) -> Vec<(PathBuf, Result<Outcome, CliError>)>
where
    F: Fn(ScenarioConfig) -> ScenarioConfig + Sync,
{
    configs
        .par_iter()
        .map(|path| {
            let stem = path
                .file_stem()
                .map(|s| s.to_owned())
                .unwrap_or_else(|| "scenario".into());
            let result = ScenarioConfig::load(path).and_then(|c| run_simulate(&prepare(c), &out_dir.join(stem)));
            (path.clone(), result)
        })
        .collect()
}

/// Analytic summary of a mirror system.
pub fn describe_mirror(params: &MirrorParams<f64>, initial: &MirrorState<f64>) -> String {
    let mut s = String::new();
    let e = *params.total_energy();
    let delta = *params.delta();
    let k = initial.motion_constant();
    let kappa = initial.kappa();
    let _ = writeln!(s, "mu = {:e}, E = {e:e}, delta = {delta:e}", params.mu());
    let _ = writeln!(
        s,
        "sigma1_0 = {:e}, E2_0 = {:e}, x1_0 = {:e}",
        initial.sigma1, initial.e2, initial.x1
    );
    let _ = writeln!(s, "motion constant k = {k:e}, kappa = {kappa:e}");
    match fixed_points(params) {
        FixedPoints::Hyperbolic {
            attractor,
            repeller,
            attractor_slope,
            repeller_slope,
        } => {
            let _ = writeln!(
                s,
                "fixed points: attractor {attractor:e} (|f'| = {attractor_slope:e}), repeller {repeller:e} (|f'| = {repeller_slope:e})"
            );
        }
        FixedPoints::Parabolic { sigma } => {
            let _ = writeln!(s, "fixed point: {sigma:e} (double, neither attracting nor repelling)");
        }
        FixedPoints::Elliptic { pair } => {
            let _ = writeln!(s, "fixed points: {:e} +- {:e} i (elliptic)", pair.0.re, pair.0.im.abs());
        }
    }
    let _ = writeln!(
        s,
        "tachyonic collisions: {}",
        classify_tachyonic(params, &initial.sigma1)
    );
    if let Ok(theta) = rotation_angle(params) {
        let _ = writeln!(s, "rotation angle: {theta:e} rad");
        match period(
            params,
            k,
            billiards_core::mirror::DEFAULT_B_MAX,
            billiards_core::mirror::DEFAULT_TOL,
        ) {
            Ok(Some(p)) => {
                let _ = writeln!(s, "periodic: a={}, b={}, T={}", p.a, p.b, trimmed(p.period));
            }
            Ok(None) => {
                let _ = writeln!(s, "aperiodic within b_max = {}", billiards_core::mirror::DEFAULT_B_MAX);
            }
            Err(err) => {
                let _ = writeln!(s, "period: {err}");
            }
        }
    }
    if let Ok(v) = limit_velocities(params) {
        let note = if v.zero_speed_bounce {
            " (bounce at zero speed)"
        } else {
            ""
        };
        let _ = writeln!(s, "limit velocities: past {:e}, future {:e}{note}", v.past, v.future);
    }
    if let Ok((past, future)) = limit_products(params, initial) {
        let _ = writeln!(s, "limit of x1*E2: past {past:e}, future {future:e}");
    }
    if let Ok(bound) = tachyon_scale_bound(params, kappa) {
        let _ = writeln!(s, "tachyonic positions: x1/x1_0 <= {bound:e}");
    }
    s
}

/// Reduced-map trajectory of a mirror scenario; `--events` counts map steps.
pub fn run_mirror(config: &ScenarioConfig, out_dir: &Path) -> Result<Outcome, CliError> {
    match config.arithmetic()? {
        Arithmetic::Float => mirror_in::<f64>(config, out_dir),
        Arithmetic::Rational => mirror_in::<Rational>(config, out_dir),
    }
}

fn mirror_in<S: Scalar>(config: &ScenarioConfig, out_dir: &Path) -> Result<Outcome, CliError> {
    let scenario = config.build::<S>()?;
    let ScenarioKind::Mirror(setup) = &scenario.kind else {
        return Err(ConfigError::new("mode", "the mirror command needs mode = \"mirror\"").into());
    };
    let StopCondition::MaxEvents(steps) = scenario.stop else {
        return Err(ConfigError::new("stop.time", "mirror trajectories are limited by `events`").into());
    };
    let forward = if scenario.directions.contains(&Direction::Forward) {
        steps
    } else {
        0
    };
    let backward = if scenario.directions.contains(&Direction::Backward) {
        steps
    } else {
        0
    };
    let states = reduced_trajectory(&setup.params, &setup.initial, forward, backward)?;

    let mut report = format!("states: n = {}..={}\n", -(backward as i64), forward);
    report.push_str(&describe_mirror(&setup.params.to_f64(), &setup.initial.to_f64()));
    let mut files = Vec::new();
    if scenario.outputs.contains(&Output::Mirror) || scenario.outputs.contains(&Output::Events) {
        let path = out_dir.join("mirror.csv");
        let mut buf = Vec::new();
        write_mirror(&mut buf, &states).map_err(|e| record_error(&path, e))?;
        write_atomic(&path, &buf)?;
        files.push(path);
    }
    if scenario.outputs.contains(&Output::Report) {
        let path = out_dir.join("report.txt");
        write_atomic(&path, report.as_bytes())?;
        files.push(path);
    }
    Ok(Outcome::ok(report, files))
}

/// Result of comparing the four-particle simulation with the reduced map.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheck {
    pub events: usize,
    pub collisions: usize,
    /// Largest relative deviation in `sigma_1`, `E_2`, `x_1` and `t`.
    pub max_deviation: [f64; 4],
    /// Per-collision growth factor of the `sigma_1` deviation, when it grows
    /// through at least four decades before saturating.
    pub growth_rate: Option<f64>,
    /// `|f'|` at the repelling fixed point, for comparison with the growth rate.
    pub repeller_slope: Option<f64>,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.max_deviation.iter().all(|&d| d <= CROSS_CHECK_TOL)
    }

    pub fn summary(&self) -> String {
        let [s, e, x, t] = self.max_deviation;
        let mut text = format!(
            "cross-check: {} events, {} outer collisions\nmax relative deviation: sigma1 {s:.3e}, E2 {e:.3e}, x1 {x:.3e}, t {t:.3e}\n",
            self.events, self.collisions
        );
        if let Some(rate) = self.growth_rate {
            let _ = write!(text, "divergence growth rate: {rate:.4} per collision");
            if let Some(slope) = self.repeller_slope {
                let _ = write!(text, " (|f'(sigma_re)| = {slope:.4})");
            }
            text.push('\n');
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(text, "tolerance {CROSS_CHECK_TOL:e}: {verdict}");
        text
    }
}

fn relative<S: Scalar>(got: &S, want: &S) -> f64 {
    let diff = (got.clone() - want.clone()).abs().as_f64();
    if diff == 0.0 {
        return 0.0;
    }
    let scale = want.abs().as_f64();
    if scale == 0.0 {
        f64::INFINITY
    } else {
        diff / scale
    }
}

/// Least-squares growth factor of a deviation sequence over its exponential
/// phase: values between 1e-13 and 1e-3, up to the first value above 1e-3.
fn growth_rate(deviations: &[f64]) -> Option<f64> {
    let end = deviations.iter().position(|&d| d > 1e-3).unwrap_or(deviations.len());
    let points: Vec<(f64, f64)> = deviations[..end]
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d >= 1e-13)
        .map(|(n, &d)| (n as f64, d.ln()))
        .collect();
    if points.len() < 4 {
        return None;
    }
    let span = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max)
        - points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    if span < 4.0 * std::f64::consts::LN_10 {
        return None;
    }
    let m = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / m, sy / m);
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Some((sxy / sxx).exp())
}

/// Simulates `events` collisions of the embedded mirror system and compares
/// each outer collision with the reduced trajectory.
pub fn cross_check<S: Scalar>(setup: &MirrorSetup<S>, events: usize) -> Result<CrossCheck, CliError> {
    let repeller_slope = match fixed_points(&setup.params.to_f64()) {
        FixedPoints::Hyperbolic { repeller_slope, .. } => Some(repeller_slope),
        _ => None,
    };
    if events == 0 {
        return Ok(CrossCheck {
            events,
            collisions: 0,
            max_deviation: [0.0; 4],
            growth_rate: None,
            repeller_slope,
        });
    }
    let start = embed(setup)?;
    let sim = simulate(&start, Direction::Forward, &StopCondition::MaxEvents(events))?;
    let states = states_from_events(&setup.initial, &sim.events, Direction::Forward);
    let oracle = reduced_trajectory(&setup.params, &setup.initial, states.len(), 0)?;
    let mut max_deviation = [0.0f64; 4];
    let mut sigma_deviation = Vec::with_capacity(states.len());
    for (got, want) in states.iter().zip(&oracle[1..]) {
        let devs = [
            relative(&got.sigma1, &want.sigma1),
            relative(&got.e2, &want.e2),
            relative(&got.x1, &want.x1),
            relative(&got.t, &want.t),
        ];
        for (m, d) in max_deviation.iter_mut().zip(devs) {
            *m = m.max(d);
        }
        sigma_deviation.push(devs[0]);
    }
    Ok(CrossCheck {
        events: sim.events.len(),
        collisions: states.len(),
        max_deviation,
        growth_rate: growth_rate(&sigma_deviation),
        repeller_slope,
    })
}

pub fn run_cross_check(config: &ScenarioConfig) -> Result<Outcome, CliError> {
    let check = match config.arithmetic()? {
        Arithmetic::Float => cross_check_in::<f64>(config)?,
        Arithmetic::Rational => cross_check_in::<Rational>(config)?,
    };
    let exit = if check.passed() { EXIT_OK } else { EXIT_CROSS_CHECK };
    Ok(Outcome {
        text: check.summary(),
        exit,
        files: Vec::new(),
    })
}

fn cross_check_in<S: Scalar>(config: &ScenarioConfig) -> Result<CrossCheck, CliError> {
    let scenario = config.build::<S>()?;
    let StopCondition::MaxEvents(events) = scenario.stop else {
        return Err(ConfigError::new("stop.time", "cross-check is limited by `events`").into());
    };
    cross_check(&mirror_of(&scenario.kind)?, events)
}

fn mirror_of<S: Scalar>(kind: &ScenarioKind<S>) -> Result<MirrorSetup<S>, CliError> {
    match kind {
        ScenarioKind::Mirror(setup) => Ok(setup.clone()),
        ScenarioKind::General(_) => Err(ConfigError::new("mode", "cross-check needs mode = \"mirror\"").into()),
    }
}

/// Up to nine decimals, trailing zeros removed.
pub fn trimmed(value: f64) -> String {
    let s = format!("{value:.9}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// A detected period together with the cycle time measured by the event simulator.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodReport {
    pub detected: Option<Period>,
    pub simulated: Option<f64>,
    pub b_max: u64,
}

impl PeriodReport {
    pub fn text(&self) -> String {
        match (self.detected, self.simulated) {
            (Some(p), Some(sim)) => format!("a={}, b={}, T={}; simulated {sim:.9}\n", p.a, p.b, trimmed(p.period)),
            (Some(p), None) => format!("a={}, b={}, T={}\n", p.a, p.b, trimmed(p.period)),
            (None, _) => format!("aperiodic within b_max = {}\n", self.b_max),
        }
    }
}

/// Rotation-number period detection, confirmed by simulating one cycle of the
/// four-particle system.
///
/// The cycle starts at `sigma1` when given. Otherwise it starts at
/// `h^-1(-e^{i pi / b})`, which keeps the orbit half a grid step away from the
/// preimages of the pole at `sigma = 2E`.
pub fn run_period(
    params: &MirrorParams<f64>,
    k: f64,
    b_max: u64,
    tol: f64,
    sigma1: Option<f64>,
) -> Result<PeriodReport, CliError> {
    if k.is_nan() || k <= 0.0 {
        return Err(ConfigError::new("k", format!("must be positive for a bounded orbit, got {k}")).into());
    }
    let detected = period(params, k, b_max, tol)?;
    let simulated = match detected {
        Some(p) => {
            let b = p.b as usize;
            let sigma1 = match sigma1 {
                Some(s) => s,
                None => conjugacy_h_inverse(-Complex64::from_polar(1.0, PI / p.b as f64), params)?.re,
            };
            let initial = MirrorState::with_motion_constant(params, sigma1, k, 0.0)?;
            let start = billiard_state(params, &initial)?;
            let sim = simulate(&start, Direction::Forward, &StopCondition::MaxEvents(3 * b + 3))?;
            let outer: Vec<f64> = sim
                .events
                .iter()
                .filter(|ev| ev.pair == (0, 1))
                .map(|ev| ev.t)
                .collect();
            outer.get(b - 1).map(|t| t - initial.t)
        }
        None => None,
    };
    Ok(PeriodReport {
        detected,
        simulated,
        b_max,
    })
}

/// One grid point of a tachyonic scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    pub mu: f64,
    pub energy: f64,
    pub sigma0: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub point: ScanPoint,
    pub delta: f64,
    pub class: Option<TachyonicClass>,
    pub count: Option<TachyonicCount>,
    pub error: Option<String>,
}

impl ScanRow {
    pub fn agrees(&self) -> bool {
        match (&self.class, &self.count) {
            (Some(class), Some(count)) => count.agrees_with(*class),
            _ => false,
        }
    }
}

pub fn grid(mus: &[f64], energies: &[f64], sigmas: &[f64]) -> Vec<ScanPoint> {
    let mut points = Vec::with_capacity(mus.len() * energies.len() * sigmas.len());
    for &mu in mus {
        for &energy in energies {
            for &sigma0 in sigmas {
                points.push(ScanPoint { mu, energy, sigma0 });
            }
        }
    }
    points
}

fn scan_point(point: ScanPoint, steps: usize) -> ScanRow {
    let params = match MirrorParams::new(point.mu, point.energy) {
        Ok(p) => p,
        Err(e) => {
            return ScanRow {
                point,
                delta: f64::NAN,
                class: None,
                count: None,
                error: Some(e.to_string()),
            };
        }
    };
    let class = classify_tachyonic(&params, &point.sigma0);
    let (count, error) = match count_tachyonic(&params, &point.sigma0, steps) {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e.to_string())),
    };
    ScanRow {
        point,
        delta: *params.delta(),
        class: Some(class),
        count,
        error,
    }
}

/// Classifies and counts every grid point; points are independent and run in parallel.
pub fn scan(points: &[ScanPoint], steps: usize) -> Vec<ScanRow> {
    points.par_iter().map(|&p| scan_point(p, steps)).collect()
}

pub fn write_scan<W: std::io::Write>(out: W, rows: &[ScanRow]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "mu",
        "E",
        "sigma0",
        "delta",
        "class",
        "count",
        "indices",
        "consecutive",
        "agrees",
        "error",
    ])?;
    for r in rows {
        let (count, indices, consecutive) = match &r.count {
            Some(c) => {
                let shown: Vec<String> = c.indices.iter().take(8).map(|i| i.to_string()).collect();
                let more = if c.indices.len() > 8 { ";..." } else { "" };
                (
                    c.count().to_string(),
                    format!("{}{more}", shown.join(";")),
                    c.consecutive().to_string(),
                )
            }
            None => (String::new(), String::new(), String::new()),
        };
        w.write_record([
            format!("{:e}", r.point.mu),
            format!("{:e}", r.point.energy),
            format!("{:e}", r.point.sigma0),
            format!("{:e}", r.delta),
            r.class.map(|c| c.to_string()).unwrap_or_default(),
            count,
            indices,
            consecutive,
            r.agrees().to_string(),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn run_tachyon_scan(points: &[ScanPoint], steps: usize, out_dir: &Path) -> Result<Outcome, CliError> {
    if points.is_empty() {
        return Err(ConfigError::new("grid", "empty grid").into());
    }
    let rows = scan(points, steps);
    let path = out_dir.join("tachyon_scan.csv");
    let mut buf = Vec::new();
    write_scan(&mut buf, &rows).map_err(|e| CliError::Parse {
        path: path.clone(),
        message: e.to_string(),
    })?;
    write_atomic(&path, &buf)?;
    let agree = rows.iter().filter(|r| r.agrees()).count();
    let mut text = String::new();
    for r in &rows {
        let count = r
            .count
            .as_ref()
            .map(|c| c.count().to_string())
            .unwrap_or_else(|| "-".into());
        let class = r.class.map(|c| c.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            text,
            "mu={:e} E={:e} sigma0={:e}: {class}, count {count}{}",
            r.point.mu,
            r.point.energy,
            r.point.sigma0,
            r.error.as_ref().map(|e| format!(" ({e})")).unwrap_or_default()
        );
    }
    let _ = writeln!(text, "{agree}/{} points agree with the classification", rows.len());
    Ok(Outcome::ok(text, vec![path]))
}

/// Draws an existing `events.csv`.
pub fn run_render(input: &Path, out_dir: &Path) -> Result<Outcome, CliError> {
    let file = fs::File::open(input).map_err(|e| CliError::io(input, e))?;
    let records = read_events::<f64, _>(file).map_err(|e| record_error(input, e))?;
    if records.is_empty() {
        return Err(ConfigError::new("input", "event log is empty").into());
    }
    let events: Vec<_> = records.into_iter().map(|r| r.event).collect();
    let path = out_dir.join("spacetime.svg");
    write_atomic(&path, render_spacetime(&events).as_bytes())?;
    Ok(Outcome::ok(format!("{} events drawn\n", events.len()), vec![path]))
}
