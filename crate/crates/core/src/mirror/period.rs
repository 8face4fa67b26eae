//! Detection of periodic solutions from the rotation number of the reduced map.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{conjugacy_h, conjugacy_h_inverse, reduced_map, rotation_angle, MirrorError, MirrorParams};

pub const DEFAULT_B_MAX: u64 = 10_000;
pub const DEFAULT_TOL: f64 = 1e-9;

/// A detected periodic solution: `theta = 2 pi a / b` and time period `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Period {
    pub a: u64,
    pub b: u64,
    pub period: f64,
}

/// Continued-fraction convergents `p / q` of `x >= 0` with `q <= max_den`.
pub fn convergents(x: f64, max_den: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    if !x.is_finite() || x < 0.0 {
        return out;
    }
    let (mut p_prev, mut q_prev) = (0u128, 1u128);
    let (mut p, mut q) = (1u128, 0u128);
    let mut rest = x;
    for _ in 0..64 {
        let term = rest.floor();
        if term > u64::MAX as f64 {
            break;
        }
        let a = term as u128;
        let (p_next, q_next) = (a * p + p_prev, a * q + q_prev);
        if q_next > max_den as u128 {
            break;
        }
        (p_prev, q_prev, p, q) = (p, q, p_next, q_next);
        out.push((p as u64, q as u64));
        let frac = rest - term;
        if frac <= f64::EPSILON * rest.max(1.0) {
            break;
        }
        rest = 1.0 / frac;
    }
    out
}

/// Looks for `theta / 2 pi` within `tol` of a fraction `a / b` with `b <= b_max`.
///
/// Each candidate is confirmed by iterating the reduced map `b` times and
/// checking that the orbit closes. Returns `None` when no candidate survives.
pub fn period(params: &MirrorParams<f64>, k: f64, b_max: u64, tol: f64) -> Result<Option<Period>, MirrorError> {
    let theta = rotation_angle(params)?;
    let turns = theta / (2.0 * PI);
    for (a, b) in convergents(turns, b_max) {
        if a == 0 || (turns - a as f64 / b as f64).abs() > tol {
            continue;
        }
        if closes_after(params, b, tol)? {
            let period = 2.0 * k * b as f64 * params.mu() / -params.delta();
            return Ok(Some(Period { a, b, period }));
        }
    }
    Ok(None)
}

/// Whether `b` steps of the map bring a real point back to itself, measured
/// as an angle on the conjugate circle. The start point keeps the orbit at
/// least `pi / 2b` away from the pole.
fn closes_after(params: &MirrorParams<f64>, b: u64, tol: f64) -> Result<bool, MirrorError> {
    let z0 = Complex64::from_polar(1.0, PI / (2.0 * b as f64));
    let sigma0 = conjugacy_h_inverse(z0, params)?.re;
    let mut sigma = sigma0;
    for _ in 0..b {
        sigma = reduced_map(&sigma, params)?;
    }
    let drift = (conjugacy_h(sigma, params)? / conjugacy_h(sigma0, params)?).arg().abs();
    let b = b as f64;
    Ok(drift <= 2.0 * PI * b * tol + 1e-9 * b)
}
