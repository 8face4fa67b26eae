use std::fmt;

use num_complex::Complex64;

use super::{inverse_map, reduced_map, tachyonic_predicate, MirrorError, MirrorParams, MirrorState};
use crate::scalar::Scalar;

/// Fixed points of the reduced map, the roots of `s^2 - 2E s + mu = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedPoints {
    /// Two real roots. The slopes are `|f'|` at each point.
    Hyperbolic {
        attractor: f64,
        repeller: f64,
        attractor_slope: f64,
        repeller_slope: f64,
    },
    /// Double root `E`, neither attracting nor repelling.
    Parabolic { sigma: f64 },
    /// Complex-conjugate roots `E + i sqrt(-delta)` and its conjugate.
    Elliptic { pair: (Complex64, Complex64) },
}

fn is_parabolic(params: &MirrorParams<f64>) -> bool {
    let e = *params.total_energy();
    params.delta().negligible(&(e * e))
}

/// `f'(sigma) = mu / (2E - sigma)^2`.
pub fn map_derivative(sigma: f64, params: &MirrorParams<f64>) -> Result<f64, MirrorError> {
    let den = super::pole_check(params, &sigma)?;
    Ok(params.mu() / (den * den))
}

pub fn fixed_points(params: &MirrorParams<f64>) -> FixedPoints {
    let e = *params.total_energy();
    let delta = *params.delta();
    if is_parabolic(params) {
        return FixedPoints::Parabolic { sigma: e };
    }
    if delta < 0.0 {
        let im = (-delta).sqrt();
        return FixedPoints::Elliptic {
            pair: (Complex64::new(e, im), Complex64::new(e, -im)),
        };
    }
    let root = delta.sqrt();
    let (attractor, repeller) = if e > 0.0 {
        (e - root, e + root)
    } else {
        (e + root, e - root)
    };
    // At a fixed point 2E - s = mu / s, so f'(s) = s^2 / mu.
    let slope = |s: f64| s * s / params.mu();
    FixedPoints::Hyperbolic {
        attractor,
        repeller,
        attractor_slope: slope(attractor),
        repeller_slope: slope(repeller),
    }
}

/// Fixed points as complex numbers `(attractor, repeller)`; for an elliptic map
/// the attractor is the root with positive imaginary part.
fn complex_fixed_points(params: &MirrorParams<f64>) -> Result<(Complex64, Complex64), MirrorError> {
    match fixed_points(params) {
        FixedPoints::Hyperbolic {
            attractor, repeller, ..
        } => Ok((Complex64::new(attractor, 0.0), Complex64::new(repeller, 0.0))),
        FixedPoints::Parabolic { .. } => Err(MirrorError::Parabolic),
        FixedPoints::Elliptic { pair } => Ok(pair),
    }
}

/// `h(sigma) = (sigma - sigma_at) / (sigma_re - sigma)`, which conjugates the
/// reduced map to multiplication by `sigma_at / sigma_re`.
pub fn conjugacy_h(sigma: f64, params: &MirrorParams<f64>) -> Result<Complex64, MirrorError> {
    let (at, re) = complex_fixed_points(params)?;
    let den = re - sigma;
    if den.norm().negligible(&re.norm().max(sigma.abs())) {
        return Err(MirrorError::Pole { sigma });
    }
    Ok((sigma - at) / den)
}

/// `h^-1(z) = (sigma_at + z sigma_re) / (1 + z)`.
pub fn conjugacy_h_inverse(z: Complex64, params: &MirrorParams<f64>) -> Result<Complex64, MirrorError> {
    let (at, re) = complex_fixed_points(params)?;
    let den = 1.0 + z;
    if den.norm().negligible(&1.0f64.max(z.norm())) {
        return Err(MirrorError::Pole { sigma: f64::INFINITY });
    }
    Ok((at + z * re) / den)
}

/// Rotation angle `theta` in `(0, 2 pi)` with `sigma_at / sigma_re = e^{i theta}`.
pub fn rotation_angle(params: &MirrorParams<f64>) -> Result<f64, MirrorError> {
    let delta = *params.delta();
    if delta >= 0.0 || is_parabolic(params) {
        return Err(MirrorError::NotElliptic { delta });
    }
    Ok(2.0 * (-delta).sqrt().atan2(*params.total_energy()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TachyonicClass {
    InfinitelyMany,
    ExactlyTwoConsecutive,
    Absent,
}

impl fmt::Display for TachyonicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TachyonicClass::InfinitelyMany => "InfinitelyMany",
            TachyonicClass::ExactlyTwoConsecutive => "ExactlyTwoConsecutive",
            TachyonicClass::Absent => "None",
        })
    }
}

/// Number of tachyonic collisions in the full solution through `sigma1_0`.
///
/// A fixed point never satisfies the predicate (there `s(s - 2E) = -mu`), so a
/// stationary orbit is classified [`TachyonicClass::Absent`].
pub fn classify_tachyonic<S: Scalar>(params: &MirrorParams<S>, sigma1_0: &S) -> TachyonicClass {
    let e = params.total_energy();
    let delta = params.delta();
    if delta.negligible(&(e.clone() * e.clone())) {
        let on_fixed_point = sigma1_0.approx_eq(e, e);
        return if on_fixed_point {
            TachyonicClass::Absent
        } else {
            TachyonicClass::ExactlyTwoConsecutive
        };
    }
    if delta.negative() {
        return TachyonicClass::InfinitelyMany;
    }
    let offset = sigma1_0.clone() - e.clone();
    if offset.clone() * offset > delta.clone() {
        TachyonicClass::ExactlyTwoConsecutive
    } else {
        TachyonicClass::Absent
    }
}

/// Orbit indices `n` in `[-N, N]` whose state satisfies the tachyonic predicate,
/// i.e. whose following collision is tachyonic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TachyonicCount {
    pub indices: Vec<i64>,
    pub steps_each_way: usize,
}

impl TachyonicCount {
    pub fn count(&self) -> usize {
        self.indices.len()
    }

    pub fn consecutive(&self) -> bool {
        self.indices.windows(2).all(|w| w[1] == w[0] + 1)
    }

    /// Whether the counts match `class`. Recurrence is witnessed by at least two
    /// hits in each time direction.
    pub fn agrees_with(&self, class: TachyonicClass) -> bool {
        match class {
            TachyonicClass::InfinitelyMany => {
                let future = self.indices.iter().filter(|&&n| n > 0).count();
                let past = self.indices.iter().filter(|&&n| n < 0).count();
                future >= 2 && past >= 2
            }
            TachyonicClass::ExactlyTwoConsecutive => self.count() == 2 && self.consecutive(),
            TachyonicClass::Absent => self.count() == 0,
        }
    }
}

/// Iterates the reduced map `n_each_way` steps in both directions from
/// `sigma1_0` and records where the predicate holds.
pub fn count_tachyonic<S: Scalar>(
    params: &MirrorParams<S>,
    sigma1_0: &S,
    n_each_way: usize,
) -> Result<TachyonicCount, MirrorError> {
    let at = |n: i64| {
        move |source| MirrorError::AtStep {
            n,
            source: Box::new(source),
        }
    };
    let mut indices = Vec::new();

    let mut sigma = sigma1_0.clone();
    for n in 1..=n_each_way as i64 {
        sigma = inverse_map(&sigma, params).map_err(at(-n))?;
        if tachyonic_predicate(&sigma, params) {
            indices.push(-n);
        }
    }
    indices.reverse();

    let mut sigma = sigma1_0.clone();
    if tachyonic_predicate(&sigma, params) {
        indices.push(0);
    }
    for n in 1..=n_each_way as i64 {
        sigma = reduced_map(&sigma, params).map_err(at(n))?;
        if tachyonic_predicate(&sigma, params) {
            indices.push(n);
        }
    }
    Ok(TachyonicCount {
        indices,
        steps_each_way: n_each_way,
    })
}

/// Asymptotic velocities of particle 1 as `n -> -inf` and `n -> +inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitVelocities {
    pub past: f64,
    pub future: f64,
    /// Set for a zero discriminant: both limits vanish, approached from above
    /// in the past and from below in the future.
    pub zero_speed_bounce: bool,
}

/// `(sqrt(delta) / |E|, -sqrt(delta) / |E|)`: particle 1 arrives from the left
/// and escapes back to the left, whatever the sign of `E`.
pub fn limit_velocities(params: &MirrorParams<f64>) -> Result<LimitVelocities, MirrorError> {
    let delta = *params.delta();
    if is_parabolic(params) {
        return Ok(LimitVelocities {
            past: 0.0,
            future: 0.0,
            zero_speed_bounce: true,
        });
    }
    if delta < 0.0 {
        return Err(MirrorError::NotEscaping { delta });
    }
    let speed = delta.sqrt() / params.total_energy().abs();
    Ok(LimitVelocities {
        past: speed,
        future: -speed,
        zero_speed_bounce: false,
    })
}

/// Limits of `x_1^n E_2^n` as `n -> -inf` and `n -> +inf`: `k sigma_re` and
/// `k sigma_at` with `k` the motion constant.
pub fn limit_products(params: &MirrorParams<f64>, initial: &MirrorState<f64>) -> Result<(f64, f64), MirrorError> {
    let k = initial.motion_constant();
    match fixed_points(params) {
        FixedPoints::Hyperbolic {
            attractor, repeller, ..
        } => Ok((k * repeller, k * attractor)),
        FixedPoints::Parabolic { sigma } => Ok((k * sigma, k * sigma)),
        FixedPoints::Elliptic { .. } => Err(MirrorError::NotEscaping { delta: *params.delta() }),
    }
}

/// Upper bound `4 kappa E^2 / mu` on `x_1^n / x_1^0` over tachyonic collisions.
/// Requires `mu <= 2E^2` and `kappa >= 0`.
pub fn tachyon_scale_bound(params: &MirrorParams<f64>, kappa: f64) -> Result<f64, MirrorError> {
    let e2 = params.total_energy() * params.total_energy();
    let mu = *params.mu();
    if mu > 2.0 * e2 {
        return Err(MirrorError::Precondition(format!(
            "discriminant {} below -E^2 = {}",
            params.delta(),
            -e2
        )));
    }
    if kappa < 0.0 {
        return Err(MirrorError::Precondition(format!("kappa = {kappa} is negative")));
    }
    Ok(4.0 * kappa * e2 / mu)
}
