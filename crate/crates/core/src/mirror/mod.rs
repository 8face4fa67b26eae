//! The symmetric four-particle system.
//!
//! Particles 1 and 4 have squared mass `mu > 0` and mirror positions
//! `x_4 = -x_1`; the massless particles 2 and 3 bounce between them and meet at
//! the origin. With `E = E_1 + E_2` the whole evolution is captured by
//! `sigma_1 = E_1 + P_1` taken after each 1-2 collision, which evolves under
//!
//! ```text
//! f(sigma) = mu / (2E - sigma)
//! ```
//!
//! while `E_2` and the collision position `x_1` follow multiplicative updates
//! and `x_1 E_2 / sigma_1` stays constant.

mod analysis;
pub mod embedding;
mod period;

use thiserror::Error;

use crate::scalar::Scalar;

pub use analysis::{
    classify_tachyonic, conjugacy_h, conjugacy_h_inverse, count_tachyonic, fixed_points, limit_products,
    limit_velocities, map_derivative, rotation_angle, tachyon_scale_bound, FixedPoints, LimitVelocities,
    TachyonicClass, TachyonicCount,
};
pub use period::{convergents, period, Period, DEFAULT_B_MAX, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MirrorError {
    #[error("invalid mirror parameters: {0}")]
    InvalidParams(String),
    #[error("pole of reduced map at sigma = {sigma}")]
    Pole { sigma: f64 },
    #[error("sigma_1 = 0")]
    ZeroSigma,
    #[error("not elliptic: discriminant {delta} >= 0")]
    NotElliptic { delta: f64 },
    #[error("discriminant {delta} < 0: orbit does not escape")]
    NotEscaping { delta: f64 },
    #[error("conjugacy undefined for zero discriminant")]
    Parabolic,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("sigma_1 = {sigma} is a fixed point: middle particles carry zero energy")]
    FixedPointOrbit { sigma: f64 },
    #[error("step {n}: {source}")]
    AtStep { n: i64, source: Box<MirrorError> },
}

/// System constants: squared mass `mu` of the outer particles and total energy
/// `E = E_1 + E_2` of one half of the system.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorParams<S = f64> {
    mu: S,
    total_energy: S,
    delta: S,
}

impl<S: Scalar> MirrorParams<S> {
    /// Requires `mu > 0` and `E != 0`.
    pub fn new(mu: S, total_energy: S) -> Result<Self, MirrorError> {
        if !mu.positive() {
            return Err(MirrorError::InvalidParams(format!("mu must be positive, got {mu}")));
        }
        if total_energy.is_zero() {
            return Err(MirrorError::InvalidParams("total energy must be nonzero".into()));
        }
        let delta = total_energy.clone() * total_energy.clone() - mu.clone();
        Ok(MirrorParams {
            mu,
            total_energy,
            delta,
        })
    }

    pub fn mu(&self) -> &S {
        &self.mu
    }

    pub fn total_energy(&self) -> &S {
        &self.total_energy
    }

    /// Discriminant `E^2 - mu`.
    pub fn delta(&self) -> &S {
        &self.delta
    }

    fn two_e(&self) -> S {
        S::two() * self.total_energy.clone()
    }

    pub fn to_f64(&self) -> MirrorParams<f64> {
        MirrorParams {
            mu: self.mu.as_f64(),
            total_energy: self.total_energy.as_f64(),
            delta: self.delta.as_f64(),
        }
    }
}

/// State right after the `n`-th 1-2 collision: `sigma_1` and `E_2` until the next
/// one, the collision position `x_1 < 0` and its time.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorState<S = f64> {
    pub n: i64,
    pub sigma1: S,
    pub e2: S,
    pub x1: S,
    pub t: S,
}

impl<S: Scalar> MirrorState<S> {
    /// State with `E_2` fixed by `2E_2 = 2E - sigma_1 - mu / sigma_1`.
    pub fn initial(params: &MirrorParams<S>, sigma1: S, x1: S, t: S) -> Result<Self, MirrorError> {
        if sigma1.is_zero() {
            return Err(MirrorError::ZeroSigma);
        }
        if !x1.negative() {
            return Err(MirrorError::InvalidParams(format!("x1 must be negative, got {x1}")));
        }
        let e2 = middle_energy(params, &sigma1);
        Ok(MirrorState {
            n: 0,
            sigma1,
            e2,
            x1,
            t,
        })
    }

    /// State whose position is chosen so that the motion constant equals `k`.
    pub fn with_motion_constant(params: &MirrorParams<S>, sigma1: S, k: S, t: S) -> Result<Self, MirrorError> {
        if sigma1.is_zero() {
            return Err(MirrorError::ZeroSigma);
        }
        let e2 = middle_energy(params, &sigma1);
        if e2.is_zero() {
            return Err(MirrorError::FixedPointOrbit { sigma: sigma1.as_f64() });
        }
        let x1 = k * sigma1.clone() / e2.clone();
        if !x1.negative() {
            return Err(MirrorError::InvalidParams(format!(
                "motion constant gives nonnegative x1 = {x1}"
            )));
        }
        Ok(MirrorState {
            n: 0,
            sigma1,
            e2,
            x1,
            t,
        })
    }

    pub fn motion_constant(&self) -> S {
        // sigma1 != 0 is maintained by construction and by the updates.
        self.x1.clone() * self.e2.clone() / self.sigma1.clone()
    }

    /// `kappa = -2 E_2 / sigma_1`.
    pub fn kappa(&self) -> S {
        -(S::two() * self.e2.clone()) / self.sigma1.clone()
    }

    /// Energy of particle 1, `(sigma_1 + mu / sigma_1) / 2`.
    pub fn e1(&self, params: &MirrorParams<S>) -> S {
        (self.sigma1.clone() + params.mu.clone() / self.sigma1.clone()).half()
    }

    pub fn to_f64(&self) -> MirrorState<f64> {
        MirrorState {
            n: self.n,
            sigma1: self.sigma1.as_f64(),
            e2: self.e2.as_f64(),
            x1: self.x1.as_f64(),
            t: self.t.as_f64(),
        }
    }

    /// Velocity of particle 1 until the next collision.
    pub fn v1(&self, params: &MirrorParams<S>) -> S {
        let s2 = self.sigma1.clone() * self.sigma1.clone();
        (s2.clone() - params.mu.clone()) / (s2 + params.mu.clone())
    }
}

/// `E_2` from the energy balance `2E_2 + sigma_1 + mu / sigma_1 = 2E`.
pub fn middle_energy<S: Scalar>(params: &MirrorParams<S>, sigma1: &S) -> S {
    (params.two_e() - sigma1.clone() - params.mu.clone() / sigma1.clone()).half()
}

fn pole_check<S: Scalar>(params: &MirrorParams<S>, sigma: &S) -> Result<S, MirrorError> {
    let two_e = params.two_e();
    let den = two_e.clone() - sigma.clone();
    if den.negligible(&two_e.max_abs(sigma)) {
        return Err(MirrorError::Pole { sigma: sigma.as_f64() });
    }
    Ok(den)
}

/// `f(sigma) = mu / (2E - sigma)`.
pub fn reduced_map<S: Scalar>(sigma: &S, params: &MirrorParams<S>) -> Result<S, MirrorError> {
    let den = pole_check(params, sigma)?;
    Ok(params.mu.clone() / den)
}

/// `f^-1(sigma) = 2E - mu / sigma`.
pub fn inverse_map<S: Scalar>(sigma: &S, params: &MirrorParams<S>) -> Result<S, MirrorError> {
    if sigma.is_zero() {
        return Err(MirrorError::ZeroSigma);
    }
    Ok(params.two_e() - params.mu.clone() / sigma.clone())
}

/// `E_2' = E_2 sigma_1 / (2E - sigma_1)`.
pub fn e2_update<S: Scalar>(e2: &S, sigma1: &S, params: &MirrorParams<S>) -> Result<S, MirrorError> {
    let den = pole_check(params, sigma1)?;
    Ok(e2.clone() * sigma1.clone() / den)
}

/// `x_1' = x_1 mu / sigma_1^2`.
pub fn x1_update<S: Scalar>(x1: &S, sigma1: &S, params: &MirrorParams<S>) -> Result<S, MirrorError> {
    if sigma1.is_zero() {
        return Err(MirrorError::ZeroSigma);
    }
    Ok(x1.clone() * params.mu.clone() / (sigma1.clone() * sigma1.clone()))
}

/// `x_1 E_2 / sigma_1`.
pub fn motion_constant<S: Scalar>(x1: &S, e2: &S, sigma1: &S) -> Result<S, MirrorError> {
    if sigma1.is_zero() {
        return Err(MirrorError::ZeroSigma);
    }
    Ok(x1.clone() * e2.clone() / sigma1.clone())
}

/// Whether the collision following a state with this `sigma_1` is tachyonic:
/// `sigma_1 (sigma_1 - 2E) > 0`.
pub fn tachyonic_predicate<S: Scalar>(sigma1: &S, params: &MirrorParams<S>) -> bool {
    (sigma1.clone() * (sigma1.clone() - params.two_e())).positive()
}

fn forward<S: Scalar>(params: &MirrorParams<S>, s: &MirrorState<S>) -> Result<MirrorState<S>, MirrorError> {
    let sigma1 = reduced_map(&s.sigma1, params)?;
    let e2 = e2_update(&s.e2, &s.sigma1, params)?;
    let x1 = x1_update(&s.x1, &s.sigma1, params)?;
    // The middle particle runs to the origin and back at unit speed.
    let t = s.t.clone() - s.x1.clone() - x1.clone();
    Ok(MirrorState {
        n: s.n + 1,
        sigma1,
        e2,
        x1,
        t,
    })
}

fn backward<S: Scalar>(params: &MirrorParams<S>, s: &MirrorState<S>) -> Result<MirrorState<S>, MirrorError> {
    let sigma1 = inverse_map(&s.sigma1, params)?;
    if sigma1.is_zero() {
        return Err(MirrorError::ZeroSigma);
    }
    let e2 = s.e2.clone() * params.mu.clone() / (s.sigma1.clone() * sigma1.clone());
    let x1 = s.x1.clone() * sigma1.clone() * sigma1.clone() / params.mu.clone();
    let t = s.t.clone() + s.x1.clone() + x1.clone();
    Ok(MirrorState {
        n: s.n - 1,
        sigma1,
        e2,
        x1,
        t,
    })
}

/// States `n = -n_backward ..= n_forward` (ascending), starting from `initial`.
pub fn reduced_trajectory<S: Scalar>(
    params: &MirrorParams<S>,
    initial: &MirrorState<S>,
    n_forward: usize,
    n_backward: usize,
) -> Result<Vec<MirrorState<S>>, MirrorError> {
    let at = |n: i64| {
        move |source| MirrorError::AtStep {
            n,
            source: Box::new(source),
        }
    };

    let mut past = Vec::with_capacity(n_backward);
    let mut current = initial.clone();
    for _ in 0..n_backward {
        current = backward(params, &current).map_err(at(current.n - 1))?;
        past.push(current.clone());
    }
    past.reverse();

    let mut states = past;
    states.push(initial.clone());
    let mut current = initial.clone();
    for _ in 0..n_forward {
        current = forward(params, &current).map_err(at(current.n + 1))?;
        states.push(current.clone());
    }
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn params(mu: f64, e: f64) -> MirrorParams {
        MirrorParams::new(mu, e).unwrap()
    }

    #[test]
    fn reduced_map_examples() {
        assert_eq!(reduced_map(&0.5, &params(0.75, 1.0)).unwrap(), 0.5);
        let p = params(4.0, 1.0);
        assert_eq!(reduced_map(&1.0, &p).unwrap(), 4.0);
        assert_eq!(reduced_map(&4.0, &p).unwrap(), -2.0);
        assert_eq!(reduced_map(&-2.0, &p).unwrap(), 1.0);
        assert_eq!(reduced_map(&3.0, &params(1.0, 1.0)).unwrap(), -1.0);
        assert!(matches!(reduced_map(&2.0, &p), Err(MirrorError::Pole { .. })));
        assert!(matches!(reduced_map(&(2.0 + 1e-14), &p), Err(MirrorError::Pole { .. })));
    }

    #[test]
    fn inverse_map_examples() {
        let p = params(4.0, 1.0);
        assert_eq!(inverse_map(&4.0, &p).unwrap(), 1.0);
        assert_eq!(inverse_map(&0.5, &params(0.75, 1.0)).unwrap(), 0.5);
        assert_eq!(inverse_map(&-1.0, &params(1.0, 1.0)).unwrap(), 3.0);
        assert_eq!(inverse_map(&0.0, &p), Err(MirrorError::ZeroSigma));
    }

    #[test]
    fn update_examples() {
        let p = params(4.0, 1.0);
        assert_eq!(e2_update(&-1.5, &1.0, &p).unwrap(), -1.5);
        assert_eq!(e2_update(&-1.5, &4.0, &p).unwrap(), 3.0);
        assert_eq!(e2_update(&0.0, &4.0, &p).unwrap(), 0.0);
        assert_eq!(x1_update(&-1.0, &1.0, &p).unwrap(), -4.0);
        assert_eq!(x1_update(&-4.0, &4.0, &p).unwrap(), -1.0);
        assert_eq!(x1_update(&-3.0, &2.0, &p).unwrap(), -3.0);
        assert_eq!(x1_update(&-3.0, &0.0, &p), Err(MirrorError::ZeroSigma));
    }

    #[test]
    fn motion_constant_examples() {
        assert_eq!(motion_constant(&-1.0, &-1.5, &1.0).unwrap(), 1.5);
        assert_eq!(motion_constant(&-4.0, &-1.5, &4.0).unwrap(), 1.5);
        assert_eq!(motion_constant(&-4.0, &0.0, &4.0).unwrap(), 0.0);
        assert_eq!(motion_constant(&-4.0, &1.0, &0.0), Err(MirrorError::ZeroSigma));
    }

    #[test]
    fn predicate_examples() {
        let p = params(4.0, 1.0);
        assert!(tachyonic_predicate(&4.0, &p));
        assert!(!tachyonic_predicate(&1.0, &p));
        assert!(!tachyonic_predicate(&2.0, &p));
    }

    #[test]
    fn three_cycle_trajectory() {
        let p = params(4.0, 1.0);
        let init = MirrorState::initial(&p, 1.0, -1.0, 0.0).unwrap();
        assert_eq!(init.e2, -1.5);
        let traj = reduced_trajectory(&p, &init, 6, 0).unwrap();
        let sigmas: Vec<f64> = traj.iter().map(|s| s.sigma1).collect();
        assert_eq!(sigmas, vec![1.0, 4.0, -2.0, 1.0, 4.0, -2.0, 1.0]);
        let xs: Vec<f64> = traj.iter().take(4).map(|s| s.x1).collect();
        assert_eq!(xs, vec![-1.0, -4.0, -1.0, -1.0]);
        let taus: Vec<f64> = traj.windows(2).take(3).map(|w| w[1].t - w[0].t).collect();
        assert_eq!(taus, vec![5.0, 5.0, 2.0]);
        assert_eq!(traj[3].t - traj[0].t, 12.0);
        assert!(traj.iter().all(|s| s.motion_constant() == 1.5));
    }

    #[test]
    fn trajectory_backward_mirrors_forward() {
        let p = params(4.0, 1.0);
        let init = MirrorState::initial(&p, 1.0, -1.0, 0.0).unwrap();
        let traj = reduced_trajectory(&p, &init, 0, 3).unwrap();
        assert_eq!(traj.len(), 4);
        assert_eq!(traj[0].n, -3);
        assert_eq!(traj[0].t, -12.0);
        assert_eq!(traj[0].sigma1, 1.0);
        assert_eq!(traj[3], init);
    }

    #[test]
    fn trivial_trajectory() {
        let p = params(4.0, 1.0);
        let init = MirrorState::initial(&p, 1.0, -1.0, 0.0).unwrap();
        assert_eq!(reduced_trajectory(&p, &init, 0, 0).unwrap(), vec![init]);
    }

    #[test]
    fn pole_reports_step() {
        // sigma = 1 -> f(1) = 2 = 2E for mu = 2, E = 1.
        let p = params(2.0, 1.0);
        let init = MirrorState::initial(&p, 1.0, -1.0, 0.0).unwrap();
        let err = reduced_trajectory(&p, &init, 5, 0).unwrap_err();
        assert!(matches!(err, MirrorError::AtStep { n: 2, .. }));
    }

    #[test]
    fn attracted_to_fixed_point() {
        let p = params(0.75, 1.0);
        let init = MirrorState::initial(&p, 1.0, -1.0, 0.0).unwrap();
        let traj = reduced_trajectory(&p, &init, 60, 0).unwrap();
        assert!(traj[..20].windows(2).all(|w| w[1].sigma1 < w[0].sigma1));
        assert!(traj.windows(2).all(|w| w[1].sigma1 <= w[0].sigma1));
        assert!((traj[60].sigma1 - 0.5).abs() < 1e-15);
        assert!(traj[60].e2.abs() < 1e-20);
    }

    #[test]
    fn rational_trajectory_is_exact() {
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        let p = MirrorParams::new(r(3, 1), r(1, 1)).unwrap();
        let init = MirrorState::initial(&p, r(1, 3), r(-1, 1), r(0, 1)).unwrap();
        let traj = reduced_trajectory(&p, &init, 40, 40).unwrap();
        let k = init.motion_constant();
        assert!(traj.iter().all(|s| s.motion_constant() == k));
        for s in &traj {
            let balance = Rational::two() * s.e2.clone() + s.sigma1.clone() + p.mu().clone() / s.sigma1.clone();
            assert_eq!(balance, r(2, 1));
        }
    }

    #[test]
    fn params_validation() {
        assert!(MirrorParams::new(0.0, 1.0).is_err());
        assert!(MirrorParams::new(-1.0, 1.0).is_err());
        assert!(MirrorParams::new(1.0, 0.0).is_err());
        assert_eq!(*params(4.0, 1.0).delta(), -3.0);
        assert!(MirrorState::initial(&params(4.0, 1.0), 1.0, 1.0, 0.0).is_err());
        assert!(MirrorState::initial(&params(4.0, 1.0), 0.0, -1.0, 0.0).is_err());
    }

    #[test]
    fn state_from_motion_constant() {
        let p = params(2.0, 1.0);
        let s = MirrorState::with_motion_constant(&p, 0.5, 1.0, 0.0).unwrap();
        assert!((s.motion_constant() - 1.0).abs() < 1e-15);
        assert!(s.x1 < 0.0);
    }
}
