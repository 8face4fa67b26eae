//! Free relativistic particles with energy and squared mass of either sign.
//!
//! Units have the speed of light equal to one. A particle carries its energy
//! `E`, momentum `P = E v` and squared mass `mu = E^2 - P^2`; `mu` is stored rather
//! than recomputed so that numerical drift of `E^2 - P^2 - mu` stays observable.

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KinematicsError {
    #[error("undefined velocity: energy is zero")]
    UndefinedVelocity,
    #[error("degenerate kinematics: sigma^2 + mu = 0")]
    DegenerateKinematics,
    #[error("energy must be nonzero")]
    ZeroEnergy,
    #[error("squared mass {mu} inconsistent with E^2 - P^2 = {computed}")]
    MassMismatch { mu: f64, computed: f64 },
    #[error("massless particle must move at unit speed, got velocity {velocity}")]
    MasslessSpeed { velocity: f64 },
}

/// Light-cone coordinates `sigma = E + P`, `rho = E - P` of one particle.
///
/// `sigma * rho` is the squared mass, `sigma + rho = 2E`, `sigma - rho = 2P`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaRho<S> {
    pub sigma: S,
    pub rho: S,
}

impl<S: Scalar> SigmaRho<S> {
    pub fn new(sigma: S, rho: S) -> Self {
        SigmaRho { sigma, rho }
    }

    pub fn energy(&self) -> S {
        (self.sigma.clone() + self.rho.clone()).half()
    }

    pub fn momentum(&self) -> S {
        (self.sigma.clone() - self.rho.clone()).half()
    }

    pub fn mass_squared(&self) -> S {
        self.sigma.clone() * self.rho.clone()
    }
}

/// One free particle on the line.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticleState<S> {
    pub energy: S,
    pub momentum: S,
    /// Squared mass, stored independently of `energy` and `momentum`.
    pub mu: S,
    pub x: S,
    pub label: usize,
}

impl<S: Scalar> ParticleState<S> {
    /// Builds a particle, checking `E != 0`, `mu = E^2 - P^2` (relative tolerance in
    /// float mode, exactly in rational mode) and unit speed when `mu = 0`.
    pub fn new(energy: S, momentum: S, mu: S, x: S, label: usize) -> Result<Self, KinematicsError> {
        if energy.is_zero() {
            return Err(KinematicsError::ZeroEnergy);
        }
        let e2 = energy.clone() * energy.clone();
        let p2 = momentum.clone() * momentum.clone();
        let computed = e2.clone() - p2.clone();
        let scale = e2 + p2;
        if !computed.approx_eq(&mu, &scale) {
            return Err(KinematicsError::MassMismatch {
                mu: mu.as_f64(),
                computed: computed.as_f64(),
            });
        }
        if mu.is_zero() && momentum.abs() != energy.abs() {
            return Err(KinematicsError::MasslessSpeed {
                velocity: (momentum / energy).as_f64(),
            });
        }
        Ok(ParticleState {
            energy,
            momentum,
            mu,
            x,
            label,
        })
    }

    /// Particle whose squared mass is computed from `E` and `P`.
    pub fn from_energy_momentum(energy: S, momentum: S, x: S, label: usize) -> Result<Self, KinematicsError> {
        let mu = energy.clone() * energy.clone() - momentum.clone() * momentum.clone();
        Self::new(energy, momentum, mu, x, label)
    }

    /// Particle with momentum `P = E v`.
    pub fn from_velocity(energy: S, velocity: S, x: S, label: usize) -> Result<Self, KinematicsError> {
        let momentum = energy.clone() * velocity;
        Self::from_energy_momentum(energy, momentum, x, label)
    }

    /// Particle with the given light-cone coordinates and stored squared mass.
    pub fn from_sigma_rho(sr: &SigmaRho<S>, mu: S, x: S, label: usize) -> Result<Self, KinematicsError> {
        let (energy, momentum) = from_sigma_rho(sr);
        if energy.is_zero() {
            return Err(KinematicsError::ZeroEnergy);
        }
        Ok(ParticleState {
            energy,
            momentum,
            mu,
            x,
            label,
        })
    }

    pub fn velocity(&self) -> S {
        // E != 0 is a construction invariant.
        self.momentum.clone() / self.energy.clone()
    }

    pub fn sigma_rho(&self) -> SigmaRho<S> {
        to_sigma_rho(self)
    }

    /// `E^2 - P^2 - mu`; zero up to rounding for a healthy state.
    pub fn mass_drift(&self) -> S {
        self.energy.clone() * self.energy.clone() - self.momentum.clone() * self.momentum.clone() - self.mu.clone()
    }

    /// Position after free flight for `dt`.
    pub fn position_after(&self, dt: &S) -> S {
        self.x.clone() + self.velocity() * dt.clone()
    }
}

/// `v = P / E`.
pub fn velocity<S: Scalar>(energy: &S, momentum: &S) -> Result<S, KinematicsError> {
    if energy.is_zero() {
        return Err(KinematicsError::UndefinedVelocity);
    }
    Ok(momentum.clone() / energy.clone())
}

/// Velocity from light-cone coordinate and squared mass, `(sigma^2 - mu) / (sigma^2 + mu)`.
pub fn velocity_from_sigma<S: Scalar>(sigma: &S, mu: &S) -> Result<S, KinematicsError> {
    let s2 = sigma.clone() * sigma.clone();
    let den = s2.clone() + mu.clone();
    if den.negligible(&(s2.clone() + mu.abs())) {
        return Err(KinematicsError::DegenerateKinematics);
    }
    Ok((s2 - mu.clone()) / den)
}

/// Light-cone coordinates of a particle. The coordinate of larger magnitude is
/// `E +- P`; the smaller one is `mu` divided by it, which avoids the
/// cancellation in `E -+ P` for fast particles and equals it exactly when
/// `mu = E^2 - P^2` holds exactly.
pub fn to_sigma_rho<S: Scalar>(p: &ParticleState<S>) -> SigmaRho<S> {
    let sigma = p.energy.clone() + p.momentum.clone();
    let rho = p.energy.clone() - p.momentum.clone();
    if p.mu.is_zero() {
        return SigmaRho { sigma, rho };
    }
    if sigma.abs() >= rho.abs() {
        let rho = p.mu.clone() / sigma.clone();
        SigmaRho { sigma, rho }
    } else {
        let sigma = p.mu.clone() / rho.clone();
        SigmaRho { sigma, rho }
    }
}

/// Inverse of [`to_sigma_rho`]: returns `(E, P)`.
pub fn from_sigma_rho<S: Scalar>(sr: &SigmaRho<S>) -> (S, S) {
    (sr.energy(), sr.momentum())
}

/// Spin velocity `S = m / E` for a chosen signed mass `m` with `m^2 = mu`.
pub fn spin_velocity<S: Scalar>(mass: &S, energy: &S) -> Result<S, KinematicsError> {
    if energy.is_zero() {
        return Err(KinematicsError::ZeroEnergy);
    }
    Ok(mass.clone() / energy.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn velocity_examples() {
        assert_eq!(velocity(&1.0, &0.0).unwrap(), 0.0);
        assert_eq!(velocity(&-1.0, &1.0).unwrap(), -1.0);
        assert_eq!(velocity(&2.0, &1.0).unwrap(), 0.5);
        assert_eq!(velocity(&0.0, &1.0), Err(KinematicsError::UndefinedVelocity));
    }

    #[test]
    fn velocity_from_sigma_examples() {
        assert_eq!(velocity_from_sigma(&1.0, &1.0).unwrap(), 0.0);
        assert_eq!(velocity_from_sigma(&2.0, &0.0).unwrap(), 1.0);
        let v = velocity_from_sigma(&1.0, &0.75).unwrap();
        assert!((v - 1.0 / 7.0).abs() < 1e-15);
        // Cross-check against P / E with E = (sigma + mu/sigma) / 2.
        let e = (1.0 + 0.75) / 2.0;
        let p = (1.0 - 0.75) / 2.0;
        assert!((velocity(&e, &p).unwrap() - v).abs() < 1e-15);
        assert_eq!(
            velocity_from_sigma(&1.0, &-1.0),
            Err(KinematicsError::DegenerateKinematics)
        );
    }

    #[test]
    fn sigma_rho_examples() {
        let rest = ParticleState::from_energy_momentum(1.0, 0.0, 0.0, 0).unwrap();
        assert_eq!(rest.sigma_rho(), SigmaRho::new(1.0, 1.0));
        let photon = ParticleState::new(-1.0, 1.0, 0.0, 1.0, 1).unwrap();
        assert_eq!(photon.sigma_rho(), SigmaRho::new(0.0, -2.0));
        assert_eq!(from_sigma_rho(&SigmaRho::new(3.0, 1.0)), (2.0, 1.0));
    }

    #[test]
    fn spin_velocity_examples() {
        assert_eq!(spin_velocity(&1.0, &1.0).unwrap(), 1.0);
        assert_eq!(spin_velocity(&1.0, &-1.0).unwrap(), -1.0);
        assert_eq!(spin_velocity(&0.0, &-1.0).unwrap(), 0.0);
        assert_eq!(spin_velocity(&1.0, &0.0), Err(KinematicsError::ZeroEnergy));
    }

    #[test]
    fn construction_checks() {
        assert_eq!(
            ParticleState::new(0.0, 0.0, 0.0, 0.0, 0),
            Err(KinematicsError::ZeroEnergy)
        );
        assert!(matches!(
            ParticleState::new(2.0, 1.0, 1.0, 0.0, 0),
            Err(KinematicsError::MassMismatch { .. })
        ));
        assert!(ParticleState::new(2.0, 1.0, 3.0 + 1e-13, 0.0, 0).is_ok());
        // Rational mode has no slack.
        let r = |n: i64| Rational::from_integer(n.into());
        assert!(ParticleState::new(r(2), r(1), r(3), r(0), 0).is_ok());
        let off = r(3) + Rational::new(1.into(), 1_000_000_000_000_000i64.into());
        assert!(ParticleState::new(r(2), r(1), off, r(0), 0).is_err());
    }

    #[test]
    fn tachyon_from_velocity() {
        let p = ParticleState::from_velocity(1.0, 2.0, 0.0, 0).unwrap();
        assert_eq!(p.mu, -3.0);
        assert_eq!(p.velocity(), 2.0);
    }
}
