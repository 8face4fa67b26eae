//! Two-particle elastic collisions in light-cone coordinates.
//!
//! With `s = sigma_i + sigma_j` and `r = rho_i + rho_j` fixed by energy and momentum
//! conservation, the system `sigma'_k rho'_k = mu_k` has exactly two solutions: the
//! incoming state and
//!
//! ```text
//! sigma'_i = rho_i s / r    rho'_i = sigma_i r / s
//! sigma'_j = rho_j s / r    rho'_j = sigma_j r / s
//! ```
//!
//! `sr = E^2 - P^2` is the squared rest mass of the pair; a collision with
//! `sr < 0` is called tachyonic.

use thiserror::Error;

use crate::kinematics::{ParticleState, SigmaRho};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CollisionError {
    #[error("degenerate collision (sr = 0)")]
    Degenerate,
    #[error("no collision: particles have equal velocities")]
    NoCollision,
    #[error("collision leaves a particle with zero energy")]
    ZeroEnergy,
}

/// Result of resolving one collision.
#[derive(Debug, Clone, PartialEq)]
pub struct CollisionOutcome<S> {
    pub sr_i_after: SigmaRho<S>,
    pub sr_j_after: SigmaRho<S>,
    /// `sigma_i + sigma_j`, conserved.
    pub s: S,
    /// `rho_i + rho_j`, conserved.
    pub r: S,
    pub tachyonic: bool,
    pub sign_flip_i: bool,
    pub sign_flip_j: bool,
}

fn determinant<S: Scalar>(i: &SigmaRho<S>, j: &SigmaRho<S>) -> (S, S) {
    let a = i.sigma.clone() * j.rho.clone();
    let b = j.sigma.clone() * i.rho.clone();
    let scale = a.abs() + b.abs();
    (a - b, scale)
}

/// `sigma_i rho_j - sigma_j rho_i != 0`, i.e. the velocities differ.
pub fn collision_condition<S: Scalar>(i: &SigmaRho<S>, j: &SigmaRho<S>) -> bool {
    let (det, scale) = determinant(i, j);
    !det.negligible(&scale)
}

/// `(sigma_i + sigma_j)(rho_i + rho_j)`, the squared rest mass of the pair.
pub fn rest_mass_squared<S: Scalar>(i: &SigmaRho<S>, j: &SigmaRho<S>) -> S {
    (i.sigma.clone() + j.sigma.clone()) * (i.rho.clone() + j.rho.clone())
}

pub fn is_tachyonic<S: Scalar>(i: &SigmaRho<S>, j: &SigmaRho<S>) -> bool {
    rest_mass_squared(i, j).negative()
}

/// Returns the non-trivial solution of the collision equations.
///
/// Equal squared masses resolve to the exact exchange of coordinates. Sign-flip
/// flags compare the energy before and after, independently of `sr`.
pub fn resolve_collision<S: Scalar>(
    i: &SigmaRho<S>,
    mu_i: &S,
    j: &SigmaRho<S>,
    mu_j: &S,
) -> Result<CollisionOutcome<S>, CollisionError> {
    if !collision_condition(i, j) {
        return Err(CollisionError::NoCollision);
    }
    let s = i.sigma.clone() + j.sigma.clone();
    let r = i.rho.clone() + j.rho.clone();
    if s.negligible(&(i.sigma.abs() + j.sigma.abs())) || r.negligible(&(i.rho.abs() + j.rho.abs())) {
        return Err(CollisionError::Degenerate);
    }

    let (sr_i_after, sr_j_after) = if mu_i == mu_j {
        (j.clone(), i.clone())
    } else {
        let s_over_r = s.clone() / r.clone();
        let r_over_s = r.clone() / s.clone();
        (
            SigmaRho::new(i.rho.clone() * s_over_r.clone(), i.sigma.clone() * r_over_s.clone()),
            SigmaRho::new(j.rho.clone() * s_over_r, j.sigma.clone() * r_over_s),
        )
    };

    let zero_energy = |sr: &SigmaRho<S>| sr.energy().negligible(&(sr.sigma.abs() + sr.rho.abs()));
    if zero_energy(&sr_i_after) || zero_energy(&sr_j_after) {
        return Err(CollisionError::ZeroEnergy);
    }

    let flipped = |before: &SigmaRho<S>, after: &SigmaRho<S>| (before.energy() * after.energy()).negative();
    Ok(CollisionOutcome {
        sign_flip_i: flipped(i, &sr_i_after),
        sign_flip_j: flipped(j, &sr_j_after),
        tachyonic: (s.clone() * r.clone()).negative(),
        sr_i_after,
        sr_j_after,
        s,
        r,
    })
}

/// Post-collision states of both particles and the outcome.
pub type Collided<S> = (ParticleState<S>, ParticleState<S>, CollisionOutcome<S>);

/// Collides two particles, returning their post-collision states (positions and
/// labels unchanged, squared masses carried over) together with the outcome.
pub fn collide<S: Scalar>(a: &ParticleState<S>, b: &ParticleState<S>) -> Result<Collided<S>, CollisionError> {
    let outcome = resolve_collision(&a.sigma_rho(), &a.mu, &b.sigma_rho(), &b.mu)?;
    let rebuild = |p: &ParticleState<S>, sr: &SigmaRho<S>| ParticleState {
        energy: sr.energy(),
        momentum: sr.momentum(),
        mu: p.mu.clone(),
        x: p.x.clone(),
        label: p.label,
    };
    Ok((
        rebuild(a, &outcome.sr_i_after),
        rebuild(b, &outcome.sr_j_after),
        outcome,
    ))
}
