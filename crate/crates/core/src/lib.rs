//! One-dimensional relativistic billiards with energies and squared masses of
//! either sign.
//!
//! Particles move freely on the line and collide elastically, conserving total
//! energy and momentum. Collisions are solved in light-cone coordinates
//! `sigma = E + P`, `rho = E - P`. The [`simulator`] runs general N-particle
//! systems event by event; [`mirror`] treats the symmetric four-particle system
//! through its one-dimensional reduced map.

pub mod collision;
pub mod kinematics;
pub mod mirror;
pub mod scalar;
pub mod simulator;

pub use collision::{collide, resolve_collision, CollisionError, CollisionOutcome};
pub use kinematics::{KinematicsError, ParticleState, SigmaRho};
pub use scalar::{Arithmetic, Rational, Scalar, REL_TOL};
pub use simulator::{simulate, BilliardState, CollisionEvent, Direction, SimError, Simulation, StopCondition};
