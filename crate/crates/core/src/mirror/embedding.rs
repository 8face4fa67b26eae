//! Full four-particle realization of a mirror state, and the way back.
//!
//! Particles are labelled 0..=3 from left to right (particle 1 of the reduced
//! description is label 0). The state right after the `n`-th 1-2 collision puts
//! particles 0 and 1 at `x_1`, particles 2 and 3 at `-x_1`, the massless pair
//! moving toward the origin.

use super::{MirrorError, MirrorParams, MirrorState};
use crate::kinematics::{ParticleState, SigmaRho};
use crate::scalar::Scalar;
use crate::simulator::{BilliardState, CollisionEvent, Direction};

pub fn billiard_state<S: Scalar>(
    params: &MirrorParams<S>,
    state: &MirrorState<S>,
) -> Result<BilliardState<S>, MirrorError> {
    if state.e2.is_zero() {
        return Err(MirrorError::FixedPointOrbit {
            sigma: state.sigma1.as_f64(),
        });
    }
    let mu = params.mu().clone();
    let x = state.x1.clone();
    let sr = SigmaRho::new(state.sigma1.clone(), mu.clone() / state.sigma1.clone());
    let invalid = |e: crate::kinematics::KinematicsError| MirrorError::InvalidParams(e.to_string());

    let p1 = ParticleState::from_sigma_rho(&sr, mu.clone(), x.clone(), 0).map_err(invalid)?;
    let p4 = ParticleState {
        momentum: -p1.momentum.clone(),
        x: -x.clone(),
        label: 3,
        ..p1.clone()
    };
    let e2 = state.e2.clone();
    let p2 = ParticleState::new(e2.clone(), e2.clone(), S::zero(), x.clone(), 1).map_err(invalid)?;
    let p3 = ParticleState::new(e2.clone(), -e2, S::zero(), -x, 2).map_err(invalid)?;

    BilliardState::new(vec![p1, p2, p3, p4], state.t.clone()).map_err(|e| MirrorError::InvalidParams(e.to_string()))
}

/// Reads mirror states off the 1-2 collisions of a simulation started from
/// [`billiard_state`] of `initial`.
///
/// Forward runs give states `n = 1, 2, ...`. A backward run first undoes the
/// collision that produced `initial`; its `m`-th 1-2 event supplies `sigma_1`
/// and `E_2` of state `-m` (the motion before that collision), and the position
/// and time of state `-m` come from event `m + 1`. States are returned in the
/// order they are reached.
pub fn states_from_events<S: Scalar>(
    initial: &MirrorState<S>,
    events: &[CollisionEvent<S>],
    direction: Direction,
) -> Vec<MirrorState<S>> {
    let outer: Vec<&CollisionEvent<S>> = events.iter().filter(|e| e.pair == (0, 1)).collect();
    match direction {
        Direction::Forward => outer
            .iter()
            .enumerate()
            .map(|(i, e)| MirrorState {
                n: initial.n + i as i64 + 1,
                sigma1: e.post[0].energy.clone() + e.post[0].momentum.clone(),
                e2: e.post[1].energy.clone(),
                x1: e.x.clone(),
                t: e.t.clone(),
            })
            .collect(),
        Direction::Backward => outer
            .windows(2)
            .enumerate()
            .map(|(i, w)| MirrorState {
                n: initial.n - i as i64 - 1,
                sigma1: w[0].post[0].energy.clone() + w[0].post[0].momentum.clone(),
                e2: w[0].post[1].energy.clone(),
                x1: w[1].x.clone(),
                t: w[1].t.clone(),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mirror::reduced_trajectory;
    use crate::simulator::{simulate, StopCondition};

    #[test]
    fn embedding_is_symmetric() {
        let p = MirrorParams::new(4.0, 1.0).unwrap();
        let init = MirrorState::initial(&p, 1.0, -1.0, 0.0).unwrap();
        let b = billiard_state(&p, &init).unwrap();
        let xs: Vec<f64> = b.particles.iter().map(|q| q.x).collect();
        assert_eq!(xs, vec![-1.0, -1.0, 1.0, 1.0]);
        assert_eq!(b.total_momentum(), 0.0);
        assert_eq!(b.total_energy(), 2.0);
        assert_eq!(b.particles[1].velocity(), 1.0);
        assert_eq!(b.particles[2].velocity(), -1.0);
    }

    #[test]
    fn fixed_point_has_no_embedding() {
        let p = MirrorParams::new(0.75, 1.0).unwrap();
        let init = MirrorState::initial(&p, 0.5, -1.0, 0.0).unwrap();
        assert!(matches!(
            billiard_state(&p, &init),
            Err(MirrorError::FixedPointOrbit { .. })
        ));
    }

    #[test]
    fn three_cycle_matches_reduced_trajectory() {
        let p = MirrorParams::new(4.0, 1.0).unwrap();
        let init = MirrorState::initial(&p, 1.0, -1.0, 0.0).unwrap();
        let b = billiard_state(&p, &init).unwrap();

        let fwd = simulate(&b, Direction::Forward, &StopCondition::MaxEvents(24)).unwrap();
        let states = states_from_events(&init, &fwd.events, Direction::Forward);
        let oracle = reduced_trajectory(&p, &init, states.len(), 0).unwrap();
        assert!(states.len() >= 6);
        for (s, o) in states.iter().zip(&oracle[1..]) {
            assert_eq!(s.n, o.n);
            for (a, b) in [(s.sigma1, o.sigma1), (s.e2, o.e2), (s.x1, o.x1), (s.t, o.t)] {
                assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{s:?} vs {o:?}");
            }
        }

        let bwd = simulate(&b, Direction::Backward, &StopCondition::MaxEvents(24)).unwrap();
        let states = states_from_events(&init, &bwd.events, Direction::Backward);
        let oracle = reduced_trajectory(&p, &init, 0, states.len()).unwrap();
        assert!(states.len() >= 5);
        for (s, o) in states.iter().zip(oracle.iter().rev().skip(1)) {
            assert_eq!(s.n, o.n);
            for (a, b) in [(s.sigma1, o.sigma1), (s.e2, o.e2), (s.x1, o.x1), (s.t, o.t)] {
                assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{s:?} vs {o:?}");
            }
        }
    }
}
