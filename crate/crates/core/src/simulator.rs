//! Event-driven evolution of N free particles on the line.
//!
//! Between collisions every particle moves with constant velocity; adjacent
//! particles that approach each other collide elastically when their worldlines
//! meet. The schedule is recomputed from the current state at every step.
//! Simultaneous collisions at distinct places are resolved together; several
//! collisions at one place (a multiple collision) are rejected.
//!
//! Backward evolution negates every velocity, runs the forward scheduler and
//! negates back, so both directions share one code path.

use thiserror::Error;

use crate::collision::{collide, collision_condition, CollisionError};
use crate::kinematics::ParticleState;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    fn apply<S: Scalar>(self, value: S) -> S {
        match self {
            Direction::Forward => value,
            Direction::Backward => -value,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StopCondition<S> {
    /// Stop once the log holds at least this many events. A step resolving
    /// several simultaneous collisions is never split.
    MaxEvents(usize),
    /// Evolve up to this time (in the chosen direction) and stop there.
    TimeLimit(S),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("no next event")]
    NoNextEvent,
    #[error("triple collision at t = {t}, x = {x}")]
    TripleCollision { t: f64, x: f64 },
    #[error("collision of particles {} and {} at t = {t}: {source}", .pair.0, .pair.1)]
    Collision {
        pair: (usize, usize),
        t: f64,
        source: CollisionError,
    },
    #[error("particles {} and {} still approach each other after colliding at t = {t}", .pair.0, .pair.1)]
    NonSeparating { pair: (usize, usize), t: f64 },
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("event {index}: {source}")]
    AtEvent { index: usize, source: Box<SimError> },
}

impl SimError {
    /// The underlying error, without event-index context.
    pub fn root(&self) -> &SimError {
        match self {
            SimError::AtEvent { source, .. } => source.root(),
            other => other,
        }
    }
}

/// Positions and momenta of all particles at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct BilliardState<S> {
    pub particles: Vec<ParticleState<S>>,
    pub t: S,
}

impl<S: Scalar> BilliardState<S> {
    /// Checks `N >= 2`, nonzero energies and `x_1 <= x_2 <= ... <= x_N`.
    pub fn new(particles: Vec<ParticleState<S>>, t: S) -> Result<Self, SimError> {
        if particles.len() < 2 {
            return Err(SimError::InvalidState(format!(
                "need at least two particles, got {}",
                particles.len()
            )));
        }
        if let Some(k) = particles.iter().position(|p| p.energy.is_zero()) {
            return Err(SimError::InvalidState(format!("particle {k} has zero energy")));
        }
        if let Some(k) = particles.windows(2).position(|w| w[0].x > w[1].x) {
            return Err(SimError::InvalidState(format!(
                "positions must be nondecreasing: x[{k}] > x[{}]",
                k + 1
            )));
        }
        Ok(BilliardState { particles, t })
    }

    pub fn total_energy(&self) -> S {
        self.particles.iter().fold(S::zero(), |acc, p| acc + p.energy.clone())
    }

    pub fn total_momentum(&self) -> S {
        self.particles.iter().fold(S::zero(), |acc, p| acc + p.momentum.clone())
    }

    pub fn is_ordered(&self) -> bool {
        self.particles.windows(2).all(|w| w[0].x <= w[1].x)
    }

    /// Free flight by a signed time offset.
    pub fn advanced(&self, dt: &S) -> Self {
        let particles = self
            .particles
            .iter()
            .map(|p| ParticleState {
                x: p.position_after(dt),
                ..p.clone()
            })
            .collect();
        BilliardState {
            particles,
            t: self.t.clone() + dt.clone(),
        }
    }
}

/// A collision the scheduler found for an adjacent pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduledCollision<S> {
    pub pair: (usize, usize),
    /// Absolute event time.
    pub t: S,
    /// Non-negative time until the event, measured in the step direction.
    pub dt: S,
    pub x: S,
}

/// One resolved collision.
#[derive(Debug, Clone, PartialEq)]
pub struct CollisionEvent<S> {
    pub t: S,
    pub pair: (usize, usize),
    pub x: S,
    /// States on the side the step came from (before, for forward runs).
    pub pre: [ParticleState<S>; 2],
    pub post: [ParticleState<S>; 2],
    pub tachyonic: bool,
    pub sign_flips: (bool, bool),
}

/// Adjacent pairs achieving the earliest collision time in `direction`.
///
/// Pairs with equal velocities or separating motion never collide. A pair at zero
/// distance that is approaching collides immediately (`dt = 0`).
pub fn next_collisions<S: Scalar>(state: &BilliardState<S>, direction: Direction) -> Vec<ScheduledCollision<S>> {
    let mut candidates: Vec<ScheduledCollision<S>> = Vec::new();
    for (k, w) in state.particles.windows(2).enumerate() {
        let (left, right) = (&w[0], &w[1]);
        if !collision_condition(&left.sigma_rho(), &right.sigma_rho()) {
            continue;
        }
        let v_left = direction.apply(left.velocity());
        let v_right = direction.apply(right.velocity());
        let closing = v_left.clone() - v_right.clone();
        if !closing.positive() {
            continue;
        }
        let mut dt = (right.x.clone() - left.x.clone()) / closing;
        if dt.negative() {
            // Rounding can leave an approaching pair marginally crossed.
            dt = S::zero();
        }
        // Meeting point from the slower particle.
        let x = if right.velocity().abs() < left.velocity().abs() {
            right.x.clone() + v_right * dt.clone()
        } else {
            left.x.clone() + v_left * dt.clone()
        };
        candidates.push(ScheduledCollision {
            pair: (k, k + 1),
            t: state.t.clone() + direction.apply(dt.clone()),
            dt,
            x,
        });
    }

    let Some(first) = candidates
        .iter()
        .min_by(|a, b| a.dt.partial_cmp(&b.dt).expect("finite collision times"))
    else {
        return candidates;
    };
    let earliest = first.dt.clone();
    let scale = S::one().max_abs(&first.t);
    candidates.retain(|c| c.dt.approx_eq(&earliest, &scale));
    candidates
}

/// Advances to the next event time and resolves every collision happening then.
pub fn step<S: Scalar>(
    state: &BilliardState<S>,
    direction: Direction,
) -> Result<(BilliardState<S>, Vec<CollisionEvent<S>>), SimError> {
    let schedule = next_collisions(state, direction);
    if schedule.is_empty() {
        return Err(SimError::NoNextEvent);
    }
    apply_schedule(state, direction, &schedule)
}

fn apply_schedule<S: Scalar>(
    state: &BilliardState<S>,
    direction: Direction,
    schedule: &[ScheduledCollision<S>],
) -> Result<(BilliardState<S>, Vec<CollisionEvent<S>>), SimError> {
    for (a, b) in schedule.iter().zip(schedule.iter().skip(1)) {
        let shares_particle = a.pair.1 == b.pair.0;
        let same_place = a.x.approx_eq(&b.x, &a.x.max_abs(&b.x));
        if shares_particle || same_place {
            return Err(SimError::TripleCollision {
                t: b.t.as_f64(),
                x: b.x.as_f64(),
            });
        }
    }

    let dt = schedule
        .iter()
        .map(|c| c.dt.clone())
        .reduce(|a, b| if b < a { b } else { a })
        .expect("nonempty schedule");
    let mut next = state.advanced(&direction.apply(dt));
    let mut events = Vec::with_capacity(schedule.len());

    for event in schedule {
        let (i, j) = event.pair;
        let mut pre = [next.particles[i].clone(), next.particles[j].clone()];
        pre[0].x = event.x.clone();
        pre[1].x = event.x.clone();
        let (a, b, outcome) = collide(&pre[0], &pre[1]).map_err(|source| SimError::Collision {
            pair: event.pair,
            t: event.t.as_f64(),
            source,
        })?;
        if direction.apply(a.velocity()) > direction.apply(b.velocity()) {
            return Err(SimError::NonSeparating {
                pair: event.pair,
                t: event.t.as_f64(),
            });
        }
        next.particles[i] = a.clone();
        next.particles[j] = b.clone();
        events.push(CollisionEvent {
            t: event.t.clone(),
            pair: event.pair,
            x: event.x.clone(),
            pre,
            post: [a, b],
            tachyonic: outcome.tachyonic,
            sign_flips: (outcome.sign_flip_i, outcome.sign_flip_j),
        });
    }

    // Collision points and free flight are rounded separately in float mode.
    for k in 1..next.particles.len() {
        if next.particles[k].x < next.particles[k - 1].x {
            next.particles[k].x = next.particles[k - 1].x.clone();
        }
    }
    Ok((next, events))
}

/// Result of [`simulate`]: the final state and the event log in time order of
/// the run (decreasing times for backward runs).
#[derive(Debug, Clone, PartialEq)]
pub struct Simulation<S> {
    pub state: BilliardState<S>,
    pub events: Vec<CollisionEvent<S>>,
}

/// Repeats [`step`] until the stop condition holds or no collision remains.
pub fn simulate<S: Scalar>(
    initial: &BilliardState<S>,
    direction: Direction,
    stop: &StopCondition<S>,
) -> Result<Simulation<S>, SimError> {
    let mut state = initial.clone();
    let mut events: Vec<CollisionEvent<S>> = Vec::new();
    loop {
        if let StopCondition::MaxEvents(max) = stop {
            if events.len() >= *max {
                break;
            }
        }
        let schedule = next_collisions(&state, direction);
        let beyond_limit = |t: &S| match (stop, direction) {
            (StopCondition::TimeLimit(limit), Direction::Forward) => t > limit,
            (StopCondition::TimeLimit(limit), Direction::Backward) => t < limit,
            _ => false,
        };
        if schedule.is_empty() || beyond_limit(&schedule[0].t) {
            if let StopCondition::TimeLimit(limit) = stop {
                let remaining = limit.clone() - state.t.clone();
                if direction.apply(remaining.clone()).positive() {
                    state = state.advanced(&remaining);
                }
            }
            break;
        }
        let index = events.len();
        let (next, mut new_events) =
            apply_schedule(&state, direction, &schedule).map_err(|source| SimError::AtEvent {
                index,
                source: Box::new(source),
            })?;
        state = next;
        events.append(&mut new_events);
    }
    Ok(Simulation { state, events })
}
