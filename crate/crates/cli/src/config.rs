//! Scenario files.
//!
//! A scenario is a TOML document:
//!
//! ```toml
//! mode = "mirror"          # or "general"
//! arithmetic = "float"     # or "rational"
//! direction = "forward"    # "backward" or "both"
//! outputs = ["events", "mirror", "spacetime", "report"]
//!
//! [stop]
//! events = 30              # or: time = 12.5
//!
//! [mirror]
//! mu = 4
//! energy = 1
//! sigma1 = 1
//! x1 = -1
//!
//! [[particles]]            # general mode, left to right
//! energy = 1
//! momentum = 0             # or: velocity = 0.5
//! mu = 1                   # optional, defaults to E^2 - P^2
//! x = -1
//! ```
//!
//! Numbers may be written as TOML numbers or as strings; strings accept `p/q`
//! fractions, which keeps rational scenarios exact.

use std::fmt;
use std::path::Path;

use billiards_core::mirror::{MirrorParams, MirrorState};
use billiards_core::{Arithmetic, BilliardState, Direction, ParticleState, Scalar, StopCondition};
use serde::Deserialize;

use crate::error::{CliError, ConfigError};

/// A number as written in the file.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Literal {
    /// Converts to `S`. Floats go through their shortest decimal form, so `0.1`
    /// becomes exactly `1/10` in rational mode.
    pub fn to_scalar<S: Scalar>(&self, path: &str) -> Result<S, ConfigError> {
        let parsed = match self {
            Literal::Int(v) => Some(S::from_int(*v)),
            Literal::Float(v) => S::parse_literal(&v.to_string()),
            Literal::Text(text) => S::parse_literal(text),
        };
        parsed.ok_or_else(|| ConfigError::new(path, format!("`{self}` is not a finite number")))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Int(v) => write!(f, "{v}"),
            Literal::Float(v) => write!(f, "{v}"),
            Literal::Text(v) => f.write_str(v),
        }
    }
}

impl From<f64> for Literal {
    fn from(value: f64) -> Self {
        Literal::Float(value)
    }
}

impl From<i64> for Literal {
    fn from(value: i64) -> Self {
        Literal::Int(value)
    }
}

impl From<&str> for Literal {
    fn from(value: &str) -> Self {
        Literal::Text(value.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    General,
    Mirror,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionChoice {
    #[default]
    Forward,
    Backward,
    Both,
}

impl DirectionChoice {
    pub fn directions(self) -> Vec<Direction> {
        match self {
            DirectionChoice::Forward => vec![Direction::Forward],
            DirectionChoice::Backward => vec![Direction::Backward],
            DirectionChoice::Both => vec![Direction::Forward, Direction::Backward],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    /// `events.csv`, one row per collision.
    Events,
    /// `mirror.csv`, one row per mirror state.
    Mirror,
    /// `spacetime.svg`.
    Spacetime,
    /// `report.txt`.
    Report,
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StopConfig {
    pub events: Option<usize>,
    pub time: Option<Literal>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleConfig {
    pub energy: Literal,
    pub momentum: Option<Literal>,
    pub velocity: Option<Literal>,
    pub mu: Option<Literal>,
    pub x: Literal,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MirrorConfig {
    pub mu: Literal,
    pub energy: Literal,
    pub sigma1: Literal,
    pub x1: Literal,
    pub t: Option<Literal>,
}

/// The file contents, before any numeric validation.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub mode: Mode,
    #[serde(default)]
    pub arithmetic: Option<String>,
    #[serde(default)]
    pub direction: DirectionChoice,
    #[serde(default)]
    pub stop: Option<StopConfig>,
    #[serde(default)]
    pub particles: Vec<ParticleConfig>,
    #[serde(default)]
    pub mirror: Option<MirrorConfig>,
    #[serde(default)]
    pub outputs: Option<Vec<Output>>,
}

/// Validated mirror data.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorSetup<S> {
    pub params: MirrorParams<S>,
    pub initial: MirrorState<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioKind<S> {
    General(BilliardState<S>),
    Mirror(MirrorSetup<S>),
}

/// A validated scenario in arithmetic `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario<S> {
    pub kind: ScenarioKind<S>,
    pub stop: StopCondition<S>,
    pub directions: Vec<Direction>,
    pub outputs: Vec<Output>,
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| {
            let message = e.message().to_string();
            let path = e
                .span()
                .map(|span| {
                    let line = text[..span.start].matches('\n').count() + 1;
                    format!("line {line}")
                })
                .unwrap_or_else(|| "document".to_string());
            ConfigError::new(path, message)
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Ok(Self::from_toml(&text)?)
    }

    pub fn arithmetic(&self) -> Result<Arithmetic, ConfigError> {
        match &self.arithmetic {
            None => Ok(Arithmetic::Float),
            Some(text) => text.parse().map_err(|e: String| ConfigError::new("arithmetic", e)),
        }
    }

    /// Replaces the stop condition by an event limit.
    pub fn with_event_limit(mut self, events: usize) -> Self {
        self.stop = Some(StopConfig {
            events: Some(events),
            time: None,
        });
        self
    }

    pub fn mirror_setup<S: Scalar>(&self) -> Result<MirrorSetup<S>, ConfigError> {
        let m = self
            .mirror
            .as_ref()
            .ok_or_else(|| ConfigError::new("mirror", "missing [mirror] section"))?;
        let mu: S = m.mu.to_scalar("mirror.mu")?;
        let energy: S = m.energy.to_scalar("mirror.energy")?;
        let sigma1: S = m.sigma1.to_scalar("mirror.sigma1")?;
        let x1: S = m.x1.to_scalar("mirror.x1")?;
        let t: S = match &m.t {
            Some(t) => t.to_scalar("mirror.t")?,
            None => S::zero(),
        };
        if !mu.positive() {
            return Err(ConfigError::new("mirror.mu", format!("must be positive, got {mu}")));
        }
        if energy.is_zero() {
            return Err(ConfigError::new("mirror.energy", "must be nonzero"));
        }
        if sigma1.is_zero() {
            return Err(ConfigError::new("mirror.sigma1", "must be nonzero"));
        }
        if !x1.negative() {
            return Err(ConfigError::new("mirror.x1", format!("must be negative, got {x1}")));
        }
        let params = MirrorParams::new(mu, energy).map_err(|e| ConfigError::new("mirror", e.to_string()))?;
        let initial =
            MirrorState::initial(&params, sigma1, x1, t).map_err(|e| ConfigError::new("mirror", e.to_string()))?;
        Ok(MirrorSetup { params, initial })
    }

    fn general_state<S: Scalar>(&self) -> Result<BilliardState<S>, ConfigError> {
        if self.particles.is_empty() {
            return Err(ConfigError::new("particles", "empty particle list"));
        }
        let mut particles: Vec<ParticleState<S>> = Vec::with_capacity(self.particles.len());
        for (i, p) in self.particles.iter().enumerate() {
            let path = |field: &str| format!("particles[{i}].{field}");
            let energy: S = p.energy.to_scalar(&path("energy"))?;
            if energy.is_zero() {
                return Err(ConfigError::new(path("energy"), "must be nonzero"));
            }
            let momentum: S = match (&p.momentum, &p.velocity) {
                (Some(m), None) => m.to_scalar(&path("momentum"))?,
                (None, Some(v)) => energy.clone() * v.to_scalar::<S>(&path("velocity"))?,
                _ => {
                    return Err(ConfigError::new(
                        format!("particles[{i}]"),
                        "give exactly one of `momentum` and `velocity`",
                    ))
                }
            };
            let x: S = p.x.to_scalar(&path("x"))?;
            let particle = match &p.mu {
                Some(mu) => ParticleState::new(energy, momentum, mu.to_scalar(&path("mu"))?, x, i),
                None => ParticleState::from_energy_momentum(energy, momentum, x, i),
            }
            .map_err(|e| ConfigError::new(format!("particles[{i}]"), e.to_string()))?;
            if let Some(prev) = particles.last() {
                if particle.x < prev.x {
                    return Err(ConfigError::new(
                        path("x"),
                        format!("position {} is left of particles[{}].x = {}", particle.x, i - 1, prev.x),
                    ));
                }
                if particle.x == prev.x && particle.velocity() == prev.velocity() {
                    return Err(ConfigError::new(
                        format!("particles[{i}]"),
                        format!("coincides with particles[{}] and moves with the same velocity", i - 1),
                    ));
                }
            }
            particles.push(particle);
        }
        BilliardState::new(particles, S::zero()).map_err(|e| ConfigError::new("particles", e.to_string()))
    }

    fn stop_condition<S: Scalar>(&self) -> Result<StopCondition<S>, ConfigError> {
        let stop = self
            .stop
            .as_ref()
            .ok_or_else(|| ConfigError::new("stop", "missing [stop] section (or pass --events)"))?;
        match (stop.events, &stop.time) {
            (Some(n), None) => Ok(StopCondition::MaxEvents(n)),
            (None, Some(t)) => Ok(StopCondition::TimeLimit(t.to_scalar("stop.time")?)),
            _ => Err(ConfigError::new("stop", "give exactly one of `events` and `time`")),
        }
    }

    /// Validates everything and converts the numbers to `S`.
    pub fn build<S: Scalar>(&self) -> Result<Scenario<S>, ConfigError> {
        let kind = match self.mode {
            Mode::General => {
                if self.mirror.is_some() {
                    return Err(ConfigError::new("mirror", "not allowed in general mode"));
                }
                ScenarioKind::General(self.general_state()?)
            }
            Mode::Mirror => {
                if !self.particles.is_empty() {
                    return Err(ConfigError::new("particles", "not allowed in mirror mode"));
                }
                ScenarioKind::Mirror(self.mirror_setup()?)
            }
        };
        let outputs = match &self.outputs {
            Some(list) => list.clone(),
            None if self.mode == Mode::Mirror => vec![Output::Events, Output::Mirror, Output::Report],
            None => vec![Output::Events, Output::Report],
        };
        if self.mode == Mode::General && outputs.contains(&Output::Mirror) {
            return Err(ConfigError::new("outputs", "`mirror` output needs mirror mode"));
        }
        Ok(Scenario {
            kind,
            stop: self.stop_condition()?,
            directions: self.direction.directions(),
            outputs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use billiards_core::Rational;

    const WORKED: &str = r#"
mode = "general"
[stop]
events = 10
[[particles]]
energy = 1
momentum = 0
x = -1
[[particles]]
energy = -1
velocity = -1
mu = 0
x = 0
"#;

    #[test]
    fn parses_general_scenario() {
        let cfg = ScenarioConfig::from_toml(WORKED).unwrap();
        let s: Scenario<f64> = cfg.build().unwrap();
        let ScenarioKind::General(state) = s.kind else {
            panic!("general mode")
        };
        assert_eq!(state.particles.len(), 2);
        assert_eq!(state.particles[1].momentum, 1.0);
        assert_eq!(s.stop, StopCondition::MaxEvents(10));
        assert_eq!(s.directions, vec![Direction::Forward]);
    }

    #[test]
    fn rational_literals_are_exact() {
        let cfg = ScenarioConfig::from_toml(
            "mode = \"mirror\"\n[stop]\ntime = \"7/2\"\n[mirror]\nmu = 3\nenergy = 1\nsigma1 = \"1/3\"\nx1 = -0.1\n",
        )
        .unwrap();
        let s: Scenario<Rational> = cfg.build().unwrap();
        let ScenarioKind::Mirror(m) = s.kind else {
            panic!("mirror mode")
        };
        assert_eq!(m.initial.sigma1, Rational::new(1.into(), 3.into()));
        assert_eq!(m.initial.x1, Rational::new((-1).into(), 10.into()));
        assert_eq!(s.stop, StopCondition::TimeLimit(Rational::new(7.into(), 2.into())));
    }

    #[test]
    fn errors_name_the_field() {
        let err = |text: &str| {
            ScenarioConfig::from_toml(text)
                .unwrap()
                .build::<f64>()
                .unwrap_err()
                .path
        };
        assert_eq!(err("mode = \"general\"\n[stop]\nevents = 1\n"), "particles");
        assert_eq!(
            err("mode = \"mirror\"\n[stop]\nevents = 1\n[mirror]\nmu = 4\nenergy = 1\nsigma1 = 1\nx1 = 1\n"),
            "mirror.x1"
        );
        assert_eq!(
            err("mode = \"mirror\"\n[stop]\nevents = 1\n[mirror]\nmu = 4\nenergy = 0\nsigma1 = 1\nx1 = -1\n"),
            "mirror.energy"
        );
        assert_eq!(
            err("mode = \"mirror\"\n[stop]\nevents = 1\n[mirror]\nmu = 4\nenergy = 1\nsigma1 = 0\nx1 = -1\n"),
            "mirror.sigma1"
        );
        let unordered = WORKED.replace("x = 0", "x = -2");
        assert_eq!(err(&unordered), "particles[1].x");
        let twins = "mode = \"general\"\n[stop]\nevents = 1\n[[particles]]\nenergy = 1\nvelocity = 0.5\nx = 0\n[[particles]]\nenergy = 2\nvelocity = 0.5\nx = 0\n";
        assert_eq!(err(twins), "particles[1]");
        let both = WORKED.replace("velocity = -1", "velocity = -1\nmomentum = 1");
        assert_eq!(err(&both), "particles[1]");
        assert_eq!(err(&WORKED.replace("events = 10", "events = 10\ntime = 1")), "stop");
        assert_eq!(err(&WORKED.replace("x = -1", "x = \"abc\"")), "particles[0].x");
    }

    #[test]
    fn syntax_errors_carry_a_line() {
        let e = ScenarioConfig::from_toml("mode = \"general\"\nbogus = 1\n").unwrap_err();
        assert_eq!(e.path, "line 2");
        let e = ScenarioConfig::from_toml("mode = \"sideways\"\n").unwrap_err();
        assert_eq!(e.path, "line 1");
    }
}
