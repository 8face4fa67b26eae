//! CSV serialization of event logs and mirror trajectories.
//!
//! Each file starts with a `#` schema line naming the format and its version,
//! followed by an ordinary CSV header. Numbers are written in a form that
//! parses back to the identical value in the same arithmetic.

use std::io::{BufRead, BufReader, Read, Write};

use billiards_core::mirror::MirrorState;
use billiards_core::{CollisionEvent, ParticleState, Scalar};

pub const EVENTS_SCHEMA: &str = "# billiards-events v1";
pub const MIRROR_SCHEMA: &str = "# billiards-mirror v1";

const EVENT_COLUMNS: [&str; 27] = [
    "n",
    "t",
    "i",
    "j",
    "x",
    "tachyonic",
    "flip_i",
    "flip_j",
    "label_i",
    "label_j",
    "E_i",
    "P_i",
    "mu_i",
    "E_j",
    "P_j",
    "mu_j",
    "E_i_after",
    "P_i_after",
    "mu_i_after",
    "E_j_after",
    "P_j_after",
    "mu_j_after",
    "mirror_n",
    "sigma1",
    "E2",
    "x1",
    "k",
];

const MIRROR_COLUMNS: [&str; 6] = ["n", "t", "sigma1", "E2", "x1", "k"];

/// One row of `events.csv`: a collision, plus the mirror state recorded at it
/// when the run is a mirror system. The mirror state shares the event time.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord<S> {
    pub n: usize,
    pub event: CollisionEvent<S>,
    pub mirror: Option<MirrorState<S>>,
}

#[derive(Debug, thiserror::Error)]
pub enum RecordError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("expected schema line `{expected}`, found `{found}`")]
    Schema { expected: &'static str, found: String },
    #[error("row {row}, column `{column}`: {message}")]
    Field {
        row: usize,
        column: &'static str,
        message: String,
    },
}

fn bool_text(b: bool) -> String {
    if b { "true" } else { "false" }.to_string()
}

/// Pairs each 1-2 collision with the mirror state recorded at the same time.
pub fn attach_mirror_states<S: Scalar>(
    events: &[CollisionEvent<S>],
    states: &[MirrorState<S>],
) -> Vec<TrajectoryRecord<S>> {
    let mut states = states.iter().peekable();
    events
        .iter()
        .enumerate()
        .map(|(n, event)| {
            let mirror = if event.pair == (0, 1) && states.peek().is_some_and(|s| s.t == event.t) {
                states.next().cloned()
            } else {
                None
            };
            TrajectoryRecord {
                n,
                event: event.clone(),
                mirror,
            }
        })
        .collect()
}

pub fn write_events<S: Scalar, W: Write>(out: W, records: &[TrajectoryRecord<S>]) -> Result<(), RecordError> {
    let mut out = out;
    writeln!(out, "{EVENTS_SCHEMA}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(EVENT_COLUMNS)?;
    for rec in records {
        let e = &rec.event;
        let mut row = vec![
            rec.n.to_string(),
            e.t.to_literal(),
            e.pair.0.to_string(),
            e.pair.1.to_string(),
            e.x.to_literal(),
            bool_text(e.tachyonic),
            bool_text(e.sign_flips.0),
            bool_text(e.sign_flips.1),
            e.pre[0].label.to_string(),
            e.pre[1].label.to_string(),
        ];
        for p in e.pre.iter().chain(&e.post) {
            row.extend([p.energy.to_literal(), p.momentum.to_literal(), p.mu.to_literal()]);
        }
        match &rec.mirror {
            Some(m) => row.extend([
                m.n.to_string(),
                m.sigma1.to_literal(),
                m.e2.to_literal(),
                m.x1.to_literal(),
                m.motion_constant().to_literal(),
            ]),
            None => row.extend(std::iter::repeat_n(String::new(), 5)),
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn check_schema<R: BufRead>(input: &mut R, expected: &'static str) -> Result<(), RecordError> {
    let mut line = String::new();
    input.read_line(&mut line)?;
    let found = line.trim_end_matches(['\n', '\r']);
    if found != expected {
        return Err(RecordError::Schema {
            expected,
            found: found.to_string(),
        });
    }
    Ok(())
}

struct Row<'a> {
    record: &'a csv::StringRecord,
    row: usize,
    columns: &'static [&'static str],
}

impl Row<'_> {
    fn text(&self, index: usize) -> Result<&str, RecordError> {
        self.record.get(index).ok_or(RecordError::Field {
            row: self.row,
            column: self.columns[index],
            message: "missing".into(),
        })
    }

    fn error(&self, index: usize, message: String) -> RecordError {
        RecordError::Field {
            row: self.row,
            column: self.columns[index],
            message,
        }
    }

    fn scalar<S: Scalar>(&self, index: usize) -> Result<S, RecordError> {
        let text = self.text(index)?;
        S::parse_literal(text).ok_or_else(|| self.error(index, format!("`{text}` is not a number")))
    }

    fn parsed<T: std::str::FromStr>(&self, index: usize) -> Result<T, RecordError> {
        let text = self.text(index)?;
        text.parse()
            .map_err(|_| self.error(index, format!("cannot parse `{text}`")))
    }
}

pub fn read_events<S: Scalar, R: Read>(input: R) -> Result<Vec<TrajectoryRecord<S>>, RecordError> {
    let mut input = BufReader::new(input);
    check_schema(&mut input, EVENTS_SCHEMA)?;
    let mut reader = csv::Reader::from_reader(input);
    let mut records = Vec::new();
    for (row, result) in reader.records().enumerate() {
        let record = result?;
        let r = Row {
            record: &record,
            row,
            columns: &EVENT_COLUMNS,
        };
        let t: S = r.scalar(1)?;
        let x: S = r.scalar(4)?;
        let labels: [usize; 2] = [r.parsed(8)?, r.parsed(9)?];
        let particle = |offset: usize, side: usize| -> Result<ParticleState<S>, RecordError> {
            Ok(ParticleState {
                energy: r.scalar(offset)?,
                momentum: r.scalar(offset + 1)?,
                mu: r.scalar(offset + 2)?,
                x: x.clone(),
                label: labels[side],
            })
        };
        let event = CollisionEvent {
            t: t.clone(),
            pair: (r.parsed(2)?, r.parsed(3)?),
            x: x.clone(),
            pre: [particle(10, 0)?, particle(13, 1)?],
            post: [particle(16, 0)?, particle(19, 1)?],
            tachyonic: r.parsed(5)?,
            sign_flips: (r.parsed(6)?, r.parsed(7)?),
        };
        let mirror = if r.text(22)?.is_empty() {
            None
        } else {
            Some(MirrorState {
                n: r.parsed(22)?,
                sigma1: r.scalar(23)?,
                e2: r.scalar(24)?,
                x1: r.scalar(25)?,
                t: t.clone(),
            })
        };
        records.push(TrajectoryRecord {
            n: r.parsed(0)?,
            event,
            mirror,
        });
    }
    Ok(records)
}

pub fn write_mirror<S: Scalar, W: Write>(out: W, states: &[MirrorState<S>]) -> Result<(), RecordError> {
    let mut out = out;
    writeln!(out, "{MIRROR_SCHEMA}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(MIRROR_COLUMNS)?;
    for s in states {
        w.write_record([
            s.n.to_string(),
            s.t.to_literal(),
            s.sigma1.to_literal(),
            s.e2.to_literal(),
            s.x1.to_literal(),
            s.motion_constant().to_literal(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_mirror<S: Scalar, R: Read>(input: R) -> Result<Vec<MirrorState<S>>, RecordError> {
    let mut input = BufReader::new(input);
    check_schema(&mut input, MIRROR_SCHEMA)?;
    let mut reader = csv::Reader::from_reader(input);
    let mut states = Vec::new();
    for (row, result) in reader.records().enumerate() {
        let record = result?;
        let r = Row {
            record: &record,
            row,
            columns: &MIRROR_COLUMNS,
        };
        states.push(MirrorState {
            n: r.parsed(0)?,
            t: r.scalar(1)?,
            sigma1: r.scalar(2)?,
            e2: r.scalar(3)?,
            x1: r.scalar(4)?,
        });
    }
    Ok(states)
}
