//! Spacetime diagrams: time upward, position to the right, one polyline per
//! particle. Worldlines are straight between collisions.

use std::fmt::Write;

use billiards_core::{CollisionEvent, Scalar};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 800.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#17becf", "#bcbd22", "#7f7f7f", "#e377c2",
];

/// Collision points `(t, x)` of one particle in increasing time, plus its
/// velocity before the first and after the last of them.
#[derive(Debug, Clone, PartialEq)]
pub struct Worldline {
    pub label: usize,
    pub points: Vec<(f64, f64)>,
    pub v_first: f64,
    pub v_last: f64,
}

impl Worldline {
    /// Slope `dx/dt` of the segment between the last two collisions.
    pub fn final_segment_velocity(&self) -> Option<f64> {
        let [.., (t0, x0), (t1, x1)] = self.points[..] else {
            return None;
        };
        Some((x1 - x0) / (t1 - t0))
    }

    /// Slope of the segment between the first two collisions.
    pub fn first_segment_velocity(&self) -> Option<f64> {
        let [(t0, x0), (t1, x1), ..] = self.points[..] else {
            return None;
        };
        Some((x1 - x0) / (t1 - t0))
    }
}

/// Collision points of each particle, in increasing time whatever the order
/// of the log.
pub fn worldlines<S: Scalar>(events: &[CollisionEvent<S>]) -> Vec<Worldline> {
    let backward = events.len() > 1 && events[0].t > events[events.len() - 1].t;
    let ordered: Vec<&CollisionEvent<S>> = if backward {
        events.iter().rev().collect()
    } else {
        events.iter().collect()
    };
    let mut lines: Vec<Worldline> = Vec::new();
    for event in ordered {
        let t = event.t.as_f64();
        let x = event.x.as_f64();
        for side in 0..2 {
            // In a backward log `post` is the earlier state.
            let (earlier, later) = if backward {
                (&event.post[side], &event.pre[side])
            } else {
                (&event.pre[side], &event.post[side])
            };
            let label = earlier.label;
            let index = match lines.iter().position(|w| w.label == label) {
                Some(i) => i,
                None => {
                    lines.push(Worldline {
                        label,
                        points: Vec::new(),
                        v_first: earlier.velocity().as_f64(),
                        v_last: 0.0,
                    });
                    lines.len() - 1
                }
            };
            let line = &mut lines[index];
            line.points.push((t, x));
            line.v_last = later.velocity().as_f64();
        }
    }
    lines.sort_by_key(|w| w.label);
    lines
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

/// SVG drawing of an event log. The output depends only on the log.
pub fn render_spacetime<S: Scalar>(events: &[CollisionEvent<S>]) -> String {
    let lines = worldlines(events);
    let times: Vec<f64> = lines.iter().flat_map(|w| w.points.iter().map(|p| p.0)).collect();
    let (t_min, t_max) = times.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &t| {
        (lo.min(t), hi.max(t))
    });
    let pad = if t_max > t_min { 0.1 * (t_max - t_min) } else { 1.0 };
    let (t_lo, t_hi) = (t_min - pad, t_max + pad);

    // Each worldline runs from t_lo to t_hi: free flight before its first
    // and after its last collision.
    let polylines: Vec<(usize, Vec<(f64, f64)>)> = lines
        .iter()
        .map(|w| {
            let mut pts = Vec::with_capacity(w.points.len() + 2);
            let (t0, x0) = w.points[0];
            pts.push((t_lo, x0 - w.v_first * (t0 - t_lo)));
            pts.extend(&w.points);
            let (t1, x1) = w.points[w.points.len() - 1];
            pts.push((t_hi, x1 + w.v_last * (t_hi - t1)));
            (w.label, pts)
        })
        .collect();

    let (x_lo, x_hi) = polylines
        .iter()
        .flat_map(|(_, pts)| pts.iter().map(|p| p.1))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
    let x_span = if x_hi > x_lo { x_hi - x_lo } else { 1.0 };
    let sx = |x: f64| MARGIN + (x - x_lo) / x_span * (WIDTH - 2.0 * MARGIN);
    let sy = |t: f64| HEIGHT - MARGIN - (t - t_lo) / (t_hi - t_lo) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{MARGIN}" y="20" font-size="12" font-family="monospace">t [{}, {}]  x [{}, {}]</text>"#,
        fmt(t_lo),
        fmt(t_hi),
        fmt(x_lo),
        fmt(x_hi)
    );
    for (label, pts) in &polylines {
        let coords: Vec<String> = pts
            .iter()
            .map(|&(t, x)| format!("{},{}", fmt(sx(x)), fmt(sy(t))))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline class="worldline" data-label="{label}" fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
            PALETTE[label % PALETTE.len()],
            coords.join(" ")
        );
    }
    for event in events {
        let (cx, cy) = (fmt(sx(event.x.as_f64())), fmt(sy(event.t.as_f64())));
        if event.tachyonic {
            let _ = writeln!(
                svg,
                r#"<circle class="tachyonic" cx="{cx}" cy="{cy}" r="4" fill="red"/>"#
            );
        } else {
            let _ = writeln!(
                svg,
                r#"<circle class="collision" cx="{cx}" cy="{cy}" r="2" fill="black"/>"#
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}
