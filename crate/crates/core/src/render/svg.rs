//! Space-time diagram: `x` to the right, `t` downward, 20 units per cell and
//! per tick. One polyline per member coloured by kind; turns are marked with
//! dots at the collision nodes.

use std::fmt::Write;

use crate::event::Event;
use crate::trace::Trace;
use crate::{int, Rational};

pub const SCALE: i128 = 20;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

fn kind_color(kind: usize) -> &'static str {
    PALETTE[(kind.max(1) - 1) % PALETTE.len()]
}

/// Exact pixel coordinate; every world-line vertex sits on a half-integer.
fn px(v: Rational) -> i128 {
    let scaled = v * int(SCALE);
    assert!(scaled.is_integer(), "vertex off the half-integer grid");
    scaled.to_integer()
}

pub fn render_svg(trace: &Trace) -> String {
    let xs = (0..=trace.steps())
        .filter_map(|t| trace.frame(t))
        .flat_map(|f| f.iter().map(|e| e.x));
    let (lo, hi) = match (xs.clone().min(), xs.max()) {
        (Some(lo), Some(hi)) => (lo as i128, hi as i128),
        _ => (0, 0),
    };
    let width = (hi - lo + 2) * SCALE;
    let height = (trace.steps() as i128 + 2) * SCALE;
    // One cell of margin on every side.
    let to_screen = |e: Event| (px(e.x - int(lo) + int(1)), px(e.t + int(1)));

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<rect width="{width}" height="{height}" fill="white"/>"#
    )
    .unwrap();
    for (member, &kind) in trace.colors().iter().enumerate() {
        let line = trace.worldline(member).expect("member exists").simplified();
        let points: Vec<String> = line
            .points()
            .iter()
            .map(|&e| {
                let (x, y) = to_screen(e);
                format!("{x},{y}")
            })
            .collect();
        let color = kind_color(kind);
        writeln!(
            out,
            r#"<g id="member-{member}" data-kind="{kind}" stroke="{color}" fill="{color}">"#
        )
        .unwrap();
        writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke-width="2"/>"#,
            points.join(" ")
        )
        .unwrap();
        for e in trace.turn_events(member).expect("member exists") {
            let (x, y) = to_screen(e);
            writeln!(out, r#"<circle cx="{x}" cy="{y}" r="3"/>"#).unwrap();
        }
        writeln!(out, "</g>").unwrap();
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{Dir, Edge};

    #[test]
    fn single_bounce() {
        let t = Trace::new(
            vec![1],
            vec![
                vec![Edge::new(0, Dir::Plus)],
                vec![Edge::new(0, Dir::Minus)],
            ],
        )
        .unwrap();
        let svg = render_svg(&t);
        assert!(svg.contains(r#"viewBox="0 0 40 60""#), "{svg}");
        assert!(svg.contains(r#"points="20,20 30,30 20,40""#), "{svg}");
        assert!(svg.contains(r#"<circle cx="30" cy="30" r="3"/>"#), "{svg}");
    }

    #[test]
    fn empty_trace_is_a_valid_document() {
        let svg = render_svg(&Trace::new(vec![], vec![vec![]]).unwrap());
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(!svg.contains("polyline"));
    }
}
