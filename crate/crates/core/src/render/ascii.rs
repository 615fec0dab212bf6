//! One text row per time step, one character per cell of the occupied window:
//! `>` for a member on `x^+`, `<` for `x^-`, `X` for both, `.` for empty.

use std::collections::HashSet;

use crate::sim::{Dir, Edge};
use crate::trace::Trace;

pub fn render_ascii(trace: &Trace) -> String {
    let edges: Vec<&[Edge]> = (0..=trace.steps()).filter_map(|t| trace.frame(t)).collect();
    let xs = edges.iter().flat_map(|f| f.iter().map(|e| e.x));
    let (Some(lo), Some(hi)) = (xs.clone().min(), xs.max()) else {
        return String::new();
    };
    let mut out = String::new();
    for frame in edges {
        let occupied: HashSet<Edge> = frame.iter().copied().collect();
        for x in lo..=hi {
            let plus = occupied.contains(&Edge::new(x, Dir::Plus));
            let minus = occupied.contains(&Edge::new(x, Dir::Minus));
            out.push(match (plus, minus) {
                (true, true) => 'X',
                (true, false) => '>',
                (false, true) => '<',
                (false, false) => '.',
            });
        }
        out.push('\n');
    }
    out
}
