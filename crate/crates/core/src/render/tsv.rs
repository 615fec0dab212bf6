//! Tab-separated trace records: one row per member per time step, sorted by
//! `(t, member)`.

use std::fmt::Write;

use crate::sim::{Dir, Edge};
use crate::trace::Trace;
use crate::{Error, Result};

pub const HEADER: &str = "t\tmember\tkind\tx\tdir\tturned";

/// One row of the trace table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceRecord {
    pub t: usize,
    pub member: usize,
    pub kind: usize,
    pub x: i64,
    pub dir: Dir,
    pub turned: bool,
}

pub fn records(trace: &Trace) -> Vec<TraceRecord> {
    let mut out = Vec::with_capacity((trace.steps() + 1) * trace.member_count());
    for t in 0..=trace.steps() {
        for (member, &kind) in trace.colors().iter().enumerate() {
            let e = trace.edge(member, t).expect("in range");
            out.push(TraceRecord {
                t,
                member,
                kind,
                x: e.x,
                dir: e.dir,
                turned: trace.turned(member, t).expect("in range"),
            });
        }
    }
    out
}

pub fn write_trace(trace: &Trace) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for r in records(trace) {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.t,
            r.member,
            r.kind,
            r.x,
            r.dir.sign(),
            u8::from(r.turned)
        )
        .unwrap();
    }
    out
}

fn bad(line: usize, message: impl Into<String>) -> Error {
    Error::TraceFormat {
        line,
        message: message.into(),
    }
}

fn field<T: std::str::FromStr>(line: usize, name: &str, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| bad(line, format!("bad {name} `{s}`")))
}

/// Parses a table written by [`write_trace`]. A table without records yields
/// an empty trace with a single (empty) time step.
pub fn read_trace(text: &str) -> Result<Trace> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, h)) if h == HEADER => {}
        Some((n, h)) => return Err(bad(n, format!("expected header `{HEADER}`, found `{h}`"))),
        None => return Err(bad(1, "empty file")),
    }
    let mut colors: Vec<usize> = Vec::new();
    let mut frames: Vec<Vec<Edge>> = Vec::new();
    for (n, line) in lines {
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 6 {
            return Err(bad(n, format!("expected 6 fields, found {}", cols.len())));
        }
        let t: usize = field(n, "time", cols[0])?;
        let member: usize = field(n, "member", cols[1])?;
        let kind: usize = field(n, "kind", cols[2])?;
        let x: i64 = field(n, "coordinate", cols[3])?;
        let dir = Dir::from_sign(field(n, "direction", cols[4])?)
            .ok_or_else(|| bad(n, format!("direction must be 1 or -1, found `{}`", cols[4])))?;
        let turned = match cols[5] {
            "0" => false,
            "1" => true,
            other => return Err(bad(n, format!("turned must be 0 or 1, found `{other}`"))),
        };

        if t == frames.len() {
            if let Some(prev) = frames.last() {
                if prev.len() != colors.len() {
                    return Err(bad(n, format!("time {} is missing members", t - 1)));
                }
            }
            frames.push(Vec::new());
        } else if t + 1 != frames.len() {
            return Err(bad(n, format!("records out of order at time {t}")));
        }
        let frame_len = frames[t].len();
        if member != frame_len {
            return Err(bad(
                n,
                format!("expected member {frame_len}, found {member}"),
            ));
        }
        if t == 0 {
            colors.push(kind);
        } else if colors.get(member) != Some(&kind) {
            return Err(bad(
                n,
                format!("member {member} changes kind or was not present at t=0"),
            ));
        }
        let edge = Edge::new(x, dir);
        if t == 0 {
            if turned {
                return Err(bad(n, "nothing can have turned at t=0"));
            }
        } else {
            let prev = frames[t - 1][member];
            let expected = if turned {
                prev.contrary()
            } else {
                prev.straight()
            };
            if edge != expected {
                return Err(bad(
                    n,
                    format!("member {member} cannot move from {prev} to {edge}"),
                ));
            }
        }
        frames[t].push(edge);
    }
    if let Some(last) = frames.last() {
        if last.len() != colors.len() {
            return Err(bad(
                text.lines().count(),
                "last time step is missing members",
            ));
        }
    }
    if frames.is_empty() {
        frames.push(Vec::new());
    }
    Trace::new(colors, frames).map_err(|m| bad(0, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Trace {
        Trace::new(
            vec![1, 2],
            vec![
                vec![Edge::new(0, Dir::Plus), Edge::new(1, Dir::Minus)],
                vec![Edge::new(0, Dir::Minus), Edge::new(1, Dir::Plus)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn writes_header_and_rows() {
        let text = write_trace(&sample());
        assert_eq!(
            text,
            "t\tmember\tkind\tx\tdir\tturned\n0\t0\t1\t0\t1\t0\n0\t1\t2\t1\t-1\t0\n1\t0\t1\t0\t-1\t1\n1\t1\t2\t1\t1\t1\n"
        );
        assert_eq!(read_trace(&text).unwrap(), sample());
    }

    #[test]
    fn header_only_is_empty() {
        let t = read_trace(&format!("{HEADER}\n")).unwrap();
        assert_eq!((t.member_count(), t.steps()), (0, 0));
    }

    #[test]
    fn malformed_tables() {
        let good = write_trace(&sample());
        let cases = [
            good.replacen("turned", "flipped", 1),
            good.replace("1\t1\t2\t1\t1\t1\n", ""),
            good.replace("0\t1\t2\t1\t-1\t0", "0\t1\t2\t1\t0\t0"),
            good.replace("1\t0\t1\t0\t-1\t1", "1\t0\t1\t0\t-1\t0"),
            good.replace("1\t1\t2\t1\t1\t1", "1\t1\t1\t1\t1\t1"),
            good.replace("1\t0\t1\t0\t-1\t1", "1\t0\t1\t5\t-1\t1"),
            good.replace("0\t0\t1\t0\t1\t0", "0\t0\t1\t0\t1"),
            String::new(),
        ];
        for case in cases {
            assert!(
                matches!(read_trace(&case), Err(Error::TraceFormat { .. })),
                "{case:?}"
            );
        }
    }
}
