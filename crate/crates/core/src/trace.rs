//! Recorded runs: per-member edge history with lifted (unwrapped) coordinates.

use crate::event::{Event, Polyline};
use crate::sim::Edge;
use crate::{int, ratio, Error, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    /// 1-based colour of each member.
    colors: Vec<usize>,
    /// `frames[t][member]`; always at least one frame.
    frames: Vec<Vec<Edge>>,
}

impl Trace {
    /// Checks that every frame covers every member and that consecutive edges
    /// differ by exactly one straight move or one turn.
    pub fn new(colors: Vec<usize>, frames: Vec<Vec<Edge>>) -> Result<Self, String> {
        if frames.is_empty() {
            return Err("a trace needs at least one time step".into());
        }
        if let Some(t) = frames.iter().position(|f| f.len() != colors.len()) {
            return Err(format!(
                "time {t} has {} members, expected {}",
                frames[t].len(),
                colors.len()
            ));
        }
        for (t, pair) in frames.windows(2).enumerate() {
            for (m, (a, b)) in pair[0].iter().zip(&pair[1]).enumerate() {
                if *b != a.straight() && *b != a.contrary() {
                    return Err(format!(
                        "member {m} jumps from {a} at t={t} to {b} at t={}",
                        t + 1
                    ));
                }
            }
        }
        Ok(Self { colors, frames })
    }

    /// Number of simulated ticks `T`; times run over `0..=T`.
    pub fn steps(&self) -> usize {
        self.frames.len() - 1
    }

    pub fn member_count(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, member: usize) -> Result<usize> {
        self.colors
            .get(member)
            .copied()
            .ok_or(Error::UnknownMember(member))
    }

    pub fn frame(&self, t: usize) -> Option<&[Edge]> {
        self.frames.get(t).map(Vec::as_slice)
    }

    pub fn edge(&self, member: usize, t: usize) -> Result<Edge> {
        if member >= self.colors.len() {
            return Err(Error::UnknownMember(member));
        }
        self.frames
            .get(t)
            .map(|f| f[member])
            .ok_or(Error::OutsideTrace {
                t: int(t as i128),
                steps: self.steps(),
            })
    }

    /// Whether the member reached its edge at `t` by turning (false at `t = 0`).
    pub fn turned(&self, member: usize, t: usize) -> Result<bool> {
        let now = self.edge(member, t)?;
        Ok(t > 0 && self.frames[t - 1][member].dir != now.dir)
    }

    /// Coordinate at a rational time: with `t = n + d`, `-1/2 < d <= 1/2`,
    /// the member sits on `b(n)` at `x(n) + dir(n) * d`.
    pub fn position_at(&self, member: usize, t: Rational) -> Result<Rational> {
        if member >= self.colors.len() {
            return Err(Error::UnknownMember(member));
        }
        if t < int(0) || t > int(self.steps() as i128) {
            return Err(Error::OutsideTrace {
                t,
                steps: self.steps(),
            });
        }
        let n = (t - ratio(1, 2)).ceil();
        let e = self.frames[n.to_integer() as usize][member];
        Ok(int(e.x as i128) + int(e.dir.sign() as i128) * (t - n))
    }

    /// The member's world line over `[0, T]`, with a vertex at every
    /// half-integer node passage.
    pub fn worldline(&self, member: usize) -> Result<Polyline> {
        if member >= self.colors.len() {
            return Err(Error::UnknownMember(member));
        }
        let at = |t: usize| self.frames[t][member];
        let mut points = vec![Event::new(int(at(0).x as i128), int(0))];
        for t in 0..self.steps() {
            let e = at(t);
            points.push(Event::new(
                int(e.x as i128) + ratio(e.dir.sign() as i128, 2),
                int(t as i128) + ratio(1, 2),
            ));
        }
        if self.steps() > 0 {
            let e = at(self.steps());
            points.push(Event::new(int(e.x as i128), int(self.steps() as i128)));
        }
        Ok(Polyline::new(points).expect("time increases along a trace"))
    }

    /// Node events where the member turned.
    pub fn turn_events(&self, member: usize) -> Result<Vec<Event>> {
        let mut out = Vec::new();
        for t in 1..=self.steps() {
            if self.turned(member, t)? {
                let e = self.frames[t - 1][member];
                out.push(Event::new(
                    int(e.x as i128) + ratio(e.dir.sign() as i128, 2),
                    int(t as i128) - ratio(1, 2),
                ));
            }
        }
        Ok(out)
    }
}
