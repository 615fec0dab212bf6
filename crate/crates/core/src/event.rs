//! Points of the event space (coordinate, time) and piecewise-linear world lines.

use std::fmt;

use crate::Rational;

/// A point `(x, t)` of an event space; `x` is the spatial coordinate and `t`
/// the time coordinate of whatever frame the event is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    pub x: Rational,
    pub t: Rational,
}

impl Event {
    pub fn new(x: Rational, t: Rational) -> Self {
        Self { x, t }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.t)
    }
}

/// A world line as a chain of events with strictly increasing time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyline {
    points: Vec<Event>,
}

impl Polyline {
    /// Builds a polyline, returning `None` when the points are empty or time
    /// does not strictly increase along the chain.
    pub fn new(points: Vec<Event>) -> Option<Self> {
        if points.is_empty() || points.windows(2).any(|w| w[1].t <= w[0].t) {
            return None;
        }
        Some(Self { points })
    }

    pub fn points(&self) -> &[Event] {
        &self.points
    }

    pub fn start(&self) -> Rational {
        self.points[0].t
    }

    pub fn end(&self) -> Rational {
        self.points[self.points.len() - 1].t
    }

    /// Spatial coordinate at time `t`, or `None` outside `[start, end]`.
    pub fn x_at(&self, t: Rational) -> Option<Rational> {
        if t < self.start() || t > self.end() {
            return None;
        }
        let i = self.points.partition_point(|p| p.t < t);
        let hi = self.points[i];
        if hi.t == t {
            return Some(hi.x);
        }
        let lo = self.points[i - 1];
        Some(lo.x + (hi.x - lo.x) * (t - lo.t) / (hi.t - lo.t))
    }

    /// Drops interior points where the slope does not change.
    pub fn simplified(&self) -> Self {
        let mut out: Vec<Event> = Vec::with_capacity(self.points.len());
        for &p in &self.points {
            if out.len() >= 2 {
                let a = out[out.len() - 2];
                let b = out[out.len() - 1];
                if (b.x - a.x) * (p.t - b.t) == (p.x - b.x) * (b.t - a.t) {
                    out.pop();
                }
            }
            out.push(p);
        }
        Self { points: out }
    }

    /// Interior points where the slope changes.
    pub fn breakpoints(&self) -> Vec<Event> {
        let s = self.simplified();
        if s.points.len() <= 2 {
            return Vec::new();
        }
        s.points[1..s.points.len() - 1].to_vec()
    }

    pub fn map(&self, f: impl Fn(Event) -> Event) -> Option<Self> {
        Self::new(self.points.iter().map(|&p| f(p)).collect())
    }

    /// True when both lines are defined on `[from, to]` and coincide there.
    ///
    /// Two piecewise-linear functions agree on an interval iff they agree at
    /// both ends and at every vertex of either one inside it.
    pub fn coincides_on(&self, other: &Polyline, from: Rational, to: Rational) -> bool {
        if from > to {
            return false;
        }
        let mut times = vec![from, to];
        times.extend(
            self.points
                .iter()
                .chain(other.points.iter())
                .map(|p| p.t)
                .filter(|t| *t > from && *t < to),
        );
        times
            .into_iter()
            .all(|t| match (self.x_at(t), other.x_at(t)) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            })
    }
}
