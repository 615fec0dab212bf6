//! Proper time, path length, body coordinates and velocities, periodicity and
//! inertial characterisation.
//!
//! Every tick a member either moves one cell or turns, so over any window
//! `Δt = Δτ + Δs`. Inertiality is certified by exact periodicity of the
//! body's members over the simulated window.

use std::collections::BTreeSet;

use num_traits::Signed;

use crate::trace::Trace;
use crate::{int, Error, Rational, Result};

/// A finite, non-empty set of member ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Body {
    members: BTreeSet<usize>,
}

impl Body {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if members.is_empty() {
            return Err(Error::EmptyBody);
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn check(&self, trace: &Trace) -> Result<()> {
        match self.members.iter().find(|&&m| m >= trace.member_count()) {
            Some(&m) => Err(Error::UnknownMember(m)),
            None => Ok(()),
        }
    }
}

/// `config(t + period)` equals `config(t)` shifted by `shift` cells, member
/// by member, for every `t` of the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Periodicity {
    pub period: usize,
    pub shift: i64,
}

/// Inertial characterisation of a body in the absolute frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameSpec {
    /// Spatial velocity.
    pub v: Rational,
    /// Proper-time velocity.
    pub w: Rational,
    /// Body coordinate at absolute time 0.
    pub x0: Rational,
    /// Body proper time at absolute time 0.
    pub tau0: Rational,
}

impl FrameSpec {
    /// The frame of a motionless body with `τ = t`.
    pub fn absolute() -> Self {
        Self {
            v: int(0),
            w: int(1),
            x0: int(0),
            tau0: int(0),
        }
    }

    /// Light-speed bodies (`w = 0`) cannot carry a frame.
    pub fn has_frame(&self) -> bool {
        self.w > int(0) && self.v.abs() < int(1)
    }
}

fn check_time(trace: &Trace, t: usize) -> Result<()> {
    if t > trace.steps() {
        return Err(Error::OutsideTrace {
            t: int(t as i128),
            steps: trace.steps(),
        });
    }
    Ok(())
}

/// Number of turns in ticks `1..=t`.
pub fn proper_time(trace: &Trace, member: usize, t: usize) -> Result<u64> {
    trace.color(member)?;
    check_time(trace, t)?;
    let mut tau = 0;
    for k in 1..=t {
        tau += u64::from(trace.turned(member, k)?);
    }
    Ok(tau)
}

/// Sum of per-tick absolute displacements in ticks `1..=t`.
pub fn path_length(trace: &Trace, member: usize, t: usize) -> Result<u64> {
    trace.color(member)?;
    check_time(trace, t)?;
    let mut s = 0;
    for k in 1..=t {
        s += trace
            .edge(member, k)?
            .x
            .abs_diff(trace.edge(member, k - 1)?.x);
    }
    Ok(s)
}

/// `t1 - t0 == Δτ + Δs` for the member over `[t0, t1]`.
pub fn check_time_identity(trace: &Trace, member: usize, t0: usize, t1: usize) -> bool {
    if t0 > t1 {
        return false;
    }
    let delta = |f: fn(&Trace, usize, usize) -> Result<u64>| -> Option<u64> {
        Some(f(trace, member, t1).ok()? - f(trace, member, t0).ok()?)
    };
    match (delta(proper_time), delta(path_length)) {
        (Some(dtau), Some(ds)) => (t1 - t0) as u64 == dtau + ds,
        _ => false,
    }
}

/// Mean member coordinate at a rational time.
pub fn body_coordinate(trace: &Trace, body: &Body, t: Rational) -> Result<Rational> {
    body.check(trace)?;
    let mut sum = int(0);
    for m in body.members() {
        sum += trace.position_at(m, t)?;
    }
    Ok(sum / int(body.len() as i128))
}

/// `x_B(t + 1) - x_B(t)`.
pub fn body_velocity(trace: &Trace, body: &Body, t: usize) -> Result<Rational> {
    check_time(trace, t + 1)?;
    let now = body_coordinate(trace, body, int(t as i128))?;
    let next = body_coordinate(trace, body, int(t as i128 + 1))?;
    Ok(next - now)
}

fn periodicity_of(trace: &Trace, members: &[usize]) -> Option<Periodicity> {
    let first = *members.first()?;
    let steps = trace.steps();
    let frame = |t: usize| trace.frame(t).expect("t within trace");
    (1..=steps / 2).find_map(|period| {
        let shift = frame(period)[first].x - frame(0)[first].x;
        let holds = (0..=steps - period).all(|t| {
            let (a, b) = (frame(t), frame(t + period));
            members
                .iter()
                .all(|&m| b[m].dir == a[m].dir && b[m].x - a[m].x == shift)
        });
        holds.then_some(Periodicity { period, shift })
    })
}

/// Smallest period (at most `T/2`) of the whole configuration.
pub fn detect_periodicity(trace: &Trace) -> Option<Periodicity> {
    let all: Vec<usize> = (0..trace.member_count()).collect();
    periodicity_of(trace, &all)
}

/// Smallest joint period of the body's members.
pub fn detect_body_periodicity(trace: &Trace, body: &Body) -> Result<Option<Periodicity>> {
    body.check(trace)?;
    let members: Vec<usize> = body.members().collect();
    Ok(periodicity_of(trace, &members))
}

fn turns_over(trace: &Trace, body: &Body, from: usize, to: usize) -> Result<u64> {
    let mut n = 0;
    for m in body.members() {
        n += proper_time(trace, m, to)? - proper_time(trace, m, from)?;
    }
    Ok(n)
}

/// Proper-time velocity of the body at tick `t` (the move from `t` to `t+1`).
///
/// 1 when every member turns, 0 when none does. Otherwise a periodic body
/// gets its per-period average `turns / (|B| * period)`; anything else is
/// undefined and yields `Ok(None)`.
pub fn proper_time_velocity(trace: &Trace, body: &Body, t: usize) -> Result<Option<Rational>> {
    body.check(trace)?;
    if t < trace.steps() {
        let mut turning = 0;
        for m in body.members() {
            turning += usize::from(trace.turned(m, t + 1)?);
        }
        if turning == body.len() {
            return Ok(Some(int(1)));
        }
        if turning == 0 {
            return Ok(Some(int(0)));
        }
    }
    Ok(match detect_body_periodicity(trace, body)? {
        Some(p) => Some(periodic_w(trace, body, p)?),
        None => None,
    })
}

fn periodic_w(trace: &Trace, body: &Body, p: Periodicity) -> Result<Rational> {
    let turns = turns_over(trace, body, 0, p.period)?;
    Ok(Rational::new(
        turns as i128,
        (body.len() * p.period) as i128,
    ))
}

/// Frame data of an inertial body, or `None` when its members are not
/// jointly periodic on the window.
pub fn characterize_frame(trace: &Trace, body: &Body) -> Result<Option<FrameSpec>> {
    let Some(p) = detect_body_periodicity(trace, body)? else {
        return Ok(None);
    };
    Ok(Some(FrameSpec {
        v: Rational::new(p.shift as i128, p.period as i128),
        w: periodic_w(trace, body, p)?,
        x0: body_coordinate(trace, body, int(0))?,
        tau0: int(0),
    }))
}

/// Per-member proper time, path and coordinate at every integer time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberKinematics {
    pub member: usize,
    pub tau: Vec<u64>,
    pub path: Vec<u64>,
    pub x: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KinematicSummary {
    pub members: Vec<MemberKinematics>,
    /// `x_B(t)` for `t = 0..=T`.
    pub coordinate: Vec<Rational>,
    /// `v_B(t)` for `t = 0..T`.
    pub velocity: Vec<Rational>,
    pub periodicity: Option<Periodicity>,
    pub frame: Option<FrameSpec>,
}

pub fn summarize(trace: &Trace, body: &Body) -> Result<KinematicSummary> {
    body.check(trace)?;
    let steps = trace.steps();
    let mut members = Vec::with_capacity(body.len());
    for m in body.members() {
        let mut mk = MemberKinematics {
            member: m,
            tau: Vec::with_capacity(steps + 1),
            path: Vec::with_capacity(steps + 1),
            x: Vec::with_capacity(steps + 1),
        };
        let (mut tau, mut path) = (0, 0);
        for t in 0..=steps {
            if t > 0 {
                tau += u64::from(trace.turned(m, t)?);
                path += trace.edge(m, t)?.x.abs_diff(trace.edge(m, t - 1)?.x);
            }
            mk.tau.push(tau);
            mk.path.push(path);
            mk.x.push(trace.edge(m, t)?.x);
        }
        members.push(mk);
    }
    let coordinate = (0..=steps)
        .map(|t| body_coordinate(trace, body, int(t as i128)))
        .collect::<Result<Vec<_>>>()?;
    let velocity = coordinate.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(KinematicSummary {
        members,
        coordinate,
        velocity,
        periodicity: detect_body_periodicity(trace, body)?,
        frame: characterize_frame(trace, body)?,
    })
}
