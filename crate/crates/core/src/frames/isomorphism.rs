//! Affine isomorphism of inertial bodies.
//!
//! Each body is viewed in its own frame: the frame built from its
//! [`FrameSpec`](crate::kinematics::FrameSpec), which puts the body's mean
//! start position at the spatial origin and `τ = 0` at absolute time 0. In that
//! frame every member's world line is a function of proper time `σ`, and the
//! body's internal state at `σ` is the multiset of (colour, coordinate) pairs.
//! Two bodies are affine isomorphic when some pair of proper times gives equal
//! multisets up to a shift of the spatial origin.
//!
//! The search is finite: the state repeats (without spatial drift) after one
//! proper period `w * p`, so it is enough to compare one proper period of each
//! body. Candidate proper times are the images of member turn events plus the
//! grid `lo + k/(2p)`, `0 <= k < 2p²`, clipped to that period.

use std::collections::HashMap;

use super::transform::{frame_to_absolute, map_worldlines, FrameTransform};
use crate::event::Polyline;
use crate::kinematics::{characterize_frame, detect_body_periodicity, Body};
use crate::trace::Trace;
use crate::{int, Error, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsomorphismWitness {
    /// Colour-preserving bijection `φ`, as `(member of A, member of B)`.
    pub pairs: Vec<(usize, usize)>,
    /// `O_A -> absolute`.
    pub frame_a: FrameTransform,
    /// `O_B -> absolute`.
    pub frame_b: FrameTransform,
    pub tau_a: Rational,
    pub tau_b: Rational,
    /// `x_{φ(b)B}(τ_B) = x_{bA}(τ_A) + offset` for every pair.
    pub offset: Rational,
}

impl IsomorphismWitness {
    /// The same correspondence read from `B` to `A`.
    pub fn inverse(&self) -> Self {
        Self {
            pairs: self.pairs.iter().map(|&(a, b)| (b, a)).collect(),
            frame_a: self.frame_b,
            frame_b: self.frame_a,
            tau_a: self.tau_b,
            tau_b: self.tau_a,
            offset: -self.offset,
        }
    }
}

type StateKey = Vec<(usize, Rational)>;

/// A body's members in its own frame over one proper period.
struct OwnView {
    frame: FrameTransform,
    members: Vec<usize>,
    colors: Vec<usize>,
    lines: Vec<Polyline>,
    candidates: Vec<Rational>,
}

impl OwnView {
    fn build(trace: &Trace, body: &Body) -> Result<Self> {
        let spec = characterize_frame(trace, body)?.ok_or(Error::NonInertial)?;
        let frame = frame_to_absolute(&spec)?;
        let period = detect_body_periodicity(trace, body)?
            .ok_or(Error::NonInertial)?
            .period;
        let members: Vec<usize> = body.members().collect();
        let colors = members
            .iter()
            .map(|&m| trace.color(m))
            .collect::<Result<Vec<_>>>()?;
        let to_own = frame.invert();
        let lines = map_worldlines(trace, &members, &to_own)?;

        let lo = lines
            .iter()
            .map(Polyline::start)
            .max()
            .expect("non-empty body");
        let hi = lines
            .iter()
            .map(Polyline::end)
            .min()
            .expect("non-empty body");
        let proper_period = spec.w * int(period as i128);
        if hi - lo < proper_period {
            return Err(Error::InsufficientTrace {
                needed: proper_period,
                available: (hi - lo).max(int(0)),
            });
        }
        let end = lo + proper_period;
        let mut candidates = Vec::new();
        for &m in &members {
            for e in trace.turn_events(m)? {
                let sigma = to_own.apply(e).t;
                if sigma >= lo && sigma <= end {
                    candidates.push(sigma);
                }
            }
        }
        let p = period as i128;
        candidates.extend(
            (0..2 * p * p)
                .map(|k| lo + Rational::new(k, 2 * p))
                .take_while(|&s| s <= end),
        );
        candidates.sort();
        candidates.dedup();
        Ok(Self {
            frame,
            members,
            colors,
            lines,
            candidates,
        })
    }

    fn positions(&self, sigma: Rational) -> Vec<Rational> {
        self.lines
            .iter()
            .map(|l| l.x_at(sigma).expect("candidate inside the common window"))
            .collect()
    }

    /// Sorted (colour, coordinate - mean) pairs and the mean.
    fn state(&self, sigma: Rational) -> (StateKey, Rational) {
        let xs = self.positions(sigma);
        let mean = xs.iter().copied().sum::<Rational>() / int(xs.len() as i128);
        let mut key: StateKey = self
            .colors
            .iter()
            .zip(&xs)
            .map(|(&c, &x)| (c, x - mean))
            .collect();
        key.sort();
        (key, mean)
    }

    /// Members sorted by (colour, coordinate, id) at `sigma`.
    fn ordered(&self, sigma: Rational) -> Vec<usize> {
        let xs = self.positions(sigma);
        let mut idx: Vec<usize> = (0..self.members.len()).collect();
        idx.sort_by_key(|&i| (self.colors[i], xs[i], self.members[i]));
        idx.into_iter().map(|i| self.members[i]).collect()
    }
}

/// Searches for proper times at which the two inertial bodies are affine
/// isomorphic. `Ok(None)` means no candidate pair matched.
pub fn affine_isomorphic(
    trace_a: &Trace,
    body_a: &Body,
    trace_b: &Trace,
    body_b: &Body,
) -> Result<Option<IsomorphismWitness>> {
    let a = OwnView::build(trace_a, body_a)?;
    let b = OwnView::build(trace_b, body_b)?;
    if a.members.len() != b.members.len() {
        return Ok(None);
    }
    let mut seen: HashMap<StateKey, (Rational, Rational)> = HashMap::new();
    for &sigma in &a.candidates {
        let (key, mean) = a.state(sigma);
        seen.entry(key).or_insert((sigma, mean));
    }
    for &sigma_b in &b.candidates {
        let (key, mean_b) = b.state(sigma_b);
        if let Some(&(sigma_a, mean_a)) = seen.get(&key) {
            let pairs = a
                .ordered(sigma_a)
                .into_iter()
                .zip(b.ordered(sigma_b))
                .collect();
            return Ok(Some(IsomorphismWitness {
                pairs,
                frame_a: a.frame,
                frame_b: b.frame,
                tau_a: sigma_a,
                tau_b: sigma_b,
                offset: mean_b - mean_a,
            }));
        }
    }
    Ok(None)
}

/// Re-samples both bodies and checks the witness pair by pair.
pub fn verify_witness(
    trace_a: &Trace,
    body_a: &Body,
    trace_b: &Trace,
    body_b: &Body,
    witness: &IsomorphismWitness,
) -> Result<bool> {
    let a = OwnView::build(trace_a, body_a)?;
    let b = OwnView::build(trace_b, body_b)?;
    if witness.pairs.len() != a.members.len() || witness.pairs.len() != b.members.len() {
        return Ok(false);
    }
    let lookup = |view: &OwnView, sigma: Rational| -> HashMap<usize, (usize, Rational)> {
        let xs = view.positions(sigma);
        view.members
            .iter()
            .zip(view.colors.iter().zip(xs))
            .map(|(&m, (&c, x))| (m, (c, x)))
            .collect()
    };
    let in_window = |view: &OwnView, s: Rational| view.lines.iter().all(|l| l.x_at(s).is_some());
    if !in_window(&a, witness.tau_a) || !in_window(&b, witness.tau_b) {
        return Ok(false);
    }
    let sa = lookup(&a, witness.tau_a);
    let sb = lookup(&b, witness.tau_b);
    let mut used_a = std::collections::HashSet::new();
    let mut used_b = std::collections::HashSet::new();
    for &(ma, mb) in &witness.pairs {
        let (Some(&(ca, xa)), Some(&(cb, xb))) = (sa.get(&ma), sb.get(&mb)) else {
            return Ok(false);
        };
        if ca != cb || xb != xa + witness.offset || !used_a.insert(ma) || !used_b.insert(mb) {
            return Ok(false);
        }
    }
    Ok(true)
}
