//! Exact simulation and analysis of collectives of stateless automata living on
//! a one-dimensional discrete environment.
//!
//! Every member ("elementary body") sits on a directed edge `x^i` and at each
//! tick either keeps moving straight to `(x+i)^i` or turns to `x^-i`. The turn
//! decision depends only on per-colour occupancy of its own edge and the
//! opposite edge. On top of the synchronous engine the crate provides:
//!
//! * [`kinematics`]: proper time, path length, body velocities, periodicity
//!   and inertial characterisation of bodies;
//! * [`frames`]: exact affine transforms between inertial frames and the
//!   affine isomorphism test for bodies;
//! * [`dsl`]: the `.scn` scenario format and the turn-predicate language;
//! * [`render`]: trace tables, reports and space-time diagrams.
//!
//! All arithmetic that can produce non-integers is done with exact rationals.

pub mod cli;
pub mod dsl;
pub mod error;
pub mod event;
pub mod frames;
pub mod kinematics;
pub mod render;
pub mod sim;
pub mod trace;

pub use error::{Error, Result};

/// Exact rational number used for coordinates, velocities and matrix entries.
pub type Rational = num_rational::Ratio<i128>;

/// Shorthand for `num / den`.
pub fn ratio(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}
