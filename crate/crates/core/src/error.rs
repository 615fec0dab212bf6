use thiserror::Error;

use crate::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown member {0}")]
    UnknownMember(usize),
    #[error("time {t} is outside the trace window [0, {steps}]")]
    OutsideTrace { t: Rational, steps: usize },
    #[error("a body needs at least one member")]
    EmptyBody,
    #[error("kind index {0} is not declared")]
    UnknownKind(usize),
    #[error("kinds {0} and {1} have identical turn predicates; kinds must be non-isomorphic")]
    DuplicateKind(usize, usize),
    #[error("circumference must be a positive even integer, got {0}")]
    BadCircumference(i64),
    #[error("coordinate {x} lies outside the cyclic world [0, {circumference})")]
    CoordinateOutOfRange { x: i64, circumference: i64 },
    #[error("no frame for v = {v}, w = {w}: a frame needs |v| < 1 and w > 0")]
    NoFrame { v: Rational, w: Rational },
    #[error("transform is not in the standard configuration (need a11 = a22, a12 = a21 and a11 > |a12|)")]
    NotStandard,
    #[error("velocities {0} and {1} cannot be composed: 1 + v1*v2 = 0")]
    UndefinedComposition(Rational, Rational),
    #[error("body is not inertial on the simulated window")]
    NonInertial,
    #[error("trace too short: need {needed} units of proper time in the common window, have {available}")]
    InsufficientTrace {
        needed: Rational,
        available: Rational,
    },
    #[error("trace line {line}: {message}")]
    TraceFormat { line: usize, message: String },
}
