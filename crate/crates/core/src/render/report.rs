//! Plain-text analysis reports. Rationals are always printed exactly as
//! `num/den`.

use std::fmt::Write;

use num_traits::Signed;

use crate::frames::{
    affine_isomorphic, frame_to_absolute, relative_characterization, relative_transform,
    velocity_addition, FrameTransform,
};
use crate::kinematics::{check_time_identity, proper_time_velocity, summarize, Body, FrameSpec};
use crate::trace::Trace;
use crate::{int, Error, Result};

/// Report text plus whether the analysis succeeded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub ok: bool,
}

fn member_list(body: &Body) -> String {
    body.members()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn matrix(out: &mut String, title: &str, l: &FrameTransform) {
    let [[a, b], [c, d]] = l.matrix();
    writeln!(out, "{title}:").unwrap();
    writeln!(out, "  {a} {b}").unwrap();
    writeln!(out, "  {c} {d}").unwrap();
    let s = l.shift();
    if s.x != int(0) || s.t != int(0) {
        writeln!(out, "  shift {} {}", s.x, s.t).unwrap();
    }
}

fn ok(flag: bool) -> &'static str {
    if flag {
        "ok"
    } else {
        "FAILED"
    }
}

pub fn analyze(trace: &Trace, name: &str, body: &Body) -> Result<Report> {
    let summary = summarize(trace, body)?;
    let steps = trace.steps();
    let mut out = String::new();
    writeln!(out, "body {name} = {}", member_list(body)).unwrap();
    writeln!(out, "steps = {steps}").unwrap();

    let mut good = true;
    for m in &summary.members {
        let holds = check_time_identity(trace, m.member, 0, steps);
        good &= holds;
        writeln!(
            out,
            "member {}: t = {steps}, tau = {}, s = {}, t = tau + s {}",
            m.member,
            m.tau[steps],
            m.path[steps],
            ok(holds)
        )
        .unwrap();
    }
    let velocities: Vec<String> = summary.velocity.iter().map(|v| v.to_string()).collect();
    writeln!(out, "v(t) = {}", velocities.join(" ")).unwrap();

    // |v_B(t)| = 1 forces w_B(t) = 0.
    for (t, v) in summary.velocity.iter().enumerate() {
        if v.abs() == int(1) {
            let w = proper_time_velocity(trace, body, t)?;
            if w != Some(int(0)) {
                good = false;
                writeln!(out, "light-speed step {t} has w != 0: FAILED").unwrap();
            }
        }
    }

    match (summary.periodicity, summary.frame) {
        (Some(p), Some(spec)) => {
            writeln!(out, "period = {}", p.period).unwrap();
            writeln!(out, "shift = {}", p.shift).unwrap();
            writeln!(out, "v = {}", spec.v).unwrap();
            writeln!(out, "w = {}", spec.w).unwrap();
            writeln!(out, "x0 = {}", spec.x0).unwrap();
            writeln!(out, "tau0 = {}", spec.tau0).unwrap();
            if spec.has_frame() {
                writeln!(out, "inertial: yes").unwrap();
            } else {
                writeln!(out, "inertial: yes").unwrap();
                writeln!(out, "note: no frame (light-speed)").unwrap();
            }
        }
        _ => {
            writeln!(out, "period = none").unwrap();
            writeln!(out, "inertial: no (no period within {steps} steps)").unwrap();
            good = false;
        }
    }
    Ok(Report {
        text: out,
        ok: good,
    })
}

fn frame_of(trace: &Trace, body: &Body) -> Result<FrameSpec> {
    let spec = crate::kinematics::characterize_frame(trace, body)?.ok_or(Error::NonInertial)?;
    if !spec.has_frame() {
        return Err(Error::NoFrame {
            v: spec.v,
            w: spec.w,
        });
    }
    Ok(spec)
}

/// Transforms and corollary checks between the frames of two bodies.
pub fn frames(
    (trace_a, name_a, body_a): (&Trace, &str, &Body),
    (trace_b, name_b, body_b): (&Trace, &str, &Body),
) -> Result<Report> {
    let a = frame_of(trace_a, body_a)?;
    let b = frame_of(trace_b, body_b)?;
    let l_ab = relative_transform(&a, &b)?;
    let l_ba = relative_transform(&b, &a)?;
    let (v_ab, w_ab) = relative_characterization(&a, &b)?;
    let (v_ba, w_ba) = relative_characterization(&b, &a)?;

    let mut out = String::new();
    writeln!(out, "A = {name_a}, B = {name_b}").unwrap();
    matrix(&mut out, "L_AB (O_A -> O_B)", &l_ab);
    matrix(&mut out, "L_BA (O_B -> O_A)", &l_ba);
    writeln!(out, "v_AB = {v_ab}").unwrap();
    writeln!(out, "w_AB = {w_ab}").unwrap();
    writeln!(out, "v_BA = {v_ba}").unwrap();
    writeln!(out, "w_BA = {w_ba}").unwrap();

    let antisym = v_ab == -v_ba;
    let product = w_ab * w_ba;
    let reciprocity = product == int(1) - v_ab * v_ab;
    let inverse = l_ab.compose(&l_ba) == FrameTransform::identity();
    // A seen from B, composed through the absolute frame.
    let (v_abs_b, _) = relative_characterization(&FrameSpec::absolute(), &b)?;
    let added = velocity_addition(v_abs_b, a.v)?;
    let addition = added == v_ab;
    writeln!(out, "antisymmetry: v_AB = -v_BA {}", ok(antisym)).unwrap();
    writeln!(
        out,
        "reciprocity: w_AB * w_BA = {product} = 1 - v_AB^2 {}",
        ok(reciprocity)
    )
    .unwrap();
    writeln!(out, "inverse: L_AB * L_BA = identity {}", ok(inverse)).unwrap();
    writeln!(
        out,
        "velocity addition: ({v_abs_b} + {}) / (1 + {v_abs_b} * {}) = {added} {}",
        a.v,
        a.v,
        ok(addition)
    )
    .unwrap();
    Ok(Report {
        text: out,
        ok: antisym && reciprocity && inverse && addition,
    })
}

pub fn isomorphic(
    (trace_a, name_a, body_a): (&Trace, &str, &Body),
    (trace_b, name_b, body_b): (&Trace, &str, &Body),
) -> Result<Report> {
    let witness = affine_isomorphic(trace_a, body_a, trace_b, body_b)?;
    let mut out = String::new();
    writeln!(out, "A = {name_a}, B = {name_b}").unwrap();
    match witness {
        None => writeln!(out, "isomorphic: no").unwrap(),
        Some(w) => {
            writeln!(out, "isomorphic: yes").unwrap();
            writeln!(out, "tau_A = {}", w.tau_a).unwrap();
            writeln!(out, "tau_B = {}", w.tau_b).unwrap();
            writeln!(out, "offset = {}", w.offset).unwrap();
            let phi: Vec<String> = w.pairs.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
            writeln!(out, "phi: {}", phi.join(", ")).unwrap();
            matrix(&mut out, "O_A -> absolute", &w.frame_a);
            matrix(&mut out, "O_B -> absolute", &w.frame_b);
        }
    }
    Ok(Report {
        text: out,
        ok: true,
    })
}

/// The absolute-frame transform of a body, for callers that only need it.
pub fn own_frame(trace: &Trace, body: &Body) -> Result<FrameTransform> {
    frame_to_absolute(&frame_of(trace, body)?)
}
