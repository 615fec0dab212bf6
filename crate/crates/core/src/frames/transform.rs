use std::fmt;

use num_traits::Signed;

use crate::event::{Event, Polyline};
use crate::kinematics::FrameSpec;
use crate::trace::Trace;
use crate::{int, Error, Rational, Result};

/// Affine map between event spaces in the standard configuration:
///
/// ```text
/// (x', t') = [[d, o], [o, d]] (x, t) + shift,   d > |o|
/// ```
///
/// The light-like directions `(1, 1)` and `(-1, 1)` are eigenvectors with
/// eigenvalues `d + o` and `d - o`, both positive. For a frame moving with
/// velocity `v` and proper-time velocity `w`, `d = 1/w` and `o = v/w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FrameTransform {
    diag: Rational,
    off: Rational,
    shift: Event,
}

impl FrameTransform {
    pub fn identity() -> Self {
        Self {
            diag: int(1),
            off: int(0),
            shift: Event::new(int(0), int(0)),
        }
    }

    /// Accepts a general 2x2 matrix but only in the standard configuration.
    pub fn from_matrix(m: [[Rational; 2]; 2], shift: Event) -> Result<Self> {
        let [[a11, a12], [a21, a22]] = m;
        if a11 != a22 || a12 != a21 || a11 <= a12.abs() {
            return Err(Error::NotStandard);
        }
        Ok(Self {
            diag: a11,
            off: a12,
            shift,
        })
    }

    pub fn matrix(&self) -> [[Rational; 2]; 2] {
        [[self.diag, self.off], [self.off, self.diag]]
    }

    pub fn shift(&self) -> Event {
        self.shift
    }

    pub fn linear(&self) -> Self {
        Self {
            shift: Event::new(int(0), int(0)),
            ..*self
        }
    }

    pub fn with_shift(&self, shift: Event) -> Self {
        Self { shift, ..*self }
    }

    /// `v` read off the matrix (off-diagonal over diagonal).
    pub fn velocity(&self) -> Rational {
        self.off / self.diag
    }

    /// `w` read off the matrix (reciprocal of the diagonal).
    pub fn proper_time_velocity(&self) -> Rational {
        self.diag.recip()
    }

    pub fn determinant(&self) -> Rational {
        self.diag * self.diag - self.off * self.off
    }

    /// Eigenvalues for `(1, 1)` and `(-1, 1)`.
    pub fn eigenvalues(&self) -> (Rational, Rational) {
        (self.diag + self.off, self.diag - self.off)
    }

    pub fn apply(&self, e: Event) -> Event {
        Event::new(
            self.diag * e.x + self.off * e.t + self.shift.x,
            self.off * e.x + self.diag * e.t + self.shift.t,
        )
    }

    fn apply_linear(&self, e: Event) -> Event {
        self.linear().apply(e)
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &FrameTransform) -> FrameTransform {
        FrameTransform {
            diag: self.diag * inner.diag + self.off * inner.off,
            off: self.diag * inner.off + self.off * inner.diag,
            shift: self.apply(inner.shift),
        }
    }

    pub fn invert(&self) -> FrameTransform {
        // d > |o| keeps the determinant positive.
        let det = self.determinant();
        let lin = FrameTransform {
            diag: self.diag / det,
            off: -self.off / det,
            shift: Event::new(int(0), int(0)),
        };
        let back = lin.apply(self.shift);
        lin.with_shift(Event::new(-back.x, -back.t))
    }

    pub fn map_polyline(&self, line: &Polyline) -> Polyline {
        line.map(|e| self.apply(e))
            .expect("positive eigenvalues keep time increasing along light-like segments")
    }
}

impl fmt::Display for FrameTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.diag, self.off)?;
        write!(f, "{} {}", self.off, self.diag)?;
        if self.shift != Event::new(int(0), int(0)) {
            write!(f, "\nshift {} {}", self.shift.x, self.shift.t)?;
        }
        Ok(())
    }
}

/// Transform `[[1/w, v/w], [v/w, 1/w]]` plus `offset`, mapping events of the
/// moving frame into the frame it moves in.
pub fn make_transform(v: Rational, w: Rational, offset: Event) -> Result<FrameTransform> {
    if v.abs() >= int(1) || w <= int(0) {
        return Err(Error::NoFrame { v, w });
    }
    Ok(FrameTransform {
        diag: w.recip(),
        off: v / w,
        shift: offset,
    })
}

/// The map from a body's own frame into the absolute frame. The body's origin
/// world line `(0, τ)` lands on `x = x0 + v t` with `τ = τ0` at `t = 0`.
pub fn frame_to_absolute(spec: &FrameSpec) -> Result<FrameTransform> {
    let lin = make_transform(spec.v, spec.w, Event::new(int(0), int(0)))?;
    let back = lin.apply(Event::new(int(0), spec.tau0));
    Ok(lin.with_shift(Event::new(spec.x0 - back.x, -back.t)))
}

/// Linear part of `L_AB`, the map from `O_A` into `O_B`.
pub fn relative_transform(a: &FrameSpec, b: &FrameSpec) -> Result<FrameTransform> {
    let a_abs = frame_to_absolute(a)?;
    let b_abs = frame_to_absolute(b)?;
    Ok(b_abs.invert().compose(&a_abs).linear())
}

/// `(v_AB, w_AB)`: velocity and proper-time velocity of `A` seen from `B`.
pub fn relative_characterization(a: &FrameSpec, b: &FrameSpec) -> Result<(Rational, Rational)> {
    let l = relative_transform(a, b)?;
    Ok((l.velocity(), l.proper_time_velocity()))
}

/// `v_CA = (v_BA + v_CB) / (1 + v_BA v_CB)`.
pub fn velocity_addition(v_ba: Rational, v_cb: Rational) -> Result<Rational> {
    let denom = int(1) + v_ba * v_cb;
    if denom == int(0) {
        return Err(Error::UndefinedComposition(v_ba, v_cb));
    }
    Ok((v_ba + v_cb) / denom)
}

/// Distance `Δx` between two comoving bodies in their own frame `A` seen from
/// a frame `C`: `Δx' = w_CA Δx`.
pub fn length_in_frame(dx: Rational, w_ca: Rational) -> Rational {
    w_ca * dx
}

/// Measures the same distance geometrically: the two bodies are the vertical
/// world lines `x = 0` and `x = dx` of `O_A`; map them through `l_ac` and
/// intersect both with the line `t' = 0` of `O_C`.
pub fn comoving_length(l_ac: &FrameTransform, dx: Rational) -> Rational {
    let l = l_ac.linear();
    let crossing = |x: Rational| {
        // Two points of the world line; t' is affine along it.
        let p = l.apply_linear(Event::new(x, int(0)));
        let q = l.apply_linear(Event::new(x, int(1)));
        let s = -p.t / (q.t - p.t);
        p.x + (q.x - p.x) * s
    };
    (crossing(dx) - crossing(int(0))).abs()
}

/// World lines of `members` mapped through `l`.
pub fn map_worldlines(
    trace: &Trace,
    members: &[usize],
    l: &FrameTransform,
) -> Result<Vec<Polyline>> {
    members
        .iter()
        .map(|&m| Ok(l.map_polyline(&trace.worldline(m)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;
    use proptest::prelude::*;

    fn example_matrix() -> [[Rational; 2]; 2] {
        [[ratio(3, 2), ratio(1, 2)], [ratio(1, 2), ratio(3, 2)]]
    }

    fn origin() -> Event {
        Event::new(int(0), int(0))
    }

    #[test]
    fn rest_frame_is_identity() {
        assert_eq!(
            make_transform(int(0), int(1), origin()).unwrap(),
            FrameTransform::identity()
        );
    }

    #[test]
    fn moving_example_matrix() {
        let l = make_transform(ratio(1, 3), ratio(2, 3), origin()).unwrap();
        assert_eq!(l.matrix(), example_matrix());
        let l = FrameTransform::from_matrix(example_matrix(), origin()).unwrap();
        assert_eq!(
            (l.velocity(), l.proper_time_velocity()),
            (ratio(1, 3), ratio(2, 3))
        );
    }

    #[test]
    fn no_frame_at_light_speed() {
        assert!(matches!(
            make_transform(int(1), int(0), origin()),
            Err(Error::NoFrame { .. })
        ));
        assert!(matches!(
            make_transform(ratio(-1, 1), int(1), origin()),
            Err(Error::NoFrame { .. })
        ));
        assert!(matches!(
            make_transform(int(0), int(0), origin()),
            Err(Error::NoFrame { .. })
        ));
    }

    #[test]
    fn symmetric_configuration_rejected() {
        let swapped = [[ratio(3, 2), ratio(1, 2)], [ratio(-1, 2), ratio(-3, 2)]];
        assert_eq!(
            FrameTransform::from_matrix(swapped, origin()),
            Err(Error::NotStandard)
        );
        let lightlike = [[int(1), int(1)], [int(1), int(1)]];
        assert_eq!(
            FrameTransform::from_matrix(lightlike, origin()),
            Err(Error::NotStandard)
        );
    }

    #[test]
    fn inverse_of_example() {
        let l = FrameTransform::from_matrix(example_matrix(), origin()).unwrap();
        let inv = l.invert();
        assert_eq!(
            inv.matrix(),
            [[ratio(3, 4), ratio(-1, 4)], [ratio(-1, 4), ratio(3, 4)]]
        );
        assert_eq!(inv.compose(&l), FrameTransform::identity());
        assert_eq!(l.compose(&FrameTransform::identity()), l);
    }

    #[test]
    fn inverse_includes_translation() {
        let l =
            FrameTransform::from_matrix(example_matrix(), Event::new(ratio(-1, 2), ratio(-1, 2)))
                .unwrap();
        assert_eq!(l.invert().compose(&l), FrameTransform::identity());
        assert_eq!(l.compose(&l.invert()), FrameTransform::identity());
    }

    #[test]
    fn example_relative_velocities() {
        let moving = FrameSpec {
            v: ratio(1, 3),
            w: ratio(2, 3),
            x0: int(1),
            tau0: int(0),
        };
        let rest = FrameSpec {
            x0: int(1),
            ..FrameSpec::absolute()
        };
        assert_eq!(
            relative_characterization(&moving, &rest).unwrap(),
            (ratio(1, 3), ratio(2, 3))
        );
        assert_eq!(
            relative_characterization(&rest, &moving).unwrap(),
            (ratio(-1, 3), ratio(4, 3))
        );
        assert_eq!(
            relative_characterization(&moving, &moving).unwrap(),
            (int(0), int(1))
        );
        assert_eq!(ratio(2, 3) * ratio(4, 3), int(1) - ratio(1, 9));
        let light = FrameSpec {
            v: int(1),
            w: int(0),
            x0: int(0),
            tau0: int(0),
        };
        assert!(relative_characterization(&light, &rest).is_err());
    }

    #[test]
    fn frame_origin_follows_body() {
        let spec = FrameSpec {
            v: ratio(1, 3),
            w: ratio(2, 3),
            x0: int(1),
            tau0: ratio(1, 2),
        };
        let l = frame_to_absolute(&spec).unwrap();
        // τ0 at t = 0 on the body's path.
        assert_eq!(
            l.apply(Event::new(int(0), ratio(1, 2))),
            Event::new(int(1), int(0))
        );
        // τ advances by w per unit absolute time; x by v.
        assert_eq!(
            l.apply(Event::new(int(0), ratio(1, 2) + ratio(2, 3))),
            Event::new(ratio(4, 3), int(1))
        );
    }

    #[test]
    fn velocity_addition_examples() {
        assert_eq!(velocity_addition(ratio(2, 5), int(0)).unwrap(), ratio(2, 5));
        assert_eq!(
            velocity_addition(ratio(1, 3), ratio(1, 3)).unwrap(),
            ratio(3, 5)
        );
        assert_eq!(velocity_addition(int(1), ratio(-3, 7)).unwrap(), int(1));
        assert!(velocity_addition(int(1), int(-1)).is_err());
    }

    #[test]
    fn velocity_addition_oracle_by_matrices() {
        // Two frames each moving at 1/3 relative to the previous one, with
        // w = 2/3: compose the matrices and read v off the product.
        let l = make_transform(ratio(1, 3), ratio(2, 3), origin()).unwrap();
        assert_eq!(l.compose(&l).velocity(), ratio(3, 5));
    }

    #[test]
    fn lengths() {
        assert_eq!(length_in_frame(int(5), int(1)), int(5));
        assert_eq!(length_in_frame(int(1), ratio(4, 3)), ratio(4, 3));
        assert_eq!(length_in_frame(int(3), ratio(2, 3)), int(2));
        let moving_to_rest = make_transform(ratio(1, 3), ratio(2, 3), origin()).unwrap();
        assert_eq!(comoving_length(&moving_to_rest, int(1)), ratio(4, 3));
        assert_eq!(comoving_length(&moving_to_rest.invert(), int(3)), int(2));
    }

    #[test]
    fn vertical_worldline_tilts_to_velocity() {
        let l = make_transform(ratio(1, 3), ratio(2, 3), origin()).unwrap();
        let a = l.apply(Event::new(int(0), int(0)));
        let b = l.apply(Event::new(int(0), int(1)));
        assert_eq!((b.x - a.x) / (b.t - a.t), ratio(1, 3));
    }

    fn arb_frame() -> impl Strategy<Value = (Rational, Rational)> {
        (1i128..=40, -39i128..=39, 1i128..=40, 1i128..=80).prop_filter_map(
            "|v| < 1",
            |(vd, vn, wd, wn)| {
                let v = ratio(vn, vd);
                let w = ratio(wn, wd);
                (v.abs() < int(1) && w <= int(2)).then_some((v, w))
            },
        )
    }

    proptest! {
        #[test]
        fn light_directions_are_eigenvectors((v, w) in arb_frame()) {
            let l = make_transform(v, w, origin()).unwrap();
            let (up, down) = l.eigenvalues();
            prop_assert_eq!(up, (int(1) + v) / w);
            prop_assert_eq!(down, (int(1) - v) / w);
            prop_assert_eq!(l.apply(Event::new(int(1), int(1))), Event::new(up, up));
            prop_assert_eq!(l.apply(Event::new(int(-1), int(1))), Event::new(-down, down));
            prop_assert_eq!(l.determinant(), (int(1) - v * v) / (w * w));
        }

        #[test]
        fn inverse_round_trip((v, w) in arb_frame(), sx in -20i128..20, st in -20i128..20) {
            let l = make_transform(v, w, Event::new(ratio(sx, 3), ratio(st, 7))).unwrap();
            prop_assert_eq!(l.invert().compose(&l), FrameTransform::identity());
        }

        #[test]
        fn composition_stays_standard((v1, w1) in arb_frame(), (v2, w2) in arb_frame()) {
            let a = make_transform(v1, w1, origin()).unwrap();
            let b = make_transform(v2, w2, origin()).unwrap();
            let c = a.compose(&b);
            prop_assert!(FrameTransform::from_matrix(c.matrix(), origin()).is_ok());
            prop_assert_eq!(c.velocity(), velocity_addition(v1, v2).unwrap());
            prop_assert!(c.velocity().abs() < int(1));
        }

        #[test]
        fn length_routes_agree((v, w) in arb_frame(), dx in 0i128..12) {
            let l = make_transform(v, w, origin()).unwrap();
            // L maps the moving frame into the rest frame, so w_CA is the
            // rest frame's proper-time velocity seen from the moving one.
            let w_ca = l.invert().proper_time_velocity();
            prop_assert_eq!(comoving_length(&l, int(dx)), length_in_frame(int(dx), w_ca));
        }
    }
}
