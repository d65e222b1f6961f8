//! The two-parameter Lorentz family along `x`.
//!
//! A [`Boost`] with velocity ratio `ε` and scale `l` maps
//!
//! ```text
//! x' = k l (x - ε t)    y' = l y    z' = l z    t' = k l (t - ε x)
//! ```
//!
//! with `k = 1 / sqrt(1 - ε²)`. Einstein's dilation factor `φ` plays exactly
//! the role of `l`, so both live in [`Boost::scale`]. The physical subgroup is
//! `l = 1`; [`solve_scale_function`] checks numerically why.
//!
//! Composition order: [`boost_compose`]`(first, second)` is the boost obtained
//! by applying `first` and *then* `second`.

use std::fmt;

use crate::error::{KinematicsError, Result};

/// Velocity as a fraction of light speed, strictly inside `(-1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Velocity(f64);

impl Velocity {
    pub const ZERO: Velocity = Velocity(0.0);

    pub fn new(epsilon: f64) -> Result<Self> {
        if epsilon.is_finite() && epsilon.abs() < 1.0 {
            Ok(Velocity(epsilon))
        } else {
            Err(KinematicsError::VelocityOutOfRange(epsilon))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn reversed(self) -> Self {
        Velocity(-self.0)
    }

    /// Lorentz factor `k = γ`.
    pub fn gamma(self) -> f64 {
        gamma(self)
    }
}

impl fmt::Display for Velocity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ε={}", self.0)
    }
}

impl TryFrom<f64> for Velocity {
    type Error = KinematicsError;

    fn try_from(value: f64) -> Result<Self> {
        Velocity::new(value)
    }
}

/// `1 / sqrt(1 - ε²)`. The factored form keeps precision near `|ε| → 1`.
pub fn gamma(eps: Velocity) -> f64 {
    let e = eps.value();
    1.0 / ((1.0 - e) * (1.0 + e)).sqrt()
}

/// Relativistic velocity addition `(ε + ε') / (1 + ε ε')`.
pub fn compose_velocities(first: Velocity, second: Velocity) -> Velocity {
    let (a, b) = (first.value(), second.value());
    let sum = (a + b) / (1.0 + a * b);
    // Rounding can land exactly on ±1 when both inputs sit within an ulp or
    // two of light speed; the exact result is always strictly inside.
    if sum.abs() < 1.0 {
        Velocity(sum)
    } else {
        Velocity(1.0f64.next_down().copysign(sum))
    }
}

/// Which coordinate system an [`Event`]'s numbers refer to.
///
/// Tag `0` is the ether/stationary frame `K`; each boost adds a prime.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrameTag(pub u16);

impl FrameTag {
    pub const STATIONARY: FrameTag = FrameTag(0);

    pub fn primed(self) -> Self {
        FrameTag(self.0.saturating_add(1))
    }
}

impl fmt::Display for FrameTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("K")?;
        for _ in 0..self.0 {
            f.write_str("'")?;
        }
        Ok(())
    }
}

/// A spacetime point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub frame: FrameTag,
}

impl Event {
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        for (what, value) in [("t", t), ("x", x), ("y", y), ("z", z)] {
            if !value.is_finite() {
                return Err(KinematicsError::NonFinite { what, value });
            }
        }
        Ok(Event {
            t,
            x,
            y,
            z,
            frame: FrameTag::STATIONARY,
        })
    }

    /// Collinear event `(t, x, 0, 0)` in `K`.
    pub fn on_axis(t: f64, x: f64) -> Result<Self> {
        Event::new(t, x, 0.0, 0.0)
    }

    pub fn in_frame(mut self, frame: FrameTag) -> Self {
        self.frame = frame;
        self
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }
}

/// Member `(ε, l)` of the two-parameter transformation group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boost {
    epsilon: Velocity,
    scale: f64,
    // Cached k. Composition propagates it as k'' = k k' (1 + ε ε'), which
    // stays accurate where recomputing from a rounded ε'' near 1 would not.
    k: f64,
}

impl Boost {
    pub const IDENTITY: Boost = Boost {
        epsilon: Velocity::ZERO,
        scale: 1.0,
        k: 1.0,
    };

    pub fn new(epsilon: Velocity, scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(KinematicsError::InvalidScale(scale));
        }
        Ok(Boost {
            epsilon,
            scale,
            k: gamma(epsilon),
        })
    }

    /// Physical boost, `l = 1`.
    pub fn along_x(epsilon: Velocity) -> Self {
        Boost {
            epsilon,
            scale: 1.0,
            k: gamma(epsilon),
        }
    }

    pub fn epsilon(&self) -> Velocity {
        self.epsilon
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn gamma(&self) -> f64 {
        self.k
    }

    pub fn apply(&self, e: &Event) -> Event {
        let kl = self.k * self.scale;
        let eps = self.epsilon.value();
        Event {
            t: kl * (e.t - eps * e.x),
            x: kl * (e.x - eps * e.t),
            y: self.scale * e.y,
            z: self.scale * e.z,
            frame: e.frame.primed(),
        }
    }

    /// `self` first, then `then`.
    pub fn then(&self, then: &Boost) -> Boost {
        let (a, b) = (self.epsilon.value(), then.epsilon.value());
        Boost {
            epsilon: compose_velocities(self.epsilon, then.epsilon),
            scale: self.scale * then.scale,
            k: self.k * then.k * (1.0 + a * b),
        }
    }

    pub fn inverse(&self) -> Boost {
        Boost {
            epsilon: self.epsilon.reversed(),
            scale: self.scale.recip(),
            k: self.k,
        }
    }
}

pub fn boost_apply(b: &Boost, e: &Event) -> Event {
    b.apply(e)
}

/// Composite of `first` followed by `second`.
pub fn boost_compose(first: &Boost, second: &Boost) -> Boost {
    first.then(second)
}

pub fn boost_inverse(b: &Boost) -> Boost {
    b.inverse()
}

/// `t² - x² - y² - z²` with `c = 1`.
pub fn interval(e: &Event) -> f64 {
    e.t * e.t - (e.x * e.x + e.y * e.y + e.z * e.z)
}

/// Outcome of [`solve_scale_function`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleVerdict {
    /// Solved `l(ε)` for each input sample, in input order.
    pub solved: Vec<(f64, f64)>,
    /// `max |l(ε) - 1|` over the samples.
    pub max_deviation: f64,
    /// `max |l(ε'') - l(ε) l(ε')|` over all ordered sample pairs.
    pub max_closure_residual: f64,
}

/// Solve the one-parameter reduction `l = l(ε)` at one point.
///
/// Reciprocity: `(ε, l(ε))` followed by `(-ε, l(-ε))` must be the identity,
/// so `l(ε) l(-ε)` times the residual scale of the unit-scale round trip must
/// be `1`. Isotropy: `l(ε) = l(-ε)`. Together `l(ε)² = 1 / residual`, and
/// the positive root is taken because `l > 0`.
fn solve_scale_at(eps: Velocity) -> Result<f64> {
    let there = Boost::along_x(eps);
    let back = Boost::along_x(eps.reversed());
    let round_trip = there.then(&back);

    if round_trip.epsilon().value() != 0.0 {
        return Err(KinematicsError::InconsistentConstraints {
            epsilon: eps.value(),
            reason: "reciprocal boosts do not cancel in velocity",
        });
    }
    // Reciprocity: l(ε) · l(-ε) · residual = 1.
    let product = round_trip.scale().recip();
    // Isotropy: l(ε) = l(-ε), so l(ε)² = product.
    if !(product.is_finite() && product > 0.0) {
        return Err(KinematicsError::InconsistentConstraints {
            epsilon: eps.value(),
            reason: "reciprocity forces a non-positive scale product",
        });
    }
    Ok(product.sqrt())
}

/// Check numerically that closure, reciprocity and isotropy force `l ≡ 1`.
pub fn solve_scale_function(samples: &[Velocity]) -> Result<ScaleVerdict> {
    if samples.is_empty() {
        return Err(KinematicsError::EmptySamples);
    }

    let mut solved = Vec::with_capacity(samples.len());
    let mut max_deviation = 0.0f64;
    for &eps in samples {
        let l = solve_scale_at(eps)?;
        max_deviation = max_deviation.max((l - 1.0).abs());
        solved.push((eps.value(), l));
    }

    let mut max_closure_residual = 0.0f64;
    for &(e1, l1) in &solved {
        for &(e2, l2) in &solved {
            let composed = compose_velocities(Velocity(e1), Velocity(e2));
            let l12 = solve_scale_at(composed)?;
            max_closure_residual = max_closure_residual.max((l12 - l1 * l2).abs());
        }
    }

    Ok(ScaleVerdict {
        solved,
        max_deviation,
        max_closure_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn v(e: f64) -> Velocity {
        Velocity::new(e).unwrap()
    }

    #[test]
    fn velocity_rejects_light_speed_and_beyond() {
        for bad in [1.0, -1.0, 1.5, f64::NAN, f64::INFINITY] {
            assert!(Velocity::new(bad).is_err(), "{bad}");
        }
        assert!(Velocity::new(0.999_999).is_ok());
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(Velocity::ZERO), 1.0);
        assert_relative_eq!(gamma(v(0.6)), 1.25, max_relative = 1e-15);
        assert_relative_eq!(gamma(v(0.8)), 5.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn apply_examples() {
        let e = Event::new(3.0, 2.0, 1.0, 0.0).unwrap();
        let out = Boost::IDENTITY.apply(&e);
        assert_eq!(out.coords(), e.coords());
        assert_eq!(out.frame, FrameTag(1));

        let out = Boost::along_x(v(0.6)).apply(&Event::on_axis(0.0, 1.0).unwrap());
        assert_relative_eq!(out.t, -0.75, max_relative = 1e-15);
        assert_relative_eq!(out.x, 1.25, max_relative = 1e-15);

        let b = Boost::new(v(0.6), 2.0).unwrap();
        let out = b.apply(&Event::new(0.0, 1.0, 1.0, 0.0).unwrap());
        assert_relative_eq!(out.t, -1.5, max_relative = 1e-15);
        assert_relative_eq!(out.x, 2.5, max_relative = 1e-15);
        assert_eq!(out.y, 2.0);
        assert_eq!(out.z, 0.0);
    }

    #[test]
    fn compose_examples() {
        let half = Boost::along_x(v(0.5));
        let c = boost_compose(&half, &half);
        assert_relative_eq!(c.epsilon().value(), 0.8, max_relative = 1e-15);
        assert_eq!(c.scale(), 1.0);

        let b = Boost::new(v(0.37), 2.5).unwrap();
        let back = Boost::new(v(-0.37), 0.4).unwrap();
        let id = boost_compose(&b, &back);
        assert_eq!(id.epsilon().value(), 0.0);
        assert_relative_eq!(id.scale(), 1.0, max_relative = 1e-15);

        let dil = Boost::new(Velocity::ZERO, 3.0).unwrap();
        let c = boost_compose(&Boost::along_x(v(0.6)), &dil);
        assert_eq!(c.epsilon().value(), 0.6);
        assert_eq!(c.scale(), 3.0);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(boost_inverse(&Boost::IDENTITY), Boost::IDENTITY);
        let inv = boost_inverse(&Boost::along_x(v(0.6)));
        assert_eq!(inv.epsilon().value(), -0.6);
        assert_eq!(inv.scale(), 1.0);
        let b = Boost::new(v(0.5), 2.0).unwrap();
        let inv = boost_inverse(&b);
        assert_eq!((inv.epsilon().value(), inv.scale()), (-0.5, 0.5));
        let id = b.then(&inv);
        assert_eq!(id.epsilon().value(), 0.0);
        assert_relative_eq!(id.scale(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(id.gamma(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn velocity_composition_examples() {
        assert_relative_eq!(
            compose_velocities(v(0.5), v(0.5)).value(),
            0.8,
            max_relative = 1e-15
        );
        assert_eq!(compose_velocities(v(0.3), Velocity::ZERO).value(), 0.3);
        let fast = compose_velocities(v(0.9), v(0.9)).value();
        assert_relative_eq!(fast, 1.8 / 1.81, max_relative = 1e-15);
        assert!(fast < 1.0);
    }

    #[test]
    fn composition_stays_subluminal_at_the_edge() {
        let edge = v(1.0f64.next_down());
        let c = compose_velocities(edge, edge);
        assert!(c.value() < 1.0);
        assert!(gamma(c).is_finite());
    }

    #[test]
    fn interval_examples() {
        assert_eq!(interval(&Event::on_axis(1.0, 1.0).unwrap()), 0.0);
        assert_eq!(interval(&Event::on_axis(2.0, 0.0).unwrap()), 4.0);
        let before = Event::on_axis(0.0, 1.0).unwrap();
        let after = Boost::along_x(v(0.6)).apply(&before);
        assert_eq!(interval(&before), -1.0);
        assert_relative_eq!(interval(&after), -1.0, max_relative = 1e-14);
    }

    #[test]
    fn scale_function_examples() {
        let verdict = solve_scale_function(&[Velocity::ZERO]).unwrap();
        assert_eq!(verdict.max_deviation, 0.0);

        let verdict = solve_scale_function(&[v(0.6)]).unwrap();
        assert_eq!(verdict.max_deviation, 0.0);
        assert_eq!(verdict.solved, vec![(0.6, 1.0)]);

        let samples: Vec<_> = (0..99).map(|i| v(-0.99 + 1.98 * i as f64 / 98.0)).collect();
        let verdict = solve_scale_function(&samples).unwrap();
        assert!(verdict.max_deviation <= 1e-12, "{verdict:?}");
        assert!(verdict.max_closure_residual <= 1e-12, "{verdict:?}");
    }

    #[test]
    fn scale_function_requires_samples() {
        assert_eq!(
            solve_scale_function(&[]),
            Err(KinematicsError::EmptySamples)
        );
    }

    #[test]
    fn frame_tags_print_primes() {
        assert_eq!(FrameTag::STATIONARY.to_string(), "K");
        assert_eq!(FrameTag(2).to_string(), "K''");
    }

    #[test]
    fn invalid_scale_rejected() {
        for bad in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(Boost::new(Velocity::ZERO, bad).is_err());
        }
    }
}
