//! True-time light propagation in the ether frame `K`.
//!
//! Two stations `A` and `B` ride on a rod moving with velocity `ε` along `+x`,
//! `B` ahead of `A`. In `K` the rod is really contracted to `k⁻¹ L`. A light
//! signal leaves `A` at `t = 0` from the origin, reflects at `B` and returns to
//! `A`. The events are found geometrically by intersecting light rays with
//! station worldlines; the textbook closed forms in [`ClosedForms`] are only
//! used to cross-check the geometry.

use crate::error::{KinematicsError, Result};
use crate::lorentz::{gamma, Event, Velocity};

/// Relative tolerance of the internal geometry/closed-form cross-check.
const CLOSED_FORM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Towards `+x`.
    Forward,
    /// Towards `-x`.
    Backward,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Backward => -1.0,
        }
    }
}

/// A point co-moving with `K'`, at `x0 + ε t` in the ether frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Station {
    pub label: char,
    pub x0: f64,
    pub eps: Velocity,
}

impl Station {
    pub fn new(label: char, x0: f64, eps: Velocity) -> Self {
        Station { label, x0, eps }
    }

    pub fn position_at(&self, t: f64) -> f64 {
        self.x0 + self.eps.value() * t
    }
}

/// Rod of rest length `L` moving through the ether.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RodConfiguration {
    pub rest_length: f64,
    pub eps: Velocity,
    /// `k⁻¹ L`, the rod's real length in `K`.
    pub contracted_length: f64,
}

impl RodConfiguration {
    pub fn new(rest_length: f64, eps: Velocity) -> Result<Self> {
        if !(rest_length.is_finite() && rest_length > 0.0) {
            return Err(KinematicsError::InvalidLength(rest_length));
        }
        Ok(RodConfiguration {
            rest_length,
            eps,
            contracted_length: rest_length / gamma(eps),
        })
    }

    /// Stations `A` (at the origin) and `B` (at `k⁻¹ L`) at `t = 0`.
    pub fn stations(&self) -> (Station, Station) {
        (
            Station::new('A', 0.0, self.eps),
            Station::new('B', self.contracted_length, self.eps),
        )
    }
}

/// Where a light ray from `emission` travelling in `direction` meets `target`.
///
/// Fails when the ray and station separate forever, including the degenerate
/// case where the emission already sits on the target worldline.
pub fn light_intersect(emission: &Event, direction: Direction, target: &Station) -> Result<Event> {
    let d = direction.sign();
    let gap = target.position_at(emission.t) - emission.x;
    // Closing speed is d - ε; its sign is the sign of d because |ε| < 1.
    let dt = gap / (d - target.eps.value());
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(KinematicsError::NoIntersection {
            station: target.label,
            t_emit: emission.t,
        });
    }
    let t = emission.t + dt;
    Ok(Event {
        t,
        x: target.position_at(t),
        y: emission.y,
        z: emission.z,
        frame: emission.frame,
    })
}

/// Closed forms for the round trip starting at the origin at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForms {
    /// `L sqrt((1 + ε) / (1 - ε))`
    pub t2: f64,
    /// `2 L / sqrt(1 - ε²)`
    pub t3: f64,
    /// `ε L sqrt((1 + ε) / (1 - ε)) + L sqrt(1 - ε²)`
    pub x_b2: f64,
    /// `2 ε L / sqrt(1 - ε²)`
    pub x_a3: f64,
}

impl ClosedForms {
    pub fn new(rest_length: f64, eps: Velocity) -> Self {
        let (l, e) = (rest_length, eps.value());
        let doppler = ((1.0 + e) / (1.0 - e)).sqrt();
        let root = ((1.0 - e) * (1.0 + e)).sqrt();
        ClosedForms {
            t2: l * doppler,
            t3: 2.0 * l / root,
            x_b2: e * l * doppler + l * root,
            x_a3: 2.0 * e * l / root,
        }
    }
}

/// Emission at `A`, reflection at `B`, return at `A`, all in true time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundTripRecord {
    pub rod: RodConfiguration,
    pub emission: Event,
    pub reflection: Event,
    pub arrival: Event,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub x_a1: f64,
    pub x_b2: f64,
    pub x_a3: f64,
    pub forth_true: f64,
    pub back_true: f64,
}

impl RoundTripRecord {
    fn from_events(
        rod: RodConfiguration,
        emission: Event,
        reflection: Event,
        arrival: Event,
    ) -> Self {
        RoundTripRecord {
            rod,
            emission,
            reflection,
            arrival,
            t1: emission.t,
            t2: reflection.t,
            t3: arrival.t,
            x_a1: emission.x,
            x_b2: reflection.x,
            x_a3: arrival.x,
            forth_true: reflection.t - emission.t,
            back_true: arrival.t - reflection.t,
        }
    }

    /// Same round trip with every event shifted by `(dt, dx)`.
    pub fn translated(&self, dt: f64, dx: f64) -> Self {
        let shift = |e: &Event| Event {
            t: e.t + dt,
            x: e.x + dx,
            ..*e
        };
        Self::from_events(
            self.rod,
            shift(&self.emission),
            shift(&self.reflection),
            shift(&self.arrival),
        )
    }

    /// Largest `| |Δx| - Δt |` over the two light segments.
    pub fn light_slope_residual(&self) -> f64 {
        let forth = ((self.x_b2 - self.x_a1).abs() - self.forth_true).abs();
        let back = ((self.x_a3 - self.x_b2).abs() - self.back_true).abs();
        forth.max(back)
    }
}

fn check_closed_form(
    quantity: &'static str,
    geometric: f64,
    closed_form: f64,
    scale: f64,
) -> Result<()> {
    let tolerance = CLOSED_FORM_TOLERANCE * closed_form.abs().max(scale);
    if (geometric - closed_form).abs() <= tolerance {
        Ok(())
    } else {
        Err(KinematicsError::ClosedFormMismatch {
            quantity,
            geometric,
            closed_form,
        })
    }
}

/// Simulate the forth-and-back light signal between `A` and `B` in true time.
pub fn round_trip_true(rest_length: f64, eps: Velocity) -> Result<RoundTripRecord> {
    let rod = RodConfiguration::new(rest_length, eps)?;
    let (a, b) = rod.stations();

    let emission = Event::on_axis(0.0, a.position_at(0.0))?;
    let reflection = light_intersect(&emission, Direction::Forward, &b)?;
    let arrival = light_intersect(&reflection, Direction::Backward, &a)?;
    let record = RoundTripRecord::from_events(rod, emission, reflection, arrival);

    let closed = ClosedForms::new(rest_length, eps);
    check_closed_form("t2", record.t2, closed.t2, rest_length)?;
    check_closed_form("t3", record.t3, closed.t3, rest_length)?;
    check_closed_form("x_b2", record.x_b2, closed.x_b2, rest_length)?;
    check_closed_form("x_a3", record.x_a3, closed.x_a3, rest_length)?;
    Ok(record)
}
