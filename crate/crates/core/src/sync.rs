//! Distant-clock synchronization under both conventions.
//!
//! The Reichenbach parameter is written `κ` here (forth time divided by the
//! full round-trip time), since `ε` is already the velocity ratio.

use std::fmt;

use crate::error::{KinematicsError, Result};
use crate::ether::{round_trip_true, RoundTripRecord};
use crate::lorentz::{gamma, Event, Velocity};

/// Tolerance used by [`einstein_sync_check`], relative to the round-trip span.
pub const SYNC_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SyncConvention {
    Einstein,
    PoincareEther,
}

impl fmt::Display for SyncConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SyncConvention::Einstein => "einstein",
            SyncConvention::PoincareEther => "poincare",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TimeBasis {
    /// Coordinate time of the ether frame.
    TrueTime,
    /// Time read by clocks co-moving with `K'`.
    LocalTime,
}

impl fmt::Display for TimeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TimeBasis::TrueTime => "true",
            TimeBasis::LocalTime => "local",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyncReport {
    pub forth: f64,
    pub back: f64,
    /// `forth / (forth + back)`
    pub kappa: f64,
    pub convention: SyncConvention,
    pub time_basis: TimeBasis,
}

impl SyncReport {
    pub fn from_durations(
        forth: f64,
        back: f64,
        convention: SyncConvention,
        time_basis: TimeBasis,
    ) -> Self {
        SyncReport {
            forth,
            back,
            kappa: forth / (forth + back),
            convention,
            time_basis,
        }
    }
}

/// Poincaré's local time `k (t - ε x)` of an ether-frame event.
pub fn local_time(e: &Event, eps: Velocity) -> f64 {
    gamma(eps) * (e.t - eps.value() * e.x)
}

/// Local-time images of the three round-trip events.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalRoundTrip {
    pub t_a1: f64,
    pub t_b2: f64,
    pub t_a3: f64,
    pub forth: f64,
    pub back: f64,
}

pub fn local_round_trip(record: &RoundTripRecord) -> LocalRoundTrip {
    let eps = record.rod.eps;
    let t_a1 = local_time(&record.emission, eps);
    let t_b2 = local_time(&record.reflection, eps);
    let t_a3 = local_time(&record.arrival, eps);
    LocalRoundTrip {
        t_a1,
        t_b2,
        t_a3,
        forth: t_b2 - t_a1,
        back: t_a3 - t_b2,
    }
}

/// Einstein's criterion: the clocks agree iff `t_B - t_A = t'_A - t_B`.
pub fn einstein_sync_check(t_a: f64, t_b: f64, t_a_return: f64) -> Result<bool> {
    if !(t_a < t_b && t_b < t_a_return) {
        return Err(KinematicsError::Ordering("t_A < t_B < t_A_return"));
    }
    let span = t_a_return - t_a;
    let mismatch = ((t_b - t_a) - (t_a_return - t_b)).abs();
    Ok(mismatch <= SYNC_TOLERANCE * span.max(1.0))
}

/// The reading `B` must show at reflection for Einstein's criterion to hold.
pub fn einstein_offset(t_a: f64, t_a_return: f64) -> Result<f64> {
    if t_a_return <= t_a || t_a_return.is_nan() || t_a.is_nan() {
        return Err(KinematicsError::Ordering("t_A < t_A_return"));
    }
    Ok(t_a + (t_a_return - t_a) / 2.0)
}

/// Reichenbach parameter in true time, `(1 + ε) / 2`.
pub fn kappa_true(eps: Velocity) -> f64 {
    (1.0 + eps.value()) / 2.0
}

/// Simulated forth/back durations of the ether round trip in the chosen basis.
///
/// The durations come from [`round_trip_true`] (and its local-time image);
/// `κ` is their ratio, not the closed form.
pub fn round_trip_report(rest_length: f64, eps: Velocity, basis: TimeBasis) -> Result<SyncReport> {
    let record = round_trip_true(rest_length, eps)?;
    let (forth, back) = match basis {
        TimeBasis::TrueTime => (record.forth_true, record.back_true),
        TimeBasis::LocalTime => {
            let local = local_round_trip(&record);
            (local.forth, local.back)
        }
    };
    Ok(SyncReport::from_durations(
        forth,
        back,
        SyncConvention::PoincareEther,
        basis,
    ))
}

/// Round trip in a frame without ether: `A` and `B` at rest a distance `L`
/// apart, and `B`'s clock set by [`einstein_offset`].
pub fn einstein_round_trip(rest_length: f64) -> Result<SyncReport> {
    let record = round_trip_true(rest_length, Velocity::ZERO)?;
    let b_reading = einstein_offset(record.t1, record.t3)?;
    Ok(SyncReport::from_durations(
        b_reading - record.t1,
        record.t3 - b_reading,
        SyncConvention::Einstein,
        TimeBasis::LocalTime,
    ))
}
