//! Two measurement pipelines over the same physics.
//!
//! Einstein's pipeline knows only inertial frames and the Lorentz map between
//! them. Poincaré's pipeline starts from the ether frame, contracts moving
//! rods for real, and lets co-moving observers read local time. Each pipeline
//! produces an [`ObservableSet`]; Poincaré's also fills an [`EtherLedger`] with
//! the true-time bookkeeping that no observer can access.
//!
//! Frame layout: the rod and the clocks rest in `K'`, which moves with `+ε`
//! relative to `K`. For the Poincaré pipeline `K` is the ether frame.

use crate::error::{KinematicsError, Result};
use crate::ether::{round_trip_true, RodConfiguration};
use crate::lorentz::{gamma, Boost, Event, Velocity};
use crate::sync::{
    einstein_round_trip, local_round_trip, local_time, SyncConvention, SyncReport, TimeBasis,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RodMeasurement {
    pub rest_length: f64,
    pub eps: Velocity,
    pub convention: SyncConvention,
    /// Length found by observers sharing the rod's rest frame.
    pub measured_in_home_frame: f64,
    /// Length found by observers in the other frame.
    pub measured_from_other_frame: f64,
}

/// Position at time `t` of the straight worldline through `a` and `b`.
fn position_at(a: &Event, b: &Event, t: f64) -> f64 {
    a.x + (b.x - a.x) * (t - a.t) / (b.t - a.t)
}

/// Mark both endpoints of a rod resting in some frame at equal time in a
/// frame reached by `to_observer`, and difference the positions.
fn mark_simultaneously(rest_endpoints: [f64; 2], to_observer: &Boost) -> Result<f64> {
    let mut marks = [0.0; 2];
    for (mark, x_rest) in marks.iter_mut().zip(rest_endpoints) {
        let a = to_observer.apply(&Event::on_axis(0.0, x_rest)?);
        let b = to_observer.apply(&Event::on_axis(1.0, x_rest)?);
        *mark = position_at(&a, &b, 0.0);
    }
    Ok(marks[1] - marks[0])
}

fn einstein_rod(rest_length: f64, observer_from_rod: &Boost) -> Result<f64> {
    if !(rest_length.is_finite() && rest_length > 0.0) {
        return Err(KinematicsError::InvalidLength(rest_length));
    }
    mark_simultaneously([0.0, rest_length], observer_from_rod)
}

/// Poincaré pipeline with the ether at rest in the observer's frame and the
/// rod moving at `eps` through it. Returns `(home, cross, real_length)`.
fn poincare_rod(rest_length: f64, eps: Velocity) -> Result<(f64, f64, f64)> {
    let rod = RodConfiguration::new(rest_length, eps)?;
    let real = rod.contracted_length;

    // The first LT at one fixed true time maps the contracted rod back to its
    // coordinate length in the co-moving frame.
    let t_mark = rest_length;
    let to_local = Boost::along_x(eps);
    let rear = to_local.apply(&Event::on_axis(t_mark, eps.value() * t_mark)?);
    let front = to_local.apply(&Event::on_axis(t_mark, real + eps.value() * t_mark)?);
    let home = front.x - rear.x;

    // Ether observers mark both ends at equal true time: the real length.
    let (a, b) = rod.stations();
    let cross = b.position_at(t_mark) - a.position_at(t_mark);
    Ok((home, cross, real))
}

/// Measure a rod resting in `K'` from both frames.
pub fn measure_rod(
    rest_length: f64,
    eps: Velocity,
    convention: SyncConvention,
) -> Result<RodMeasurement> {
    let (home, cross) = match convention {
        SyncConvention::Einstein => {
            // K' → K is the inverse of the boost by +ε.
            let to_stationary = Boost::along_x(eps).inverse();
            (
                einstein_rod(rest_length, &Boost::IDENTITY)?,
                einstein_rod(rest_length, &to_stationary)?,
            )
        }
        SyncConvention::PoincareEther => {
            let (home, cross, _) = poincare_rod(rest_length, eps)?;
            (home, cross)
        }
    };
    Ok(RodMeasurement {
        rest_length,
        eps,
        convention,
        measured_in_home_frame: home,
        measured_from_other_frame: cross,
    })
}

/// Measure a rod resting in `K` from `K'`.
///
/// For the Poincaré pipeline the ether is declared at rest in `K'`, so the
/// rod moves through it with `-ε` and the whole pipeline is re-run.
pub fn measure_rod_swapped(
    rest_length: f64,
    eps: Velocity,
    convention: SyncConvention,
) -> Result<RodMeasurement> {
    let (home, cross) = match convention {
        SyncConvention::Einstein => (
            einstein_rod(rest_length, &Boost::IDENTITY)?,
            einstein_rod(rest_length, &Boost::along_x(eps))?,
        ),
        SyncConvention::PoincareEther => {
            let (home, cross, _) = poincare_rod(rest_length, eps.reversed())?;
            (home, cross)
        }
    };
    Ok(RodMeasurement {
        rest_length,
        eps,
        convention,
        measured_in_home_frame: home,
        measured_from_other_frame: cross,
    })
}

/// Local-time lapse per unit true-time lapse for a clock riding `x = ε t`.
pub fn clock_rate_ratio(eps: Velocity) -> f64 {
    let ticks = [0.0, 1.0].map(|t| Event {
        t,
        x: eps.value() * t,
        y: 0.0,
        z: 0.0,
        frame: Default::default(),
    });
    let local = ticks.map(|e| local_time(&e, eps));
    (local[1] - local[0]) / (ticks[1].t - ticks[0].t)
}

/// Einstein: a clock resting in `K'` ticks once; `K` times the two ticks.
fn einstein_clock_rate(eps: Velocity) -> Result<f64> {
    let to_stationary = Boost::along_x(eps).inverse();
    let first = to_stationary.apply(&Event::on_axis(0.0, 0.0)?);
    let second = to_stationary.apply(&Event::on_axis(1.0, 0.0)?);
    Ok(1.0 / (second.t - first.t))
}

/// What observers can measure. Built only from measurement outputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableSet {
    forth_local: f64,
    back_local: f64,
    rod_cross_measurement: f64,
    clock_rate_ratio: f64,
}

impl ObservableSet {
    /// Rejects round-trip reports kept in true time, which no co-moving
    /// observer can read.
    pub fn from_measurements(
        round_trip: &SyncReport,
        rod: &RodMeasurement,
        clock_rate_ratio: f64,
    ) -> Result<Self> {
        if round_trip.time_basis != TimeBasis::LocalTime {
            return Err(KinematicsError::NotObservable(
                "round-trip durations in true time",
            ));
        }
        Ok(ObservableSet {
            forth_local: round_trip.forth,
            back_local: round_trip.back,
            rod_cross_measurement: rod.measured_from_other_frame,
            clock_rate_ratio,
        })
    }

    pub fn forth_local(&self) -> f64 {
        self.forth_local
    }

    pub fn back_local(&self) -> f64 {
        self.back_local
    }

    pub fn rod_cross_measurement(&self) -> f64 {
        self.rod_cross_measurement
    }

    pub fn clock_rate_ratio(&self) -> f64 {
        self.clock_rate_ratio
    }

    pub fn fields(&self) -> [(&'static str, f64); 4] {
        [
            ("forth_local", self.forth_local),
            ("back_local", self.back_local),
            ("rod_cross_measurement", self.rod_cross_measurement),
            ("clock_rate_ratio", self.clock_rate_ratio),
        ]
    }

    /// Largest field-wise relative difference.
    pub fn max_relative_discrepancy(&self, other: &ObservableSet) -> f64 {
        self.fields()
            .iter()
            .zip(other.fields())
            .map(|(&(_, a), (_, b))| {
                let scale = a.abs().max(b.abs());
                if scale == 0.0 {
                    0.0
                } else {
                    (a - b).abs() / scale
                }
            })
            .fold(0.0, f64::max)
    }
}

/// Ether-frame bookkeeping of the Poincaré pipeline. Not observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtherLedger {
    pub real_rod_length: f64,
    pub t2: f64,
    pub t3: f64,
    pub forth_true: f64,
    pub back_true: f64,
    pub kappa_true: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceAudit {
    pub rest_length: f64,
    pub eps: Velocity,
    pub einstein: ObservableSet,
    pub poincare: ObservableSet,
    pub ether: EtherLedger,
}

impl EquivalenceAudit {
    pub fn max_discrepancy(&self) -> f64 {
        self.einstein.max_relative_discrepancy(&self.poincare)
    }
}

/// Run round trip, rod and clock measurements through both pipelines.
pub fn equivalence_audit(rest_length: f64, eps: Velocity) -> Result<EquivalenceAudit> {
    let einstein = ObservableSet::from_measurements(
        &einstein_round_trip(rest_length)?,
        &measure_rod(rest_length, eps, SyncConvention::Einstein)?,
        einstein_clock_rate(eps)?,
    )?;

    let record = round_trip_true(rest_length, eps)?;
    let local = local_round_trip(&record);
    let local_report = SyncReport::from_durations(
        local.forth,
        local.back,
        SyncConvention::PoincareEther,
        TimeBasis::LocalTime,
    );
    let (home, cross, real) = poincare_rod(rest_length, eps)?;
    let rod = RodMeasurement {
        rest_length,
        eps,
        convention: SyncConvention::PoincareEther,
        measured_in_home_frame: home,
        measured_from_other_frame: cross,
    };
    let poincare = ObservableSet::from_measurements(&local_report, &rod, clock_rate_ratio(eps))?;

    let ether = EtherLedger {
        real_rod_length: real,
        t2: record.t2,
        t3: record.t3,
        forth_true: record.forth_true,
        back_true: record.back_true,
        kappa_true: record.forth_true / (record.forth_true + record.back_true),
    };

    Ok(EquivalenceAudit {
        rest_length,
        eps,
        einstein,
        poincare,
        ether,
    })
}

/// `L / γ`, the expected cross-frame rod length.
pub fn contracted(rest_length: f64, eps: Velocity) -> f64 {
    rest_length / gamma(eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn v(e: f64) -> Velocity {
        Velocity::new(e).unwrap()
    }

    #[test]
    fn rod_at_rest_is_unchanged() {
        for conv in [SyncConvention::Einstein, SyncConvention::PoincareEther] {
            let m = measure_rod(1.0, Velocity::ZERO, conv).unwrap();
            assert_relative_eq!(m.measured_in_home_frame, 1.0, max_relative = 1e-15);
            assert_relative_eq!(m.measured_from_other_frame, 1.0, max_relative = 1e-15);
        }
    }

    #[test]
    fn einstein_rod_at_six_tenths() {
        let m = measure_rod(1.0, v(0.6), SyncConvention::Einstein).unwrap();
        assert_relative_eq!(m.measured_in_home_frame, 1.0, max_relative = 1e-14);
        assert_relative_eq!(m.measured_from_other_frame, 0.8, max_relative = 1e-14);
    }

    #[test]
    fn poincare_rod_at_six_tenths() {
        let (home, cross, real) = poincare_rod(1.0, v(0.6)).unwrap();
        assert_relative_eq!(real, 0.8, max_relative = 1e-14);
        assert_relative_eq!(home, 1.0, max_relative = 1e-14);
        assert_relative_eq!(cross, 0.8, max_relative = 1e-14);
    }

    #[test]
    fn swapped_frames_contract_mutually() {
        for conv in [SyncConvention::Einstein, SyncConvention::PoincareEther] {
            let m = measure_rod_swapped(2.0, v(0.8), conv).unwrap();
            assert_relative_eq!(m.measured_in_home_frame, 2.0, max_relative = 1e-14);
            assert_relative_eq!(m.measured_from_other_frame, 1.2, max_relative = 1e-14);
        }
    }

    #[test]
    fn rod_rejects_bad_length() {
        for conv in [SyncConvention::Einstein, SyncConvention::PoincareEther] {
            assert!(measure_rod(0.0, v(0.1), conv).is_err());
            assert!(measure_rod_swapped(-1.0, v(0.1), conv).is_err());
        }
    }

    #[test]
    fn clock_rate_examples() {
        assert_eq!(clock_rate_ratio(Velocity::ZERO), 1.0);
        assert_relative_eq!(clock_rate_ratio(v(0.6)), 0.8, max_relative = 1e-15);
        assert_relative_eq!(clock_rate_ratio(v(0.8)), 0.6, max_relative = 1e-14);
        assert_relative_eq!(
            einstein_clock_rate(v(0.8)).unwrap(),
            0.6,
            max_relative = 1e-14
        );
    }

    fn assert_set(set: &ObservableSet, expected: [f64; 4]) {
        for ((name, got), want) in set.fields().into_iter().zip(expected) {
            assert!(
                (got - want).abs() <= 1e-12 * want.abs(),
                "{name}: {got} != {want}"
            );
        }
    }

    #[test]
    fn audit_examples() {
        let a = equivalence_audit(1.0, Velocity::ZERO).unwrap();
        assert_eq!(a.max_discrepancy(), 0.0);

        let a = equivalence_audit(1.0, v(0.6)).unwrap();
        assert_set(&a.einstein, [1.0, 1.0, 0.8, 0.8]);
        assert_set(&a.poincare, [1.0, 1.0, 0.8, 0.8]);
        assert_relative_eq!(a.ether.forth_true, 2.0, max_relative = 1e-12);
        assert_relative_eq!(a.ether.back_true, 0.5, max_relative = 1e-12);

        let a = equivalence_audit(2.0, v(0.8)).unwrap();
        assert_set(&a.einstein, [2.0, 2.0, 1.2, 0.6]);
        assert_set(&a.poincare, [2.0, 2.0, 1.2, 0.6]);
        assert_relative_eq!(a.ether.real_rod_length, 1.2, max_relative = 1e-14);
    }

    #[test]
    fn true_time_reports_are_not_observable() {
        let report = crate::sync::round_trip_report(1.0, v(0.3), TimeBasis::TrueTime).unwrap();
        let rod = measure_rod(1.0, v(0.3), SyncConvention::Einstein).unwrap();
        assert!(matches!(
            ObservableSet::from_measurements(&report, &rod, 1.0),
            Err(KinematicsError::NotObservable(_))
        ));
    }

    #[test]
    fn contracted_helper() {
        assert_relative_eq!(contracted(1.0, v(0.6)), 0.8, max_relative = 1e-15);
    }
}
