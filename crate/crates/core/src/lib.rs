//! Special-relativity kinematics under two synchronization conventions.
//!
//! The crate models the same physics twice:
//!
//! * **Einstein**: every inertial frame uses identical units and sets distant
//!   clocks by halving light round trips.
//! * **Poincaré / ether**: one frame `K` is declared at rest in the ether,
//!   moving rods are really contracted, and co-moving observers read the
//!   *local time* `t' = k (t - ε x)` instead of the ether's true time.
//!
//! Everything is in natural units (`c = 1`). Unit conversion happens at the
//! I/O boundary only (see the `relsync` binary).
//!
//! Modules:
//!
//! * [`lorentz`]: the two-parameter transformation family `(ε, l)`, its group
//!   law and the reduction to the physical subgroup `l = 1`.
//! * [`ether`]: true-time light propagation between co-moving stations.
//! * [`sync`]: local time, Einstein's criterion and the Reichenbach parameter.
//! * [`scenarios`]: rod/clock measurements and the observational-equivalence
//!   audit.

pub mod error;
pub mod ether;
pub mod lorentz;
pub mod scenarios;
pub mod sync;

pub use error::{KinematicsError, Result};
pub use ether::{
    light_intersect, round_trip_true, ClosedForms, Direction, RodConfiguration, RoundTripRecord,
    Station,
};
pub use lorentz::{
    boost_apply, boost_compose, boost_inverse, compose_velocities, gamma, interval,
    solve_scale_function, Boost, Event, FrameTag, ScaleVerdict, Velocity,
};
pub use scenarios::{
    clock_rate_ratio, contracted, equivalence_audit, measure_rod, measure_rod_swapped,
    EquivalenceAudit, EtherLedger, ObservableSet, RodMeasurement,
};
pub use sync::{
    einstein_offset, einstein_round_trip, einstein_sync_check, kappa_true, local_round_trip,
    local_time, round_trip_report, LocalRoundTrip, SyncConvention, SyncReport, TimeBasis,
};
