use thiserror::Error;

pub type Result<T, E = KinematicsError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KinematicsError {
    #[error("velocity ratio {0} is outside the open interval (-1, 1)")]
    VelocityOutOfRange(f64),

    #[error("boost scale {0} must be a positive finite number")]
    InvalidScale(f64),

    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("rest length {0} must be positive and finite")]
    InvalidLength(f64),

    #[error("light ray emitted at t = {t_emit} never reaches station {station}")]
    NoIntersection { station: char, t_emit: f64 },

    #[error("event times out of order: expected {0}")]
    Ordering(&'static str),

    #[error("{0} is bookkeeping, not an observable")]
    NotObservable(&'static str),

    #[error("sample set is empty")]
    EmptySamples,

    #[error("scale-function constraints are inconsistent at ε = {epsilon}: {reason}")]
    InconsistentConstraints { epsilon: f64, reason: &'static str },

    #[error("geometric {quantity} = {geometric} disagrees with closed form {closed_form}")]
    ClosedFormMismatch {
        quantity: &'static str,
        geometric: f64,
        closed_form: f64,
    },
}
