//! Seeded property batteries over random boosts and events.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relsync_core::{
    boost_compose, boost_inverse, compose_velocities, interval, solve_scale_function, Boost, Event,
    Velocity,
};

use crate::report::Assertion;
use crate::CliError;

/// Threshold for the scale-function reduction, independent of `--tolerance`.
pub const SCALE_FUNCTION_TOLERANCE: f64 = 1e-12;
/// Number of evenly spaced samples handed to the scale-function solver.
pub const SCALE_FUNCTION_SAMPLES: usize = 99;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in the open interval (-1, 1).
pub fn random_velocity(rng: &mut impl Rng) -> Velocity {
    loop {
        if let Ok(v) = Velocity::new(rng.gen_range(-1.0..1.0)) {
            return v;
        }
    }
}

pub fn random_boost(rng: &mut impl Rng) -> Boost {
    let eps = random_velocity(rng);
    let scale = rng.gen_range(0.1..10.0);
    Boost::new(eps, scale).expect("scale drawn from (0.1, 10)")
}

pub fn random_event(rng: &mut impl Rng) -> Event {
    let mut c = [0.0; 4];
    for v in &mut c {
        *v = rng.gen_range(-10.0..10.0);
    }
    Event::new(c[0], c[1], c[2], c[3]).expect("finite coordinates")
}

fn max_abs(e: &Event) -> f64 {
    e.coords().iter().fold(0.0f64, |m, c| m.max(c.abs()))
}

fn norm_sq(e: &Event) -> f64 {
    e.coords().iter().map(|c| c * c).sum()
}

/// Coordinate-wise difference relative to the larger event's magnitude.
fn event_deviation(a: &Event, b: &Event) -> f64 {
    let scale = max_abs(a).max(max_abs(b));
    if scale == 0.0 {
        return 0.0;
    }
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| (x - y).abs() / scale)
        .fold(0.0, f64::max)
}

fn param_deviation(a: &Boost, b: &Boost) -> f64 {
    let eps = (a.epsilon().value() - b.epsilon().value()).abs();
    let scale = (a.scale() - b.scale()).abs() / a.scale().max(b.scale());
    eps.max(scale)
}

#[derive(Debug, Clone, Default)]
struct Battery {
    closure: f64,
    associativity: f64,
    identity: f64,
    inverse: f64,
    velocity_oracle: f64,
    superluminal: usize,
    interval_unit: f64,
    interval_scaled: f64,
}

/// Evenly spaced velocities covering [-0.99, 0.99].
pub fn scale_function_samples() -> Vec<Velocity> {
    let n = SCALE_FUNCTION_SAMPLES;
    (0..n)
        .map(|i| {
            let e = -0.99 + 1.98 * i as f64 / (n - 1) as f64;
            Velocity::new(e).expect("inside (-1, 1)")
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct GroupAudit {
    pub samples: usize,
    pub seed: u64,
    pub assertions: Vec<Assertion>,
}

pub fn group_audit(samples: usize, seed: u64, tolerance: f64) -> Result<GroupAudit, CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let mut rng = rng(seed);
    let mut acc = Battery::default();

    for _ in 0..samples {
        let (a, b, c) = (
            random_boost(&mut rng),
            random_boost(&mut rng),
            random_boost(&mut rng),
        );
        let event = random_event(&mut rng);

        let composed = boost_compose(&a, &b).apply(&event);
        let sequential = b.apply(&a.apply(&event));
        acc.closure = acc.closure.max(event_deviation(&composed, &sequential));

        let left = boost_compose(&boost_compose(&a, &b), &c);
        let right = boost_compose(&a, &boost_compose(&b, &c));
        acc.associativity = acc.associativity.max(param_deviation(&left, &right));

        let id_dev = param_deviation(&boost_compose(&Boost::IDENTITY, &a), &a)
            .max(param_deviation(&boost_compose(&a, &Boost::IDENTITY), &a))
            .max(event_deviation(&Boost::IDENTITY.apply(&event), &event));
        acc.identity = acc.identity.max(id_dev);

        let inv = boost_inverse(&a);
        let inv_dev = param_deviation(&boost_compose(&a, &inv), &Boost::IDENTITY)
            .max(param_deviation(&boost_compose(&inv, &a), &Boost::IDENTITY));
        acc.inverse = acc.inverse.max(inv_dev);

        let (e1, e2) = (a.epsilon(), b.epsilon());
        let sum = compose_velocities(e1, e2).value();
        if sum.abs() >= 1.0 {
            acc.superluminal += 1;
        }
        let oracle = (e1.value().atanh() + e2.value().atanh()).tanh();
        acc.velocity_oracle = acc.velocity_oracle.max((sum - oracle).abs());

        let unit = Boost::along_x(a.epsilon());
        let boosted = unit.apply(&event);
        let scale = norm_sq(&boosted).max(norm_sq(&event));
        acc.interval_unit = acc
            .interval_unit
            .max((interval(&boosted) - interval(&event)).abs() / scale);

        let boosted = a.apply(&event);
        let expected = a.scale() * a.scale() * interval(&event);
        acc.interval_scaled = acc
            .interval_scaled
            .max((interval(&boosted) - expected).abs() / norm_sq(&boosted));
    }

    let verdict = solve_scale_function(&scale_function_samples())?;

    let assertions = vec![
        Assertion::within("closure", acc.closure, tolerance),
        Assertion::within("associativity", acc.associativity, tolerance),
        Assertion::within("identity", acc.identity, tolerance),
        Assertion::within("inverse", acc.inverse, tolerance),
        Assertion::within(
            "velocity_composition_subluminal",
            acc.superluminal as f64,
            0.0,
        ),
        Assertion::within(
            "velocity_composition_rapidity",
            acc.velocity_oracle,
            tolerance,
        ),
        Assertion::within(
            "interval_invariance_unit_scale",
            acc.interval_unit,
            tolerance,
        ),
        Assertion::within(
            "interval_scaling_by_scale_squared",
            acc.interval_scaled,
            tolerance,
        ),
        Assertion::within(
            "scale_function_deviation_from_unity",
            verdict.max_deviation,
            SCALE_FUNCTION_TOLERANCE,
        ),
        Assertion::within(
            "scale_function_closure",
            verdict.max_closure_residual,
            SCALE_FUNCTION_TOLERANCE,
        ),
    ];

    Ok(GroupAudit {
        samples,
        seed,
        assertions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_samples_is_a_usage_error() {
        assert!(matches!(group_audit(0, 1, 1e-10), Err(CliError::Usage(_))));
    }

    #[test]
    fn single_sample_runs() {
        let audit = group_audit(1, 3, 1e-10).unwrap();
        assert!(
            audit.assertions.iter().all(|a| a.pass),
            "{:?}",
            audit.assertions
        );
    }

    #[test]
    fn same_seed_same_deviations() {
        let a = group_audit(200, 9, 1e-10).unwrap();
        let b = group_audit(200, 9, 1e-10).unwrap();
        assert_eq!(a.assertions, b.assertions);
    }

    #[test]
    fn scale_samples_span_the_grid() {
        let s = scale_function_samples();
        assert_eq!(s.len(), 99);
        assert_eq!(s[0].value(), -0.99);
        assert!((s[98].value() - 0.99).abs() < 1e-15);
        assert!(s[49].value().abs() < 1e-15);
    }
}
