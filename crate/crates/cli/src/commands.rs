use std::io::{Read, Write};
use std::path::Path;

use rand::Rng;
use relsync_core::{
    boost_compose, compose_velocities, einstein_offset, einstein_round_trip, einstein_sync_check,
    equivalence_audit, gamma, kappa_true, local_round_trip, measure_rod, measure_rod_swapped,
    round_trip_report, round_trip_true, Boost, ClosedForms, Event, SyncConvention, TimeBasis,
    Velocity,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::audit;
use crate::config::{ConventionChoice, ScenarioConfig};
use crate::report::{Assertion, Report};
use crate::CliError;

/// Column order of the kappa sweep file.
pub const SWEEP_HEADER: [&str; 4] = ["eps", "kappa_true_sim", "kappa_true_formula", "kappa_local"];

/// Lower bound on the true-time forth/back gap when `|ε| >= 0.1`.
pub const TRUE_TIME_GAP_THRESHOLD: f64 = 1e-6;

fn rel_dev(got: f64, want: f64, floor: f64) -> f64 {
    (got - want).abs() / want.abs().max(floor)
}

pub fn roundtrip(cfg: &ScenarioConfig) -> Result<Report, CliError> {
    let (length, eps, tol) = (cfg.length, cfg.velocity(), cfg.tolerance);
    // Times leave the natural-unit core here: t_report = t / c.
    let time = |t: f64| t / cfg.c;
    let conventions = cfg.convention.conventions();

    let mut results = serde_json::Map::new();
    let mut assertions = Vec::new();

    if conventions.contains(&SyncConvention::PoincareEther) {
        let record = round_trip_true(length, eps)?;
        let closed = ClosedForms::new(length, eps);

        if cfg.basis.includes(TimeBasis::TrueTime) {
            let report = round_trip_report(length, eps, TimeBasis::TrueTime)?;
            results.insert(
                "true_time".into(),
                json!({
                    "t1": time(record.t1),
                    "t2": time(record.t2),
                    "t3": time(record.t3),
                    "x_a1": record.x_a1,
                    "x_b2": record.x_b2,
                    "x_a3": record.x_a3,
                    "forth": time(report.forth),
                    "back": time(report.back),
                    "kappa": report.kappa,
                    "kappa_formula": kappa_true(eps),
                }),
            );
            assertions.extend([
                Assertion::within("t2_closed_form", rel_dev(record.t2, closed.t2, length), tol),
                Assertion::within("t3_closed_form", rel_dev(record.t3, closed.t3, length), tol),
                Assertion::within(
                    "x_b2_closed_form",
                    rel_dev(record.x_b2, closed.x_b2, length),
                    tol,
                ),
                Assertion::within(
                    "x_a3_closed_form",
                    rel_dev(record.x_a3, closed.x_a3, length),
                    tol,
                ),
                Assertion::within(
                    "kappa_true_formula",
                    (report.kappa - kappa_true(eps)).abs(),
                    tol,
                ),
            ]);
        }

        if cfg.basis.includes(TimeBasis::LocalTime) {
            let local = local_round_trip(&record);
            let report = round_trip_report(length, eps, TimeBasis::LocalTime)?;
            let offset = einstein_offset(local.t_a1, local.t_a3)?;
            results.insert(
                "local_time".into(),
                json!({
                    "t_a1": time(local.t_a1),
                    "t_b2": time(local.t_b2),
                    "t_a3": time(local.t_a3),
                    "forth": time(report.forth),
                    "back": time(report.back),
                    "kappa": report.kappa,
                    "einstein_offset": time(offset),
                    "einstein_sync": einstein_sync_check(local.t_a1, local.t_b2, local.t_a3)?,
                }),
            );
            assertions.extend([
                Assertion::within(
                    "local_forth_equals_length",
                    rel_dev(local.forth, length, length),
                    tol,
                ),
                Assertion::within(
                    "local_back_equals_length",
                    rel_dev(local.back, length, length),
                    tol,
                ),
                Assertion::within("kappa_local_half", (report.kappa - 0.5).abs(), tol),
                Assertion::within(
                    "einstein_offset_matches_local_reflection",
                    rel_dev(offset, local.t_b2, length),
                    tol,
                ),
            ]);
        }
    }

    if conventions.contains(&SyncConvention::Einstein) {
        let report = einstein_round_trip(length)?;
        results.insert(
            "einstein".into(),
            json!({
                "forth": time(report.forth),
                "back": time(report.back),
                "kappa": report.kappa,
            }),
        );
        assertions.push(Assertion::within(
            "einstein_kappa_half",
            (report.kappa - 0.5).abs(),
            tol,
        ));
    }

    let config = json!({
        "command": "roundtrip",
        "length": cfg.length,
        "eps": cfg.eps,
        "convention": cfg.convention,
        "basis": cfg.basis,
        "c": cfg.c,
        "seed": cfg.seed,
        "tolerance": cfg.tolerance,
    });
    Ok(Report::new(config, Value::Object(results), assertions))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub eps: f64,
    pub kappa_true_sim: f64,
    pub kappa_true_formula: f64,
    pub kappa_local: f64,
}

/// Grid `from, from + step, ...` up to `to`, snapped to 12 decimals so that
/// decimal steps land on their decimal values.
pub fn sweep_grid(from: f64, to: f64, step: f64) -> Result<Vec<Velocity>, CliError> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(CliError::Usage(format!(
            "--step must be positive, got {step}"
        )));
    }
    if from > to {
        return Err(CliError::Usage(format!(
            "--from ({from}) must not exceed --to ({to})"
        )));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    (0..count)
        .map(|i| {
            let e = ((from + i as f64 * step) * 1e12).round() / 1e12;
            Velocity::new(e).map_err(CliError::from)
        })
        .collect()
}

pub fn sweep_rows(grid: &[Velocity]) -> Result<Vec<SweepRow>, CliError> {
    grid.iter()
        .map(|&eps| {
            let truth = round_trip_report(1.0, eps, TimeBasis::TrueTime)?;
            let local = round_trip_report(1.0, eps, TimeBasis::LocalTime)?;
            Ok(SweepRow {
                eps: eps.value(),
                kappa_true_sim: truth.kappa,
                kappa_true_formula: kappa_true(eps),
                kappa_local: local.kappa,
            })
        })
        .collect()
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        // `{}` on f64 prints the shortest string that parses back exactly.
        w.write_record([
            r.eps.to_string(),
            r.kappa_true_sim.to_string(),
            r.kappa_true_formula.to_string(),
            r.kappa_local.to_string(),
        ])?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: "<sweep>".into(),
        source,
    })?;
    Ok(())
}

pub fn read_sweep_csv<R: Read>(input: R) -> Result<Vec<SweepRow>, CliError> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header != SWEEP_HEADER {
        return Err(CliError::Usage(format!(
            "unexpected sweep header {header:?}"
        )));
    }
    r.deserialize()
        .map(|row| row.map_err(CliError::from))
        .collect()
}

pub struct SweepArgs {
    pub from: f64,
    pub to: f64,
    pub step: f64,
    pub seed: u64,
    pub tolerance: f64,
}

pub fn kappa_sweep(args: &SweepArgs, out: &Path) -> Result<Report, CliError> {
    let grid = sweep_grid(args.from, args.to, args.step)?;
    let rows = sweep_rows(&grid)?;

    let file = std::fs::File::create(out).map_err(|source| CliError::Io {
        path: out.display().to_string(),
        source,
    })?;
    write_sweep_csv(&rows, std::io::BufWriter::new(file))?;

    let sim_vs_formula = rows
        .iter()
        .map(|r| (r.kappa_true_sim - r.kappa_true_formula).abs())
        .fold(0.0, f64::max);
    let local_vs_half = rows
        .iter()
        .map(|r| (r.kappa_local - 0.5).abs())
        .fold(0.0, f64::max);

    let config = json!({
        "command": "kappa-sweep",
        "from": args.from,
        "to": args.to,
        "step": args.step,
        "seed": args.seed,
        "tolerance": args.tolerance,
        "out": out.display().to_string(),
    });
    let results = json!({
        "rows": rows.len(),
        "max_kappa_true_sim_vs_formula": sim_vs_formula,
        "max_kappa_local_vs_half": local_vs_half,
    });
    Ok(Report::new(
        config,
        results,
        vec![
            Assertion::within(
                "kappa_true_sim_matches_formula",
                sim_vs_formula,
                args.tolerance,
            ),
            Assertion::within("kappa_local_half", local_vs_half, args.tolerance),
        ],
    ))
}

pub fn group_audit(samples: usize, seed: u64, tolerance: f64) -> Result<Report, CliError> {
    let audit = audit::group_audit(samples, seed, tolerance)?;
    let config = json!({
        "command": "group-audit",
        "samples": audit.samples,
        "seed": audit.seed,
        "tolerance": tolerance,
        "scale_function_samples": audit::SCALE_FUNCTION_SAMPLES,
    });
    let batteries: serde_json::Map<String, Value> = audit
        .assertions
        .iter()
        .map(|a| (a.name.clone(), json!(a.max_deviation)))
        .collect();
    Ok(Report::new(
        config,
        json!({ "max_deviation": batteries }),
        audit.assertions,
    ))
}

/// `n` seeded points with `L ∈ (0.1, 10)` and `ε ∈ (-0.99, 0.99)`.
pub fn random_grid(n: usize, seed: u64) -> Vec<(f64, Velocity)> {
    let mut rng = audit::rng(seed);
    (0..n)
        .map(|_| {
            let length = rng.gen_range(0.1..10.0);
            let eps = Velocity::new(rng.gen_range(-0.99..0.99)).expect("inside (-1, 1)");
            (length, eps)
        })
        .collect()
}

pub fn equivalence(
    points: &[(f64, Velocity)],
    seed: u64,
    tolerance: f64,
) -> Result<Report, CliError> {
    if points.is_empty() {
        return Err(CliError::Usage("equivalence grid is empty".into()));
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| {
        a.1.value()
            .total_cmp(&b.1.value())
            .then(a.0.total_cmp(&b.0))
    });

    let mut rows = Vec::with_capacity(sorted.len());
    let mut max_discrepancy = 0.0f64;
    let mut min_gap = f64::INFINITY;
    for &(length, eps) in &sorted {
        let audit = equivalence_audit(length, eps)?;
        let discrepancy = audit.max_discrepancy();
        max_discrepancy = max_discrepancy.max(discrepancy);
        let gap = (audit.ether.forth_true - audit.ether.back_true).abs();
        if eps.value().abs() >= 0.1 {
            min_gap = min_gap.min(gap);
        }
        rows.push(json!({
            "length": length,
            "eps": eps.value(),
            "max_discrepancy": discrepancy,
            "observables": {
                "forth_local": audit.poincare.forth_local(),
                "back_local": audit.poincare.back_local(),
                "rod_cross_measurement": audit.poincare.rod_cross_measurement(),
                "clock_rate_ratio": audit.poincare.clock_rate_ratio(),
            },
            "ether_ledger": {
                "forth_true": audit.ether.forth_true,
                "back_true": audit.ether.back_true,
                "kappa_true": audit.ether.kappa_true,
                "real_rod_length": audit.ether.real_rod_length,
            },
        }));
    }

    let mut assertions = vec![Assertion::within(
        "observables_agree",
        max_discrepancy,
        tolerance,
    )];
    if min_gap.is_finite() {
        assertions.push(Assertion::exceeds(
            "true_time_forth_back_gap_min",
            min_gap,
            TRUE_TIME_GAP_THRESHOLD,
        ));
    }

    let config = json!({
        "command": "equivalence",
        "points": sorted.len(),
        "seed": seed,
        "tolerance": tolerance,
    });
    let results = json!({
        "max_discrepancy": max_discrepancy,
        "points": rows,
    });
    Ok(Report::new(config, results, assertions))
}

pub fn rod(
    length: f64,
    eps: Velocity,
    convention: ConventionChoice,
    swapped: bool,
    seed: u64,
    tolerance: f64,
) -> Result<Report, CliError> {
    let expected_cross = length / gamma(eps);
    let mut results = serde_json::Map::new();
    let mut assertions = Vec::new();
    for conv in convention.conventions() {
        let m = if swapped {
            measure_rod_swapped(length, eps, conv)?
        } else {
            measure_rod(length, eps, conv)?
        };
        results.insert(
            conv.to_string(),
            json!({
                "measured_in_home_frame": m.measured_in_home_frame,
                "measured_from_other_frame": m.measured_from_other_frame,
            }),
        );
        assertions.push(Assertion::within(
            format!("{conv}_home_length"),
            rel_dev(m.measured_in_home_frame, length, length),
            tolerance,
        ));
        assertions.push(Assertion::within(
            format!("{conv}_cross_length_contracted"),
            rel_dev(m.measured_from_other_frame, expected_cross, length),
            tolerance,
        ));
    }
    let config = json!({
        "command": "rod",
        "length": length,
        "eps": eps.value(),
        "convention": convention,
        "swapped": swapped,
        "seed": seed,
        "tolerance": tolerance,
    });
    Ok(Report::new(config, Value::Object(results), assertions))
}

pub fn compose(
    first: (Velocity, f64),
    second: (Velocity, f64),
    seed: u64,
    tolerance: f64,
) -> Result<Report, CliError> {
    let b1 = Boost::new(first.0, first.1)?;
    let b2 = Boost::new(second.0, second.1)?;
    let composed = boost_compose(&b1, &b2);
    let velocity = compose_velocities(first.0, second.0);

    let probe = Event::new(1.0, 0.5, 0.25, -0.125)?;
    let direct = composed.apply(&probe);
    let chained = b2.apply(&b1.apply(&probe));
    let norm = direct
        .coords()
        .iter()
        .chain(chained.coords().iter())
        .fold(0.0f64, |m, c| m.max(c.abs()));
    let closure = direct
        .coords()
        .iter()
        .zip(chained.coords())
        .map(|(a, b)| (a - b).abs() / norm)
        .fold(0.0, f64::max);
    let rapidity = (first.0.value().atanh() + second.0.value().atanh()).tanh();

    let config = json!({
        "command": "compose",
        "first": { "eps": first.0.value(), "scale": first.1 },
        "second": { "eps": second.0.value(), "scale": second.1 },
        "seed": seed,
        "tolerance": tolerance,
    });
    let results = json!({
        "eps": composed.epsilon().value(),
        "scale": composed.scale(),
        "gamma": composed.gamma(),
    });
    Ok(Report::new(
        config,
        results,
        vec![
            Assertion::within(
                "velocity_law",
                (composed.epsilon().value() - velocity.value()).abs(),
                tolerance,
            ),
            Assertion::within(
                "rapidity_addition",
                (velocity.value() - rapidity).abs(),
                tolerance,
            ),
            Assertion::within("closure_on_probe_event", closure, tolerance),
        ],
    ))
}
