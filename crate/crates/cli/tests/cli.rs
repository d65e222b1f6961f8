use std::process::{Command, Output};

use relsync::commands::read_sweep_csv;

fn relsync(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relsync"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = relsync(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn roundtrip_json_values() {
    let doc = json(&[
        "roundtrip",
        "--eps",
        "0.6",
        "--length",
        "1.0",
        "--format",
        "json",
    ]);
    assert_eq!(doc["results"]["true_time"]["t2"], 2.0);
    assert_eq!(doc["results"]["true_time"]["t3"], 2.5);
    assert_eq!(doc["results"]["true_time"]["kappa"], 0.8);
    assert_eq!(doc["results"]["local_time"]["kappa"], 0.5);
    for a in doc["assertions"].as_array().unwrap() {
        for key in ["name", "max_deviation", "tolerance", "pass"] {
            assert!(a.get(key).is_some(), "assertion lacks {key}");
        }
    }
}

#[test]
fn roundtrip_at_rest_and_negative_eps() {
    let doc = json(&["roundtrip", "--eps", "0", "--format", "json"]);
    assert_eq!(doc["results"]["true_time"]["kappa"], 0.5);
    let doc = json(&[
        "roundtrip",
        "--eps",
        "-0.6",
        "--format",
        "json",
        "--basis",
        "true",
    ]);
    assert!((doc["results"]["true_time"]["kappa"].as_f64().unwrap() - 0.2).abs() < 1e-12);
    assert!(doc["results"].get("local_time").is_none());
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = [
        "equivalence",
        "--random",
        "50",
        "--seed",
        "7",
        "--eps",
        "0.99",
        "--format",
        "json",
    ];
    let a = relsync(&args);
    let b = relsync(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["config"]["seed"], 7);
    assert_eq!(doc["config"]["points"], 51);
    let eps: Vec<f64> = doc["results"]["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["eps"].as_f64().unwrap())
        .collect();
    assert!(eps.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn sweep_rows_from_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.csv");
    let out = relsync(&[
        "kappa-sweep",
        "--from",
        "0",
        "--to",
        "0.9",
        "--step",
        "0.1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let rows = read_sweep_csv(std::fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[6].eps, 0.6);
    assert!((rows[6].kappa_true_sim - 0.8).abs() < 1e-12);
    assert_eq!(rows[6].kappa_local, 0.5);

    let out = relsync(&[
        "kappa-sweep",
        "--from",
        "0",
        "--to",
        "0",
        "--step",
        "0.1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        text,
        "eps,kappa_true_sim,kappa_true_formula,kappa_local\n0,0.5,0.5,0.5\n"
    );
}

#[test]
fn invalid_inputs_exit_nonzero() {
    for args in [
        &["roundtrip", "--eps", "1.0"][..],
        &["roundtrip", "--eps", "-1.5"],
        &["rod", "--eps", "0.5", "--length", "0"],
        &[
            "kappa-sweep",
            "--from",
            "0.5",
            "--to",
            "0.1",
            "--step",
            "0.1",
            "--out",
            "/dev/null",
        ],
        &["group-audit", "--samples", "0"],
    ] {
        let out = relsync(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn rod_compose_and_report_file() {
    let doc = json(&["rod", "--eps", "0.6", "--format", "json"]);
    assert!(
        (doc["results"]["einstein"]["measured_from_other_frame"]
            .as_f64()
            .unwrap()
            - 0.8)
            .abs()
            < 1e-12
    );
    assert!(
        (doc["results"]["poincare"]["measured_in_home_frame"]
            .as_f64()
            .unwrap()
            - 1.0)
            .abs()
            < 1e-12
    );

    let doc = json(&[
        "compose", "--eps", "0.5", "--eps2", "0.5", "--scale2", "3", "--format", "json",
    ]);
    assert!((doc["results"]["eps"].as_f64().unwrap() - 0.8).abs() < 1e-15);
    assert_eq!(doc["results"]["scale"], 3.0);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("audit.json");
    let out = relsync(&[
        "group-audit",
        "--samples",
        "1",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(doc["verdict"], "PASS");
}

#[test]
fn speed_of_light_rescales_reported_times() {
    let doc = json(&["roundtrip", "--eps", "0.6", "--c", "4", "--format", "json"]);
    assert_eq!(doc["results"]["true_time"]["t3"], 0.625);
    assert_eq!(doc["results"]["true_time"]["x_a3"], 1.5);
}
