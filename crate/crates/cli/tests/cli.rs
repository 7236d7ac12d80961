use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_equisphere"));
    c.env_remove("EQUISPHERE_PRECISION");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn pyramid_eta_one() {
    let o = run(&["pyramid", "--eta", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["nontrivial"][0]["rho"], "27/32");
    assert_eq!(v["RT2"], "3/8");
}

#[test]
fn pyramid_etabar_and_centers() {
    let o = run(&["pyramid", "--eta", "etabar", "--precision", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["eta"]["d"], 57);
    let o = run(&["pyramid", "--eta", "2", "--centers"]);
    let v = json_of(&o);
    assert_eq!(v["nontrivial"][0]["centers"].as_array().unwrap().len(), 4);
}

#[test]
fn johnson_equilateral() {
    let o = run(&["johnson", "--A", "1", "--B", "1", "--C", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["solution"]["rho"], "1/3");
    assert_eq!(
        v["solution"]["coords"],
        serde_json::json!(["1/3", "1/3", "1/3"])
    );
    assert_eq!(v["oracle"]["matches"], true);
}

#[test]
fn rbody_boundary() {
    let o = run(&["rbody", "--eta", "12/5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["rbody"], false);
    assert_eq!(v["reason"], "on-boundary");
}

#[test]
fn domain_errors_exit_one() {
    for args in [
        &["pyramid", "--eta", "3"][..],
        &["pyramid", "--eta", "1/0"],
        &["pyramid", "--eta", "x"],
        &["johnson", "--A", "1", "--B", "1", "--C", "4"],
        &["rbody", "--eta", "-1"],
        &["pyramid", "--eta", "1", "--format", "csv"],
        &["sweep", "--from", "2", "--to", "1", "--steps", "3"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn sweep_csv_ordered() {
    let o = run(&[
        "sweep",
        "--from",
        "1/2",
        "--to",
        "29/10",
        "--steps",
        "6",
        "--precision",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("eta,regime,RT2,rho1,rho2,rho3,z1,z2,z3,rbody")
    );
    let etas: Vec<f64> = lines
        .map(|l| {
            let e = l.split(',').next().unwrap();
            let (n, d) = e.split_once('/').unwrap_or((e, "1"));
            n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap()
        })
        .collect();
    assert_eq!(etas.len(), 7);
    assert!(etas.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn precision_from_env_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let o = bin()
        .env("EQUISPHERE_PRECISION", "5")
        .args([
            "pyramid",
            "--eta",
            "3/2",
            "--output",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["nontrivial"][0]["decimal"]["z"], "0.28657");
}

#[test]
fn regular_tetra_report() {
    let o = run(&["regular-tetra"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["nontrivial_admissible"], 7);
    assert_eq!(v["quintic_identity"], true);
}

#[test]
fn verify_single_criterion_is_idempotent() {
    let a = run(&["verify", "--criterion", "8"]);
    let b = run(&["verify", "--criterion", "8"]);
    assert_eq!(a.status.code(), Some(0));
    let strip = |o: &Output| {
        String::from_utf8_lossy(&o.stdout)
            .lines()
            .map(|l| l.split(" checks").next().unwrap().to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&a), strip(&b));
    assert!(strip(&a)[0].starts_with("[PASS] criterion 8"));
}
