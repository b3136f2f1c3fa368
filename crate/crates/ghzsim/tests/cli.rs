use std::process::Command;

fn ghzsim(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ghzsim"))
        .args(args)
        .env_remove("GHZSIM_SEED")
        .output()
        .expect("binary runs")
}

#[test]
fn simulate_is_deterministic() {
    let args = ["simulate", "--model", "tri", "--angles", "0.3,0.9,1.4", "--trials", "20000", "--seed", "5"];
    let a = ghzsim(&args);
    let b = ghzsim(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same config must give byte-identical output");
}

#[test]
fn simulate_near_unit_correlator_at_zero() {
    let out = ghzsim(&["simulate", "--model", "tri", "--angles", "0,0,0", "--trials", "200000", "--seed", "7"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    let records = v["records"].as_array().unwrap();
    let full = records.iter().find(|r| r["subset"].as_array().unwrap().len() == 3).unwrap();
    assert!((full["value"].as_f64().unwrap() - 1.0).abs() < 0.01);
    assert_eq!(full["oracle"].as_f64().unwrap(), 1.0);
}

#[test]
fn record_count_matches_subsets() {
    let out = ghzsim(&[
        "simulate", "--model", "single-cbox", "--angles", "random:4", "--n", "4",
        "--trials", "1000", "--seed", "3",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), (1 << 4) - 1);
}

#[test]
fn csv_and_json_numbers_agree() {
    let base = ["simulate", "--model", "quad", "--angles", "0.2,1.1,2.7,0.4", "--trials", "5000", "--seed", "11"];
    let json = ghzsim(&base);
    let mut csv_args = base.to_vec();
    csv_args.extend(["--format", "csv"]);
    let csv = ghzsim(&csv_args);
    assert!(json.status.success() && csv.status.success());

    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let records = v["records"].as_array().unwrap();
    let csv_text = String::from_utf8(csv.stdout).unwrap();
    let mut lines = csv_text.lines();
    assert_eq!(lines.next().unwrap(), "subset,value,std_error,trials,oracle");
    for (line, rec) in lines.zip(records) {
        let fields: Vec<&str> = line.split(',').collect();
        // Numeric fields are serialized identically in both formats.
        assert_eq!(fields[1], serde_json::to_string(&rec["value"]).unwrap());
        assert_eq!(fields[2], serde_json::to_string(&rec["std_error"]).unwrap());
        assert_eq!(fields[4], serde_json::to_string(&rec["oracle"]).unwrap());
    }
}

#[test]
fn degrees_flag_converts() {
    let deg = ghzsim(&["simulate", "--model", "tri", "--angles", "90,0,0", "--degrees", "--trials", "100", "--seed", "1"]);
    let rad: serde_json::Value = serde_json::from_slice(&deg.stdout).unwrap();
    let a0 = rad["angles"][0].as_f64().unwrap();
    assert!((a0 - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
}

#[test]
fn seed_env_fallback() {
    let explicit = ghzsim(&["simulate", "--model", "tri", "--angles", "1,2,3", "--trials", "5000", "--seed", "99"]);
    let via_env = Command::new(env!("CARGO_BIN_EXE_ghzsim"))
        .args(["simulate", "--model", "tri", "--angles", "1,2,3", "--trials", "5000"])
        .env("GHZSIM_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(explicit.stdout, via_env.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    let out = ghzsim(&[
        "simulate", "--model", "tri", "--angles", "0,0,0", "--trials", "1000",
        "--seed", "2", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "simulate");
}

#[test]
fn commcost_mean_near_four() {
    let out = ghzsim(&["commcost", "--model", "m-box", "--trials", "100000", "--seed", "4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["mean"].as_f64().unwrap() - 4.0).abs() < 0.1);
}

#[test]
fn error_exits() {
    let out = ghzsim(&["simulate", "--model", "nope", "--angles", "0,0", "--trials", "10"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown model"));

    let out = ghzsim(&["simulate", "--model", "tri", "--angles", "0,0", "--trials", "10"]);
    assert!(!out.status.success(), "wrong angle count must fail");

    let out = ghzsim(&["verify", "no-such-suite"]);
    assert!(!out.status.success());

    let out = ghzsim(&["commcost", "--model", "bogus", "--trials", "10"]);
    assert!(!out.status.success());
}

#[test]
fn verify_suite_runs() {
    let out = ghzsim(&["verify", "conversions"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS"));
    assert!(text.contains("all checks passed"));
}
