use std::fs;
use std::process::{Command, Output};

fn gapprob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gapprob")).args(args).env_remove("GAPPROB_OUT_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hierarchy_second_member() {
    let o = gapprob(&["hierarchy", "--n", "2", "--tau", "1", "--format", "text"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "q'''' - 10*q*q'^2 - 10*q^2*q'' + 6*q^5 + 1*(q'' - 2*q^3) - s*q + alpha = 0\n");
}

#[test]
fn hierarchy_json_and_negative_parameters() {
    let o = gapprob(&["hierarchy", "--n", "3", "--tau", "-1/2", "--tau", "2", "--alpha", "-3", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 6);
    assert_eq!(v["taus"], serde_json::json!(["-1/2", "2"]));
    assert_eq!(v["alpha"], "-3");
}

#[test]
fn asympt_first_member() {
    let o = gapprob(&["asympt", "--n", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "logF ~ -(1/12)*|s|^3 - (1/8)*log|s| + logC[fitted]\n");
}

#[test]
fn asympt_json_keeps_exact_strings() {
    let o = gapprob(&["asympt", "--n", "2", "--tau", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["log_coeff"], "-1/2");
    assert_eq!(v["terms"][0]["exponent"], "5/2");
    assert_eq!(v["terms"][0]["coeff"]["coeffs"], serde_json::json!(["0", "0", "-2/45", "0"]));
    assert!(v["terms"][0].get("value").is_none());
    let o = gapprob(&["asympt", "--n", "2", "--log-coefficient", "hierarchy"]);
    assert!(stdout(&o).contains("(5/48)*log|s|"), "{}", stdout(&o));
}

#[test]
fn verify_exact_suite_passes() {
    let o = gapprob(&["verify", "--suite", "exact"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.contains(" PASS ")));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &["fredholm", "--n", "1", "--s", "1:0:0.1"],
        &["fredholm", "--n", "1", "--s", "0:1:0.3"],
        &["fredholm", "--n", "1", "--s", "0:1:0.1", "--fd-order", "5"],
        &["hierarchy", "--n", "2", "--tau", "1", "--tau", "2"],
        &["hierarchy", "--n", "2", "--nodes", "4"],
        &["verify", "--suite", "nope"],
    ] {
        assert_eq!(gapprob(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(gapprob(&["--help"]).status.code(), Some(0));
}

#[test]
fn fredholm_csv_is_deterministic() {
    let args = ["fredholm", "--n", "1", "--s", "-1:1:0.1", "--nodes", "30"];
    let a = gapprob(&args);
    assert!(a.status.success());
    let b = gapprob(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,logF,dlogF,q2,q,err_estimate"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 21);
    // F2(0) = 0.969372...
    let at0 = &rows[10];
    assert!(at0[0].abs() < 1e-12);
    assert!((at0[1].exp() - 0.96937282835526).abs() < 1e-8, "{}", at0[1].exp());
}

#[test]
fn aigen_matches_airy_at_zero() {
    let o = gapprob(&["aigen", "--n", "1", "--x", "-1:1:1"]);
    let text = stdout(&o);
    let row: Vec<f64> = text.lines().nth(2).unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    // Ai(0) = 3^(-2/3) / Gamma(2/3)
    assert!((row[1] - 0.355028053887817239).abs() < 1e-12);
    assert_eq!(text.lines().next(), Some("x,value,err_estimate"));
}

#[test]
fn kernel_formulas_agree() {
    let o = gapprob(&["kernel", "--n", "2", "--tau", "1/2", "--x", "1", "--y", "-1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["difference"].as_f64().unwrap() < 1e-6);
}

#[test]
fn config_file_sits_under_flags_and_out_dir_comes_from_env() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"n": 1, "s_range": "-1:1:0.1", "nodes": 20, "format": "json"}"#).unwrap();
    let cfg = cfg.to_str().unwrap();
    let o = gapprob(&["fredholm", "--config", cfg, "--nodes", "30"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nodes"], 30);
    assert_eq!(v["rows"].as_array().unwrap().len(), 21);

    let o = Command::new(env!("CARGO_BIN_EXE_gapprob"))
        .args(["fredholm", "--config", cfg, "--format", "csv", "--out", "sub/profile.csv"])
        .env("GAPPROB_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written = fs::read_to_string(dir.path().join("sub/profile.csv")).unwrap();
    assert!(written.starts_with("s,logF,dlogF,q2,q,err_estimate\n"));

    fs::write(dir.path().join("bad.json"), r#"{"nodez": 3}"#).unwrap();
    let bad = dir.path().join("bad.json");
    assert_eq!(gapprob(&["fredholm", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
}
