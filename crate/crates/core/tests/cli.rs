use std::path::Path;
use std::process::{Command, Output};

fn laxcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laxcheck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn failure_record(o: &Output) -> serde_json::Value {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    serde_json::from_str(err.lines().last().expect("a failure record")).expect("record is JSON")
}

#[test]
fn converge_csv_end_to_end() {
    let o = laxcheck(&[
        "converge", "--problem", "sine:k=1", "--L", "1", "--n-list", "7,15,31,63", "--norm", "l2h", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,h,local,global,K,chain_ok"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}

#[test]
fn stability_json_rows_within_bound() {
    let o = laxcheck(&["stability", "--L", "2", "--n-list", "4..4096"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    for r in rows {
        assert!(r["inv_norm"].as_f64().unwrap() <= 1.0);
        assert_eq!(r["satisfied"], true);
    }
}

#[test]
fn eigen_three_eigenvalues() {
    let o = laxcheck(&["eigen", "--n", "3", "--a", "1", "--b", "-2", "--c", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let s2 = 2f64.sqrt();
    for (p, want) in v["pairs"].as_array().unwrap().iter().zip([-2.0 + s2, -2.0, -2.0 - s2]) {
        assert!((p["lambda"].as_f64().unwrap() - want).abs() < 1e-14);
        assert!(p["residual"].as_f64().unwrap() <= 1e-10);
    }
}

#[test]
fn eigen_asymmetric_has_no_orthonormality() {
    let o = laxcheck(&["eigen", "--n", "5", "--a", "2", "--b", "-3", "--c", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["orthonormality"].is_null());
}

#[test]
fn complex_spectrum_is_a_config_error() {
    let o = laxcheck(&["eigen", "--n", "4", "--a", "1", "--b", "0", "--c", "-1"]);
    assert_eq!(o.status.code(), Some(5));
    assert_eq!(failure_record(&o)["kind"], "config");
}

#[test]
fn distinct_exit_codes() {
    let o = laxcheck(&["converge", "--problem", "cubic", "--L", "1", "--n-list", "7,15,31"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert_eq!(failure_record(&o)["exit_code"], 2);

    let o = laxcheck(&["converge", "--problem", "sine:k=0", "--L", "1", "--n-list", "7,15,31"]);
    assert_eq!(o.status.code(), Some(2));

    let o = laxcheck(&["stability", "--L", "1", "--n-list", "2,4,8"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(failure_record(&o)["kind"], "grid");

    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("out.json");
    let o = laxcheck(&["stability", "--L", "1", "--n-list", "4,8", "--output", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(!target.exists());

    let o = laxcheck(&["stability", "--L", "1"]);
    assert_eq!(o.status.code(), Some(5));
    let o = laxcheck(&["converge", "--problem", "sine", "--L", "1", "--n-list", "7,15"]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn unsupported_norm_for_chain_still_reports() {
    // max has no spectral constant: K and chain_ok are NA, nothing fails
    let o = laxcheck(&["converge", "--problem", "sine", "--L", "1", "--n-list", "7..63", "--norm", "max", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",NA,NA")));
}

fn artifact(dir: &Path, name: &str, args: &[&str]) -> Vec<u8> {
    let path = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--output", &p]);
    let o = laxcheck(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::read(path).unwrap()
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let configs: [&[&str]; 5] = [
        &["eigen", "--n", "8", "--a", "1", "--b", "-2", "--c", "1"],
        &["stability", "--L", "2.5", "--n-list", "4..512", "--format", "csv"],
        &["consistency", "--problem", "poly:0,-4,0,1", "--L", "2", "--x", "0.7"],
        &["converge", "--problem", "sine:k=2", "--L", "1", "--n-list", "7..255", "--norm", "l2"],
        &["identities", "--n-list", "3,5,17"],
    ];
    for (i, args) in configs.iter().enumerate() {
        let a = artifact(dir.path(), &format!("a{i}"), args);
        let b = artifact(dir.path(), &format!("b{i}"), args);
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn consistency_rejects_step_beyond_radius() {
    let o = laxcheck(&["consistency", "--problem", "sine", "--L", "1", "--x", "0.1", "--dx-list", "0.2,0.1,0.05"]);
    assert_eq!(o.status.code(), Some(5));
}
