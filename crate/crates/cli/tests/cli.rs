use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rho-lattice")).args(args).env_remove("RHO_LATTICE_JOBS").output().unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&run_ok(&all)).unwrap()
}

fn exact(v: &Value) -> (String, String) {
    (v["exact"]["num"].as_str().unwrap().to_string(), v["exact"]["den"].as_str().unwrap().to_string())
}

fn pair(num: &str, den: &str) -> (String, String) {
    (num.to_string(), den.to_string())
}

#[test]
fn lens_rho_type_b_on_l32() {
    let v = json(&["lens-rho", "-p", "3", "-q", "2", "-l", "2", "--involution", "B"]);
    assert_eq!(exact(&v), pair("1", "1"));
    assert!((v["float"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert_eq!(v["tolerance"].as_f64(), Some(1e-8));
    assert_eq!(v["params"]["involution"], "B");
    assert!(v["diagnostics"]["route_agreement"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn lens_rho_trivial_rep_and_even_p() {
    let v = json(&["lens-rho", "-p", "5", "-q", "1", "-l", "0", "--involution", "Bprime"]);
    assert_eq!(exact(&v), pair("0", "1"));
    assert_eq!(v["float"].as_f64(), Some(0.0));

    let v = json(&["lens-rho", "-p", "4", "-q", "1", "-l", "1", "--involution", "B"]);
    assert!(v["exact"].is_null());
    assert!(v["diagnostics"]["skipped"].as_u64().unwrap() >= 1);
    assert!(v["float"].as_f64().unwrap().is_finite());
}

#[test]
fn sums_examples() {
    assert_eq!(exact(&json(&["sums", "delta", "-p", "3", "-q", "2", "-l", "2"])), pair("-1", "3"));
    assert_eq!(exact(&json(&["sums", "dedekind-D", "-p", "7", "-b", "6"])), pair("12", "7"));
    assert_eq!(exact(&json(&["sums", "delta-tau", "-p", "7", "-q", "6", "-l", "2"])), pair("1", "1"));
    assert_eq!(exact(&json(&["sums", "lawson-N", "-q", "7", "-b", "5", "-l", "2"])), pair("3", "1"));
}

#[test]
fn floer_reports() {
    let v = json(&["floer", "-p", "3", "-q", "7"]);
    assert_eq!(v["ic_natural"], serde_json::json!([3, 2, 2, 2]));
    assert_eq!(v["instanton"], serde_json::json!([0, 0, 0, 1, 0, 0, 0, 1]));
    let mu: Vec<&str> = v["representations"].as_array().unwrap().iter().map(|r| r["mu"].as_str().unwrap()).collect();
    assert_eq!(mu, ["87", "125"]);
    assert_eq!(v["seifert"], serde_json::json!([-3, 2, 6]));

    let v = json(&["floer", "-p", "3", "-q", "13"]);
    assert_eq!(v["ic_natural"], serde_json::json!([5, 4, 4, 4]));

    let v = json(&["floer", "-p", "3", "-q", "5"]);
    let total: u64 = v["ic_natural"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum();
    assert_eq!(total, 9);
    assert_eq!(v["signature"], -8);
}

#[test]
fn floer_table_and_csv() {
    let table = run_ok(&["floer", "-p", "3", "-q", "7", "--table"]);
    assert!(table.contains("3 2 2 2"));
    let csv = run_ok(&["floer", "-p", "3", "-q", "7", "--format", "csv"]);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 1 + 2 + 4);
    assert!(rows[1].starts_with("rep,1,2,2,61,175,7,3,"));
    assert!(rows.iter().any(|r| r.starts_with("ic_natural,") && r.ends_with("3 2 2 2")));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["lens-rho", "-p", "6", "-q", "4", "-l", "1", "--involution", "B"]).status.code(), Some(2));
    assert_eq!(run(&["floer", "-p", "3", "-q", "9"]).status.code(), Some(2));
    assert_eq!(run(&["sums", "dedekind-D", "-p", "8", "-b", "3"]).status.code(), Some(2));
    assert_eq!(run(&["sums", "delta", "-p", "7"]).status.code(), Some(2));
    // any rounding gap exceeds a zero tolerance
    let out = run(&["lens-rho", "-p", "3", "-q", "2", "-l", "2", "--involution", "B", "--tolerance", "0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["floer", "-p", "5", "-q", "11", "--format", "json"][..],
        &["lens-rho", "-p", "9", "-q", "4", "-l", "3", "--involution", "Bprime", "--format", "csv"],
    ] {
        assert_eq!(run_ok(args), run_ok(args));
    }
}

fn sweep(dir: &Path, name: &str, extra: &[&str], jobs: Option<&str>) -> Output {
    let out = dir.join(name);
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rho-lattice"));
    cmd.arg("sweep").args(extra).arg("--out").arg(&out);
    match jobs {
        Some(j) => cmd.env("RHO_LATTICE_JOBS", j),
        None => cmd.env_remove("RHO_LATTICE_JOBS"),
    };
    cmd.output().unwrap()
}

#[test]
fn sweep_family_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = sweep(dir.path(), "family.jsonl", &["--what", "floer", "-p", "3", "-q", "7:121:6"], None);
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("family.jsonl")).unwrap();
    let rows: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 20);
    for (i, row) in rows.iter().enumerate() {
        let n = i as u64 + 1;
        assert_eq!(row["q"].as_u64(), Some(6 * n + 1));
        assert_eq!(row["ic_natural"], format!("{} {} {} {}", 2 * n + 1, 2 * n, 2 * n, 2 * n));
    }
}

#[test]
fn sweep_delta_tau_values_are_odd() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--what", "sums", "--sum", "delta-tau", "-p", "3:101:2", "--even-ell"];
    assert!(sweep(dir.path(), "odd.csv", &args, None).status.success());
    let mut reader = csv::Reader::from_path(dir.path().join("odd.csv")).unwrap();
    let headers = reader.headers().unwrap().clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let (num, den) = (col("exact_num"), col("exact_den"));
    let mut count = 0;
    for rec in reader.records() {
        let rec = rec.unwrap();
        assert_eq!(&rec[den], "1");
        let v: i64 = rec[num].parse().unwrap();
        assert_eq!(v.rem_euclid(2), 1);
        count += 1;
    }
    assert!(count > 60_000);
}

#[test]
fn sweep_is_independent_of_workers() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--what", "lens", "-p", "2:25", "--format", "csv"];
    assert!(sweep(dir.path(), "one", &args, Some("1")).status.success());
    assert!(sweep(dir.path(), "four", &args, Some("4")).status.success());
    let a = std::fs::read(dir.path().join("one")).unwrap();
    let b = std::fs::read(dir.path().join("four")).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn sweep_resumes_with_skip_existing() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["--what", "sums", "--sum", "delta", "-p", "3:30"];
    assert!(sweep(dir.path(), "full.jsonl", &base, None).status.success());
    assert!(sweep(dir.path(), "part.jsonl", &["--what", "sums", "--sum", "delta", "-p", "3:17"], None).status.success());
    let mut resumed = base.to_vec();
    resumed.push("--skip-existing");
    let out = sweep(dir.path(), "part.jsonl", &resumed, None);
    assert!(out.status.success());
    let full = std::fs::read_to_string(dir.path().join("full.jsonl")).unwrap();
    let part = std::fs::read_to_string(dir.path().join("part.jsonl")).unwrap();
    assert!(full == part, "resumed sweep differs from a fresh one");
}

#[test]
fn sweep_empty_range_and_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = sweep(dir.path(), "empty.csv", &["--what", "lens", "-p", "9:3"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::metadata(dir.path().join("empty.csv")).unwrap().len(), 0);

    let out = sweep(&dir.path().join("missing"), "x.csv", &["--what", "lens", "-p", "3"], None);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_passes_and_zero_tolerance_fails() {
    let out = run_ok(&["verify", "--max-p", "3"]);
    assert!(out.contains("all checks passed"));

    let start = Instant::now();
    let out = run(&["verify", "--max-p", "51"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(start.elapsed() < Duration::from_secs(10), "verify took {:?}", start.elapsed());

    let out = run(&["verify", "--max-p", "11", "--tolerance", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL  exact-vs-float"));
    assert!(text.contains("counterexample: delta^t(3;1,2)"));
}
