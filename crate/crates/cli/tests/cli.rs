use std::path::PathBuf;
use std::process::{Command, Output};

fn input(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../inputs").join(name)
}

fn nichols(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nichols")).args(args).env_remove("NICHOLS_CACHE_DIR").output().unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = nichols(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn dims_of_e0() {
    let e0 = input("e0.toml");
    let text = run_ok(&["dims", "--input", e0.to_str().unwrap(), "--emit", "text"]);
    assert!(text.contains("dims: [1,2,1,0]"), "{text}");
}

#[test]
fn reflect_e1_at_pivot_one() {
    let e1 = input("e1.toml");
    let json = run_ok(&["reflect", "--input", e1.to_str().unwrap(), "--pivot", "1"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["tables"]["cartan_row"], serde_json::json!([2, -1]));
    assert_eq!(v["tables"]["reflected"][1]["dim"], 1);
}

#[test]
fn thread_count_and_cache_do_not_change_output() {
    let e1 = input("e1.toml");
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let base = ["weyl", "--input", e1.to_str().unwrap()];
    let a = run_ok(&base);
    let b = run_ok(&[&base[..], &["--threads", "1"]].concat());
    let c = run_ok(&[&base[..], &["--cache-dir", cache]].concat());
    let d = run_ok(&[&base[..], &["--cache-dir", cache]].concat());
    assert!(a == b && b == c && c == d);
    assert!(a.contains("0 1 1 2,-1"));
}

#[test]
fn corrupt_cache_entries_are_evicted() {
    let e1 = input("e1.toml");
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["dims", "--input", e1.to_str().unwrap(), "--cache-dir", cache];
    let cold = run_ok(&args);
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    std::fs::write(&entries[0], "{not json").unwrap();
    let out = nichols(&args);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), cold);
    assert!(String::from_utf8_lossy(&out.stderr).contains("corrupt"));
    // raising the cutoff keeps the old entry
    run_ok(&["dims", "--input", e1.to_str().unwrap(), "--cache-dir", cache, "--cutoff", "5"]);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn exit_codes() {
    let e1 = input("e1.toml");
    let e1 = e1.to_str().unwrap();
    assert_eq!(nichols(&["omega-check", "--input", e1]).status.code(), Some(3));
    assert_eq!(nichols(&["omega-check", "--input", e1, "--cutoff", "5"]).status.code(), Some(0));
    assert_eq!(nichols(&["reflect", "--input", e1, "--pivot", "3"]).status.code(), Some(2));
    assert_eq!(nichols(&["frobnicate", "--input", e1]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "cutoff = 3\n[diagonal]\nq = [[\"z(3\"]]\n").unwrap();
    let out = nichols(&["dims", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("diagonal.q[0][0]"));
    // (ad x_1)(x_2) = 0 needs degree 3 to be seen when q11 = z3, q12 q21 = z3^2
    std::fs::write(&bad, "[diagonal]\nq = [[\"z(3,1)\", \"z(3,1)\"], [\"z(3,1)\", \"-1\"]]\n").unwrap();
    let out = nichols(&["reflect", "--input", bad.to_str().unwrap(), "--cutoff", "2", "--pivot", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn failed_report_exits_one() {
    let doc = nichols::harness::ResultDocument {
        command: "dims".into(),
        input_hash: String::new(),
        cutoff: 1,
        pivot: None,
        tables: Default::default(),
        checks: vec![nichols::bosonization::Check::new("x", false, "")],
        passed: false,
        timing_ms: None,
    };
    assert_eq!(nichols::harness::exit_code(&Ok(doc)), 1);
}
