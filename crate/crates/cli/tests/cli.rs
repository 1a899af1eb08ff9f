use std::process::{Command, Output};

const WORKED: &str = "RRLRLRRLRLLRRLLRRL";

fn maitred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maitred")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn worked_example_trap_setting() {
    let out = maitred(&["simulate", "--strategy", "w", "--n", "18", "--sigma", WORKED]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("napkinless: [13, 14, 16, 17] (count 4)"));
}

#[test]
fn worked_example_shunning_json() {
    let out = maitred(&["simulate", "--strategy", "s", "--n", "18", "--sigma", WORKED, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["napkinless"], serde_json::json!([11, 15, 18]));
    assert_eq!(v["arrangement"], serde_json::json!([1, 8, 7, 6, 10, 9, 11, 5, 4, 15, 14, 13, 12, 17, 16, 18, 3, 2]));
}

#[test]
fn single_diner_always_served() {
    let out = maitred(&["simulate", "--strategy", "s", "--n", "1", "--sigma", "R"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("(count 0)"));
}

#[test]
fn malformed_order_is_a_usage_error() {
    let out = maitred(&["simulate", "--strategy", "s", "--n", "3", "--sigma", "RXR"]);
    assert_eq!(out.status.code(), Some(2));
    let out = maitred(&["simulate", "--strategy", "s", "--n", "4", "--sigma", "RRR"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("occupied");
    std::fs::write(&file, "").unwrap();
    let out = maitred(&["figures", "--n-range", "3..5", "--out", file.join("sub").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn figures_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = maitred(&["figures", "--n-range", "3..30", "--out", dir.path().to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    for name in ["figure1.csv", "figure5.csv"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        assert_eq!(x, std::fs::read(b.path().join(name)).unwrap());
        assert_eq!(String::from_utf8(x).unwrap().lines().count(), 29);
    }
}

#[test]
fn verify_tables_and_sequence() {
    for group in ["tables", "oeis"] {
        let out = maitred(&["verify", "--only", group]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        assert!(!stdout(&out).contains("FAIL"));
    }
}

#[test]
fn bounds_at_three() {
    let out = maitred(&["bounds", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("alpha = E_3/3 = 0.1666666667, beta = E_4/4 = 0.1875000000"));
}

#[test]
fn baseline_requires_a_seed() {
    let out = maitred(&["baseline", "--n", "50", "--trials", "100"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_count_does_not_change_results() {
    let args = ["enumerate", "--strategy", "s", "--n", "12", "--format", "csv"];
    let one = maitred(&[&["--threads", "1"][..], &args].concat());
    let four = maitred(&[&["--threads", "4"][..], &args].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}
