use std::path::PathBuf;
use std::process::{Command, Output};

use latticecount_cli::report::Report;

fn write_file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latticecount"))
        .args(args)
        .env_remove("LATTICECOUNT_CELL_BUDGET")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn standard_triangle() -> PathBuf {
    write_file("standard.simplex", "# x, y >= 0, x + y <= 3\nsimplex n=2\n-1 0\n0 -1\n1 1\nt: 0 0 3\n")
}

fn two_three() -> PathBuf {
    write_file("two_three.simplex", "simplex n=2\n-1 0\n0 -1\n2 3\nt: 0 0 6\n")
}

#[test]
fn count_standard_triangle() {
    let file = standard_triangle();
    let out = run(&["count", file.to_str().unwrap(), "--mode", "closure", "--engine", "auto"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "10\n");
    for engine in ["recursion", "oracle"] {
        let out = run(&["count", file.to_str().unwrap(), "--engine", engine]);
        assert_eq!(stdout(&out), "10\n");
    }
}

#[test]
fn count_two_three_interior() {
    let file = two_three();
    let out = run(&["count", file.to_str().unwrap(), "--mode", "interior"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\n");
    let out = run(&["count", file.to_str().unwrap()]);
    assert_eq!(stdout(&out), "7\n");
}

#[test]
fn malformed_file_exits_2() {
    let file = write_file("bad.simplex", "simplex n=2\n-1 0\n0 oops\n1 1\nt: 0 0 3\n");
    let out = run(&["count", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
    let out = run(&["count", "/nonexistent/file.simplex"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["count"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn empty_dilation_exits_3() {
    let file = write_file("empty.simplex", "simplex n=2\n-1 0\n0 -1\n1 1\nt: 0 0 -1\n");
    let out = run(&["count", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["triangle", "1", "1", "1", "1", "1", "1", "0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn oracle_budget_from_environment() {
    let file = standard_triangle();
    let out = Command::new(env!("CARGO_BIN_EXE_latticecount"))
        .args(["count", file.to_str().unwrap(), "--engine", "oracle"])
        .env("LATTICECOUNT_CELL_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("budget"));
    // auto skips the cross-check instead of failing
    let out = Command::new(env!("CARGO_BIN_EXE_latticecount"))
        .args(["--machine", "count", file.to_str().unwrap()])
        .env("LATTICECOUNT_CELL_BUDGET", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    let report = Report::parse(&stdout(&out)).unwrap();
    assert_eq!(report.get("oracle"), Some("skipped"));
    assert_eq!(report.get("count"), Some("10"));
    let out = Command::new(env!("CARGO_BIN_EXE_latticecount"))
        .args(["count", file.to_str().unwrap()])
        .env("LATTICECOUNT_CELL_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reciprocity_report() {
    let file = write_file("interval.simplex", "simplex n=1\n-2\n3\nt: -1 7\n");
    let out = run(&["reciprocity", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "L°(-t) = -2\n(-1)^1 L(t) = -2\nPASS\n");
    let out = run(&["--machine", "reciprocity", standard_triangle().to_str().unwrap()]);
    let report = Report::parse(&stdout(&out)).unwrap();
    assert_eq!(report.get("interior_at_negated"), Some("10"));
    assert_eq!(report.get("signed_closure"), Some("10"));
    assert_eq!(report.get("status"), Some("PASS"));
}

#[test]
fn triangle_command() {
    let out = run(&["triangle", "1", "1", "1", "1", "1", "1", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "10\n");
    let out = run(&["triangle", "3", "2", "5", "3", "-4", "-7", "9", "--check", "--mode", "interior"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let mut lines = text.lines();
    let count = lines.next().unwrap();
    assert_eq!(lines.next().unwrap(), format!("oracle {count}"));
    let out = run(&["triangle", "1", "1", "2", "4", "0", "0", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn polygon_command() {
    let square = write_file("square.polygon", "polygon\n0 0\n1 0\n1 1\n0 1\n");
    let out = run(&["polygon", square.to_str().unwrap()]);
    assert_eq!(stdout(&out), "4\n");
    let tri = write_file("half.polygon", "polygon\n0, 0\n5/2, 0\n0, 5/2\n");
    let out = run(&["polygon", tri.to_str().unwrap(), "--mode", "interior", "--check"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1\noracle 1\n");
    let out = run(&["--machine", "polygon", tri.to_str().unwrap()]);
    let report = Report::parse(&stdout(&out)).unwrap();
    assert_eq!(report.get("closure"), Some("6"));
    assert_eq!(report.get("interior"), Some("1"));
    assert_eq!(report.get("area"), Some("25/8"));
    let bowtie = write_file("bowtie.polygon", "polygon\n0 0\n2 2\n2 0\n0 2\n");
    assert_eq!(run(&["polygon", bowtie.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn interpolate_interval_family() {
    // 0 <= 2x <= s: floor(s/2) + 1 points
    let file = write_file("half_interval.simplex", "simplex n=1\n-1\n2\nt: 0 5\nb: 0 1\n");
    let out = run(&["interpolate", file.to_str().unwrap(), "--period", "2", "--degree", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[0] 1/2*t0 + 1\n"), "{text}");
    assert!(text.contains("[1] 1/2*t0 + 1/2\n"), "{text}");
    assert!(text.contains("holdout PASS"), "{text}");
    let out = run(&["interpolate", file.to_str().unwrap(), "--period", "1", "--degree", "1"]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&["interpolate", file.to_str().unwrap(), "--period", "1,2", "--degree", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn interpolate_full_family() {
    let file = standard_triangle();
    let out = run(&[
        "--machine", "interpolate", file.to_str().unwrap(), "--period", "1", "--degree", "2", "--family", "full",
    ]);
    assert!(out.status.success());
    let report = Report::parse(&stdout(&out)).unwrap();
    assert_eq!(report.get("periods"), Some("1,1,1"));
    assert_eq!(report.get("holdout"), Some("PASS"));
    assert!(report.get("class.0.0.0").unwrap().starts_with("1/2*t0^2 + t0*t1"));
}

#[test]
fn machine_reports_reparse_and_are_deterministic() {
    let tri = standard_triangle();
    let tri = tri.to_str().unwrap();
    let poly = write_file("det.polygon", "polygon\n-3/2 1\n2 -1/4\n3 2\n0 5/3\n");
    let poly = poly.to_str().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["--machine", "count", tri],
        vec!["--machine", "count", tri, "--mode", "interior", "--engine", "oracle"],
        vec!["--machine", "reciprocity", tri],
        vec!["--machine", "triangle", "2", "3", "1", "4", "-1", "2", "9", "--check"],
        vec!["--machine", "polygon", poly, "--check"],
        vec!["--machine", "interpolate", tri, "--period", "1", "--degree", "2"],
    ];
    for args in cases {
        let first = run(&args);
        assert!(first.status.success(), "{args:?}");
        let text = stdout(&first);
        let report = Report::parse(&text).unwrap();
        assert_eq!(report.render(), text);
        assert!(report.get("command").is_some());
        assert_eq!(stdout(&run(&args)), text, "{args:?} not deterministic");
    }
}
