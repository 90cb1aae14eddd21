use std::process::{Command, Output};

use ivroot::report::{parse_hex_float, SolveReport};
use ivroot::Status;

fn ivroot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ivroot"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn quintic_as_json() {
    let out = ivroot(&[
        "solve",
        "--expr",
        "(x-1)*(x-2)*(x-3)*(x-4)*(x-5)",
        "--lo",
        "1",
        "--hi",
        "5",
        "--tau-x",
        "1e-6",
        "--tau-w",
        "1e-6",
        "--tau-c",
        "1e-3",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: SolveReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.roots.len(), 5);
    for (i, r) in report.roots.iter().enumerate() {
        let x = r.bounds().unwrap();
        assert!(x.contains((i + 1) as f64));
        assert!(x.width() <= 1e-6);
        let inner = (1..4).contains(&i);
        assert!(!inner || r.status == Status::Certified, "{r:?}");
        // the hexadecimal forms name the same numbers
        assert_eq!(parse_hex_float(&r.hex[0]), Some(x.lo()));
        assert_eq!(parse_hex_float(&r.hex[1]), Some(x.hi()));
    }
    assert_eq!(report.config.tau_c, 1e-3);
    assert!(report.stats.complete);
}

#[test]
fn defaults_are_echoed() {
    let out = ivroot(&[
        "solve", "--expr", "x^2 - 2", "--lo", "-2", "--hi", "2", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["tau_x"], 1e-6);
    assert_eq!(v["config"]["tau_w"], 1e-6);
    assert_eq!(v["config"]["tau_c"], 1e-3);
    for key in [
        "evaluations",
        "contractions",
        "bisections",
        "handoffs",
        "elapsed_ms",
    ] {
        assert!(v["stats"].get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["roots"].as_array().unwrap().len(), 2);
}

#[test]
fn no_roots_is_success() {
    let out = ivroot(&["solve", "--expr", "x^2+1", "--lo", "-1", "--hi", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("0 candidates"));
}

#[test]
fn syntax_error_exits_with_two() {
    let out = ivroot(&["solve", "--expr", "x^", "--lo", "0", "--hi", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("offset 2"), "{err}");
}

#[test]
fn bad_usage_exits_with_two() {
    assert_eq!(ivroot(&["solve", "--expr", "x"]).status.code(), Some(2));
    assert_eq!(
        ivroot(&["solve", "--expr", "x", "--lo", "1", "--hi", "0"])
            .status
            .code(),
        Some(2)
    );
    let out = ivroot(&[
        "solve", "--expr", "x", "--lo", "0", "--hi", "1", "--tau-x", "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_with_three() {
    let out = ivroot(&[
        "solve",
        "--expr",
        "(x-1)*(x-2)*(x-3)",
        "--lo",
        "0",
        "--hi",
        "4",
        "--max-iter",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let report: SolveReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!report.stats.complete);
    for r in [1.0, 2.0, 3.0] {
        assert!(report.roots.iter().any(|c| c.bounds().unwrap().contains(r)));
    }
}

#[test]
fn family_writes_csv() {
    let dir = std::env::temp_dir().join(format!("ivroot-family-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("rows.csv");
    let out = ivroot(&[
        "family",
        "--m",
        "1",
        "--max-degree",
        "3",
        "--jobs",
        "2",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("spec_id,d,missed_roots,candidate_count,elapsed_us")
    );
    // 8 * (C(3,1) + C(4,2) + C(5,3)) members
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8 * (3 + 6 + 10));
    assert!(rows.iter().all(|r| r.split(',').nth(2) == Some("0")));
    std::fs::remove_dir_all(&dir).unwrap();
}
