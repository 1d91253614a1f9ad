use std::process::{Command, Output};

fn corank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corank"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hminus_values() {
    for (fam, s, want) in [
        ("pow2", "6", "17"),
        ("3pow2", "6", "61353"),
        ("pow2", "4", "1"),
    ] {
        let o = corank(&["hminus", "--family", fam, "--s", s]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), want);
    }
}

#[test]
fn hminus_table_csv() {
    let o = corank(&["hminus", "--family", "3pow2", "--table", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "s,h_minus");
    assert_eq!(lines[4], "6,61353");
    assert_eq!(lines.len(), 7);
}

#[test]
fn mass_json_and_errors() {
    let o = corank(&["mass", "--n", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["outputs"]["M"], "1/24");
    assert_eq!(v["outputs"]["euler_pu"], "-1/48");
    assert_eq!(corank(&["mass", "--n", "10"]).status.code(), Some(2));
    assert_eq!(
        corank(&["hminus", "--family", "pow9", "--s", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(corank(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn bounds_hold_and_reference_row() {
    let o = corank(&[
        "bounds",
        "--family",
        "pow2",
        "--s-range",
        "4..8",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let recs: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(recs.iter().all(|r| r["verdicts"]
        .as_object()
        .unwrap()
        .values()
        .all(|v| v != "fails")));
    let reference = recs
        .iter()
        .find(|r| r["inputs"]["s"] == "5" && r["outputs"]["name"] == "reference.genus_gr<=upper")
        .unwrap();
    assert_eq!(reference["outputs"]["lhs"], "40");
    let o = corank(&["bounds", "--family", "3pow2", "--s-range", "3..8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("[fails]"));
}

#[test]
fn verify_suites() {
    assert_eq!(
        corank(&["verify", "graphs", "--seed", "42"]).status.code(),
        Some(0)
    );
    assert_eq!(
        corank(&["verify", "gates", "--n", "8", "--words", "200"])
            .status
            .code(),
        Some(0)
    );
    let o = corank(&["verify", "charsums", "--s-max", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL sqrt3"));
}

#[test]
fn deterministic_output_file() {
    let dir = std::env::temp_dir().join(format!("corank_cli_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    for p in [&a, &b] {
        let o = corank(&[
            "verify",
            "graphs",
            "--seed",
            "7",
            "--format",
            "json",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
