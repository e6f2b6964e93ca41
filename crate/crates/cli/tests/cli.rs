use std::path::Path;
use std::process::{Command, Output};

use superext::semigroup::OpTable;

fn superext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superext"))
        .args(args)
        .env("SUPEREXT_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn build_to(dir: &Path, name: &str, spec: &[&str]) -> String {
    let path = dir.join(name);
    let path_str = path.to_str().unwrap().to_string();
    let mut args = vec!["build"];
    args.extend_from_slice(spec);
    args.extend_from_slice(&["--out", &path_str]);
    let out = superext(&args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    path_str
}

#[test]
fn lambda_count() {
    let out = superext(&["lambda-count", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("lambda(4) = 12 "));

    let out = superext(&["lambda-count", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 1);

    let out = superext(&["lambda-count", "6"]);
    assert!(stdout(&out).contains("= 2646"));
}

#[test]
fn seven_points_need_perf() {
    assert_eq!(superext(&["lambda-count", "7"]).status.code(), Some(2));
    let out = superext(&["--perf", "lambda-count", "7"]);
    assert!(stdout(&out).contains("= 1422564"));
}

#[test]
fn build_writes_round_trippable_tables() {
    let dir = tempfile::tempdir().unwrap();
    for (spec, size) in [
        (&["2", "3"][..], 12),
        (&["1", "1", "1"][..], 1),
        (&["2", "4"][..], 81),
    ] {
        let path = build_to(dir.path(), "t.json", spec);
        let text = std::fs::read_to_string(&path).unwrap();
        let table = OpTable::from_json_str(&text).unwrap();
        assert_eq!(table.size(), size);
        assert_eq!(
            OpTable::from_json_str(&table.to_json_string()).unwrap(),
            table
        );
    }
}

#[test]
fn build_rejects_large_bases_without_perf() {
    assert_eq!(superext(&["build", "3", "4"]).status.code(), Some(2));
    assert_eq!(superext(&["build", "3", "2", "4"]).status.code(), Some(3));
}

#[test]
fn aut_reports_order_and_shape() {
    let dir = tempfile::tempdir().unwrap();
    let m22 = build_to(dir.path(), "m22.json", &["2", "2"]);
    assert!(stdout(&superext(&["aut", &m22])).starts_with("order: 2\n"));

    let c1 = build_to(dir.path(), "c1.json", &["1", "1"]);
    assert!(stdout(&superext(&["aut", &c1])).starts_with("order: 1\n"));

    let m51 = build_to(dir.path(), "m51.json", &["5", "1", "2"]);
    let out = superext(&["aut", &m51, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], "362880");
    assert_eq!(v["named_form"], "S9");
}

#[test]
fn aut_budget_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let m24 = build_to(dir.path(), "m24.json", &["2", "4"]);
    assert_eq!(
        superext(&["aut", &m24, "--budget", "3"]).status.code(),
        Some(2)
    );

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"size\": 2}").unwrap();
    assert_eq!(
        superext(&["aut", bad.to_str().unwrap()]).status.code(),
        Some(3)
    );

    let non_assoc = dir.path().join("nonassoc.json");
    std::fs::write(
        &non_assoc,
        r#"{"size":2,"labels":["x","y"],"table":[[1,0],[0,0]]}"#,
    )
    .unwrap();
    assert_eq!(
        superext(&["aut", non_assoc.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn iso_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let a = build_to(dir.path(), "a.json", &["3", "3", "2"]);
    let b = build_to(dir.path(), "b.json", &["2", "3"]);
    let out = superext(&["iso", &a, &b, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["witness"].as_object().unwrap().len(), 12);

    assert!(stdout(&superext(&["iso", &a, &a])).starts_with("isomorphic"));

    let c = build_to(dir.path(), "c.json", &["1", "5"]);
    let d = build_to(dir.path(), "d.json", &["5", "1"]);
    let out = superext(&["iso", &c, &d]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("not isomorphic"));
}

#[test]
fn report_table_has_no_mismatches() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("report.csv");
    let out = superext(&["report-table", "--out", csv.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 36);
    let row = |name: &str| {
        text.lines()
            .find(|l| l.starts_with(&format!("\"{name}\",")))
            .unwrap()
            .to_string()
    };
    assert!(row("M_{2,3}").contains(",S3 x S5,720,S3 x S5,720,match,"));
    assert!(row("M_{1,1}").contains(",match,"));
    assert!(row("M_{2,4}").contains(",paper-entry-flagged,"));

    let out = superext(&["report-table", "--max-size", "4", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 20);
    assert_eq!(rows[0]["aut_lambda"]["order"], "1");
}

#[test]
fn conjectures_skip_size_six() {
    let out = superext(&["conjectures", "--max-size", "6"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["skipped"][0][0], 6);
    assert!(v["c1"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["holds"] == true));
    assert!(v["c2"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["range_trivial"] == true));
}
