use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_admissible"));
    c.env_remove("ADMISSIBLE_OUT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("admissible-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn eval_examples() {
    assert_eq!(stdout(&["eval", "f", "--n", "8", "--k", "15"]), "17\n");
    assert_eq!(stdout(&["eval", "sbc", "--n", "3", "--i", "4"]), "8\n");
    assert_eq!(stdout(&["eval", "ew", "--j", "1", "--t", "3"]), "4\n");
    assert_eq!(stdout(&["eval", "inv_f", "--n", "8", "--m", "17"]), "15\n");
    assert_eq!(stdout(&["eval", "h", "--n", "8", "--k", "96"]), "15\n");
    assert_eq!(stdout(&["eval", "g", "--n", "4", "--k", "4"]), "4\n");
    assert_eq!(
        stdout(&["eval", "size", "--kind", "c1bar", "--n", "8", "--i", "4", "--j", "2"]),
        "5\n"
    );
    assert_eq!(
        stdout(&["eval", "enumerate", "--kind", "c1", "--n", "8", "--i", "2", "--j", "4", "--t", "5"]),
        "30\n"
    );
    assert_eq!(stdout(&["eval", "weight", "--k", "255"]), "8\n");
    assert_eq!(stdout(&["eval", "quantile", "--n", "2", "--k", "1"]), "0\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["eval", "f", "--n", "3", "--k", "8"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "f", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["converge", "--n", "8", "--x", "1/3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "count", "--n", "9"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "count", "--n", "3"]).status.code(), Some(0));
}

#[test]
fn failing_suite_exits_one() {
    // the level-1 tables are extended by the level-2 tables
    let out = run(&["verify", "--suite", "nonpersistence", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("nonpersistence/F-n1"));
    assert!(text.contains("nonpersistence/F-n2: table witness k = 3"));
}

#[test]
fn verify_suites_pass() {
    let count = stdout(&["verify", "--suite", "count", "--n", "3"]);
    assert!(count.contains("36 admissible, expected 36, PASS"));
    assert!(stdout(&["verify", "--suite", "identities", "--n", "64"]).ends_with("0 failed, PASS\n"));
    assert!(stdout(&["verify", "--suite", "oracle", "--n", "8", "--jobs", "4"]).ends_with("0 failed, PASS\n"));
    assert!(stdout(&["verify", "--suite", "arrays", "--n", "6"]).ends_with("0 failed, PASS\n"));
    assert!(stdout(&["verify", "--suite", "structure", "--n", "8"]).ends_with("0 failed, PASS\n"));
}

#[test]
fn walkdata_rows() {
    assert_eq!(
        stdout(&["walkdata", "--n", "1", "--format", "csv"]),
        "k,left_endpoint,walk_value,quantile_value\n0,0,-1,-1\n1,0.5,1,1\n"
    );
    for n in [6u32, 7] {
        let text = stdout(&["walkdata", "--n", &n.to_string(), "--format", "csv"]);
        let rows: Vec<Vec<i64>> = text
            .lines()
            .skip(1)
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                vec![f[2].parse().unwrap(), f[3].parse().unwrap()]
            })
            .collect();
        assert_eq!(rows.len(), 1 << n);
        assert!(rows.windows(2).all(|w| w[0][1] <= w[1][1]));
        let mut walk: Vec<i64> = rows.iter().map(|r| r[0]).collect();
        walk.sort_unstable();
        assert_eq!(walk, rows.iter().map(|r| r[1]).collect::<Vec<_>>());
    }
}

#[test]
fn json_mirrors_csv() {
    let json = stdout(&["walkdata", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert_eq!(v[3]["left_endpoint"], "0.75");
    assert_eq!(v[3]["quantile_value"], 2);
}

#[test]
fn output_files_are_reproducible() {
    let dir = scratch("repro");
    for name in ["a.csv", "b.csv"] {
        let path = dir.join(name);
        let status = bin()
            .args(["converge", "--n", "64,4096", "--x", "1/4,3686/2^12", "--format", "csv", "--out"])
            .arg(&path)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = std::fs::read(dir.join("a.csv")).unwrap();
    assert_eq!(a, std::fs::read(dir.join("b.csv")).unwrap());
    assert!(String::from_utf8(a).unwrap().starts_with("n,x,quantile_value,scaled"));
}

#[test]
fn out_dir_from_environment() {
    let dir = scratch("env");
    let status = bin()
        .env("ADMISSIBLE_OUT_DIR", &dir)
        .args(["walkdata", "--n", "3", "--format", "csv"])
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(dir.join("walkdata.csv")).unwrap();
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn enumerate_lists_all() {
    let text = stdout(&["enumerate", "--n", "3", "--format", "csv"]);
    assert_eq!(text.lines().count(), 37);
    assert!(text.lines().nth(1).unwrap().starts_with("0,0 1 2 4 3 5 6 7"));
}

#[test]
fn bench_reports_ratios() {
    let text = stdout(&["bench", "--n", "16,32", "--rules", "F", "--samples", "3", "--format", "csv"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "rule,n,samples,median_seconds,doubling_ratio");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].ends_with(','));
    assert!(!lines[2].ends_with(','));
}
