use std::fs;
use std::process::{Command, Output};

fn ntcodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ntcodes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn binary_report_as_json() {
    let out = ntcodes(&["subfield", "--u", "3", "--s", "36", "--t", "2", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["curve"]["n"], 32);
    assert_eq!(v["dim_subfield"], 25);
    assert_eq!(v["exact_distance"], 4);
    assert_eq!(v["even_weight"], true);
    assert!(v["paper_claim_delta"].is_null());
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let mut expected = [
        "curve",
        "s",
        "t",
        "dim_supercode",
        "dual_weight_used",
        "trace_dim_of_dual",
        "dim_subfield",
        "geil_bound",
        "exact_distance",
        "distance_method",
        "even_weight",
        "paper_claim_delta",
    ];
    expected.sort();
    assert_eq!(keys, expected);
}

#[test]
fn text_subcommands() {
    let out = ntcodes(&["curve", "--u", "5"]);
    assert!(stdout(&out).contains("n = 48, genus = 14"));
    let out = ntcodes(&["code", "--u", "3", "--s", "8"]);
    assert!(stdout(&out).contains("M(s) = {1, Y, Y^2, X}"));
    let out = ntcodes(&["trace-dim", "--u", "3", "--s", "8", "--t", "2"]);
    assert!(stdout(&out).starts_with("dim Tr(NT_3(8)) over F_2 = 7"));
    let out = ntcodes(&["dual", "--u", "3", "--s", "36"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("28 + 4 = 32"));
    let out = ntcodes(&["bound", "--u", "5", "--s", "60"]);
    assert_eq!(stdout(&out).trim(), "d(NT_5(60)) >= 3");
    let out = ntcodes(&["points", "--u", "3", "--json"]);
    let pts: Vec<[u32; 2]> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(pts.len(), 32);
}

#[test]
fn mindist_of_the_supercode() {
    let out = ntcodes(&["mindist", "--u", "3", "--s", "40", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let d = v["exact"].as_u64().unwrap();
    assert!(v["lower_bound"].as_u64().unwrap() <= d);
    let weight = v["witness"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|x| x.as_u64() != Some(0))
        .count();
    assert_eq!(weight as u64, d);
}

#[test]
fn exit_codes() {
    assert_eq!(ntcodes(&["curve", "--u", "4"]).status.code(), Some(2));
    assert_eq!(ntcodes(&["curve"]).status.code(), Some(2));
    assert_eq!(
        ntcodes(&["trace-dim", "--u", "3", "--s", "8", "--t", "8"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(ntcodes(&["frobnicate", "--u", "3"]).status.code(), Some(2));
    let out = ntcodes(&[
        "mindist", "--u", "3", "--s", "36", "--t", "2", "--budget", "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = ntcodes(&[
        "subfield", "--u", "3", "--s", "36", "--t", "2", "--budget", "10", "--exact",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = ntcodes(&[
        "subfield", "--u", "3", "--s", "36", "--t", "2", "--budget", "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = ntcodes(&[
        "export",
        "--u",
        "3",
        "--s",
        "3",
        "--out",
        "/nonexistent/dir/m.txt",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn export_writes_the_matrix_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sub.txt");
    let p = path.to_str().unwrap();
    let out = ntcodes(&[
        "export", "--u", "3", "--s", "36", "--t", "2", "--code", "subfield", "--out", p,
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("2 1 25 32"));
    let entries: Vec<u32> = lines
        .flat_map(|l| l.split(' '))
        .map(|x| x.parse().unwrap())
        .collect();
    assert_eq!(entries.len(), 800);
    assert!(entries.iter().all(|&x| x < 2));

    let out = ntcodes(&["export", "--u", "3", "--s", "12", "--out", p]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("2 4 "));
    assert!(text
        .split_whitespace()
        .skip(4)
        .all(|x| x.parse::<u32>().unwrap() < 16));
}

#[test]
fn sweep_with_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("nt3.jsonl");
    let c = cache.to_str().unwrap();
    let args = [
        "sweep", "--u", "3", "--t", "2", "--s-from", "0", "--s-to", "45", "--cache", c, "--json",
    ];
    let out = ntcodes(&args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let records: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 46);
    let r36 = records.iter().find(|r| r["s"] == 36).unwrap();
    assert_eq!(
        (r36["dim_subfield"].as_u64(), r36["exact_distance"].as_u64()),
        (Some(25), Some(4))
    );
    assert_eq!(fs::read_to_string(&cache).unwrap().lines().count(), 46);
    assert!(String::from_utf8_lossy(&out.stderr).contains("46 computed, 0 cached"));

    let again = ntcodes(&args);
    assert!(String::from_utf8_lossy(&again.stderr).contains("0 computed, 46 cached"));
    assert_eq!(stdout(&again), stdout(&out));

    let mut forced = args.to_vec();
    forced.push("--force");
    let out = ntcodes(&forced);
    assert!(String::from_utf8_lossy(&out.stderr).contains("46 computed, 0 cached"));
    assert_eq!(fs::read_to_string(&cache).unwrap().lines().count(), 46);

    let empty = ntcodes(&[
        "sweep", "--u", "3", "--t", "2", "--s-from", "5", "--s-to", "4", "--cache", c,
    ]);
    assert!(empty.status.success());
    assert!(stdout(&empty).is_empty());
}

#[test]
fn duplicate_cache_lines_are_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("dup.jsonl");
    let c = cache.to_str().unwrap();
    let out = ntcodes(&[
        "sweep", "--u", "3", "--t", "2", "--s-from", "1", "--s-to", "1", "--cache", c,
    ]);
    assert!(out.status.success());
    let line = fs::read_to_string(&cache).unwrap();
    fs::write(&cache, format!("{line}{line}")).unwrap();
    let out = ntcodes(&[
        "sweep", "--u", "3", "--t", "2", "--s-from", "1", "--s-to", "1", "--cache", c,
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("duplicate"));
}

#[test]
fn unwritable_cache_is_an_io_error() {
    let out = ntcodes(&[
        "sweep",
        "--u",
        "3",
        "--t",
        "2",
        "--s-from",
        "0",
        "--s-to",
        "0",
        "--cache",
        "/nonexistent/dir/c.jsonl",
    ]);
    assert_eq!(out.status.code(), Some(4));
}
