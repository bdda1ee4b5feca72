use std::path::Path;
use std::process::{Command, Output};

use itertools::Itertools;

fn berge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_berge"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix('\t'))
}

fn write_complete(path: &Path, n: usize, r: usize) {
    let mut s = format!("{n} {r}\n");
    for e in (0..n).combinations(r) {
        s += &e.iter().join(" ");
        s += "\n";
    }
    std::fs::write(path, s).unwrap();
}

#[test]
fn table_row_for_seventeen_vertices() {
    let o = berge(&["table", "--r", "3", "--k", "7", "--n", "7..30"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let header: Vec<&str> = text.lines().next().unwrap().split('\t').collect();
    assert_eq!(header, ["n", "k", "r", "p", "m", "f", "f_r", "f_r_plus", "eg_small_n", "u_r"]);
    assert_eq!(text.lines().count(), 1 + 24);
    let row: Vec<&str> = text.lines().find(|l| l.starts_with("17\t")).unwrap().split('\t').collect();
    assert_eq!(row[6], "61");
}

#[test]
fn table_reports_small_n_separately() {
    let text = stdout(&berge(&["table", "--r", "3", "--k", "7", "--n", "5..7"]));
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows[0][8], "10");
    assert_eq!(rows[1][8], "20");
    assert_eq!(rows[2][8], "NA");
}

#[test]
fn verify_construction_is_free_and_recognized() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c42.txt");
    let f = file.to_str().unwrap();
    let o = berge(&["construct", "--type", "c42", "--n", "17", "--k", "7", "--r", "3", "-o", f]);
    assert_eq!(o.status.code(), Some(0));
    let o = berge(&["verify", "--k", "7", f]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(field(&text, "verdict"), Some("Construction42"));
    assert_eq!(field(&text, "edges"), Some("61"));
    assert_eq!(field(&text, "distance_from_f_r"), Some("0"));
    assert_eq!(field(&text, "status"), Some("free"));
}

#[test]
fn verify_complete_hypergraph_exits_with_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k7.txt");
    write_complete(&file, 7, 3);
    let o = berge(&["verify", "--k", "7", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert_eq!(field(&text, "longest_berge_cycle"), Some("7"));
    let cert = text.split_once("certificate\n").unwrap().1;
    assert!(cert.starts_with("CYCLE 7\n"));
    assert_eq!(cert.lines().count(), 2 + 7);

    let o = berge(&["verify", "--k", "7", "--format", "json", file.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "long cycle");
    assert!(v["certificate"].as_str().unwrap().starts_with("CYCLE 7"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(berge(&["--no-such-flag"]).status.code(), Some(2));
    assert_eq!(berge(&["table"]).status.code(), Some(2));
    assert_eq!(berge(&["verify", "--k", "7", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(berge(&["scan", "--claims", "bogus"]).status.code(), Some(2));
    assert_eq!(berge(&["hunt", "--n", "10", "--k", "7", "--r", "3", "--trials", "0"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "4 3\n0 1\n").unwrap();
    let o = berge(&["verify", "--k", "5", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn hunt_output_is_reproducible() {
    let args = ["hunt", "--n", "10", "--k", "7", "--r", "3", "--trials", "100", "--seed", "42"];
    let a = berge(&args);
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "3"]);
    let b = berge(&threaded);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(field(&stdout(&a), "# checked"), Some("100"));
}

#[test]
fn scan_small_grid_holds() {
    let o = berge(&["scan", "--r", "3..4", "--k", "7..12", "--n", "..60", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "berge-report/1");
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    assert_eq!(v["claims"].as_array().unwrap().len(), 10);
}

#[test]
fn search_and_budget_exit_codes() {
    let o = berge(&["search", "--mode", "graph", "--n", "7", "--k", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "value"), Some("12"));
    let o = berge(&["search", "--mode", "hyper", "--n", "8", "--k", "7", "--r", "3", "--budget-nodes", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(field(&stdout(&o), "exact"), Some("false"));
}

#[test]
fn structure_commands_on_hnka() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.txt");
    let f = file.to_str().unwrap();
    assert_eq!(berge(&["construct", "--type", "hnka", "--n", "9", "--k", "5", "--a", "2", "-o", f]).status.code(), Some(0));
    let text = stdout(&berge(&["blocks", f]));
    assert_eq!(text.lines().filter(|l| l.starts_with("block\t")).count(), 1);
    let o = berge(&["kopylov", "--k", "5", f]);
    assert_eq!(o.status.code(), Some(0));
    assert!(field(&stdout(&o), "s").is_some());
    let o = berge(&["core", "--alpha", "1", f]);
    assert_eq!(field(&stdout(&o), "surviving"), Some("0 1 2 3 4 5 6 7 8"));
    let o = berge(&["sdrp", f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "strict_hall"), Some("true"));
}

#[test]
fn spec_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.txt");
    let q = ["--n", "17", "--k", "7", "--r", "3"];
    let mut args = vec!["construct", "--type", "c42", "--emit-spec", "-o", spec.to_str().unwrap()];
    args.extend(q);
    assert_eq!(berge(&args).status.code(), Some(0));
    let mut args = vec!["construct", "--spec", spec.to_str().unwrap()];
    args.extend(q);
    let from_spec = berge(&args);
    let direct = berge(&["construct", "--type", "c42", "--n", "17", "--k", "7", "--r", "3"]);
    assert_eq!(from_spec.stdout, direct.stdout);
}
