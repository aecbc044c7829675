use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use subconstituent::report::ExportedGraph;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subconstituent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn field_table_f9() {
    let o = run(&["field", "--p", "3", "--e", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("t^2+t+2"));
    let rows: Vec<Vec<&str>> = text
        .lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>())
        .filter(|w| w.len() == 4 && w[0].parse::<u32>().is_ok())
        .collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0], vec!["1", "t", "2t", "2+2t"]);
    assert_eq!(rows[3], vec!["4", "2", "0", "inf"]);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["field", "--p", "4"]).status.code(), Some(1));
    assert_eq!(run(&["field", "--p", "2"]).status.code(), Some(1));
    assert_eq!(
        run(&["field", "--p", "13", "--table-cap", "100"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["analyze", "--q", "3", "--u", "5t"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["analyze", "--q", "3", "--u", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["analyze", "--q", "3", "--u", "2"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["sweep", "--q-list", "3,15"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let out = tempfile::tempdir().unwrap();
    let bad = out.path().join("missing").join("g.txt");
    assert_eq!(
        run(&["export", "--q", "3", "--out", bad.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn analyze_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q3.json");
    let o = run(&["analyze", "--q", "3", "--json", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let mut want = vec![
        "q",
        "p",
        "e",
        "modulus",
        "k",
        "omega",
        "admissible",
        "analyses",
    ];
    want.sort();
    let mut got = keys.clone();
    got.sort();
    assert_eq!(got, want);
    assert_eq!(v["modulus"], serde_json::json!([2, 1, 1]));
    let a = &v["analyses"][0];
    assert_eq!(a["matches_c2"], Value::Bool(true));
    assert_eq!(
        a["srg"],
        serde_json::json!({"n": 56, "k": 10, "lambda": 0, "mu": 2})
    );
}

#[test]
fn analyze_q3_with_u_in_omega() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let o = run(&[
        "analyze",
        "--q",
        "3",
        "--u",
        "t",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let a = &v["analyses"][0];
    assert_eq!(a["triangle_free"], Value::Bool(false));
    assert_eq!(a["equitable"], Value::Bool(false));
}

#[test]
fn analyze_q5_by_p_and_e() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q5.json");
    let o = run(&[
        "analyze",
        "--p",
        "5",
        "--e",
        "1",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let analyses = v["analyses"].as_array().unwrap();
    assert_eq!(analyses.len(), 3);
    assert!(analyses
        .iter()
        .all(|a| a["matches_c2"] == Value::Bool(false)));
}

#[test]
fn sweep_single_field_matches_analyze() {
    let o = run(&["sweep", "--q-list", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 1);
    let words: Vec<&str> = rows[0].split_whitespace().collect();
    assert_eq!(words, vec!["3", "{1+2t,2+t}", "true", "true", "true"]);
}

#[test]
fn export_formats() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("g.txt");
    let o = run(&[
        "export",
        "--q",
        "3",
        "--u",
        "auto",
        "--assembled",
        "--out",
        edges.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&edges).unwrap();
    assert!(text.starts_with("# q 3\n# u 1+2t\n# layers pairs=45 points=10 star=1\n# vertices 56\n# edges 280\n# 0 {0,1}\n"));
    let g = ExportedGraph::from_edgelist(&text).unwrap();
    assert_eq!(g.edges.len(), 280);
    assert!(g.edges.windows(2).all(|w| w[0] < w[1]));
    assert!(g.edges.iter().all(|[i, j]| i < j));

    let plain = dir.path().join("g45.txt");
    assert!(
        run(&["export", "--q", "3", "--out", plain.to_str().unwrap()])
            .status
            .success()
    );
    let g = ExportedGraph::from_edgelist(&fs::read_to_string(&plain).unwrap()).unwrap();
    assert_eq!((g.vertices.len(), g.edges.len()), (45, 180));

    let json = dir.path().join("g.json");
    let o = run(&[
        "export",
        "--q",
        "3",
        "--u",
        "1+2t",
        "--format",
        "json",
        "--out",
        json.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(&json).unwrap();
    assert_eq!(ExportedGraph::from_json(&text).unwrap().to_json(), text);
}
