use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use pathhom::verify::{eight_vertex_flow_graph, two_cycle};

fn pathhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathhom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(name);
    let schema: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?} in {doc}");
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn analyze_json(path: &Path, extra: &[&str]) -> Value {
    let mut args = vec!["analyze", path.to_str().unwrap(), "--json"];
    args.extend_from_slice(extra);
    let o = pathhom(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn eight_vertex_flow_graph_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "g.txt",
        &eight_vertex_flow_graph().to_edge_list(),
    );
    let doc = analyze_json(&path, &[]);
    assert_valid(&schema("analyze.schema.json"), &doc);
    assert_eq!(doc["reduced_betti"], serde_json::json!([0, 1, 1, 0]));
    assert_eq!(doc["cyclomatic"], 4);
    assert_eq!(doc["divergence"], 3);
    assert_eq!(doc["field"], "Q");
}

#[test]
fn prime_field_agrees_on_small_graph() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "g.txt",
        &eight_vertex_flow_graph().to_edge_list(),
    );
    let q = analyze_json(&path, &[]);
    let p = analyze_json(&path, &["--field", "prime"]);
    assert_eq!(q["betti"], p["betti"]);
    assert_eq!(p["field"], "GF(2147483647)");
}

#[test]
fn two_cycle_generator() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "c.txt", &two_cycle().to_edge_list());
    let doc = analyze_json(&path, &["--generators"]);
    assert_valid(&schema("analyze.schema.json"), &doc);
    let gens = doc["h1_generators"].as_array().unwrap();
    assert_eq!(gens.len(), 1);
    assert_eq!(gens[0].as_array().unwrap().len(), 2);
    assert_eq!(
        doc["h1_support"],
        serde_json::json!([["a", "b"], ["b", "a"]])
    );
}

#[test]
fn dot_input_and_loops() {
    let dir = tempfile::tempdir().unwrap();
    let dot = write(
        dir.path(),
        "g.dot",
        "digraph g { rankdir = LR; a -> b; b -> a; c; }\n",
    );
    let doc = analyze_json(&dot, &["--format", "dot"]);
    assert_eq!(doc["vertices"], 3);
    assert_eq!(doc["reduced_betti"], serde_json::json!([1, 1, 0, 0]));

    let looped = write(dir.path(), "l.txt", "a b\nb b\n");
    assert_eq!(
        pathhom(&["analyze", looped.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    let doc = analyze_json(&looped, &["--allow-loops"]);
    assert_eq!(doc["vertices"], 3);
    assert_eq!(doc["reduced_betti"][1], 1);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.txt", "# nothing\n");
    let malformed = write(dir.path(), "bad.txt", "a b c\n");
    let e = empty.to_str().unwrap();
    assert_eq!(pathhom(&["analyze", e]).status.code(), Some(1));
    assert_eq!(
        pathhom(&["analyze", malformed.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        pathhom(&["analyze", "/nonexistent/graph.txt"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        pathhom(&["analyze", e, "--no-such-flag"]).status.code(),
        Some(2)
    );
    assert_eq!(
        pathhom(&["analyze", e, "--prime", "7"]).status.code(),
        Some(2)
    );
    assert_eq!(pathhom(&["enumerate", "--n", "8"]).status.code(), Some(2));
    assert_eq!(
        pathhom(&["generate", "--kind", "tower"]).status.code(),
        Some(2)
    );
}

#[test]
fn truncation_reports_partial_profile() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::new();
    for u in 0..4 {
        for v in 0..4 {
            if u != v {
                text.push_str(&format!("{u} {v}\n"));
            }
        }
    }
    let path = write(dir.path(), "k4.txt", &text);
    let o = pathhom(&[
        "analyze",
        path.to_str().unwrap(),
        "--json",
        "--path-cap",
        "50",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid(&schema("analyze.schema.json"), &doc);
    assert_eq!(doc["truncated_at"], 3);
    assert_eq!(doc["p_max"], 1);
    assert_eq!(doc["complete"], false);
    assert_eq!(doc["betti"].as_array().unwrap().len(), 2);
}

#[test]
fn boundary_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "c.txt", &two_cycle().to_edge_list());
    let dump = dir.path().join("dump");
    let o = pathhom(&[
        "analyze",
        path.to_str().unwrap(),
        "--pmax",
        "1",
        "--dump-dir",
        dump.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let d1 = fs::read_to_string(dump.join("boundary_1.txt")).unwrap();
    assert_eq!(d1.lines().next(), Some("# 2 2 Q"));
    assert_eq!(d1.lines().count(), 5);
    assert!(dump.join("boundary_2.txt").exists());
}

#[test]
fn enumerate_four_vertices() {
    let o = pathhom(&["enumerate", "--n", "4"]);
    assert!(o.status.success());
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid(&schema("enumerate.schema.json"), &doc);
    assert_eq!(doc["total"], 7);
    assert_eq!(doc["progenitors"], 6);
    assert_eq!(doc["records"].as_array().unwrap().len(), 6);
}

#[test]
fn enumerate_filter_writes_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("n5");
    let o = pathhom(&[
        "enumerate",
        "--n",
        "5",
        "--filter",
        "beta2-positive",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let doc: Value =
        serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_valid(&schema("enumerate.schema.json"), &doc);
    assert_eq!(doc["filtered"], 2);
    for rec in doc["records"].as_array().unwrap() {
        assert_eq!(rec["reduced_betti"][2], 1);
        let dot = out.join(rec["file"].as_str().unwrap());
        let back = analyze_json(&dot, &["--format", "dot"]);
        assert_eq!(back["reduced_betti"], rec["reduced_betti"]);
    }
}

#[test]
fn generate_is_deterministic_and_matches_schema() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = pathhom(&[
            "generate",
            "--kind",
            "skeleton",
            "--count",
            "6",
            "--seed",
            "40",
            "--productions",
            "12",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        out
    };
    let a = run("a");
    let b = run("b");
    let manifest = fs::read_to_string(a.join("manifest.jsonl")).unwrap();
    assert_eq!(
        manifest,
        fs::read_to_string(b.join("manifest.jsonl")).unwrap()
    );

    let v = schema("manifest.schema.json");
    let rows: Vec<Value> = manifest
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 6);
    for (k, row) in rows.iter().enumerate() {
        assert_valid(&v, row);
        assert_eq!(row["seed"], 40 + k as u64);
        assert_eq!(row["cyclomatic"], row["predicate_count"]);
        assert_eq!(row["divergence"], 0);
        let id = row["id"].as_str().unwrap();
        assert_eq!(
            fs::read_to_string(a.join(format!("{id}.skel"))).unwrap(),
            fs::read_to_string(b.join(format!("{id}.skel"))).unwrap()
        );
        let edges = a.join(row["file"].as_str().unwrap());
        assert_eq!(analyze_json(&edges, &[])["betti"], row["betti"]);
    }
}

#[test]
fn generate_constructions() {
    let v = schema("manifest.schema.json");
    let o = pathhom(&[
        "generate",
        "--kind",
        "suspension",
        "--base",
        "twocycle",
        "--k",
        "2",
    ]);
    let row: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_valid(&v, &row);
    assert_eq!(
        (row["vertices"].as_u64(), row["arcs"].as_u64()),
        (Some(6), Some(14))
    );
    assert_eq!(row["reduced_betti"], serde_json::json!([0, 0, 0, 1]));

    let o = pathhom(&[
        "generate", "--kind", "tower", "--layers", "2,3", "--pmax", "3",
    ]);
    let row: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_valid(&v, &row);
    assert_eq!(row["reduced_betti"], serde_json::json!([0, 2, 0, 0]));
}

#[test]
fn histogram_from_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g");
    let o = pathhom(&[
        "generate",
        "--kind",
        "skeleton",
        "--count",
        "4",
        "--productions",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = pathhom(&["histogram", out.join("manifest.jsonl").to_str().unwrap()]);
    assert!(o.status.success());
    let csv = stdout(&o);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("nu,beta1,count"));
    let total: usize = lines
        .map(|l| l.rsplit(',').next().unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, 4);
}

#[test]
fn verify_series_suite_passes() {
    let o = pathhom(&["verify", "--suite", "series", "--pairs", "5", "--seed", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}
