use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/golden")
}

fn flagpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagpoly"))
        .args(args)
        .env_remove("CP_GOLDEN_DIR")
        .output()
        .expect("binary runs")
}

fn flagpoly_with_golden(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagpoly"))
        .args(args)
        .env("CP_GOLDEN_DIR", dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

fn copy_golden() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(golden_dir()).unwrap() {
        let path = entry.unwrap().path();
        std::fs::copy(&path, dir.path().join(path.file_name().unwrap())).unwrap();
    }
    dir
}

#[test]
fn exchange_graph_counts() {
    let o = flagpoly(&["exchange-graph", "--n", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["data"]["node_count"], 2);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("graph.json");
    let o = flagpoly(&["exchange-graph", "--n", "4", "--out", out.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report = json(&o);
    assert_eq!(report["data"]["node_count"], 14);
    assert_eq!(report["data"]["edge_count"], 21);
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(written["nodes"].as_array().unwrap().len(), 14);
    assert_eq!(written["edges"].as_array().unwrap().len(), 21);
}

#[test]
fn exchange_graph_rejects_bad_rank_and_unwritable_output() {
    assert_eq!(flagpoly(&["exchange-graph", "--n", "5"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing/graph.json");
    assert_eq!(flagpoly(&["exchange-graph", "--out", out.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn polytope_column_counts() {
    for (seed, columns) in [("0", 12), ("2", 13), ("5", 14)] {
        let o = flagpoly(&["polytope", "--seed", seed, "--json"]);
        assert_eq!(o.status.code(), Some(0), "seed {seed}");
        let report = json(&o);
        assert_eq!(report["status"], "pass");
        assert_eq!(report["data"]["hrep"]["normals"].as_array().unwrap().len(), columns, "seed {seed}");
    }
    let o = flagpoly(&["polytope", "--seed", "0"]);
    let text = stdout(&o);
    assert!(text.starts_with("t0: 12 facets, 40 vertices"), "{text}");
    assert!(text.contains("[ -1  0  0  0  0  0  0  0  0  0  0  1 ]"), "{text}");
}

#[test]
fn polytope_rejects_bad_label() {
    assert_eq!(flagpoly(&["polytope", "--seed", "14"]).status.code(), Some(2));
}

#[test]
fn verify_all_reports_only_the_degree_table() {
    let o = flagpoly(&["verify-all", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let report = json(&o);
    let failed: Vec<&str> = report["data"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["degrees"]);
    assert_eq!(report["data"].as_array().unwrap().len(), 12);
}

#[test]
fn verify_all_only_filter() {
    let o = flagpoly(&["verify-all", "--only", "fvectors", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report = json(&o);
    let names: Vec<&str> = report["data"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["fvectors"]);
    assert_eq!(flagpoly(&["verify-all", "--only", "bogus"]).status.code(), Some(2));
}

#[test]
fn corrupted_base_matrix_gives_column_diff() {
    let dir = copy_golden();
    let path = dir.path().join("eq2_2.json");
    let mut data: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    data["rows"][0][0] = serde_json::json!(-1);
    std::fs::write(&path, data.to_string()).unwrap();

    let o = flagpoly_with_golden(dir.path(), &["verify-all", "--only", "base-polytope"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("[-1, 1, 0, 1, 0, 0]") && text.contains("[1, 1, 0, 1, 0, 0]"), "{text}");
}

#[test]
fn missing_golden_directory_is_an_environment_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = flagpoly_with_golden(dir.path(), &["verify-all"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot read"));
}

#[test]
fn classify_writes_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("classes.json");
    let o = flagpoly(&["classify", "--out", out.to_str().unwrap(), "--orbits", "--twelve-facets", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report = json(&o);
    assert_eq!(report["data"]["classes"].as_array().unwrap().len(), 5);
    assert_eq!(report["data"]["orbits"].as_array().unwrap().len(), 6);
    assert_eq!(report["data"]["twelve_facets"], serde_json::json!([0, 8, 12, 13]));
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(written["witness_maps"].as_array().unwrap().len(), 9);
    assert_eq!(written["involutions"]["iota"]["0"], 13);
}

#[test]
fn reduced_words_and_fingerprint() {
    let o = flagpoly(&["reduced-words", "--n", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report = json(&o);
    assert_eq!(report["data"]["count"], 16);
    assert_eq!(report["data"]["commutation_classes"], 8);

    let o = flagpoly(&["fingerprint", "--seed", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report = json(&o);
    assert_eq!(report["data"]["f_vector"], serde_json::json!([1, 43, 146, 212, 163, 68, 14, 1]));
    assert_eq!(report["data"]["lattice_points"], serde_json::json!([729, 15625]));
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&flagpoly(&["polytope", "--seed", "9"]));
    let b = stdout(&flagpoly(&["polytope", "--seed", "9"]));
    let strip = |s: &str| s.lines().filter(|l| !l.starts_with("polytope:")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&a), strip(&b));
}
