use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use flagpoly::equivalence::fingerprint as polytope_fingerprint;
use flagpoly::flag::classes::{classify_landscape, twelve_facet_seeds, Sl4Classification};
use flagpoly::flag::golden::{column_diff, GoldenData};
use flagpoly::flag::pipeline::{compute_landscape, sl3_start_seed, sl4_start_seed, Sl4Landscape, SL4_MAX_DEPTH};
use flagpoly::flag::verify::{verify_all as run_checks, CHECKS};
use flagpoly::flag::words::{move_graph, reduced_words as enumerate_words};
use flagpoly::polytope::f_vector;
use flagpoly::{build_exchange_graph, Polytope};
use serde::Serialize;

use crate::report::RunReport;

#[derive(Debug)]
pub enum CommandError {
    /// Bad arguments, unreadable reference data, or an IO failure.
    Usage(String),
    /// A computation disagreed with the reference data before any report
    /// could be assembled.
    Mismatch(String),
}

pub type Outcome = Result<(RunReport, String), CommandError>;

fn golden() -> Result<GoldenData, CommandError> {
    GoldenData::load().map_err(|e| CommandError::Usage(e.to_string()))
}

fn landscape(golden: &GoldenData) -> Result<Sl4Landscape, CommandError> {
    compute_landscape(golden).map_err(|e| CommandError::Mismatch(e.to_string()))
}

fn to_value(value: &impl Serialize) -> serde_json::Value {
    serde_json::to_value(value).expect("serializable")
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CommandError> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    std::fs::write(path, text + "\n").map_err(|e| CommandError::Usage(format!("cannot write {}: {e}", path.display())))
}

pub fn exchange_graph(n: usize, out: Option<&Path>) -> Outcome {
    let started = Instant::now();
    let (start, depth, nodes, edges) = match n {
        3 => (sl3_start_seed(), 4, 2, 1),
        4 => (sl4_start_seed(), SL4_MAX_DEPTH, 14, 21),
        _ => return Err(CommandError::Usage(format!("--n must be 3 or 4, got {n}"))),
    };
    let graph = build_exchange_graph(&start, depth).map_err(|e| CommandError::Mismatch(e.to_string()))?;
    let mut details = Vec::new();
    if graph.node_count() != nodes {
        details.push(format!("{} seeds, expected {nodes}", graph.node_count()));
    }
    if graph.edge_count() != edges {
        details.push(format!("{} edges, expected {edges}", graph.edge_count()));
    }
    let rank = start.unfrozen().len();
    if !graph.is_regular(rank) {
        details.push(format!("degrees {:?}, expected all {rank}", graph.degrees()));
    }
    let json = graph.to_json();
    if let Some(path) = out {
        write_json(path, &json)?;
    }
    let mut text = format!("SL{n}: {} seeds, {} edges\n", graph.node_count(), graph.edge_count());
    for (a, b) in graph.edge_pairs() {
        let _ = writeln!(text, "  {a} -- {b}");
    }
    let summary = serde_json::json!({
        "node_count": graph.node_count(),
        "edge_count": graph.edge_count(),
        "edges": graph.edge_pairs(),
    });
    let report = RunReport::new("exchange-graph", details, started.elapsed()).with_data(summary);
    Ok((report, text.trim_end().to_string()))
}

/// Rows are coordinates and columns are primitive facet normals, in
/// lexicographic order.
fn format_matrix(columns: &[Vec<i64>]) -> String {
    let width = columns.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    let dim = columns.first().map_or(0, Vec::len);
    let mut out = String::new();
    for i in 0..dim {
        let row: Vec<String> = columns.iter().map(|c| format!("{:>width$}", c[i])).collect();
        let _ = writeln!(out, "[ {} ]", row.join(" "));
    }
    out
}

fn format_polytope(label: usize, p: &Polytope) -> String {
    let normals = p.normal_multiset();
    let offsets: Vec<String> = p.facets().iter().map(|f| f.offset.to_string()).collect();
    let uniform = offsets.windows(2).all(|w| w[0] == w[1]);
    let mut out = format!("t{label}: {} facets, {} vertices\n", p.num_facets(), p.num_vertices());
    match (uniform, offsets.first()) {
        (true, Some(c)) => {
            let _ = writeln!(out, "facet normals (columns), each <x, n> >= {c}:");
        }
        _ => {
            let _ = writeln!(out, "facet normals (columns), offsets {offsets:?}:");
        }
    }
    out.push_str(&format_matrix(&normals));
    let mut vertices: Vec<String> = p
        .vertices()
        .iter()
        .map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    vertices.sort();
    let _ = writeln!(out, "vertices:");
    for v in vertices {
        let _ = writeln!(out, "  ({v})");
    }
    out.trim_end().to_string()
}

pub fn polytope(label: usize, json: bool) -> Outcome {
    let started = Instant::now();
    let golden = golden()?;
    let land = landscape(&golden)?;
    let p = land
        .seeds
        .get(label)
        .map(|s| &s.polytope)
        .ok_or_else(|| CommandError::Usage(format!("no seed t{label}")))?;
    let reference = match label {
        0 => Some(&golden.base),
        k => golden.case(k),
    };
    let mut details = Vec::new();
    if let Some(m) = reference {
        let (missing, unexpected) = column_diff(&m.column_multiset(), &p.normal_multiset());
        details.extend(missing.iter().map(|c| format!("missing column {c:?}")));
        details.extend(unexpected.iter().map(|c| format!("unexpected column {c:?}")));
    }
    let data = p.to_json().map_err(|e| CommandError::Mismatch(e.to_string()))?;
    let text = if json {
        serde_json::to_string_pretty(&data).expect("serializable")
    } else {
        format_polytope(label, p)
    };
    let report = RunReport::new("polytope", details, started.elapsed()).with_data(to_value(&data));
    Ok((report, text))
}

pub fn verify_all(only: &[String]) -> Outcome {
    let started = Instant::now();
    if let Some(bad) = only.iter().find(|name| !CHECKS.contains(&name.as_str())) {
        return Err(CommandError::Usage(format!(
            "unknown check {bad:?}; expected one of {}",
            CHECKS.join(", ")
        )));
    }
    let golden = golden()?;
    let results = run_checks(&golden, only).map_err(|e| CommandError::Usage(e.to_string()))?;
    let mut text = String::new();
    let mut details = Vec::new();
    for r in &results {
        let _ = writeln!(text, "{:<15} {}", r.name, if r.passed { "ok" } else { "FAIL" });
        details.extend(r.details.iter().map(|d| format!("{}: {d}", r.name)));
    }
    let report = RunReport::new("verify-all", details, started.elapsed()).with_data(to_value(&results));
    Ok((report, text.trim_end().to_string()))
}

fn class_details(golden: &GoldenData, classes: &Sl4Classification) -> Vec<String> {
    let mut details = Vec::new();
    let mut found = classes.classification.classes.clone();
    found.sort();
    let mut expected: Vec<Vec<usize>> = golden.table2.classes.iter().map(|c| c.seeds.clone()).collect();
    expected.sort();
    if found != expected {
        details.push(format!("classes {found:?}, expected {expected:?}"));
    }
    for c in classes.catalog.iter().filter(|c| !c.verified) {
        details.push(format!("catalog map {} -> {} does not verify", c.source, c.target));
    }
    details
}

pub fn classify(out: Option<&Path>, orbits: bool, twelve_facets: bool) -> Outcome {
    let started = Instant::now();
    let golden = golden()?;
    let land = landscape(&golden)?;
    let classes = classify_landscape(&golden, &land).map_err(|e| CommandError::Mismatch(e.to_string()))?;
    let details = class_details(&golden, &classes);
    let json = classes.to_json();
    if let Some(path) = out {
        write_json(path, &json)?;
    }
    let mut text = format!("{} classes\n", json.classes.len());
    for class in &json.classes {
        let names: Vec<String> = class.iter().map(|s| format!("t{s}")).collect();
        let _ = writeln!(text, "  {{{}}}", names.join(", "));
    }
    let mut data = to_value(&json);
    if orbits {
        let inv = &classes.involutions;
        let _ = writeln!(text, "{} orbits", inv.orbits.len());
        for orbit in &inv.orbits {
            let _ = writeln!(text, "  {orbit:?}");
        }
        data["orbits"] = to_value(&inv.orbits);
    }
    if twelve_facets {
        let polytopes: Vec<Polytope> = land.seeds.iter().map(|s| s.polytope.clone()).collect();
        let seeds = twelve_facet_seeds(&polytopes);
        let _ = writeln!(text, "12 facets: {seeds:?}");
        data["twelve_facets"] = to_value(&seeds);
    }
    let report = RunReport::new("classify", details, started.elapsed()).with_data(data);
    Ok((report, text.trim_end().to_string()))
}

pub fn reduced_words(n: usize) -> Outcome {
    let started = Instant::now();
    let words = enumerate_words(n).map_err(|e| CommandError::Usage(e.to_string()))?;
    let graph = move_graph(n).map_err(|e| CommandError::Usage(e.to_string()))?;
    let classes = graph.commutation_classes();
    let mut details = Vec::new();
    if !graph.is_connected() {
        details.push("move graph is disconnected".to_string());
    }
    let mut text = String::new();
    if n <= 4 {
        for w in &words {
            let _ = writeln!(text, "{w}");
        }
    }
    let _ = write!(
        text,
        "{} reduced words, {} move edges, {} commutation classes",
        words.len(),
        graph.edges.len(),
        classes.len()
    );
    let data = serde_json::json!({
        "count": words.len(),
        "move_edges": graph.edges.len(),
        "commutation_classes": classes.len(),
        "words": words.iter().map(|w| w.0.clone()).collect::<Vec<_>>(),
    });
    let report = RunReport::new("reduced-words", details, started.elapsed()).with_data(data);
    Ok((report, text))
}

pub fn fingerprint(label: usize) -> Outcome {
    let started = Instant::now();
    let golden = golden()?;
    let land = landscape(&golden)?;
    let p = land.polytope(label);
    let fp = polytope_fingerprint(p).map_err(|e| CommandError::Mismatch(e.to_string()))?;
    let mut details = Vec::new();
    if let Some(row) = golden.class_of(label) {
        if f_vector(p).0 != row.f_vector {
            details.push(format!("f-vector {:?}, expected {:?}", fp.f_vector.0, row.f_vector));
        }
    }
    let degrees: Vec<String> = fp.degree_histogram.iter().map(|(d, c)| format!("{d}:{c}")).collect();
    let text = format!(
        "t{label}\n  f-vector {:?}\n  vertex degrees {{{}}}\n  lattice points in P, 2P: {:?}",
        fp.f_vector.0,
        degrees.join(", "),
        fp.lattice_points
    );
    let report = RunReport::new("fingerprint", details, started.elapsed()).with_data(to_value(&fp));
    Ok((report, text))
}
