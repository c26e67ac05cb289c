//! The full sweep of computed results against the reference data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exchange::build_exchange_graph;
use crate::flag::classes::{classify_landscape, twelve_facet_seeds, Sl4Classification};
use crate::flag::golden::{column_diff, GoldenData};
use crate::flag::pipeline::{
    base_polytope_sl3, base_polytope_sl4, check_case_matrices, check_landscape_edges, check_mu_formulas,
    check_quivers, compute_landscape, sl3_start_seed, Sl4Landscape,
};
use crate::flag::words::{move_graph, Move, ReducedWord};
use crate::polytope::{f_vector, is_lattice_polytope, is_reflexive, interior_lattice_points, vertex_degree_histogram, Polytope};
use crate::rational::Rational;

/// Names accepted by `--only`, in execution order.
pub const CHECKS: &[&str] = &[
    "exchange-graph",
    "base-polytope",
    "transport",
    "mu-formulas",
    "landscape",
    "fvectors",
    "degrees",
    "reflexive",
    "classes",
    "involutions",
    "facets",
    "reduced-words",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Mismatches, one per line; empty when the check passes.
    pub details: Vec<String>,
}

impl CheckResult {
    fn from_details(name: &str, details: Vec<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: details.is_empty(),
            details,
        }
    }
}

/// Lazily computed shared state; errors are kept so that every dependent
/// check can report them.
struct Context<'a> {
    golden: &'a GoldenData,
    landscape: Option<std::result::Result<Sl4Landscape, String>>,
    classes: Option<std::result::Result<Sl4Classification, String>>,
}

impl<'a> Context<'a> {
    fn landscape(&mut self) -> std::result::Result<&Sl4Landscape, String> {
        let golden = self.golden;
        self.landscape
            .get_or_insert_with(|| compute_landscape(golden).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn classes(&mut self) -> std::result::Result<&Sl4Classification, String> {
        if self.classes.is_none() {
            let golden = self.golden;
            let value = match self.landscape() {
                Ok(l) => classify_landscape(golden, l).map_err(|e| e.to_string()),
                Err(e) => Err(e),
            };
            self.classes = Some(value);
        }
        self.classes.as_ref().expect("just set").as_ref().map_err(Clone::clone)
    }
}

fn err_lines(e: impl std::fmt::Display) -> Vec<String> {
    e.to_string().lines().map(str::to_string).collect()
}

macro_rules! need {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return err_lines(e),
        }
    };
}

fn check_exchange_graph(cx: &mut Context) -> Vec<String> {
    let golden = cx.golden;
    let mut out = Vec::new();
    let sl3 = need!(build_exchange_graph(&sl3_start_seed(), 4));
    if sl3.node_count() != golden.sl3.seed_count {
        out.push(format!("SL3: {} seeds, expected {}", sl3.node_count(), golden.sl3.seed_count));
    }
    let land = need!(cx.landscape());
    if land.graph.edge_count() != 21 || !land.graph.is_regular(3) {
        out.push(format!("SL4: {} edges, degrees {:?}", land.graph.edge_count(), land.graph.degrees()));
    }
    let mut expected: Vec<(usize, usize)> = golden.figure4.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    expected.sort_unstable();
    let found = need!(land.labeled_edges());
    for e in expected.iter().filter(|e| !found.contains(e)) {
        out.push(format!("missing edge {e:?}"));
    }
    for e in found.iter().filter(|e| !expected.contains(e)) {
        out.push(format!("unexpected edge {e:?}"));
    }
    out
}

fn check_base(cx: &mut Context) -> Vec<String> {
    let mut out = Vec::new();
    if let Err(e) = base_polytope_sl4(cx.golden) {
        out.extend(err_lines(e));
    }
    match base_polytope_sl3(cx.golden) {
        Ok(p) if p.num_facets() == cx.golden.sl3.rows.first().map_or(0, Vec::len) => {}
        Ok(p) => out.push(format!("SL3 base polytope has {} facets", p.num_facets())),
        Err(e) => out.extend(err_lines(e)),
    }
    out
}

fn check_transport(cx: &mut Context) -> Vec<String> {
    let golden = cx.golden;
    let land = need!(cx.landscape());
    match check_case_matrices(golden, land) {
        Ok(()) => Vec::new(),
        Err(e) => err_lines(e),
    }
}

fn check_mu(cx: &mut Context) -> Vec<String> {
    let golden = cx.golden;
    let land = need!(cx.landscape());
    match check_mu_formulas(golden, land) {
        Ok(()) => Vec::new(),
        Err(e) => err_lines(e),
    }
}

fn check_landscape(cx: &mut Context) -> Vec<String> {
    let golden = cx.golden;
    let mut out = Vec::new();
    if let Err(e) = check_quivers(golden) {
        out.extend(err_lines(e));
    }
    let land = need!(cx.landscape());
    if let Err(e) = check_landscape_edges(golden, land) {
        out.extend(err_lines(e));
    }
    out
}

fn check_fvectors(cx: &mut Context) -> Vec<String> {
    let golden = cx.golden;
    let land = need!(cx.landscape());
    let mut out = Vec::new();
    for class in &golden.table2.classes {
        for &s in &class.seeds {
            let f = f_vector(land.polytope(s));
            if f.0 != class.f_vector {
                out.push(format!("t{s} (Case {}): f-vector {:?}, expected {:?}", class.case, f.0, class.f_vector));
            }
            if !f.satisfies_euler() {
                out.push(format!("t{s}: f-vector {:?} violates Euler's relation", f.0));
            }
        }
    }
    out
}

fn check_degrees(cx: &mut Context) -> Vec<String> {
    let golden = cx.golden;
    let land = need!(cx.landscape());
    let mut out = Vec::new();
    for row in &golden.table3.histograms {
        let Some(class) = golden.table2.classes.iter().find(|c| c.case == row.case) else {
            out.push(format!("Case {} is not in table2.json", row.case));
            continue;
        };
        let expected = row.histogram();
        for &s in &class.seeds {
            let found = vertex_degree_histogram(land.polytope(s));
            if found != expected {
                out.push(format!("t{s} (Case {}): degrees {found:?}, expected {expected:?}", row.case));
            }
        }
        let edges = class.f_vector.get(2).copied().unwrap_or(0);
        let degree_sum: usize = expected.iter().map(|(d, c)| d * c).sum();
        if degree_sum != 2 * edges {
            out.push(format!(
                "Case {}: reference degrees sum to {degree_sum}, but {edges} edges require {}",
                row.case,
                2 * edges
            ));
        }
    }
    let classes = need!(cx.classes());
    if classes.case2_case5_isomorphic {
        out.push("Cases 2 and 5 are combinatorially isomorphic".into());
    }
    out
}

fn reflexive_problems(name: &str, p: &Polytope) -> Vec<String> {
    let mut out = Vec::new();
    if !is_lattice_polytope(p) {
        out.push(format!("{name}: not a lattice polytope"));
    }
    if !is_reflexive(p) {
        out.push(format!("{name}: not reflexive"));
    }
    match interior_lattice_points(p) {
        Ok(pts) if pts.len() == 1 && pts[0].is_zero() => {}
        Ok(pts) => out.push(format!("{name}: interior lattice points {pts:?}")),
        Err(e) => out.push(format!("{name}: {e}")),
    }
    out
}

fn check_reflexive(cx: &mut Context) -> Vec<String> {
    let mut out = match base_polytope_sl3(cx.golden) {
        Ok(p) => reflexive_problems("SL3", &p),
        Err(e) => err_lines(e),
    };
    let land = need!(cx.landscape());
    for s in &land.seeds {
        out.extend(reflexive_problems(&format!("t{}", s.label), &s.polytope));
    }
    out
}

fn check_classes(cx: &mut Context) -> Vec<String> {
    let golden = cx.golden;
    let c = need!(cx.classes());
    let mut out = Vec::new();
    let mut expected: Vec<Vec<usize>> = golden.table2.classes.iter().map(|c| c.seeds.clone()).collect();
    for e in &mut expected {
        e.sort_unstable();
    }
    expected.sort();
    let mut found = c.classification.classes.clone();
    found.sort();
    if found != expected {
        out.push(format!("classes {found:?}, expected {expected:?}"));
    }
    for m in c.catalog.iter().filter(|m| !m.verified) {
        out.push(format!("catalog map {} -> {} does not verify", m.source, m.target));
    }
    out
}

fn check_involutions(cx: &mut Context) -> Vec<String> {
    let golden = cx.golden;
    let c = need!(cx.classes());
    let r = &c.involutions;
    let mut out = Vec::new();
    for (ok, what) in [
        (r.involutive, "not involutions"),
        (r.commute, "do not commute"),
        (r.preserve_edges, "are not graph automorphisms"),
        (r.preserve_classes, "do not preserve the classes"),
        (r.group_is_complete(), "do not generate every class-preserving automorphism"),
    ] {
        if !ok {
            out.push(format!("iota, iota_prime {what}"));
        }
    }
    if r.orbits.len() != golden.involutions.orbit_count {
        out.push(format!("{} orbits, expected {}", r.orbits.len(), golden.involutions.orbit_count));
    }
    if r.orbits.len() != c.classification.classes.len() + r.merged_classes.len() {
        out.push(format!("orbits {:?} do not merge into the classes", r.orbits));
    }
    out
}

fn check_facets(cx: &mut Context) -> Vec<String> {
    let golden = cx.golden;
    let land = need!(cx.landscape());
    let polytopes: Vec<Polytope> = land.seeds.iter().map(|s| s.polytope.clone()).collect();
    let twelve = twelve_facet_seeds(&polytopes);
    let mut expected = golden
        .table2
        .classes
        .iter()
        .find(|c| c.case == 1)
        .map(|c| c.seeds.clone())
        .unwrap_or_default();
    expected.sort_unstable();
    let mut out = Vec::new();
    if twelve != expected {
        out.push(format!("seeds with 12 facets {twelve:?}, expected {expected:?}"));
    }
    for (i, p) in polytopes.iter().enumerate() {
        if p.num_facets() < 12 {
            out.push(format!("t{i} has {} facets", p.num_facets()));
        }
    }
    out
}

fn check_reduced_words(cx: &mut Context) -> Vec<String> {
    let golden = cx.golden;
    let mut out = Vec::new();
    let g = need!(move_graph(4));
    let fig = &golden.figure1;
    let words: BTreeMap<&str, ReducedWord> = fig.words.iter().map(|(k, w)| (k.as_str(), ReducedWord(w.clone()))).collect();
    let mut listed: Vec<&ReducedWord> = words.values().collect();
    listed.sort();
    if listed.len() != g.words.len() || listed.iter().zip(&g.words).any(|(a, b)| *a != b) {
        out.push(format!("the reference move graph lists {} words; enumeration gives {}", listed.len(), g.words.len()));
    }
    let mut expected = Vec::new();
    for e in &fig.edges {
        let (Some(a), Some(b)) = (words.get(e.a.as_str()), words.get(e.b.as_str())) else {
            out.push(format!("edge {}-{} names an unknown word", e.a, e.b));
            continue;
        };
        let (Some(i), Some(j)) = (g.index_of(a), g.index_of(b)) else {
            out.push(format!("edge {}-{} is not between reduced words", e.a, e.b));
            continue;
        };
        let kind = if e.move_length == 2 { Move::Commutation } else { Move::Braid };
        expected.push((i.min(j), i.max(j), kind));
    }
    expected.sort_unstable();
    if expected != g.edges {
        let name = |i: usize| words.iter().find(|(_, w)| **w == g.words[i]).map_or("?", |(k, _)| *k).to_string();
        for e in g.edges.iter().filter(|e| !expected.contains(e)) {
            out.push(format!("move graph edge {}-{} ({:?}) is not in the reference move graph", name(e.0), name(e.1), e.2));
        }
        for e in expected.iter().filter(|e| !g.edges.contains(e)) {
            out.push(format!("reference move edge {}-{} ({:?}) is not a move", name(e.0), name(e.1), e.2));
        }
    }
    let classes = g.commutation_classes();
    let rows = &golden.table1.rows;
    let mut hit = vec![0usize; classes.len()];
    for row in rows {
        match g.index_of(&ReducedWord(row.word.clone())) {
            Some(i) => hit[classes.iter().position(|c| c.contains(&i)).expect("partition")] += 1,
            None => out.push(format!("reference word {:?} is not reduced", row.word)),
        }
    }
    if classes.len() != rows.len() || hit.iter().any(|&h| h != 1) {
        out.push(format!("{} commutation classes; reference word rows hit them {hit:?}", classes.len()));
    }
    let mut seeds: Vec<usize> = rows.iter().map(|r| r.seed).collect();
    seeds.sort_unstable();
    seeds.dedup();
    if seeds.len() != rows.len() {
        out.push(format!("reference word table seeds {seeds:?} repeat"));
    }
    for (label, m) in &golden.gp {
        if let Some(w) = &m.reduced_word {
            if !rows.iter().any(|r| r.seed == *label && &r.word == w) {
                out.push(format!("string model t{label} word {w:?} disagrees with the reference word table"));
            }
        }
    }
    for n in 2..=5 {
        match move_graph(n) {
            Ok(g) if g.is_connected() => {}
            Ok(_) => out.push(format!("move graph for n = {n} is disconnected")),
            Err(e) => out.push(e.to_string()),
        }
    }
    out
}

/// Runs the named checks (all of [`CHECKS`] when `only` is empty).
pub fn verify_all(golden: &GoldenData, only: &[String]) -> Result<Vec<CheckResult>> {
    if let Some(bad) = only.iter().find(|n| !CHECKS.contains(&n.as_str())) {
        return Err(Error::OutOfRange(format!("unknown check {bad}; expected one of {}", CHECKS.join(", "))));
    }
    let mut cx = Context {
        golden,
        landscape: None,
        classes: None,
    };
    let mut results = Vec::new();
    for &name in CHECKS {
        if !only.is_empty() && !only.iter().any(|o| o == name) {
            continue;
        }
        let details = match name {
            "exchange-graph" => check_exchange_graph(&mut cx),
            "base-polytope" => check_base(&mut cx),
            "transport" => check_transport(&mut cx),
            "mu-formulas" => check_mu(&mut cx),
            "landscape" => check_landscape(&mut cx),
            "fvectors" => check_fvectors(&mut cx),
            "degrees" => check_degrees(&mut cx),
            "reflexive" => check_reflexive(&mut cx),
            "classes" => check_classes(&mut cx),
            "involutions" => check_involutions(&mut cx),
            "facets" => check_facets(&mut cx),
            "reduced-words" => check_reduced_words(&mut cx),
            _ => unreachable!("listed in CHECKS"),
        };
        results.push(CheckResult::from_details(name, details));
    }
    Ok(results)
}

/// Column-level diff of a polytope's normals against an expected matrix, as
/// printable lines.
pub fn normal_diff_lines(expected: &[Vec<i64>], polytope: &Polytope) -> Vec<String> {
    let mut want = expected.to_vec();
    want.sort();
    let (missing, unexpected) = column_diff(&want, &polytope.normal_multiset());
    missing
        .iter()
        .map(|c| format!("missing column    {c:?}"))
        .chain(unexpected.iter().map(|c| format!("unexpected column {c:?}")))
        .collect()
}

/// Offsets of all facets equal `offset`.
pub fn has_uniform_offset(p: &Polytope, offset: i64) -> bool {
    p.facets().iter().all(|f| f.offset == Rational::from(offset))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_check_is_rejected() {
        let g = GoldenData::embedded().unwrap();
        assert!(verify_all(&g, &["nope".to_string()]).is_err());
    }

    #[test]
    fn reduced_words_check_passes() {
        let g = GoldenData::embedded().unwrap();
        let r = verify_all(&g, &["reduced-words".to_string()]).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].passed, "{:?}", r[0].details);
    }
}
