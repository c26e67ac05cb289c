//! From the base polytope at the initial seed to a polytope at every seed of
//! the exchange graph, and consistency checks against the reference data.

use crate::error::{Error, Result};
use crate::exchange::{build_exchange_graph_with, ExchangeGraph, Transport};
use crate::flag::golden::{column_diff, GoldenData, LabeledEdge};
use crate::flag::string::{transported_string_polytope, Weight};
use crate::polytope::Polytope;
use crate::seed::{seeds_equivalent, Seed, SeedEquivalence};
use crate::tropical::{apply_tropical, tropical_map};

/// Arrows of the initial quiver for `Flag(ℂ⁴)`.
pub const SL4_START_ARROWS: [(usize, usize); 7] = [(1, 2), (2, 4), (2, 3), (5, 2), (3, 1), (3, 5), (6, 3)];

/// Number of seeds of the `Flag(ℂ⁴)` exchange graph.
pub const SL4_SEED_COUNT: usize = 14;

/// Mutation depth sufficient for every seed of the rank-3 landscape.
pub const SL4_MAX_DEPTH: usize = 6;

pub fn sl4_start_seed() -> Seed {
    Seed::from_quiver(6, vec![1, 2, 3], &SL4_START_ARROWS).expect("constant quiver")
}

pub fn sl3_start_seed() -> Seed {
    Seed::new(3, vec![1], vec![vec![0, -1, 1]]).expect("constant seed")
}

/// Carries polytopes along mutations by the tropicalized mutation maps.
pub struct PolytopeTransport;

/// The permutation of coordinates induced by a relabeling: the polytope at
/// `seed.relabel(sigma)` is `permute_coordinates(&sigma_to_perm(sigma))` of
/// the polytope at `seed`.
pub fn sigma_to_perm(sigma: &SeedEquivalence) -> Vec<usize> {
    sigma.sigma.iter().map(|&s| s - 1).collect()
}

impl Transport for PolytopeTransport {
    type Payload = Polytope;

    fn transport(&self, payload: &Polytope, seed: &Seed, k: usize) -> Result<Polytope> {
        apply_tropical(payload, &tropical_map(seed, k)?)
    }

    fn agrees(&self, payload: &Polytope, other: &Polytope, sigma: &SeedEquivalence) -> Result<bool> {
        Ok(&payload.permute_coordinates(&sigma_to_perm(sigma))? == other)
    }
}

fn diff_message(what: &str, expected: &[Vec<i64>], found: &[Vec<i64>]) -> String {
    let (missing, unexpected) = column_diff(expected, found);
    let mut msg = format!("{what}: facet normals differ");
    for c in missing {
        msg.push_str(&format!("\n  missing column    {c:?}"));
    }
    for c in unexpected {
        msg.push_str(&format!("\n  unexpected column {c:?}"));
    }
    msg
}

/// Compares facet normals as multisets, reporting a column-level diff.
pub fn check_normals(what: &str, polytope: &Polytope, expected: &[Vec<i64>], offset: i64) -> Result<()> {
    let found = polytope.normal_multiset();
    let mut expected = expected.to_vec();
    expected.sort();
    if found != expected {
        return Err(Error::Golden(diff_message(what, &expected, &found)));
    }
    if let Some(f) = polytope.facets().iter().find(|f| f.offset != offset.into()) {
        return Err(Error::Golden(format!("{what}: facet {:?} has offset {}", f.normal, f.offset)));
    }
    Ok(())
}

/// The base polytope at `t0`, taken from the reference matrix after checking
/// it against the transported string polytope of `λ = (2,2,2)`.
pub fn base_polytope_sl4(golden: &GoldenData) -> Result<Polytope> {
    let transported = transported_string_polytope(&Weight::anticanonical(4))?;
    check_normals("base polytope at t0", &transported, &golden.base.columns(), golden.base.offset)?;
    let reference = golden.base.polytope()?;
    if reference != transported {
        return Err(Error::Golden("base polytope at t0 differs from the transported string polytope".into()));
    }
    Ok(reference)
}

pub fn base_polytope_sl3(golden: &GoldenData) -> Result<Polytope> {
    golden.sl3.polytope()
}

/// The string-polytope model at seed `label` (7, 9 or 11), optionally with
/// the recorded errata applied.
pub fn gp_polytope(golden: &GoldenData, label: usize, corrected: bool) -> Result<Polytope> {
    let m = golden
        .gp
        .get(&label)
        .ok_or_else(|| Error::Golden(format!("no string-polytope model at t{label}")))?;
    if corrected {
        m.corrected().polytope()
    } else {
        m.polytope()
    }
}

/// A labeled seed: where its realization sits in the exchange graph.
#[derive(Clone, Debug)]
pub struct LabeledSeed {
    pub label: usize,
    /// Realization reached by mutating `t0` along the reference path.
    pub seed: Seed,
    pub node: usize,
    /// `seed == graph.nodes[node].seed.relabel(sigma)`.
    pub sigma: SeedEquivalence,
    /// Polytope at `seed`, in its own coordinates.
    pub polytope: Polytope,
}

/// The transported polytopes of the 14 seeds of `Flag(ℂ⁴)`.
#[derive(Clone, Debug)]
pub struct Sl4Landscape {
    pub graph: ExchangeGraph<Polytope>,
    /// Indexed by label `0..14`.
    pub seeds: Vec<LabeledSeed>,
}

impl Sl4Landscape {
    pub fn polytope(&self, label: usize) -> &Polytope {
        &self.seeds[label].polytope
    }

    pub fn label_of_node(&self, node: usize) -> Option<usize> {
        self.seeds.iter().find(|s| s.node == node).map(|s| s.label)
    }

    /// Exchange-graph edges written in labels, each with `a < b`, sorted.
    pub fn labeled_edges(&self) -> Result<Vec<(usize, usize)>> {
        let mut edges = self
            .graph
            .edge_pairs()
            .into_iter()
            .map(|(u, v)| {
                let a = self.label_of_node(u).ok_or_else(|| Error::Golden(format!("node {u} has no label")))?;
                let b = self.label_of_node(v).ok_or_else(|| Error::Golden(format!("node {v} has no label")))?;
                Ok((a.min(b), a.max(b)))
            })
            .collect::<Result<Vec<_>>>()?;
        edges.sort_unstable();
        Ok(edges)
    }
}

/// Transports a polytope along a mutation path, one tropical map at a time.
pub fn transport_along(start: &Seed, polytope: &Polytope, path: &[usize]) -> Result<(Seed, Polytope)> {
    let mut seed = start.clone();
    let mut p = polytope.clone();
    for &k in path {
        p = apply_tropical(&p, &tropical_map(&seed, k)?)?;
        seed = seed.mutate(k)?;
    }
    Ok((seed, p))
}

/// Builds the exchange graph with polytopes attached and labels its nodes by
/// the reference paths. The polytope at each label is obtained both from the
/// graph (relabeled) and by direct transport along the path; the two must
/// coincide.
pub fn compute_landscape(golden: &GoldenData) -> Result<Sl4Landscape> {
    let start = sl4_start_seed();
    let base = base_polytope_sl4(golden)?;
    let graph = build_exchange_graph_with(&start, base.clone(), SL4_MAX_DEPTH, &PolytopeTransport)?;
    if graph.node_count() != SL4_SEED_COUNT {
        return Err(Error::Inconsistent(format!(
            "expected {SL4_SEED_COUNT} seeds, found {}",
            graph.node_count()
        )));
    }
    let mut seeds = Vec::with_capacity(SL4_SEED_COUNT);
    for label in 0..SL4_SEED_COUNT {
        let path = golden
            .landscape
            .path_to(label)
            .ok_or_else(|| Error::Golden(format!("no path to t{label}")))?;
        let (seed, direct) = transport_along(&start, &base, path)?;
        let (key, _) = seed.canonical_form();
        let node = graph
            .nodes
            .iter()
            .position(|n| n.canonical == key)
            .ok_or_else(|| Error::Inconsistent(format!("t{label} is not in the exchange graph")))?;
        let sigma = seeds_equivalent(&graph.nodes[node].seed, &seed).expect("same canonical form");
        let via_graph = graph.nodes[node].payload.permute_coordinates(&sigma_to_perm(&sigma))?;
        if via_graph != direct {
            return Err(Error::PathDisagreement(format!(
                "t{label}: polytope along {path:?} differs from the one in the exchange graph"
            )));
        }
        if seeds.iter().any(|s: &LabeledSeed| s.node == node) {
            return Err(Error::Golden(format!("t{label} repeats an earlier seed")));
        }
        seeds.push(LabeledSeed {
            label,
            seed,
            node,
            sigma,
            polytope: direct,
        });
    }
    Ok(Sl4Landscape { graph, seeds })
}

/// The polytopes at `t1..t6` against the reference matrices.
pub fn check_case_matrices(golden: &GoldenData, landscape: &Sl4Landscape) -> Result<()> {
    for (i, m) in golden.cases.iter().enumerate() {
        let label = m.seed.unwrap_or(i + 1);
        check_normals(&format!("case{}.json (t{label})", i + 1), landscape.polytope(label), &m.columns(), m.offset)?;
    }
    Ok(())
}

/// The reference quivers, each against the mutation of `t0` along its path.
///
/// Returns the names of alternate quivers recorded as printed duplicates of
/// another seed; those must equal that seed's quiver and differ from their
/// own path's result.
pub fn check_quivers(golden: &GoldenData) -> Result<Vec<String>> {
    let start = sl4_start_seed();
    let land = &golden.landscape;
    let mut duplicates = Vec::new();
    for q in land.quivers.iter().chain(&land.alternate_quivers) {
        let name = q.name.clone().unwrap_or_else(|| q.seed.to_string());
        let drawn = land.seed_from_quiver(q)?;
        let computed = start.mutate_path(&q.path)?;
        match q.printed_as_duplicate_of {
            None => {
                if drawn != computed {
                    return Err(Error::Golden(format!(
                        "quiver {name}: drawn {:?} but mutation along {:?} gives {:?}",
                        drawn.to_quiver(),
                        q.path,
                        computed.to_quiver()
                    )));
                }
            }
            Some(other) => {
                let other_path = land.path_to(other).ok_or_else(|| Error::Golden(format!("no path to t{other}")))?;
                if drawn != start.mutate_path(other_path)? || drawn == computed {
                    return Err(Error::Golden(format!("quiver {name} is not a duplicate of t{other}")));
                }
                if seeds_equivalent(&computed, &start.mutate_path(land.path_to(q.seed).unwrap_or(&q.path))?).is_none() {
                    return Err(Error::Golden(format!("quiver {name}: path does not reach t{}", q.seed)));
                }
                duplicates.push(name);
            }
        }
    }
    Ok(duplicates)
}

/// Every labeled edge of the reference landscape is a mutation between the
/// seeds it names. The direction is read in the labeling of either
/// endpoint's realization, since mutation in a fixed direction is an
/// involution.
pub fn check_landscape_edges(golden: &GoldenData, landscape: &Sl4Landscape) -> Result<()> {
    let reaches = |from: usize, k: usize, to: usize| -> Result<bool> {
        let next = landscape.seeds[from].seed.mutate(k)?;
        Ok(seeds_equivalent(&landscape.seeds[to].seed, &next).is_some())
    };
    for &LabeledEdge { source, direction, target } in &golden.landscape.edges {
        if !reaches(source, direction, target)? && !reaches(target, direction, source)? {
            return Err(Error::Golden(format!(
                "mutating t{source} in direction {direction} does not give t{target}"
            )));
        }
    }
    Ok(())
}

/// The displayed tropical mutation formulas fix the sign convention: the
/// coefficients of `g_k` computed from the seed must match them exactly.
pub fn check_mu_formulas(golden: &GoldenData, landscape: &Sl4Landscape) -> Result<()> {
    for f in &golden.mu_formulas.formulas {
        let m = tropical_map(&landscape.seeds[f.seed].seed, f.direction)?;
        let (plus, minus) = m.coefficients();
        if plus != f.plus || minus != f.minus {
            return Err(Error::Convention(format!(
                "mutation {} at t{} ({}): computed plus {plus:?} minus {minus:?}",
                f.direction, f.seed, f.text
            )));
        }
    }
    Ok(())
}

/// Polytopes at the seeds of `Flag(ℂ³)`, starting from the reference base.
pub fn compute_sl3(golden: &GoldenData) -> Result<ExchangeGraph<Polytope>> {
    let start = sl3_start_seed();
    if start != golden.sl3.seed {
        return Err(Error::Golden("sl3.json: initial seed differs".into()));
    }
    build_exchange_graph_with(&start, base_polytope_sl3(golden)?, 4, &PolytopeTransport)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_perm_matches_relabeling() {
        let s = sl4_start_seed();
        let sigma = SeedEquivalence { sigma: vec![2, 1, 3, 4, 5, 6] };
        assert_eq!(sigma_to_perm(&sigma), vec![1, 0, 2, 3, 4, 5]);
        assert_eq!(s.relabel(&sigma).entry(1, 2), s.entry(2, 1));
    }

    #[test]
    fn sl3_has_two_seeds() {
        let g = GoldenData::embedded().unwrap();
        let graph = compute_sl3(&g).unwrap();
        assert_eq!(graph.node_count(), 2);
        assert_eq!(graph.edge_count(), 1);
    }
}
