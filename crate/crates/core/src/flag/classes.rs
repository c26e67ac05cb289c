//! Unimodular classes of the 14 polytopes of `Flag(ℂ⁴)`, the coordinate
//! changes between them and the symmetries of the exchange graph.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::equivalence::{
    classify, search_signed_permutation_map, verify_unimodular_map, Classification, UnimodularMap, Witness,
};
use crate::error::{Error, Result};
use crate::flag::golden::{CatalogMap, GoldenData};
use crate::flag::pipeline::{gp_polytope, Sl4Landscape};
use crate::polytope::{is_combinatorially_isomorphic, Polytope};

/// Resolves a catalog endpoint: `tN` is the transported polytope at seed
/// `N`, `gp_tN` the string-polytope model (with errata applied).
pub fn catalog_polytope(golden: &GoldenData, landscape: &Sl4Landscape, name: &str) -> Result<Polytope> {
    let parse = |s: &str| s.parse::<usize>().map_err(|_| Error::Golden(format!("bad catalog endpoint {name}")));
    if let Some(rest) = name.strip_prefix("gp_t") {
        gp_polytope(golden, parse(rest)?, true)
    } else if let Some(rest) = name.strip_prefix('t') {
        let label = parse(rest)?;
        landscape
            .seeds
            .get(label)
            .map(|s| s.polytope.clone())
            .ok_or_else(|| Error::Golden(format!("no seed {name}")))
    } else {
        Err(Error::Golden(format!("bad catalog endpoint {name}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogCheck {
    pub source: String,
    pub target: String,
    pub determinant: i64,
    pub verified: bool,
}

/// Checks every catalog map on the polytopes it names.
pub fn check_catalog(golden: &GoldenData, landscape: &Sl4Landscape) -> Result<Vec<CatalogCheck>> {
    golden
        .catalog
        .maps
        .iter()
        .map(|CatalogMap { source, target, images }| {
            let map = UnimodularMap::from_images(images)?;
            let p = catalog_polytope(golden, landscape, source)?;
            let q = catalog_polytope(golden, landscape, target)?;
            Ok(CatalogCheck {
                source: source.clone(),
                target: target.clone(),
                determinant: map.determinant(),
                verified: verify_unimodular_map(&p, &q, &map)?,
            })
        })
        .collect()
}

/// One string-polytope model against the transported polytope at its seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelCheck {
    pub seed: usize,
    pub corrected: bool,
    pub vertices: usize,
    pub facets: usize,
    /// A signed permutation carrying the model onto the transported polytope.
    pub witness: Option<Vec<Vec<i64>>>,
}

pub fn check_string_models(golden: &GoldenData, landscape: &Sl4Landscape) -> Result<Vec<ModelCheck>> {
    let mut out = Vec::new();
    for &seed in golden.gp.keys() {
        for corrected in [false, true] {
            if corrected && golden.gp[&seed].errata.is_empty() {
                continue;
            }
            let gp = gp_polytope(golden, seed, corrected)?;
            let witness = search_signed_permutation_map(&gp, landscape.polytope(seed))?.map(|m| m.to_i64_rows());
            out.push(ModelCheck {
                seed,
                corrected,
                vertices: gp.num_vertices(),
                facets: gp.num_facets(),
                witness,
            });
        }
    }
    Ok(out)
}

/// Which pairs inside each class a signed permutation connects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSearch {
    pub a: usize,
    pub b: usize,
    pub found: bool,
}

pub fn signed_permutation_pairs(classification: &Classification, polytopes: &[Polytope]) -> Result<Vec<PairSearch>> {
    let mut out = Vec::new();
    for class in &classification.classes {
        for (i, &a) in class.iter().enumerate() {
            for &b in &class[i + 1..] {
                let found = match search_signed_permutation_map(&polytopes[a], &polytopes[b])? {
                    Some(m) => verify_unimodular_map(&polytopes[a], &polytopes[b], &m)?,
                    None => false,
                };
                out.push(PairSearch { a, b, found });
            }
        }
    }
    Ok(out)
}

/// All automorphisms of a simple graph on `0..n`, as vertex permutations in
/// lexicographic order.
pub fn graph_automorphisms(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let degree: Vec<usize> = adj.iter().map(|r| r.iter().filter(|&&x| x).count()).collect();
    let mut out = Vec::new();
    let mut image = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend_automorphism(&adj, &degree, &mut image, &mut used, &mut out);
    out
}

fn extend_automorphism(
    adj: &[Vec<bool>],
    degree: &[usize],
    image: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let v = image.len();
    if v == adj.len() {
        out.push(image.clone());
        return;
    }
    for w in 0..adj.len() {
        if used[w] || degree[w] != degree[v] || (0..v).any(|u| adj[u][v] != adj[image[u]][w]) {
            continue;
        }
        used[w] = true;
        image.push(w);
        extend_automorphism(adj, degree, image, used, out);
        image.pop();
        used[w] = false;
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

fn is_involution(p: &[usize]) -> bool {
    compose(p, p).iter().enumerate().all(|(i, &x)| i == x)
}

fn preserves_edges(p: &[usize], edges: &BTreeSet<(usize, usize)>) -> bool {
    edges.iter().all(|&(a, b)| {
        let (x, y) = (p[a], p[b]);
        edges.contains(&(x.min(y), x.max(y)))
    })
}

fn preserves_classes(p: &[usize], classes: &[Vec<usize>]) -> bool {
    classes.iter().all(|c| {
        let mut img: Vec<usize> = c.iter().map(|&i| p[i]).collect();
        img.sort_unstable();
        classes.contains(&img)
    })
}

/// Orbits of the group generated by `generators`, each sorted, ordered by
/// least element.
pub fn orbits(n: usize, generators: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut orbit = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in generators {
                if !seen[g[x]] {
                    seen[g[x]] = true;
                    orbit.push(g[x]);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionReport {
    pub iota: Vec<usize>,
    pub iota_prime: Vec<usize>,
    pub involutive: bool,
    pub commute: bool,
    pub preserve_edges: bool,
    pub preserve_classes: bool,
    pub orbits: Vec<Vec<usize>>,
    /// Classes that are unions of more than one orbit.
    pub merged_classes: Vec<Vec<usize>>,
    /// Automorphisms of the exchange graph mapping each class onto a class.
    pub class_preserving_automorphisms: Vec<Vec<usize>>,
    pub total_automorphisms: usize,
}

impl InvolutionReport {
    /// The only class-preserving symmetries are the group generated by the
    /// two involutions.
    pub fn group_is_complete(&self) -> bool {
        let id: Vec<usize> = (0..self.iota.len()).collect();
        let mut group = vec![
            id,
            self.iota.clone(),
            self.iota_prime.clone(),
            compose(&self.iota, &self.iota_prime),
        ];
        group.sort();
        group.dedup();
        let mut found = self.class_preserving_automorphisms.clone();
        found.sort();
        group == found
    }
}

pub fn check_involutions(golden: &GoldenData, edges: &[(usize, usize)], classes: &[Vec<usize>]) -> InvolutionReport {
    let n = golden.landscape.paths.len();
    let iota = golden.involutions.iota_permutation(n);
    let iota_prime = golden.involutions.iota_prime_permutation(n);
    let edge_set: BTreeSet<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let orbits = orbits(n, &[iota.clone(), iota_prime.clone()]);
    let merged_classes = classes
        .iter()
        .filter(|c| orbits.iter().filter(|o| c.contains(&o[0])).count() > 1)
        .cloned()
        .collect();
    let all = graph_automorphisms(n, edges);
    InvolutionReport {
        involutive: is_involution(&iota) && is_involution(&iota_prime),
        commute: compose(&iota, &iota_prime) == compose(&iota_prime, &iota),
        preserve_edges: preserves_edges(&iota, &edge_set) && preserves_edges(&iota_prime, &edge_set),
        preserve_classes: preserves_classes(&iota, classes) && preserves_classes(&iota_prime, classes),
        class_preserving_automorphisms: all.iter().filter(|p| preserves_classes(p, classes)).cloned().collect(),
        total_automorphisms: all.len(),
        orbits,
        merged_classes,
        iota,
        iota_prime,
    }
}

/// Facet counts of the 14 polytopes, and the seeds with exactly 12.
pub fn twelve_facet_seeds(polytopes: &[Polytope]) -> Vec<usize> {
    (0..polytopes.len()).filter(|&i| polytopes[i].num_facets() == 12).collect()
}

/// Classification of the 14 polytopes with everything checked along the way.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sl4Classification {
    pub classification: Classification,
    pub catalog: Vec<CatalogCheck>,
    pub string_models: Vec<ModelCheck>,
    pub signed_pairs: Vec<PairSearch>,
    /// Case 2 and Case 5 share an f-vector; their combinatorial types differ.
    pub case2_case5_isomorphic: bool,
    pub involutions: InvolutionReport,
}

pub fn classify_landscape(golden: &GoldenData, landscape: &Sl4Landscape) -> Result<Sl4Classification> {
    let polytopes: Vec<Polytope> = landscape.seeds.iter().map(|s| s.polytope.clone()).collect();
    let classification = classify(&polytopes)?;
    let catalog = check_catalog(golden, landscape)?;
    let string_models = check_string_models(golden, landscape)?;
    let signed_pairs = signed_permutation_pairs(&classification, &polytopes)?;
    let rep = |case: usize| -> Result<usize> {
        golden
            .table2
            .classes
            .iter()
            .find(|c| c.case == case)
            .and_then(|c| c.seeds.first().copied())
            .ok_or_else(|| Error::Golden(format!("no Case {case} in table2.json")))
    };
    let case2_case5_isomorphic = is_combinatorially_isomorphic(&polytopes[rep(2)?], &polytopes[rep(5)?]).is_some();
    let involutions = check_involutions(golden, &landscape.labeled_edges()?, &classification.classes);
    Ok(Sl4Classification {
        classification,
        catalog,
        string_models,
        signed_pairs,
        case2_case5_isomorphic,
        involutions,
    })
}

/// The classification report written by the command line.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassificationJson {
    pub classes: Vec<Vec<usize>>,
    pub involutions: InvolutionsJson,
    pub witness_maps: Vec<Witness>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvolutionsJson {
    pub iota: BTreeMap<usize, usize>,
    pub iota_prime: BTreeMap<usize, usize>,
}

impl Sl4Classification {
    pub fn to_json(&self) -> ClassificationJson {
        let table = |p: &[usize]| p.iter().copied().enumerate().collect();
        ClassificationJson {
            classes: self.classification.classes.clone(),
            involutions: InvolutionsJson {
                iota: table(&self.involutions.iota),
                iota_prime: table(&self.involutions.iota_prime),
            },
            witness_maps: self.classification.witnesses.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automorphisms_of_small_graphs() {
        // A 4-cycle has the dihedral group of order 8.
        assert_eq!(graph_automorphisms(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).len(), 8);
        // A path on 3 vertices has 2.
        assert_eq!(graph_automorphisms(3, &[(0, 1), (1, 2)]).len(), 2);
    }

    #[test]
    fn orbit_computation() {
        let swap01 = vec![1, 0, 2, 3];
        let swap23 = vec![0, 1, 3, 2];
        assert_eq!(orbits(4, &[swap01.clone(), swap23]), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(orbits(4, &[]), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert!(is_involution(&swap01));
        assert!(!is_involution(&[1, 2, 0]));
    }

    #[test]
    fn class_preservation() {
        let classes = vec![vec![0, 1], vec![2]];
        assert!(preserves_classes(&[1, 0, 2], &classes));
        assert!(!preserves_classes(&[2, 1, 0], &classes));
    }
}
