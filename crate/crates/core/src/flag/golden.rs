//! Reference data shipped with the crate as versioned JSON.
//!
//! The files are compiled in; setting `CP_GOLDEN_DIR` makes
//! [`GoldenData::load`] read them from that directory instead.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::seed::Seed;

pub const GOLDEN_DIR_ENV: &str = "CP_GOLDEN_DIR";
const VERSION: u32 = 1;

const EMBEDDED: &[(&str, &str)] = &[
    ("eq2_2.json", include_str!("../../golden/eq2_2.json")),
    ("case1.json", include_str!("../../golden/case1.json")),
    ("case2.json", include_str!("../../golden/case2.json")),
    ("case3.json", include_str!("../../golden/case3.json")),
    ("case4.json", include_str!("../../golden/case4.json")),
    ("case5.json", include_str!("../../golden/case5.json")),
    ("case6.json", include_str!("../../golden/case6.json")),
    ("gp_t7.json", include_str!("../../golden/gp_t7.json")),
    ("gp_t9.json", include_str!("../../golden/gp_t9.json")),
    ("gp_t11.json", include_str!("../../golden/gp_t11.json")),
    ("sl3.json", include_str!("../../golden/sl3.json")),
    ("table1.json", include_str!("../../golden/table1.json")),
    ("table2.json", include_str!("../../golden/table2.json")),
    ("table3.json", include_str!("../../golden/table3.json")),
    ("figure1_edges.json", include_str!("../../golden/figure1_edges.json")),
    ("figure4_edges.json", include_str!("../../golden/figure4_edges.json")),
    ("landscape.json", include_str!("../../golden/landscape.json")),
    ("mu_formulas.json", include_str!("../../golden/mu_formulas.json")),
    ("catalog.json", include_str!("../../golden/catalog.json")),
    ("involutions.json", include_str!("../../golden/involutions.json")),
];

/// A single corrected entry of a printed matrix (1-based row and column).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub row: usize,
    pub column: usize,
    pub printed: i64,
    pub corrected: i64,
    pub note: String,
}

/// Integer matrix whose columns are facet normals, all with the same offset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalMatrix {
    pub version: u32,
    pub description: String,
    #[serde(default)]
    pub seed: Option<usize>,
    pub offset: i64,
    pub rows: Vec<Vec<i64>>,
    #[serde(default)]
    pub from_seed: Option<usize>,
    #[serde(default)]
    pub direction: Option<usize>,
    #[serde(default)]
    pub reduced_word: Option<Vec<usize>>,
    #[serde(default)]
    pub errata: Vec<Erratum>,
}

impl NormalMatrix {
    pub fn columns(&self) -> Vec<Vec<i64>> {
        let cols = self.rows.first().map_or(0, Vec::len);
        (0..cols).map(|j| self.rows.iter().map(|r| r[j]).collect()).collect()
    }

    /// Sorted columns, for comparison as a multiset.
    pub fn column_multiset(&self) -> Vec<Vec<i64>> {
        let mut c = self.columns();
        c.sort();
        c
    }

    /// The matrix with every erratum applied.
    pub fn corrected(&self) -> NormalMatrix {
        let mut m = self.clone();
        for e in &self.errata {
            m.rows[e.row - 1][e.column - 1] = e.corrected;
        }
        m.errata.clear();
        m
    }

    pub fn polytope(&self) -> Result<Polytope> {
        Polytope::from_normal_columns(&self.rows, self.offset)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl3Data {
    pub version: u32,
    pub description: String,
    pub offset: i64,
    pub rows: Vec<Vec<i64>>,
    pub seed: Seed,
    pub seed_count: usize,
}

impl Sl3Data {
    pub fn polytope(&self) -> Result<Polytope> {
        Polytope::from_normal_columns(&self.rows, self.offset)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub word: Vec<usize>,
    pub seed: usize,
    pub nz_seed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1 {
    pub version: u32,
    pub description: String,
    pub rows: Vec<Table1Row>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub case: usize,
    pub seeds: Vec<usize>,
    pub f_vector: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table2 {
    pub version: u32,
    pub description: String,
    pub classes: Vec<ClassRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub case: usize,
    pub degrees: Vec<(usize, usize)>,
}

impl DegreeRow {
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        self.degrees.iter().copied().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table3 {
    pub version: u32,
    pub description: String,
    pub histograms: Vec<DegreeRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveEdge {
    pub a: String,
    pub b: String,
    #[serde(rename = "move")]
    pub move_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Figure1 {
    pub version: u32,
    pub description: String,
    pub words: BTreeMap<String, Vec<usize>>,
    pub edges: Vec<MoveEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Figure4 {
    pub version: u32,
    pub description: String,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverEntry {
    #[serde(default)]
    pub name: Option<String>,
    pub seed: usize,
    pub path: Vec<usize>,
    pub arrows: Vec<(usize, usize)>,
    #[serde(default)]
    pub printed_as_duplicate_of: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathEntry {
    pub seed: usize,
    pub path: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledEdge {
    pub source: usize,
    pub direction: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Landscape {
    pub version: u32,
    pub description: String,
    pub n: usize,
    pub unfrozen: Vec<usize>,
    pub quivers: Vec<QuiverEntry>,
    pub alternate_quivers: Vec<QuiverEntry>,
    pub paths: Vec<PathEntry>,
    pub edges: Vec<LabeledEdge>,
}

impl Landscape {
    pub fn path_to(&self, seed: usize) -> Option<&[usize]> {
        self.paths.iter().find(|p| p.seed == seed).map(|p| p.path.as_slice())
    }

    pub fn seed_from_quiver(&self, q: &QuiverEntry) -> Result<Seed> {
        Seed::from_quiver(self.n, self.unfrozen.clone(), &q.arrows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuFormula {
    pub seed: usize,
    pub direction: usize,
    pub text: String,
    pub plus: Vec<Option<i64>>,
    pub minus: Vec<Option<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuFormulas {
    pub version: u32,
    pub description: String,
    pub formulas: Vec<MuFormula>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogMap {
    pub source: String,
    pub target: String,
    /// Signed 1-based indices: `g'_j = sign(images[j]) · g_{|images[j]|}`.
    pub images: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub version: u32,
    pub description: String,
    pub maps: Vec<CatalogMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Involutions {
    pub version: u32,
    pub description: String,
    pub iota: Vec<(usize, usize)>,
    pub iota_prime: Vec<(usize, usize)>,
    pub orbit_count: usize,
}

impl Involutions {
    fn permutation(pairs: &[(usize, usize)], size: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..size).collect();
        for &(a, b) in pairs {
            p[a] = b;
            p[b] = a;
        }
        p
    }

    pub fn iota_permutation(&self, size: usize) -> Vec<usize> {
        Self::permutation(&self.iota, size)
    }

    pub fn iota_prime_permutation(&self, size: usize) -> Vec<usize> {
        Self::permutation(&self.iota_prime, size)
    }
}

#[derive(Clone, Debug)]
pub struct GoldenData {
    pub base: NormalMatrix,
    /// The matrices at seeds `t1..t6`, in order.
    pub cases: Vec<NormalMatrix>,
    /// String-polytope models keyed by seed label (7, 9, 11).
    pub gp: BTreeMap<usize, NormalMatrix>,
    pub sl3: Sl3Data,
    pub table1: Table1,
    pub table2: Table2,
    pub table3: Table3,
    pub figure1: Figure1,
    pub figure4: Figure4,
    pub landscape: Landscape,
    pub mu_formulas: MuFormulas,
    pub catalog: Catalog,
    pub involutions: Involutions,
}

trait Versioned {
    fn version(&self) -> u32;
}

macro_rules! versioned {
    ($($t:ty),*) => {
        $(impl Versioned for $t {
            fn version(&self) -> u32 {
                self.version
            }
        })*
    };
}

versioned!(NormalMatrix, Sl3Data, Table1, Table2, Table3, Figure1, Figure4, Landscape, MuFormulas, Catalog, Involutions);

impl GoldenData {
    /// Embedded data, or the files under `$CP_GOLDEN_DIR` when it is set.
    pub fn load() -> Result<Self> {
        match std::env::var_os(GOLDEN_DIR_ENV) {
            Some(dir) => Self::from_dir(Path::new(&dir)),
            None => Self::embedded(),
        }
    }

    pub fn embedded() -> Result<Self> {
        Self::build(|name| {
            EMBEDDED
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, text)| text.to_string())
                .ok_or_else(|| Error::Golden(format!("{name} is not embedded")))
        })
    }

    pub fn from_dir(dir: &Path) -> Result<Self> {
        Self::build(|name| {
            std::fs::read_to_string(dir.join(name))
                .map_err(|e| Error::Golden(format!("cannot read {}: {e}", dir.join(name).display())))
        })
    }

    pub fn file_names() -> impl Iterator<Item = &'static str> {
        EMBEDDED.iter().map(|(n, _)| *n)
    }

    fn build(read: impl Fn(&str) -> Result<String>) -> Result<Self> {
        fn parse<T: DeserializeOwned + Versioned>(name: &str, text: &str) -> Result<T> {
            let value: T =
                serde_json::from_str(text).map_err(|e| Error::Golden(format!("{name}: {e}")))?;
            if value.version() != VERSION {
                return Err(Error::Golden(format!(
                    "{name}: unsupported version {}",
                    value.version()
                )));
            }
            Ok(value)
        }
        let get = |name: &str| -> Result<String> { read(name) };
        let cases = (1..=6)
            .map(|i| {
                let name = format!("case{i}.json");
                parse::<NormalMatrix>(&name, &get(&name)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let gp = [7usize, 9, 11]
            .into_iter()
            .map(|t| {
                let name = format!("gp_t{t}.json");
                Ok((t, parse::<NormalMatrix>(&name, &get(&name)?)?))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(GoldenData {
            base: parse("eq2_2.json", &get("eq2_2.json")?)?,
            cases,
            gp,
            sl3: parse("sl3.json", &get("sl3.json")?)?,
            table1: parse("table1.json", &get("table1.json")?)?,
            table2: parse("table2.json", &get("table2.json")?)?,
            table3: parse("table3.json", &get("table3.json")?)?,
            figure1: parse("figure1_edges.json", &get("figure1_edges.json")?)?,
            figure4: parse("figure4_edges.json", &get("figure4_edges.json")?)?,
            landscape: parse("landscape.json", &get("landscape.json")?)?,
            mu_formulas: parse("mu_formulas.json", &get("mu_formulas.json")?)?,
            catalog: parse("catalog.json", &get("catalog.json")?)?,
            involutions: parse("involutions.json", &get("involutions.json")?)?,
        })
    }

    /// The matrix at seed `t_k` for `k` in `1..=6`.
    pub fn case(&self, k: usize) -> Option<&NormalMatrix> {
        k.checked_sub(1).and_then(|i| self.cases.get(i))
    }

    pub fn class_of(&self, seed: usize) -> Option<&ClassRow> {
        self.table2.classes.iter().find(|c| c.seeds.contains(&seed))
    }
}

/// Column-level difference between two multisets of integer columns:
/// `(missing, unexpected)` relative to `expected`.
pub fn column_diff(expected: &[Vec<i64>], found: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut missing = Vec::new();
    let mut pool: Vec<Option<&Vec<i64>>> = found.iter().map(Some).collect();
    for e in expected {
        match pool.iter_mut().find(|c| c.is_some_and(|c| c == e)) {
            Some(slot) => *slot = None,
            None => missing.push(e.clone()),
        }
    }
    let unexpected = pool.into_iter().flatten().cloned().collect();
    (missing, unexpected)
}
