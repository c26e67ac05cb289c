//! Unimodular equivalence of lattice polytopes.
//!
//! A map `A ∈ GL_n(ℤ)` carries `P` to `Q = {g : A g ∈ P}`. Facets transform
//! as `⟨A g, n⟩ ≥ c ⟺ ⟨g, Aᵀ n⟩ ≥ c`, so `Q` has normals `Aᵀ n` with the same
//! offsets.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{mat_det, mat_inverse, mat_mul, AffineMap, RatMatrix, RatVector};
use crate::polytope::{
    count_lattice_points, f_vector, for_each_facet_isomorphism, vertex_degree_histogram, FVector, HalfSpace, Polytope,
};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularMap {
    matrix: RatMatrix,
}

impl UnimodularMap {
    pub fn new(matrix: RatMatrix) -> Result<Self> {
        if !matrix.is_square() || !matrix.is_integral() {
            return Err(Error::NotUnimodular("matrix is not square and integral".into()));
        }
        let det = mat_det(&matrix)?;
        if det.abs() != Rational::one() {
            return Err(Error::NotUnimodular(format!("determinant {det}")));
        }
        Ok(UnimodularMap { matrix })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(RatMatrix::from_i64_rows(rows)?)
    }

    /// The signed permutation `g ↦ (s_1 g_{p_1}, …, s_n g_{p_n})`, written as
    /// signed 1-based indices `s_j p_j`.
    pub fn from_images(images: &[i64]) -> Result<Self> {
        let n = images.len();
        let mut rows = vec![vec![0i64; n]; n];
        for (j, &img) in images.iter().enumerate() {
            let src = img.unsigned_abs() as usize;
            if src == 0 || src > n {
                return Err(Error::NotUnimodular(format!("image index {img} out of range")));
            }
            rows[j][src - 1] = img.signum();
        }
        Self::from_i64_rows(&rows)
    }

    pub fn identity(n: usize) -> Self {
        UnimodularMap {
            matrix: RatMatrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        self.matrix.to_i64_rows().expect("integral")
    }

    pub fn determinant(&self) -> i64 {
        mat_det(&self.matrix).ok().and_then(|d| d.to_i64()).expect("±1")
    }

    pub fn inverse(&self) -> Self {
        UnimodularMap {
            matrix: mat_inverse(&self.matrix).expect("unimodular"),
        }
    }

    /// Applying `self` and then `next` to a polytope is the map with matrix
    /// `self · next`.
    pub fn then(&self, next: &UnimodularMap) -> Result<Self> {
        Ok(UnimodularMap {
            matrix: mat_mul(&self.matrix, &next.matrix)?,
        })
    }

    pub fn is_signed_permutation(&self) -> bool {
        (0..self.dim()).all(|i| {
            let row = self.matrix.row(i);
            row.iter().filter(|x| !x.is_zero()).count() == 1 && row.iter().all(|x| x.is_zero() || x.abs() == Rational::one())
        })
    }

    /// Facet normal of the image for a facet normal of the source: `Aᵀ n`.
    pub fn transform_normal(&self, normal: &RatVector) -> Result<RatVector> {
        self.matrix.transpose().mul_vec(normal)
    }
}

/// `{g : A g ∈ P}`.
pub fn apply_map_to_polytope(p: &Polytope, map: &UnimodularMap) -> Result<Polytope> {
    p.affine_image(&AffineMap::linear(map.inverse().matrix)?)
}

/// Whether `map` carries `source` exactly onto `target`, checked on the
/// vertices: `A v` must run over the vertices of `source` as `v` runs over
/// those of `target`.
pub fn verify_unimodular_map(source: &Polytope, target: &Polytope, map: &UnimodularMap) -> Result<bool> {
    if source.dim() != map.dim() || target.dim() != map.dim() || source.num_vertices() != target.num_vertices() {
        return Ok(false);
    }
    let mut imaged: Vec<RatVector> = target
        .vertices()
        .iter()
        .map(|v| map.matrix.mul_vec(v))
        .collect::<Result<_>>()?;
    imaged.sort();
    let mut expected = source.vertices().to_vec();
    expected.sort();
    Ok(imaged == expected)
}

fn facet_keys(p: &Polytope) -> Vec<(Vec<i64>, Rational)> {
    let mut keys: Vec<(Vec<i64>, Rational)> = p
        .facets()
        .iter()
        .map(|f| (f.normal.to_i64s().expect("primitive normals fit in i64"), f.offset.clone()))
        .collect();
    keys.sort();
    keys
}

/// Searches the `2ⁿ n!` signed permutations for one carrying `source` onto
/// `target`, comparing facet normals and offsets.
pub fn search_signed_permutation_map(source: &Polytope, target: &Polytope) -> Result<Option<UnimodularMap>> {
    let n = source.dim();
    if target.dim() != n || source.num_facets() != target.num_facets() {
        return Ok(None);
    }
    let src: Vec<(Vec<i64>, Rational)> = facet_keys(source);
    let want = facet_keys(target);
    for perm in (0..n).permutations(n) {
        for signs in 0u32..(1 << n) {
            let sign = |j: usize| if signs >> j & 1 == 1 { -1 } else { 1 };
            // A g has j-th entry sign(j) g_{perm[j]}; (Aᵀ m)_{perm[j]} = sign(j) m_j.
            let mut got: Vec<(Vec<i64>, Rational)> = src
                .iter()
                .map(|(m, c)| {
                    let mut out = vec![0i64; n];
                    for j in 0..n {
                        out[perm[j]] = sign(j) * m[j];
                    }
                    (out, c.clone())
                })
                .collect();
            got.sort();
            if got == want {
                let images: Vec<i64> = (0..n).map(|j| sign(j) * (perm[j] as i64 + 1)).collect();
                return Ok(Some(UnimodularMap::from_images(&images)?));
            }
        }
    }
    Ok(None)
}

/// Searches all unimodular maps fixing the origin that carry `source` onto
/// `target`.
///
/// Every combinatorial isomorphism is tried; it determines the linear map
/// from a basis of facet normals. When both polytopes have the origin as
/// their unique interior lattice point, every lattice equivalence fixes it,
/// so `None` proves inequivalence.
pub fn search_unimodular_map(source: &Polytope, target: &Polytope) -> Result<Option<UnimodularMap>> {
    let n = source.dim();
    if target.dim() != n {
        return Ok(None);
    }
    let basis = independent_facets(source);
    if basis.len() != n {
        return Err(Error::Degenerate {
            dim: basis.len(),
            ambient: n,
        });
    }
    let b = RatMatrix::from_columns(&basis.iter().map(|&f| source.facets()[f].normal.clone()).collect::<Vec<_>>())?;
    let b_inv = mat_inverse(&b)?;
    let want = facet_keys(target);
    let mut found = None;
    let mut failure = None;
    for_each_facet_isomorphism(source, target, |facet_map| {
        let images: Vec<RatVector> = basis.iter().map(|&f| target.facets()[facet_map[f]].normal.clone()).collect();
        let attempt = (|| -> Result<Option<UnimodularMap>> {
            // Aᵀ B = B'.
            let a_t = mat_mul(&RatMatrix::from_columns(&images)?, &b_inv)?;
            let Ok(map) = UnimodularMap::new(a_t.transpose()) else {
                return Ok(None);
            };
            let mut got = source
                .facets()
                .iter()
                .map(|f| {
                    let m = map.transform_normal(&f.normal)?;
                    Ok((m.to_i64s().expect("integral"), f.offset.clone()))
                })
                .collect::<Result<Vec<_>>>()?;
            got.sort();
            Ok((got == want).then_some(map))
        })();
        match attempt {
            Ok(Some(map)) => {
                found = Some(map);
                true
            }
            Ok(None) => false,
            Err(e) => {
                failure = Some(e);
                true
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// Indices of facets whose normals form a basis, chosen greedily.
fn independent_facets(p: &Polytope) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for f in 0..p.num_facets() {
        let mut rows: Vec<RatVector> = chosen.iter().map(|&g| p.facets()[g].normal.clone()).collect();
        rows.push(p.facets()[f].normal.clone());
        if RatMatrix::from_rows(&rows).map(|m| m.rank()).unwrap_or(0) == rows.len() {
            chosen.push(f);
            if chosen.len() == p.dim() {
                break;
            }
        }
    }
    chosen
}

/// All unimodular self-maps of `p` fixing the origin.
pub fn lattice_automorphisms(p: &Polytope) -> Result<Vec<UnimodularMap>> {
    let basis = independent_facets(p);
    let b = RatMatrix::from_columns(&basis.iter().map(|&f| p.facets()[f].normal.clone()).collect::<Vec<_>>())?;
    let b_inv = mat_inverse(&b)?;
    let keys = facet_keys(p);
    let mut out = Vec::new();
    for_each_facet_isomorphism(p, p, |facet_map| {
        let images: Vec<RatVector> = basis.iter().map(|&f| p.facets()[facet_map[f]].normal.clone()).collect();
        let a_t = RatMatrix::from_columns(&images).and_then(|m| mat_mul(&m, &b_inv));
        if let Ok(map) = a_t.and_then(|m| UnimodularMap::new(m.transpose())) {
            let mut got: Vec<_> = p
                .facets()
                .iter()
                .filter_map(|f| {
                    let m = map.transform_normal(&f.normal).ok()?.to_i64s()?;
                    Some((m, f.offset.clone()))
                })
                .collect();
            got.sort();
            if got == keys {
                out.push(map);
            }
        }
        false
    });
    Ok(out)
}

/// Invariants of a lattice polytope under unimodular maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub f_vector: FVector,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub facet_count: usize,
    pub vertex_count: usize,
    /// `#(kP ∩ ℤⁿ)` for `k = 1, 2`.
    pub lattice_points: Vec<u64>,
}

pub fn fingerprint(p: &Polytope) -> Result<Fingerprint> {
    Ok(Fingerprint {
        f_vector: f_vector(p),
        degree_histogram: vertex_degree_histogram(p),
        facet_count: p.num_facets(),
        vertex_count: p.num_vertices(),
        lattice_points: vec![count_lattice_points(p, 1)?, count_lattice_points(p, 2)?],
    })
}

/// A map carrying polytope `from` onto polytope `to` (indices into the
/// classified list).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub from: usize,
    pub to: usize,
    pub matrix: Vec<Vec<i64>>,
}

impl Witness {
    pub fn map(&self) -> Result<UnimodularMap> {
        UnimodularMap::from_i64_rows(&self.matrix)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// Classes of indices, each sorted, ordered by their least element.
    pub classes: Vec<Vec<usize>>,
    /// A witness from each class's least element to every other member.
    pub witnesses: Vec<Witness>,
    pub fingerprints: Vec<Fingerprint>,
}

impl Classification {
    pub fn class_of(&self, i: usize) -> usize {
        self.classes.iter().position(|c| c.contains(&i)).expect("every index is classified")
    }
}

/// Partitions `polytopes` into unimodular equivalence classes.
///
/// Polytopes with different fingerprints are inequivalent. Within equal
/// fingerprints a signed permutation is tried first, then the exhaustive
/// search of [`search_unimodular_map`]; every witness is verified on the
/// vertices.
pub fn classify(polytopes: &[Polytope]) -> Result<Classification> {
    let fingerprints = polytopes.iter().map(fingerprint).collect::<Result<Vec<_>>>()?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut witnesses = Vec::new();
    for i in 0..polytopes.len() {
        let mut placed = false;
        for class in classes.iter_mut() {
            let rep = class[0];
            if fingerprints[rep] != fingerprints[i] {
                continue;
            }
            let map = match search_signed_permutation_map(&polytopes[rep], &polytopes[i])? {
                Some(m) => Some(m),
                None => search_unimodular_map(&polytopes[rep], &polytopes[i])?,
            };
            if let Some(map) = map {
                if !verify_unimodular_map(&polytopes[rep], &polytopes[i], &map)? {
                    return Err(Error::Inconsistent(format!("witness from {rep} to {i} fails on vertices")));
                }
                witnesses.push(Witness {
                    from: rep,
                    to: i,
                    matrix: map.to_i64_rows(),
                });
                class.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    Ok(Classification {
        classes,
        witnesses,
        fingerprints,
    })
}

/// `Polytope` facets as a `HalfSpace` list under a map, for callers that
/// need the image without rebuilding vertices.
pub fn transform_facets(p: &Polytope, map: &UnimodularMap) -> Result<Vec<HalfSpace>> {
    p.facets()
        .iter()
        .map(|f| HalfSpace::new(map.transform_normal(&f.normal)?, f.offset.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::tests::cube;

    fn cross_polytope() -> Polytope {
        let pts: Vec<RatVector> = (0..3)
            .flat_map(|i| [RatVector::unit(3, i), RatVector::unit(3, i).neg()])
            .collect();
        Polytope::from_vrep(&pts).unwrap()
    }

    fn skewed_simplex() -> Polytope {
        Polytope::from_vrep(&[
            RatVector::from_i64s(&[1, 0]),
            RatVector::from_i64s(&[0, 1]),
            RatVector::from_i64s(&[-1, -1]),
        ])
        .unwrap()
    }

    #[test]
    fn images_build_signed_permutations() {
        let m = UnimodularMap::from_images(&[-2, 3, 1]).unwrap();
        assert_eq!(m.to_i64_rows(), vec![vec![0, -1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
        assert!(m.is_signed_permutation());
        assert!(UnimodularMap::from_images(&[1, 1]).is_err());
        assert!(UnimodularMap::from_i64_rows(&[vec![2, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn apply_and_verify() {
        let p = skewed_simplex();
        let shear = UnimodularMap::from_i64_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        let q = apply_map_to_polytope(&p, &shear).unwrap();
        assert!(verify_unimodular_map(&p, &q, &shear).unwrap());
        assert!(!verify_unimodular_map(&p, &q, &UnimodularMap::identity(2)).unwrap());
        let found = search_unimodular_map(&p, &q).unwrap().unwrap();
        assert!(verify_unimodular_map(&p, &q, &found).unwrap());
        let hs = transform_facets(&p, &shear).unwrap();
        assert_eq!(Polytope::from_hrep(&hs).unwrap(), q);
    }

    #[test]
    fn signed_permutation_search() {
        let p = skewed_simplex();
        let m = UnimodularMap::from_images(&[-2, -1]).unwrap();
        let q = apply_map_to_polytope(&p, &m).unwrap();
        let found = search_signed_permutation_map(&p, &q).unwrap().unwrap();
        assert!(verify_unimodular_map(&p, &q, &found).unwrap());
        let sheared = apply_map_to_polytope(&p, &UnimodularMap::from_i64_rows(&[vec![1, 2], vec![0, 1]]).unwrap()).unwrap();
        assert!(search_unimodular_map(&p, &sheared).unwrap().is_some());
    }

    #[test]
    fn automorphism_counts() {
        // Hyperoctahedral group of order 48 for both the cube and its dual.
        assert_eq!(lattice_automorphisms(&cube(3, -1, 1)).unwrap().len(), 48);
        assert_eq!(lattice_automorphisms(&cross_polytope()).unwrap().len(), 48);
        // The reflexive triangle has the symmetric group S3 plus nothing else.
        assert_eq!(lattice_automorphisms(&skewed_simplex()).unwrap().len(), 6);
    }

    #[test]
    fn classify_separates() {
        let tri = skewed_simplex();
        let flipped = apply_map_to_polytope(&tri, &UnimodularMap::from_images(&[-1, -2]).unwrap()).unwrap();
        let square = cube(2, -1, 1);
        let c = classify(&[tri.clone(), square.clone(), flipped, tri]).unwrap();
        assert_eq!(c.classes, vec![vec![0, 2, 3], vec![1]]);
        assert_eq!(c.witnesses.len(), 2);
        assert_ne!(c.fingerprints[0], c.fingerprints[1]);
        assert_eq!(c.class_of(2), 0);
    }
}
