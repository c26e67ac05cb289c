//! Bounded rational polytopes with synchronized H- and V-representations.
//!
//! Facets are always stored canonically: the normal is a primitive integer
//! vector and the offset is scaled along with it. Facets and vertices are
//! kept in lexicographic order, so two polytopes describing the same set
//! compare equal.

mod dd;
mod faces;
mod iso;
mod lattice;

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{apply_affine, AffineMap, RatMatrix, RatVector};
use crate::rational::{primitive_integer_vector, Rational};

pub use dd::{extreme_rays, ConeError};
pub use faces::{f_vector, face_lattice, vertex_degree_histogram, FVector, FaceLattice};
pub use iso::{for_each_facet_isomorphism, is_combinatorially_isomorphic, IncidenceIsomorphism};
pub use lattice::{count_lattice_points, interior_lattice_points, is_lattice_polytope, is_reflexive};

/// `{x : ⟨x, normal⟩ ≥ offset}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HalfSpace {
    pub normal: RatVector,
    pub offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: RatVector, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::InvalidHalfSpace("zero normal".into()));
        }
        Ok(HalfSpace { normal, offset })
    }

    pub fn from_i64(normal: &[i64], offset: i64) -> Result<Self> {
        Self::new(RatVector::from_i64s(normal), Rational::from(offset))
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// Rescales so that the normal is a primitive integer vector.
    pub fn canonical(&self) -> HalfSpace {
        let prim = primitive_integer_vector(self.normal.entries());
        // any nonzero coordinate gives the scale factor
        let i = (0..self.dim())
            .find(|&i| !self.normal[i].is_zero())
            .expect("nonzero normal");
        let factor = Rational::from(&prim[i]) / &self.normal[i];
        HalfSpace {
            normal: RatVector::new(prim.into_iter().map(Rational::from).collect()),
            offset: &self.offset * &factor,
        }
    }

    pub fn value(&self, x: &RatVector) -> Rational {
        x.dot(&self.normal) - &self.offset
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        !self.value(x).is_negative()
    }

    pub fn is_tight(&self, x: &RatVector) -> bool {
        self.value(x).is_zero()
    }

    /// True when the normal has coprime integer entries.
    pub fn is_primitive_integral(&self) -> bool {
        self.normal.is_integral() && self.canonical().normal == self.normal
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polytope {
    dim: usize,
    facets: Vec<HalfSpace>,
    vertices: Vec<RatVector>,
    /// For each vertex, the facets containing it.
    vertex_facets: Vec<FixedBitSet>,
    /// For each facet, the vertices on it.
    facet_vertices: Vec<FixedBitSet>,
}

/// Dimension of the affine hull of `points` (`None` for the empty set).
pub fn affine_dimension(points: &[RatVector]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    if rest.is_empty() {
        return Some(0);
    }
    let diffs: Vec<RatVector> = rest.iter().map(|p| p.sub(first)).collect();
    Some(RatMatrix::from_rows(&diffs).expect("uniform dimension").rank())
}

fn check_dims<'a>(dim: usize, vs: impl IntoIterator<Item = &'a RatVector>, context: &'static str) -> Result<()> {
    for v in vs {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                context,
                expected: dim,
                found: v.dim(),
            });
        }
    }
    Ok(())
}

/// All vertices of `{x : ⟨x, n_i⟩ ≥ c_i}`, without requiring full dimension.
///
/// Errors with [`Error::Empty`] or [`Error::Unbounded`].
pub fn enumerate_vertices(halfspaces: &[HalfSpace], dim: usize) -> Result<Vec<RatVector>> {
    check_dims(dim, halfspaces.iter().map(|h| &h.normal), "halfspace normal")?;
    let normals: Vec<RatVector> = halfspaces.iter().map(|h| h.normal.clone()).collect();
    let basis = dd::independent_rows(&normals, dim);
    if basis.len() < dim {
        // A lineality space exists: either empty or unbounded. Decide by
        // restricting to the span of the normals.
        if dim == 0 || basis.is_empty() {
            return if halfspaces.iter().all(|h| !h.offset.is_positive()) {
                Err(Error::Unbounded)
            } else {
                Err(Error::Empty)
            };
        }
        let span: Vec<&RatVector> = basis.iter().map(|&i| &normals[i]).collect();
        let reduced: Vec<HalfSpace> = halfspaces
            .iter()
            .map(|h| HalfSpace {
                normal: RatVector::new(span.iter().map(|w| w.dot(&h.normal)).collect()),
                offset: h.offset.clone(),
            })
            .collect();
        return match enumerate_vertices(&reduced, span.len()) {
            Ok(_) | Err(Error::Unbounded) => Err(Error::Unbounded),
            Err(e) => Err(e),
        };
    }

    let mut cone: Vec<RatVector> = halfspaces
        .iter()
        .map(|h| {
            let mut row = h.normal.entries().to_vec();
            row.push(-&h.offset);
            RatVector::new(row)
        })
        .collect();
    let mut t = vec![Rational::zero(); dim];
    t.push(Rational::one());
    cone.push(RatVector::new(t));

    let rays = dd::extreme_rays(&cone, dim + 1).expect("normals have full rank");
    let mut vertices = BTreeSet::new();
    for ray in rays {
        let t = &ray[dim];
        if t.is_zero() {
            return Err(Error::Unbounded);
        }
        let inv = t.recip();
        vertices.insert(RatVector::new(
            ray.entries()[..dim].iter().map(|x| x * &inv).collect(),
        ));
    }
    if vertices.is_empty() {
        return Err(Error::Empty);
    }
    Ok(vertices.into_iter().collect())
}

impl Polytope {
    /// Builds the polytope from facets and vertices that are already known to
    /// describe the same set; canonicalizes, sorts and fills the incidences.
    fn assemble(dim: usize, facets: Vec<HalfSpace>, vertices: Vec<RatVector>) -> Result<Self> {
        let facets: Vec<HalfSpace> = facets
            .iter()
            .map(HalfSpace::canonical)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let vertices: Vec<RatVector> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();

        let mut vertex_facets = vec![FixedBitSet::with_capacity(facets.len()); vertices.len()];
        let mut facet_vertices = vec![FixedBitSet::with_capacity(vertices.len()); facets.len()];
        for (vi, v) in vertices.iter().enumerate() {
            for (fi, f) in facets.iter().enumerate() {
                let val = f.value(v);
                if val.is_negative() {
                    return Err(Error::Inconsistent(format!(
                        "vertex {v:?} violates facet {f:?}"
                    )));
                }
                if val.is_zero() {
                    vertex_facets[vi].insert(fi);
                    facet_vertices[fi].insert(vi);
                }
            }
        }
        Ok(Polytope {
            dim,
            facets,
            vertices,
            vertex_facets,
            facet_vertices,
        })
    }

    /// Polytope from an inequality description. Redundant inequalities are
    /// dropped; lower-dimensional sets are rejected.
    pub fn from_hrep(halfspaces: &[HalfSpace]) -> Result<Self> {
        let dim = halfspaces.first().map(HalfSpace::dim).ok_or(Error::Unbounded)?;
        let vertices = enumerate_vertices(halfspaces, dim)?;
        let adim = affine_dimension(&vertices).unwrap_or(0);
        if adim < dim {
            return Err(Error::Degenerate { dim: adim, ambient: dim });
        }
        let facets: Vec<HalfSpace> = halfspaces
            .iter()
            .filter(|h| {
                let tight: Vec<RatVector> =
                    vertices.iter().filter(|v| h.is_tight(v)).cloned().collect();
                affine_dimension(&tight) == Some(dim - 1)
            })
            .cloned()
            .collect();
        Self::assemble(dim, facets, vertices)
    }

    /// Convex hull of a finite point set. Points that are not vertices are
    /// discarded.
    pub fn from_vrep(points: &[RatVector]) -> Result<Self> {
        let dim = points.first().map(RatVector::dim).ok_or(Error::Empty)?;
        check_dims(dim, points, "point")?;
        let points: Vec<RatVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let cone: Vec<RatVector> = points
            .iter()
            .map(|p| {
                let mut row = p.entries().to_vec();
                row.push(Rational::one());
                RatVector::new(row)
            })
            .collect();
        let rays = match dd::extreme_rays(&cone, dim + 1) {
            Ok(r) => r,
            Err(ConeError::NotPointed { rank }) => {
                return Err(Error::Degenerate {
                    dim: rank.saturating_sub(1),
                    ambient: dim,
                })
            }
        };
        let facets: Vec<HalfSpace> = rays
            .into_iter()
            .map(|r| {
                let mut e = r.into_entries();
                let beta = e.pop().expect("homogenizing coordinate");
                HalfSpace {
                    normal: RatVector::new(e),
                    offset: -beta,
                }
            })
            .collect();
        let vertices: Vec<RatVector> = points
            .into_iter()
            .filter(|p| {
                let tight: Vec<RatVector> = facets
                    .iter()
                    .filter(|f| f.is_tight(p))
                    .map(|f| f.normal.clone())
                    .collect();
                !tight.is_empty() && RatMatrix::from_rows(&tight).expect("uniform").rank() == dim
            })
            .collect();
        Self::assemble(dim, facets, vertices)
    }

    /// Polytope `{x : ⟨x, column_j⟩ ≥ offset}` for every column of an
    /// integer matrix, as in the usual "columns are facet normals" layout.
    pub fn from_normal_columns(rows: &[Vec<i64>], offset: i64) -> Result<Self> {
        let m = RatMatrix::from_i64_rows(rows)?;
        let hs: Vec<HalfSpace> = m
            .columns()
            .into_iter()
            .map(|c| HalfSpace::new(c, Rational::from(offset)))
            .collect::<Result<_>>()?;
        Self::from_hrep(&hs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn vertex_facets(&self) -> &[FixedBitSet] {
        &self.vertex_facets
    }

    pub fn facet_vertices(&self) -> &[FixedBitSet] {
        &self.facet_vertices
    }

    /// `incidence(v, f)` iff vertex `v` lies on facet `f`.
    pub fn incidence(&self, v: usize, f: usize) -> bool {
        self.vertex_facets[v].contains(f)
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        self.facets.iter().all(|f| f.contains(x))
    }

    /// Facet normals as the columns of a `dim × #facets` matrix, in
    /// canonical (lexicographic) facet order.
    pub fn normal_matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(
            &self.facets.iter().map(|f| f.normal.clone()).collect::<Vec<_>>(),
        )
        .expect("uniform normals")
    }

    /// Sorted primitive integer facet normals.
    pub fn normal_multiset(&self) -> Vec<Vec<i64>> {
        let mut cols: Vec<Vec<i64>> = self
            .facets
            .iter()
            .map(|f| f.normal.to_i64s().expect("primitive normals fit in i64"))
            .collect();
        cols.sort();
        cols
    }

    pub fn translate(&self, v: &RatVector) -> Result<Self> {
        check_dims(self.dim, [v], "translation")?;
        let facets = self
            .facets
            .iter()
            .map(|f| HalfSpace {
                normal: f.normal.clone(),
                offset: &f.offset + &f.normal.dot(v),
            })
            .collect();
        let vertices = self.vertices.iter().map(|x| x.add(v)).collect();
        Self::assemble(self.dim, facets, vertices)
    }

    /// Image under an affine map: vertices are mapped and the hull rebuilt.
    pub fn affine_image(&self, f: &AffineMap) -> Result<Self> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "affine image",
                expected: self.dim,
                found: f.dim(),
            });
        }
        let pts: Vec<RatVector> = self
            .vertices
            .iter()
            .map(|v| apply_affine(f, v))
            .collect::<Result<_>>()?;
        Self::from_vrep(&pts)
    }

    /// Relabels coordinates: the image of `x` has `j`-th coordinate
    /// `x[perm[j]]` (0-based).
    pub fn permute_coordinates(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "coordinate permutation",
                expected: self.dim,
                found: perm.len(),
            });
        }
        let p = |v: &RatVector| RatVector::new(perm.iter().map(|&i| v[i].clone()).collect());
        let facets = self
            .facets
            .iter()
            .map(|f| HalfSpace {
                normal: p(&f.normal),
                offset: f.offset.clone(),
            })
            .collect();
        let vertices = self.vertices.iter().map(p).collect();
        Self::assemble(self.dim, facets, vertices)
    }

    /// Translates the unique interior lattice point to the origin.
    pub fn normalized(&self) -> Result<Self> {
        let pts = interior_lattice_points(self)?;
        if pts.len() != 1 {
            return Err(Error::InteriorPoint(pts.len()));
        }
        self.translate(&pts[0].neg())
    }

    pub fn to_json(&self) -> Result<PolytopeJson> {
        Ok(PolytopeJson {
            dim: self.dim,
            hrep: HrepJson {
                normals: self
                    .facets
                    .iter()
                    .map(|f| f.normal.to_i64s().ok_or(Error::Overflow))
                    .collect::<Result<_>>()?,
                offsets: self.facets.iter().map(|f| f.offset.clone()).collect(),
            },
            vrep: self.vertices.iter().map(|v| v.entries().to_vec()).collect(),
        })
    }

    /// Rebuilds from the H-representation; a nonempty V-representation must
    /// agree with the recomputed vertices.
    pub fn from_json(json: &PolytopeJson) -> Result<Self> {
        if json.hrep.normals.len() != json.hrep.offsets.len() {
            return Err(Error::DimensionMismatch {
                context: "polytope json offsets",
                expected: json.hrep.normals.len(),
                found: json.hrep.offsets.len(),
            });
        }
        let hs: Vec<HalfSpace> = json
            .hrep
            .normals
            .iter()
            .zip(&json.hrep.offsets)
            .map(|(n, c)| HalfSpace::new(RatVector::from_i64s(n), c.clone()))
            .collect::<Result<_>>()?;
        let p = Self::from_hrep(&hs)?;
        if p.dim != json.dim {
            return Err(Error::DimensionMismatch {
                context: "polytope json dim",
                expected: json.dim,
                found: p.dim,
            });
        }
        if !json.vrep.is_empty() {
            let given: BTreeSet<RatVector> =
                json.vrep.iter().map(|v| RatVector::new(v.clone())).collect();
            if given.iter().cloned().collect::<Vec<_>>() != p.vertices {
                return Err(Error::Inconsistent("vrep does not match the hrep".into()));
            }
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HrepJson {
    pub normals: Vec<Vec<i64>>,
    pub offsets: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub hrep: HrepJson,
    pub vrep: Vec<Vec<Rational>>,
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn cube(dim: usize, lo: i64, hi: i64) -> Polytope {
        let mut hs = Vec::new();
        for i in 0..dim {
            let mut n = vec![0; dim];
            n[i] = 1;
            hs.push(HalfSpace::from_i64(&n, lo).unwrap());
            n[i] = -1;
            hs.push(HalfSpace::from_i64(&n, -hi).unwrap());
        }
        Polytope::from_hrep(&hs).unwrap()
    }

    pub(crate) fn simplex(dim: usize) -> Polytope {
        let mut pts = vec![RatVector::zeros(dim)];
        pts.extend((0..dim).map(|i| RatVector::unit(dim, i)));
        Polytope::from_vrep(&pts).unwrap()
    }

    #[test]
    fn cube_from_hrep() {
        let c = cube(6, -1, 1);
        assert_eq!(c.num_vertices(), 64);
        assert_eq!(c.num_facets(), 12);
        assert!(c.vertices().iter().all(|v| v.iter().all(|x| x.abs() == Rational::one())));
    }

    #[test]
    fn simplex_from_hrep() {
        let mut hs: Vec<HalfSpace> = (0..6)
            .map(|i| HalfSpace::new(RatVector::unit(6, i), Rational::zero()).unwrap())
            .collect();
        hs.push(HalfSpace::from_i64(&[-1; 6], -1).unwrap());
        let s = Polytope::from_hrep(&hs).unwrap();
        assert_eq!(s.num_vertices(), 7);
        assert_eq!(s.num_facets(), 7);
    }

    #[test]
    fn vrep_facets() {
        let c = cube(6, -1, 1);
        let again = Polytope::from_vrep(c.vertices()).unwrap();
        assert_eq!(again.num_facets(), 12);
        assert_eq!(again, c);
        assert_eq!(simplex(6).num_facets(), 7);
    }

    #[test]
    fn vrep_discards_interior_points() {
        let mut pts = cube(3, 0, 2).vertices().to_vec();
        pts.push(RatVector::from_i64s(&[1, 1, 1]));
        pts.push(RatVector::from_i64s(&[1, 0, 0]));
        let p = Polytope::from_vrep(&pts).unwrap();
        assert_eq!(p.num_vertices(), 8);
        assert_eq!(p.num_facets(), 6);
    }

    #[test]
    fn redundant_halfspaces_dropped() {
        let mut hs: Vec<HalfSpace> = cube(2, -1, 1).facets().to_vec();
        hs.push(HalfSpace::from_i64(&[1, 1], -5).unwrap());
        hs.push(HalfSpace::from_i64(&[2, 0], -2).unwrap());
        let p = Polytope::from_hrep(&hs).unwrap();
        assert_eq!(p.num_facets(), 4);
    }

    #[test]
    fn error_cases() {
        let half_line = [HalfSpace::from_i64(&[1, 0], 0).unwrap(),
            HalfSpace::from_i64(&[0, 1], 0).unwrap()];
        assert_eq!(Polytope::from_hrep(&half_line), Err(Error::Unbounded));

        let strip = [HalfSpace::from_i64(&[1, 0], 0).unwrap(),
            HalfSpace::from_i64(&[-1, 0], -1).unwrap()];
        assert_eq!(Polytope::from_hrep(&strip), Err(Error::Unbounded));

        let infeasible_strip = [HalfSpace::from_i64(&[1, 0], 1).unwrap(),
            HalfSpace::from_i64(&[-1, 0], 0).unwrap()];
        assert_eq!(Polytope::from_hrep(&infeasible_strip), Err(Error::Empty));

        let empty = [HalfSpace::from_i64(&[1, 0], 1).unwrap(),
            HalfSpace::from_i64(&[-1, 0], 0).unwrap(),
            HalfSpace::from_i64(&[0, 1], 0).unwrap(),
            HalfSpace::from_i64(&[0, -1], -1).unwrap()];
        assert_eq!(Polytope::from_hrep(&empty), Err(Error::Empty));

        let segment = [HalfSpace::from_i64(&[1, 0], 0).unwrap(),
            HalfSpace::from_i64(&[-1, 0], -1).unwrap(),
            HalfSpace::from_i64(&[0, 1], 0).unwrap(),
            HalfSpace::from_i64(&[0, -1], 0).unwrap()];
        assert_eq!(
            Polytope::from_hrep(&segment),
            Err(Error::Degenerate { dim: 1, ambient: 2 })
        );

        let collinear = [RatVector::from_i64s(&[0, 0]), RatVector::from_i64s(&[1, 1]),
            RatVector::from_i64s(&[2, 2])];
        assert!(matches!(Polytope::from_vrep(&collinear), Err(Error::Degenerate { .. })));
        assert!(HalfSpace::from_i64(&[0, 0], 1).is_err());
    }

    #[test]
    fn translation() {
        let c = cube(6, 0, 2);
        assert_eq!(c.translate(&RatVector::zeros(6)).unwrap(), c);
        let moved = c.translate(&RatVector::from_i64s(&[-1; 6])).unwrap();
        assert_eq!(moved, cube(6, -1, 1));
    }

    #[test]
    fn canonical_halfspace() {
        let h = HalfSpace::new(
            RatVector::new(vec![Rational::new(1, 2), Rational::from(-1)]),
            Rational::new(-1, 4),
        )
        .unwrap();
        let c = h.canonical();
        assert_eq!(c.normal, RatVector::from_i64s(&[1, -2]));
        assert_eq!(c.offset, Rational::new(-1, 2));
        assert!(c.is_primitive_integral());
        assert!(!HalfSpace::from_i64(&[2, 4], 0).unwrap().is_primitive_integral());
    }

    #[test]
    fn json_round_trip() {
        let p = simplex(3);
        let j = p.to_json().unwrap();
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"offsets\":[\""));
        let back: PolytopeJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Polytope::from_json(&back).unwrap(), p);
    }

    #[test]
    fn coordinate_permutation() {
        let p = Polytope::from_vrep(&[
            RatVector::from_i64s(&[0, 0]),
            RatVector::from_i64s(&[2, 0]),
            RatVector::from_i64s(&[0, 1]),
        ])
        .unwrap();
        let q = p.permute_coordinates(&[1, 0]).unwrap();
        assert!(q.vertices().contains(&RatVector::from_i64s(&[0, 2])));
        assert!(q.vertices().contains(&RatVector::from_i64s(&[1, 0])));
    }
}
