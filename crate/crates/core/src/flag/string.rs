//! The string polytope of the reduced word `(1,2,1,3,2,1)` and its linear
//! transport to the coordinates of the initial seed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{mat_inverse, AffineMap, RatMatrix, RatVector};
use crate::polytope::{HalfSpace, Polytope};
use crate::rational::Rational;

/// Dominant weight `Σ λ_i ϖ_i`, by its coefficients on the fundamental
/// weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weight {
    pub lambda: Vec<i64>,
}

impl Weight {
    pub fn new(lambda: Vec<i64>) -> Result<Self> {
        if lambda.iter().any(|&l| l < 0) {
            return Err(Error::OutOfRange(format!("weight {lambda:?} is not dominant")));
        }
        Ok(Weight { lambda })
    }

    /// `2ϖ_1 + ⋯ + 2ϖ_{n−1}`.
    pub fn anticanonical(n: usize) -> Self {
        Weight {
            lambda: vec![2; n - 1],
        }
    }
}

/// The twelve inequalities `⟨a, normal⟩ ≥ offset` cutting out the string
/// polytope of `(1,2,1,3,2,1)` at weight `λ` (rank 3, so `λ` has three
/// entries).
pub fn string_inequalities_i0(weight: &Weight) -> Result<Vec<HalfSpace>> {
    let [l1, l2, l3] = <[i64; 3]>::try_from(weight.lambda.as_slice()).map_err(|_| Error::DimensionMismatch {
        context: "weight for the rank-3 string polytope",
        expected: 3,
        found: weight.lambda.len(),
    })?;
    let rows: [([i64; 6], i64); 12] = [
        ([1, 0, 0, 0, 0, 0], 0),
        ([-1, 1, -2, 0, 1, -2], -l1),
        ([0, 1, -1, 0, 0, 0], 0),
        ([0, -1, 1, 1, -2, 1], -l2),
        ([0, 0, 1, 0, 0, 0], 0),
        ([0, 0, -1, 0, 1, -2], -l1),
        ([0, 0, 0, 1, -1, 0], 0),
        ([0, 0, 0, -1, 1, 0], -l3),
        ([0, 0, 0, 0, 1, -1], 0),
        ([0, 0, 0, 0, -1, 1], -l2),
        ([0, 0, 0, 0, 0, 1], 0),
        ([0, 0, 0, 0, 0, -1], -l1),
    ];
    rows.iter().map(|(n, c)| HalfSpace::from_i64(n, *c)).collect()
}

/// The transport matrix of the reduced word `(1,2,1,3,2,1)`.
pub fn m_matrix_i0() -> RatMatrix {
    RatMatrix::from_i64_rows(&[
        vec![1, 0, 0, 0, 0, 0],
        vec![1, 1, 0, 0, 0, 0],
        vec![0, 1, 1, 0, 0, 0],
        vec![1, 1, 0, 1, 0, 0],
        vec![0, 1, 1, 1, 1, 0],
        vec![0, 0, 0, 1, 1, 1],
    ])
    .expect("constant matrix")
}

/// The linear map carrying string-polytope points to seed coordinates.
///
/// Points are row vectors multiplied on the right by `M⁻¹`; on column
/// vectors this is `x ↦ (M⁻¹)ᵀ x`, and facet normals transform by `n ↦ M n`.
pub fn string_to_seed_map() -> AffineMap {
    let inverse = mat_inverse(&m_matrix_i0()).expect("unimodular");
    AffineMap::linear(inverse.transpose()).expect("square")
}

/// The string polytope at `weight`, transported to seed coordinates and
/// translated so that its unique interior lattice point is the origin.
pub fn transported_string_polytope(weight: &Weight) -> Result<Polytope> {
    let p = Polytope::from_hrep(&string_inequalities_i0(weight)?)?;
    p.affine_image(&string_to_seed_map())?.normalized()
}

/// Vertices of the (possibly lower-dimensional) string polytope.
pub fn string_polytope_vertices(weight: &Weight) -> Result<Vec<RatVector>> {
    crate::polytope::enumerate_vertices(&string_inequalities_i0(weight)?, 6)
}

/// Translation applied after the linear transport, as found for `λ = (2,2,2)`.
pub fn anticanonical_translation() -> RatVector {
    RatVector::new([0, 0, 0, -1, -1, -1].iter().map(|&x| Rational::from(x)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{mat_det, mat_mul};

    #[test]
    fn m_matrix_shape() {
        let m = m_matrix_i0();
        assert_eq!(m.get(1, 0), &Rational::one());
        assert!((0..6).all(|i| m.get(i, i) == &Rational::one()));
        assert_eq!(mat_det(&m).unwrap(), Rational::one());
        let inv = mat_inverse(&m).unwrap();
        assert!(inv.is_integral());
        assert_eq!(mat_mul(&m, &inv).unwrap(), RatMatrix::identity(6));
    }

    #[test]
    fn zero_weight_is_a_point() {
        let w = Weight::new(vec![0, 0, 0]).unwrap();
        assert_eq!(string_polytope_vertices(&w).unwrap(), vec![RatVector::zeros(6)]);
    }

    #[test]
    fn anticanonical_string_polytope() {
        let p = Polytope::from_hrep(&string_inequalities_i0(&Weight::anticanonical(4)).unwrap()).unwrap();
        assert_eq!(p.num_vertices(), 40);
        assert_eq!(p.num_facets(), 12);
        assert!(crate::polytope::is_lattice_polytope(&p));
    }

    #[test]
    fn weight_validation() {
        assert!(Weight::new(vec![1, -1, 0]).is_err());
        assert!(string_inequalities_i0(&Weight::anticanonical(3)).is_err());
    }
}
