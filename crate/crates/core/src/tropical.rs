//! Tropicalized mutation: a piecewise-linear map with two unimodular pieces
//! split along the hyperplane `g_k = 0`, and its action on polytopes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{mat_det, mat_inverse, RatMatrix, RatVector};
use crate::polytope::{enumerate_vertices, HalfSpace, Polytope};
use crate::rational::Rational;
use crate::seed::Seed;

/// `g ↦ t_plus · g` when `g_k ≥ 0` and `g ↦ t_minus · g` when `g_k ≤ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalMutation {
    /// Splitting label (1-based).
    pub k: usize,
    pub t_plus: RatMatrix,
    pub t_minus: RatMatrix,
}

#[derive(Serialize, Deserialize)]
pub struct TropicalMutationJson {
    pub k: usize,
    pub t_plus: Vec<Vec<i64>>,
    pub t_minus: Vec<Vec<i64>>,
}

fn piece(seed: &Seed, k: usize, sign: i64) -> RatMatrix {
    let n = seed.n();
    RatMatrix::from_fn(n, n, |i, j| {
        let (row, col) = (i + 1, j + 1);
        let value = if row == k {
            if col == k { -1 } else { 0 }
        } else if col == k {
            (sign * seed.entry(k, row)).max(0)
        } else if row == col {
            1
        } else {
            0
        };
        Rational::from(value)
    })
}

/// The tropicalized mutation of `seed` in direction `k`:
/// `g'_j = g_j + [ε_{k,j}]₊ g_k` on `g_k ≥ 0`, `g'_j = g_j + [−ε_{k,j}]₊ g_k`
/// on `g_k ≤ 0`, and `g'_k = −g_k`.
pub fn tropical_map(seed: &Seed, k: usize) -> Result<TropicalMutation> {
    if !seed.is_unfrozen(k) {
        return Err(Error::FrozenDirection(k));
    }
    Ok(TropicalMutation {
        k,
        t_plus: piece(seed, k, 1),
        t_minus: piece(seed, k, -1),
    })
}

impl TropicalMutation {
    pub fn dim(&self) -> usize {
        self.t_plus.rows()
    }

    pub fn apply(&self, g: &RatVector) -> Result<RatVector> {
        if g[self.k - 1].is_negative() {
            self.t_minus.mul_vec(g)
        } else {
            self.t_plus.mul_vec(g)
        }
    }

    /// Coefficient of `g_k` in `g'_j` on each side, for `j ≠ k`; `None` at `k`.
    pub fn coefficients(&self) -> (Vec<Option<i64>>, Vec<Option<i64>>) {
        let read = |m: &RatMatrix| {
            (0..self.dim())
                .map(|j| (j + 1 != self.k).then(|| m.get(j, self.k - 1).to_i64().expect("integer")))
                .collect()
        };
        (read(&self.t_plus), read(&self.t_minus))
    }

    /// Both pieces are integral with determinant ±1, send `g_k` to `−g_k`
    /// and agree on `g_k = 0`.
    pub fn is_well_formed(&self) -> bool {
        let n = self.dim();
        let unit = |m: &RatMatrix| {
            m.is_integral() && mat_det(m).map(|d| d.abs() == Rational::one()).unwrap_or(false)
        };
        let row_k = |m: &RatMatrix| m.row(self.k - 1) == RatVector::unit(n, self.k - 1).neg();
        let agree = (0..n)
            .filter(|&j| j + 1 != self.k)
            .all(|j| self.t_plus.column(j) == self.t_minus.column(j));
        unit(&self.t_plus) && unit(&self.t_minus) && row_k(&self.t_plus) && row_k(&self.t_minus) && agree
    }

    pub fn to_json(&self) -> TropicalMutationJson {
        TropicalMutationJson {
            k: self.k,
            t_plus: self.t_plus.to_i64_rows().expect("integer pieces"),
            t_minus: self.t_minus.to_i64_rows().expect("integer pieces"),
        }
    }

    pub fn from_json(json: &TropicalMutationJson) -> Result<Self> {
        let m = TropicalMutation {
            k: json.k,
            t_plus: RatMatrix::from_i64_rows(&json.t_plus)?,
            t_minus: RatMatrix::from_i64_rows(&json.t_minus)?,
        };
        if m.k == 0 || m.k > m.dim() || !m.is_well_formed() {
            return Err(Error::InvalidSeed(format!("malformed tropical mutation at k = {}", m.k)));
        }
        Ok(m)
    }
}

/// Vertices of `P ∩ {sign · g_k ≥ 0}`, or nothing when the intersection is
/// empty.
fn half_vertices(p: &Polytope, k: usize, sign: i64) -> Result<Vec<RatVector>> {
    let mut hs = p.facets().to_vec();
    hs.push(HalfSpace::new(RatVector::unit(p.dim(), k - 1).scale(&Rational::from(sign)), Rational::zero())?);
    match enumerate_vertices(&hs, p.dim()) {
        Ok(v) => Ok(v),
        Err(Error::Empty) => Ok(Vec::new()),
        Err(e) => Err(e),
    }
}

/// Image of `P` under `m`: split `P` along `g_k = 0`, map the vertices of
/// each side by its linear piece and take the convex hull.
///
/// The image is checked to be convex, i.e. to equal the union of the images
/// of the two halves; a failure is reported as [`Error::NotConvex`].
pub fn apply_tropical(p: &Polytope, m: &TropicalMutation) -> Result<Polytope> {
    if p.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            context: "tropical mutation",
            expected: m.dim(),
            found: p.dim(),
        });
    }
    let plus = half_vertices(p, m.k, 1)?;
    let minus = half_vertices(p, m.k, -1)?;
    let mut image = Vec::with_capacity(plus.len() + minus.len());
    for v in &plus {
        image.push(m.t_plus.mul_vec(v)?);
    }
    for v in &minus {
        image.push(m.t_minus.mul_vec(v)?);
    }
    let hull = Polytope::from_vrep(&image)?;

    // g'_k = -g_k, so the half {g_k ≥ 0} lands in {g'_k ≤ 0}.
    for (piece, sign) in [(&m.t_plus, -1), (&m.t_minus, 1)] {
        let inverse = mat_inverse(piece)?;
        for w in half_vertices(&hull, m.k, sign)? {
            let pre = inverse.mul_vec(&w)?;
            if !p.contains(&pre) {
                return Err(Error::NotConvex(format!(
                    "hull vertex {w:?} has no preimage in the polytope"
                )));
            }
        }
    }
    Ok(hull)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t0() -> Seed {
        Seed::from_quiver(
            6,
            vec![1, 2, 3],
            &[(1, 2), (2, 4), (2, 3), (5, 2), (3, 1), (3, 5), (6, 3)],
        )
        .unwrap()
    }

    #[test]
    fn zero_row_gives_reflection() {
        let s = Seed::new(3, vec![1], vec![vec![0, 0, 0]]).unwrap();
        let m = tropical_map(&s, 1).unwrap();
        let refl = RatMatrix::from_i64_rows(&[vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(m.t_plus, refl);
        assert_eq!(m.t_minus, refl);
    }

    #[test]
    fn pieces_are_well_formed() {
        let s = t0();
        for k in 1..=3 {
            let m = tropical_map(&s, k).unwrap();
            assert!(m.is_well_formed());
            let json = serde_json::to_string(&m.to_json()).unwrap();
            let back: TropicalMutationJson = serde_json::from_str(&json).unwrap();
            assert_eq!(TropicalMutation::from_json(&back).unwrap(), m);
        }
        assert_eq!(tropical_map(&s, 5), Err(Error::FrozenDirection(5)));
    }

    #[test]
    fn piecewise_evaluation() {
        // (g1 + [g2]+, -g2, g3 - [-g2]+, g4 - [-g2]+, g5 + [g2]+, g6)
        let m = tropical_map(&t0(), 2).unwrap();
        let g = RatVector::from_i64s(&[1, 2, 3, 4, 5, 6]);
        assert_eq!(m.apply(&g).unwrap(), RatVector::from_i64s(&[3, -2, 3, 4, 7, 6]));
        let g = RatVector::from_i64s(&[1, -2, 3, 4, 5, 6]);
        assert_eq!(m.apply(&g).unwrap(), RatVector::from_i64s(&[1, 2, 1, 2, 5, 6]));
    }

    fn square() -> Polytope {
        Polytope::from_vrep(&[
            RatVector::from_i64s(&[-1, -1]),
            RatVector::from_i64s(&[1, -1]),
            RatVector::from_i64s(&[-1, 1]),
            RatVector::from_i64s(&[1, 1]),
        ])
        .unwrap()
    }

    #[test]
    fn transport_and_back() {
        let s = Seed::new(2, vec![1], vec![vec![0, 1]]).unwrap();
        let diamond = Polytope::from_vrep(&[
            RatVector::from_i64s(&[-1, 0]),
            RatVector::from_i64s(&[1, 0]),
            RatVector::from_i64s(&[0, 1]),
            RatVector::from_i64s(&[0, -1]),
        ])
        .unwrap();
        let forward = apply_tropical(&diamond, &tropical_map(&s, 1).unwrap()).unwrap();
        assert!(forward.vertices().contains(&RatVector::from_i64s(&[-1, 1])));
        assert_eq!(forward.num_vertices(), 4);
        let back = apply_tropical(&forward, &tropical_map(&s.mutate(1).unwrap(), 1).unwrap()).unwrap();
        assert_eq!(back, diamond);
    }

    #[test]
    fn non_convex_image_is_reported() {
        // The square folds into a pentagon minus a notch at (0, 3/2).
        let s = Seed::new(2, vec![1], vec![vec![0, 1]]).unwrap();
        let m = tropical_map(&s, 1).unwrap();
        assert!(matches!(apply_tropical(&square(), &m), Err(Error::NotConvex(_))));
    }
}
