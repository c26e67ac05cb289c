//! Dense exact vectors, matrices and affine maps over [`Rational`].

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatVector(Vec<Rational>);

impl RatVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RatVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RatVector(vec![Rational::zero(); dim])
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        RatVector(values.iter().map(|&v| Rational::from(v)).collect())
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn dot(&self, other: &RatVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &RatVector) -> RatVector {
        RatVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RatVector) -> RatVector {
        RatVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> RatVector {
        RatVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> RatVector {
        RatVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }

    /// Entries as `i64`, if all are integers that fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(Rational::to_i64).collect()
    }
}

impl Index<usize> for RatVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<Rational>> for RatVector {
    fn from(v: Vec<Rational>) -> Self {
        RatVector(v)
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    /// Builds a matrix from integer rows. All rows must have equal length.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix rows",
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(Self::from_fn(rows.len(), cols, |i, j| Rational::from(rows[i][j])))
    }

    pub fn from_rows(rows: &[RatVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, RatVector::dim);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.dim() != cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix rows",
                    expected: cols,
                    found: r.dim(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(RatMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_columns(columns: &[RatVector]) -> Result<Self> {
        Ok(Self::from_rows(columns)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> RatVector {
        RatVector::new(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> RatVector {
        RatVector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<RatVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(Rational::is_integer)
    }

    /// Entries as nested `i64` rows, if all are integers that fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).to_i64s())
            .collect()
    }

    pub fn mul_vec(&self, x: &RatVector) -> Result<RatVector> {
        if x.dim() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: x.dim(),
            });
        }
        Ok(RatVector::new(
            (0..self.rows)
                .map(|i| {
                    self.data[i * self.cols..(i + 1) * self.cols]
                        .iter()
                        .zip(x.iter())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        ))
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let pivot = m.get(rank, col).clone();
            for r in rank + 1..m.rows {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) / &pivot;
                for c in col..m.cols {
                    let v = m.get(r, c) - &(&factor * m.get(rank, c));
                    m.set(r, c, v);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            context: "matrix product",
            expected: a.cols,
            found: b.rows,
        });
    }
    Ok(RatMatrix::from_fn(a.rows, b.cols, |i, j| {
        (0..a.cols).map(|k| a.get(i, k) * b.get(k, j)).sum()
    }))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn mat_det(a: &RatMatrix) -> Result<Rational> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut m = a.clone();
    let mut sign = Rational::one();
    let mut prev = Rational::one();
    for k in 0..n - 1 {
        if m.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                return Ok(Rational::zero());
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                m.set(i, j, v);
            }
        }
        prev = m.get(k, k).clone();
    }
    Ok(sign * m.get(n - 1, n - 1))
}

/// Inverse by Gauss-Jordan elimination, pivoting on the first nonzero entry.
pub fn mat_inverse(a: &RatMatrix) -> Result<RatMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    let mut m = a.clone();
    let mut inv = RatMatrix::identity(n);
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !m.get(r, col).is_zero())
            .ok_or(Error::Singular)?;
        m.swap_rows(col, p);
        inv.swap_rows(col, p);
        let pivot = m.get(col, col).recip();
        for c in 0..n {
            let v = m.get(col, c) * &pivot;
            m.set(col, c, v);
            let v = inv.get(col, c) * &pivot;
            inv.set(col, c, v);
        }
        for r in 0..n {
            if r == col || m.get(r, col).is_zero() {
                continue;
            }
            let factor = m.get(r, col).clone();
            for c in 0..n {
                let v = m.get(r, c) - &(&factor * m.get(col, c));
                m.set(r, c, v);
                let v = inv.get(r, c) - &(&factor * inv.get(col, c));
                inv.set(r, c, v);
            }
        }
    }
    Ok(inv)
}

/// `x ↦ linear·x + translation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub linear: RatMatrix,
    pub translation: RatVector,
}

impl AffineMap {
    pub fn new(linear: RatMatrix, translation: RatVector) -> Result<Self> {
        if !linear.is_square() {
            return Err(Error::NotSquare {
                rows: linear.rows(),
                cols: linear.cols(),
            });
        }
        if translation.dim() != linear.rows() {
            return Err(Error::DimensionMismatch {
                context: "affine map translation",
                expected: linear.rows(),
                found: translation.dim(),
            });
        }
        Ok(AffineMap {
            linear,
            translation,
        })
    }

    pub fn linear(linear: RatMatrix) -> Result<Self> {
        let n = linear.rows();
        Self::new(linear, RatVector::zeros(n))
    }

    pub fn identity(n: usize) -> Self {
        AffineMap {
            linear: RatMatrix::identity(n),
            translation: RatVector::zeros(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.linear.rows()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> Result<AffineMap> {
        let linear = mat_mul(&self.linear, &other.linear)?;
        let translation = self.linear.mul_vec(&other.translation)?.add(&self.translation);
        AffineMap::new(linear, translation)
    }
}

pub fn apply_affine(f: &AffineMap, x: &RatVector) -> Result<RatVector> {
    Ok(f.linear.mul_vec(x)?.add(&f.translation))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn m_i0() -> RatMatrix {
        RatMatrix::from_i64_rows(&[
            vec![1, 0, 0, 0, 0, 0],
            vec![1, 1, 0, 0, 0, 0],
            vec![0, 1, 1, 0, 0, 0],
            vec![1, 1, 0, 1, 0, 0],
            vec![0, 1, 1, 1, 1, 0],
            vec![0, 0, 0, 1, 1, 1],
        ])
        .unwrap()
    }

    /// Cofactor expansion along the first row.
    fn det_cofactor(m: &RatMatrix) -> Rational {
        let n = m.rows();
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let minor = RatMatrix::from_fn(n - 1, n - 1, |r, c| {
                m.get(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = m.get(0, j) * &det_cofactor(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn identity_product() {
        let m = m_i0();
        assert_eq!(mat_mul(&RatMatrix::identity(6), &m).unwrap(), m);
    }

    #[test]
    fn product_dimension_mismatch() {
        let a = RatMatrix::zeros(2, 3);
        assert!(matches!(
            mat_mul(&a, &a),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_of_transport_matrix() {
        let m = m_i0();
        let inv = mat_inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv).unwrap(), RatMatrix::identity(6));
        assert!(inv.is_integral());
        for i in 0..6 {
            assert_eq!(inv.get(i, i), &Rational::one());
        }
    }

    #[test]
    fn inverse_small_cases() {
        assert_eq!(
            mat_inverse(&RatMatrix::identity(6)).unwrap(),
            RatMatrix::identity(6)
        );
        let d = RatMatrix::from_i64_rows(&[vec![2, 0], vec![0, 2]]).unwrap();
        let inv = mat_inverse(&d).unwrap();
        assert_eq!(inv.get(0, 0), &Rational::new(1, 2));
        assert_eq!(inv.get(1, 1), &Rational::new(1, 2));
        assert!(inv.get(0, 1).is_zero());
        let s = RatMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(mat_inverse(&s), Err(Error::Singular));
        assert!(matches!(
            mat_inverse(&RatMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn determinants() {
        assert_eq!(mat_det(&RatMatrix::identity(6)).unwrap(), Rational::one());
        assert_eq!(mat_det(&m_i0()).unwrap(), Rational::one());
        // (g1..g6) -> (-g2, -g3, -g1, -g4, -g5, -g6)
        let images = [2usize, 3, 1, 4, 5, 6];
        let a = RatMatrix::from_fn(6, 6, |i, j| {
            if images[i] == j + 1 {
                Rational::from(-1)
            } else {
                Rational::zero()
            }
        });
        let oracle = det_cofactor(&a);
        assert_eq!(oracle, Rational::one());
        assert_eq!(mat_det(&a).unwrap(), oracle);
        let swap = RatMatrix::from_fn(6, 6, |i, j| {
            let image = [1usize, 0, 2, 3, 4, 5][i];
            if image == j { Rational::one() } else { Rational::zero() }
        });
        assert_eq!(det_cofactor(&swap), Rational::from(-1));
        assert_eq!(mat_det(&swap).unwrap(), Rational::from(-1));
        assert!(matches!(
            mat_det(&RatMatrix::zeros(1, 2)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn affine_application() {
        let x = RatVector::from_i64s(&[1, 2, 3, 4, 5, 6]);
        assert_eq!(apply_affine(&AffineMap::identity(6), &x).unwrap(), x);

        // (g1..g6) -> (-g3, -g1, -g2, -g4, -g6, -g5) sends e1 to -e2
        let images = [3usize, 1, 2, 4, 6, 5];
        let a = RatMatrix::from_fn(6, 6, |i, j| {
            if images[i] == j + 1 {
                Rational::from(-1)
            } else {
                Rational::zero()
            }
        });
        let f = AffineMap::linear(a).unwrap();
        assert_eq!(
            apply_affine(&f, &RatVector::unit(6, 0)).unwrap(),
            RatVector::unit(6, 1).neg()
        );

        let t = AffineMap::new(RatMatrix::identity(6), RatVector::from_i64s(&[1; 6])).unwrap();
        assert_eq!(
            apply_affine(&t, &RatVector::zeros(6)).unwrap(),
            RatVector::from_i64s(&[1; 6])
        );
        assert!(apply_affine(&t, &RatVector::zeros(5)).is_err());
    }

    #[test]
    fn rank_counts_independent_rows() {
        let m = RatMatrix::from_i64_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m_i0().rank(), 6);
    }
}
