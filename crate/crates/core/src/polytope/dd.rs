//! Incremental double description for pointed polyhedral cones.
//!
//! Given constraint rows `a_1, ..., a_m` in `ℚ^D`, computes the extreme rays
//! of `{y : a_i · y ≥ 0 for all i}`. Rays are returned as primitive integer
//! vectors (positive scaling is the only freedom). Adjacency of rays is
//! decided combinatorially from their zero sets.

use fixedbitset::FixedBitSet;

use crate::linalg::{mat_inverse, RatMatrix, RatVector};
use crate::rational::{primitive_integer_vector, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeError {
    /// The constraint rows span only a `rank`-dimensional space, so the cone
    /// contains a line.
    NotPointed { rank: usize },
}

struct Ray {
    coords: RatVector,
    zeros: FixedBitSet,
}

fn primitive(v: RatVector) -> RatVector {
    RatVector::new(
        primitive_integer_vector(v.entries())
            .into_iter()
            .map(Rational::from)
            .collect(),
    )
}

/// Indices of a maximal linearly independent subset of `rows`, chosen
/// greedily in order.
pub(crate) fn independent_rows(rows: &[RatVector], dim: usize) -> Vec<usize> {
    // Incremental row echelon form: each basis entry stores its pivot column.
    let mut basis: Vec<(usize, RatVector)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        for (pivot, b) in &basis {
            if !r[*pivot].is_zero() {
                let factor = &r[*pivot] / &b[*pivot];
                r = r.sub(&b.scale(&factor));
            }
        }
        if let Some(pivot) = (0..dim).find(|&c| !r[c].is_zero()) {
            basis.push((pivot, r));
            chosen.push(idx);
            if chosen.len() == dim {
                break;
            }
        }
    }
    chosen
}

pub fn extreme_rays(constraints: &[RatVector], dim: usize) -> Result<Vec<RatVector>, ConeError> {
    let m = constraints.len();
    let basis = independent_rows(constraints, dim);
    if basis.len() < dim {
        return Err(ConeError::NotPointed { rank: basis.len() });
    }

    let rows: Vec<RatVector> = basis.iter().map(|&i| constraints[i].clone()).collect();
    let inv = mat_inverse(&RatMatrix::from_rows(&rows).expect("uniform rows"))
        .expect("basis rows are independent");

    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let mut zeros = FixedBitSet::with_capacity(m);
            for (r, &ci) in basis.iter().enumerate() {
                if r != j {
                    zeros.insert(ci);
                }
            }
            Ray {
                coords: primitive(inv.column(j)),
                zeros,
            }
        })
        .collect();

    let mut in_basis = FixedBitSet::with_capacity(m);
    for &i in &basis {
        in_basis.insert(i);
    }

    for (ci, a) in constraints.iter().enumerate() {
        if in_basis.contains(ci) {
            continue;
        }
        let values: Vec<Rational> = rays.iter().map(|r| a.dot(&r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        for &p in &pos {
            for &n in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[n].zeros);
                if common.count_ones(..) + 2 < dim {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(r, ray)| {
                    r == p || r == n || !common.is_subset(&ray.zeros)
                });
                if !adjacent {
                    continue;
                }
                let coords = rays[n]
                    .coords
                    .scale(&values[p])
                    .sub(&rays[p].coords.scale(&values[n]));
                common.insert(ci);
                next.push(Ray {
                    coords: primitive(coords),
                    zeros: common,
                });
            }
        }
        for (i, mut ray) in rays.into_iter().enumerate() {
            match values[i].signum() {
                1 => next.push(ray),
                0 => {
                    ray.zeros.insert(ci);
                    next.push(ray);
                }
                _ => {}
            }
        }
        rays = next;
        if rays.is_empty() {
            break;
        }
    }

    Ok(rays.into_iter().map(|r| r.coords).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> RatVector {
        RatVector::from_i64s(xs)
    }

    #[test]
    fn orthant() {
        let cons = vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])];
        let mut rays = extreme_rays(&cons, 3).unwrap();
        rays.sort();
        assert_eq!(rays, vec![v(&[0, 0, 1]), v(&[0, 1, 0]), v(&[1, 0, 0])]);
    }

    #[test]
    fn square_cone() {
        // cone over the square [-1,1]^2 at height t: t ± x ≥ 0, t ± y ≥ 0
        let cons = vec![
            v(&[1, 0, 1]),
            v(&[-1, 0, 1]),
            v(&[0, 1, 1]),
            v(&[0, -1, 1]),
        ];
        let mut rays = extreme_rays(&cons, 3).unwrap();
        rays.sort();
        assert_eq!(
            rays,
            vec![v(&[-1, -1, 1]), v(&[-1, 1, 1]), v(&[1, -1, 1]), v(&[1, 1, 1])]
        );
    }

    #[test]
    fn not_pointed() {
        let cons = vec![v(&[1, 0, 0]), v(&[0, 1, 0])];
        assert_eq!(
            extreme_rays(&cons, 3).unwrap_err(),
            ConeError::NotPointed { rank: 2 }
        );
    }

    #[test]
    fn infeasible_cone_is_trivial() {
        // x ≥ 0 and -x ≥ 0 and y ≥ 0 and -y ≥ 0: only the origin
        let cons = vec![v(&[1, 0]), v(&[-1, 0]), v(&[0, 1]), v(&[0, -1])];
        assert!(extreme_rays(&cons, 2).unwrap().is_empty());
    }
}
