//! Lattice point enumeration by depth-first search over a bounding box,
//! pruning a branch as soon as some facet can no longer be satisfied.

use num_traits::ToPrimitive;

use super::Polytope;
use crate::error::{Error, Result};
use crate::linalg::RatVector;
use crate::rational::Rational;

struct Search {
    normals: Vec<Vec<i64>>,
    /// Integer right-hand sides: a lattice point `x` is accepted iff
    /// `⟨x, normal⟩ ≥ bound` for every facet.
    bounds: Vec<i64>,
    lo: Vec<i64>,
    hi: Vec<i64>,
    /// `slack_max[i][f]`: largest possible contribution of coordinates
    /// `i..` to facet `f` inside the box.
    slack_max: Vec<Vec<i64>>,
}

impl Search {
    fn new(p: &Polytope, dilation: i64, strict: bool) -> Result<Self> {
        let d = p.dim();
        let k = Rational::from(dilation);
        let mut normals = Vec::new();
        let mut bounds = Vec::new();
        for f in p.facets() {
            normals.push(f.normal.to_i64s().ok_or(Error::Overflow)?);
            let c = &f.offset * &k;
            let b = if strict { c.floor() + 1 } else { c.ceil() };
            bounds.push(b.to_i64().ok_or(Error::Overflow)?);
        }
        let mut lo = vec![i64::MAX; d];
        let mut hi = vec![i64::MIN; d];
        for v in p.vertices() {
            for i in 0..d {
                let x = &v[i] * &k;
                lo[i] = lo[i].min(x.floor().to_i64().ok_or(Error::Overflow)?);
                hi[i] = hi[i].max(x.ceil().to_i64().ok_or(Error::Overflow)?);
            }
        }
        let mut slack_max = vec![vec![0i64; normals.len()]; d + 1];
        for i in (0..d).rev() {
            for (f, n) in normals.iter().enumerate() {
                let best = (n[i].checked_mul(lo[i]).ok_or(Error::Overflow)?)
                    .max(n[i].checked_mul(hi[i]).ok_or(Error::Overflow)?);
                slack_max[i][f] = slack_max[i + 1][f]
                    .checked_add(best)
                    .ok_or(Error::Overflow)?;
            }
        }
        Ok(Search {
            normals,
            bounds,
            lo,
            hi,
            slack_max,
        })
    }

    fn run(&self, mut visit: impl FnMut(&[i64])) {
        let d = self.lo.len();
        let mut point = vec![0i64; d];
        let mut partial = vec![0i64; self.normals.len()];
        self.descend(0, &mut point, &mut partial, &mut visit);
    }

    fn descend(
        &self,
        i: usize,
        point: &mut Vec<i64>,
        partial: &mut Vec<i64>,
        visit: &mut impl FnMut(&[i64]),
    ) {
        if i == point.len() {
            visit(point);
            return;
        }
        for x in self.lo[i]..=self.hi[i] {
            point[i] = x;
            let feasible = self.normals.iter().enumerate().all(|(f, n)| {
                partial[f] + n[i] * x + self.slack_max[i + 1][f] >= self.bounds[f]
            });
            if !feasible {
                continue;
            }
            for (f, n) in self.normals.iter().enumerate() {
                partial[f] += n[i] * x;
            }
            self.descend(i + 1, point, partial, visit);
            for (f, n) in self.normals.iter().enumerate() {
                partial[f] -= n[i] * x;
            }
        }
    }
}

/// Number of lattice points in the dilation `k·P`.
pub fn count_lattice_points(p: &Polytope, k: u32) -> Result<u64> {
    let search = Search::new(p, i64::from(k), false)?;
    let mut count = 0u64;
    search.run(|_| count += 1);
    Ok(count)
}

/// Lattice points in the interior of `P`, in lexicographic order.
pub fn interior_lattice_points(p: &Polytope) -> Result<Vec<RatVector>> {
    let search = Search::new(p, 1, true)?;
    let mut pts = Vec::new();
    search.run(|x| pts.push(RatVector::from_i64s(x)));
    Ok(pts)
}

pub fn is_lattice_polytope(p: &Polytope) -> bool {
    p.vertices().iter().all(RatVector::is_integral)
}

/// Lattice polytope whose facets are all `⟨x, n⟩ ≥ -1` with primitive `n`.
pub fn is_reflexive(p: &Polytope) -> bool {
    let minus_one = Rational::from(-1);
    is_lattice_polytope(p)
        && p
            .facets()
            .iter()
            .all(|f| f.is_primitive_integral() && f.offset == minus_one)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{cube, simplex};
    use super::super::HalfSpace;
    use super::*;

    #[test]
    fn cube_counts() {
        let c = cube(3, -1, 1);
        assert_eq!(count_lattice_points(&c, 1).unwrap(), 27);
        assert_eq!(count_lattice_points(&c, 2).unwrap(), 125);
        assert_eq!(interior_lattice_points(&c).unwrap(), vec![RatVector::zeros(3)]);
        assert!(is_reflexive(&c));
        assert!(!is_reflexive(&cube(3, 0, 2)));
    }

    #[test]
    fn simplex_counts() {
        // (k+d choose d)
        let s = simplex(3);
        assert_eq!(count_lattice_points(&s, 1).unwrap(), 4);
        assert_eq!(count_lattice_points(&s, 2).unwrap(), 10);
        assert_eq!(count_lattice_points(&s, 3).unwrap(), 20);
        assert!(interior_lattice_points(&s).unwrap().is_empty());
    }

    #[test]
    fn rational_vertices() {
        // triangle with vertices (0,0), (3/2,0), (0,3/2)
        let hs = [
            HalfSpace::from_i64(&[1, 0], 0).unwrap(),
            HalfSpace::from_i64(&[0, 1], 0).unwrap(),
            HalfSpace::new(RatVector::from_i64s(&[-2, -2]), Rational::from(-3)).unwrap(),
        ];
        let p = Polytope::from_hrep(&hs).unwrap();
        assert!(!is_lattice_polytope(&p));
        assert_eq!(count_lattice_points(&p, 1).unwrap(), 3);
        assert_eq!(count_lattice_points(&p, 2).unwrap(), 10);
    }

    #[test]
    fn normalize_moves_interior_point() {
        let c = cube(4, 0, 2);
        let n = c.normalized().unwrap();
        assert_eq!(n, cube(4, -1, 1));
        assert_eq!(cube(2, 0, 3).normalized(), Err(Error::InteriorPoint(4)));
    }
}
