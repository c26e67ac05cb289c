//! Brute-force oracles written independently of the library's geometry:
//! `i128` fractions, subset enumeration for vertices, and pairwise edge tests.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use flagpoly::{Polytope, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Frac {
    num: i128,
    den: i128,
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

impl Frac {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        let s = if den < 0 { -1 } else { 1 };
        Frac { num: s * num / g, den: s * den / g }
    }

    pub fn int(n: i128) -> Self {
        Frac { num: n, den: 1 }
    }

    pub fn zero() -> Self {
        Frac::int(0)
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn add(self, o: Frac) -> Frac {
        Frac::new(self.num * o.den + o.num * self.den, self.den * o.den)
    }

    pub fn sub(self, o: Frac) -> Frac {
        self.add(Frac::new(-o.num, o.den))
    }

    pub fn mul(self, o: Frac) -> Frac {
        Frac::new(self.num * o.num, self.den * o.den)
    }

    pub fn div(self, o: Frac) -> Frac {
        Frac::new(self.num * o.den, self.den * o.num)
    }

    pub fn as_integer(self) -> Option<i128> {
        (self.den == 1).then_some(self.num)
    }

    /// Parses the library's `Display` form (`a` or `a/b`).
    pub fn from_rational(r: &Rational) -> Frac {
        let s = r.to_string();
        match s.split_once('/') {
            Some((n, d)) => Frac::new(n.parse().unwrap(), d.parse().unwrap()),
            None => Frac::int(s.parse().unwrap()),
        }
    }
}

impl Ord for Frac {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// `{x : ⟨x, normals[i]⟩ ≥ offsets[i]}` as plain integer data.
#[derive(Clone, Debug)]
pub struct HRep {
    pub normals: Vec<Vec<i64>>,
    pub offsets: Vec<i64>,
}

impl HRep {
    pub fn dim(&self) -> usize {
        self.normals[0].len()
    }

    pub fn from_columns(rows: &[Vec<i64>], offset: i64) -> Self {
        let cols = rows[0].len();
        HRep {
            normals: (0..cols).map(|j| rows.iter().map(|r| r[j]).collect()).collect(),
            offsets: vec![offset; cols],
        }
    }

    pub fn of(p: &Polytope) -> Self {
        HRep {
            normals: p.facets().iter().map(|f| f.normal.to_i64s().unwrap()).collect(),
            offsets: p.facets().iter().map(|f| f.offset.to_i64().unwrap()).collect(),
        }
    }

    pub fn value(&self, i: usize, x: &[Frac]) -> Frac {
        self.normals[i]
            .iter()
            .zip(x)
            .fold(Frac::zero(), |acc, (&a, &b)| acc.add(Frac::int(a as i128).mul(b)))
    }

    pub fn contains(&self, x: &[Frac]) -> bool {
        (0..self.normals.len()).all(|i| self.value(i, x) >= Frac::int(self.offsets[i] as i128))
    }

    pub fn tight(&self, x: &[Frac]) -> BTreeSet<usize> {
        (0..self.normals.len())
            .filter(|&i| self.value(i, x) == Frac::int(self.offsets[i] as i128))
            .collect()
    }
}

/// Solves a square system by Gaussian elimination; `None` if singular.
pub fn solve(mut a: Vec<Vec<Frac>>, mut b: Vec<Frac>) -> Option<Vec<Frac>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].div(a[col][col]);
                for c in col..n {
                    let v = a[col][c];
                    a[r][c] = a[r][c].sub(f.mul(v));
                }
                b[r] = b[r].sub(f.mul(b[col]));
            }
        }
    }
    Some((0..n).map(|i| b[i].div(a[i][i])).collect())
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Frac>> = rows.iter().map(|r| r.iter().map(|&x| Frac::int(x as i128)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].div(m[rank][col]);
                for c in col..cols {
                    let v = m[rank][c];
                    m[r][c] = m[r][c].sub(f.mul(v));
                }
            }
        }
        rank += 1;
    }
    rank
}

fn combinations(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        visit(cur);
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        combinations(n, k, i + 1, cur, visit);
        cur.pop();
    }
}

/// Vertices by solving every `d`-subset of facet equations.
pub fn brute_force_vertices(h: &HRep) -> BTreeSet<Vec<Frac>> {
    let d = h.dim();
    let mut out = BTreeSet::new();
    combinations(h.normals.len(), d, 0, &mut Vec::new(), &mut |subset| {
        let a = subset
            .iter()
            .map(|&i| h.normals[i].iter().map(|&x| Frac::int(x as i128)).collect())
            .collect();
        let b = subset.iter().map(|&i| Frac::int(h.offsets[i] as i128)).collect();
        if let Some(x) = solve(a, b) {
            if h.contains(&x) {
                out.insert(x);
            }
        }
    });
    out
}

pub fn library_vertices(p: &Polytope) -> BTreeSet<Vec<Frac>> {
    p.vertices()
        .iter()
        .map(|v| v.iter().map(Frac::from_rational).collect())
        .collect()
}

/// Edges of the polytope graph: two vertices span an edge when the facets
/// through both have rank `d − 1` and no third vertex lies on all of them.
pub fn brute_force_edges(h: &HRep, vertices: &[Vec<Frac>]) -> Vec<(usize, usize)> {
    let d = h.dim();
    let tight: Vec<BTreeSet<usize>> = vertices.iter().map(|v| h.tight(v)).collect();
    let mut edges = Vec::new();
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            let common: BTreeSet<usize> = tight[a].intersection(&tight[b]).copied().collect();
            let rows: Vec<Vec<i64>> = common.iter().map(|&i| h.normals[i].clone()).collect();
            if rows.is_empty() || rank(&rows) != d - 1 {
                continue;
            }
            let others = (0..vertices.len()).any(|c| c != a && c != b && common.is_subset(&tight[c]));
            if !others {
                edges.push((a, b));
            }
        }
    }
    edges
}

pub fn degree_histogram(n: usize, edges: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    let mut deg = vec![0usize; n];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let mut h = BTreeMap::new();
    for d in deg {
        *h.entry(d).or_insert(0) += 1;
    }
    h
}

/// Lattice points of a polytope with integral vertices, by scanning the
/// bounding box with integer arithmetic.
pub fn brute_force_lattice_points(h: &HRep, vertices: &BTreeSet<Vec<Frac>>) -> Vec<Vec<i64>> {
    let d = h.dim();
    let bound = |pick: fn(Frac, Frac) -> Frac, i: usize| {
        let v = vertices.iter().map(|v| v[i]).reduce(pick).unwrap();
        v.as_integer().expect("integral vertices") as i64
    };
    let lo: Vec<i64> = (0..d).map(|i| bound(std::cmp::min, i)).collect();
    let hi: Vec<i64> = (0..d).map(|i| bound(std::cmp::max, i)).collect();
    let inside = |x: &[i64]| {
        h.normals
            .iter()
            .zip(&h.offsets)
            .all(|(n, &c)| n.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() >= c)
    };
    let mut out = Vec::new();
    let mut x = lo.clone();
    loop {
        if inside(&x) {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            x[i] += 1;
            if x[i] <= hi[i] {
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

/// Strictly interior lattice points.
pub fn interior(h: &HRep, points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    points
        .iter()
        .filter(|x| {
            let fx: Vec<Frac> = x.iter().map(|&v| Frac::int(v as i128)).collect();
            h.tight(&fx).is_empty()
        })
        .cloned()
        .collect()
}

/// Applies the signed permutation `g ↦ (s_j g_{p_j})` to every vertex.
pub fn signed_permute(images: &[i64], v: &[Frac]) -> Vec<Frac> {
    images
        .iter()
        .map(|&img| {
            let x = v[img.unsigned_abs() as usize - 1];
            if img < 0 { Frac::zero().sub(x) } else { x }
        })
        .collect()
}
