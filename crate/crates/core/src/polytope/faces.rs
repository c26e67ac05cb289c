use std::collections::{BTreeMap, HashSet};

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use super::Polytope;

/// Face counts indexed by dimension `-1..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    /// Number of faces of dimension `k` (`k = -1` is the empty face).
    pub fn get(&self, k: isize) -> usize {
        self.0[(k + 1) as usize]
    }

    /// Dimension of the polytope.
    pub fn dim(&self) -> usize {
        self.0.len() - 2
    }

    /// `Σ_{k=0}^{d-1} (-1)^k f_k == 1 - (-1)^d`.
    pub fn satisfies_euler(&self) -> bool {
        let d = self.dim() as isize;
        let lhs: i64 = (0..d)
            .map(|k| if k % 2 == 0 { 1 } else { -1 } * self.get(k) as i64)
            .sum();
        let rhs = 1 - if d % 2 == 0 { 1 } else { -1 };
        lhs == rhs && self.get(-1) == 1 && self.get(d) == 1
    }
}

/// All faces of a polytope, each as its vertex set, grouped by dimension.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    /// `by_dim[k + 1]` holds the faces of dimension `k`.
    pub by_dim: Vec<Vec<FixedBitSet>>,
}

fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            if m[r][c] == 0 {
                continue;
            }
            let (a, b) = (m[rank][c], m[r][c]);
            for k in c..cols {
                m[r][k] = m[r][k] * a - m[rank][k] * b;
            }
            let g = m[r].iter().fold(0i128, |g, &x| g.gcd(&x));
            if g > 1 {
                m[r].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

/// Faces are the intersections of facet vertex sets; the dimension of a
/// nonempty face is `d - rank` of the normals of the facets containing it.
pub fn face_lattice(p: &Polytope) -> FaceLattice {
    let d = p.dim();
    let nv = p.num_vertices();
    let normals: Vec<Vec<i64>> = p
        .facets()
        .iter()
        .map(|f| f.normal.to_i64s().expect("primitive normals fit in i64"))
        .collect();

    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut queue: Vec<FixedBitSet> = Vec::new();
    for fv in p.facet_vertices() {
        if fv.count_ones(..) > 0 && seen.insert(fv.clone()) {
            queue.push(fv.clone());
        }
    }
    let mut i = 0;
    while i < queue.len() {
        let face = queue[i].clone();
        for fv in p.facet_vertices() {
            let mut g = face.clone();
            g.intersect_with(fv);
            if g.count_ones(..) > 0 && seen.insert(g.clone()) {
                queue.push(g);
            }
        }
        i += 1;
    }

    let mut by_dim: Vec<Vec<FixedBitSet>> = vec![Vec::new(); d + 2];
    let mut empty = FixedBitSet::with_capacity(nv);
    empty.clear();
    by_dim[0].push(empty);
    let mut full = FixedBitSet::with_capacity(nv);
    full.insert_range(..);
    for face in queue {
        if face == full {
            continue;
        }
        let containing: Vec<Vec<i64>> = p
            .facet_vertices()
            .iter()
            .zip(&normals)
            .filter(|(fv, _)| face.is_subset(fv))
            .map(|(_, n)| n.clone())
            .collect();
        let k = d - integer_rank(&containing);
        by_dim[k + 1].push(face);
    }
    by_dim[d + 1].push(full);
    for faces in &mut by_dim {
        faces.sort_by(|a, b| a.ones().cmp(b.ones()));
    }
    FaceLattice { by_dim }
}

pub fn f_vector(p: &Polytope) -> FVector {
    FVector(face_lattice(p).by_dim.iter().map(Vec::len).collect())
}

impl FaceLattice {
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.by_dim
            .get(2)
            .map(|edges| {
                edges
                    .iter()
                    .map(|e| {
                        let mut it = e.ones();
                        (it.next().expect("edge"), it.next().expect("edge"))
                    })
                    .collect()
            })
            .unwrap_or_default()
    }
}

/// Histogram degree → number of vertices, where the degree of a vertex is
/// the number of edges through it.
pub fn vertex_degree_histogram(p: &Polytope) -> BTreeMap<usize, usize> {
    let mut degree = vec![0usize; p.num_vertices()];
    for (a, b) in face_lattice(p).edges() {
        degree[a] += 1;
        degree[b] += 1;
    }
    let mut hist = BTreeMap::new();
    for d in degree {
        *hist.entry(d).or_insert(0) += 1;
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::super::tests::{cube, simplex};
    use super::*;

    #[test]
    fn cube_f_vector() {
        // f_k = C(6,k) 2^(6-k)
        let f = f_vector(&cube(6, -1, 1));
        assert_eq!(f.0, vec![1, 64, 192, 240, 160, 60, 12, 1]);
        assert!(f.satisfies_euler());
        assert_eq!(f.get(-1), 1);
        assert_eq!(f.get(6), 1);
    }

    #[test]
    fn simplex_f_vector() {
        let f = f_vector(&simplex(4));
        assert_eq!(f.0, vec![1, 5, 10, 10, 5, 1]);
        assert!(f.satisfies_euler());
    }

    #[test]
    fn cube_degrees() {
        let h = vertex_degree_histogram(&cube(6, -1, 1));
        assert_eq!(h, BTreeMap::from([(6, 64)]));
        let h = vertex_degree_histogram(&simplex(3));
        assert_eq!(h, BTreeMap::from([(3, 4)]));
    }

    #[test]
    fn euler_rejects_bad_vectors() {
        assert!(!FVector(vec![1, 4, 4, 2]).satisfies_euler());
        assert!(FVector(vec![1, 4, 4, 1]).satisfies_euler());
    }

    #[test]
    fn rank_helper() {
        assert_eq!(integer_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(integer_rank(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]), 2);
        assert_eq!(integer_rank(&[]), 0);
    }
}
