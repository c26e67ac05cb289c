//! Combinatorial isomorphism of polytopes through their vertex–facet
//! incidences.

use std::collections::{BTreeMap, HashMap};

use super::Polytope;

/// Bijections `vertex_map[v]` and `facet_map[f]` from `P` to `Q` preserving
/// incidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceIsomorphism {
    pub vertex_map: Vec<usize>,
    pub facet_map: Vec<usize>,
}

impl IncidenceIsomorphism {
    pub fn is_valid(&self, p: &Polytope, q: &Polytope) -> bool {
        let bij = |m: &[usize], n: usize| {
            let mut seen = vec![false; n];
            m.len() == n && m.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
        };
        bij(&self.vertex_map, q.num_vertices())
            && bij(&self.facet_map, q.num_facets())
            && (0..p.num_vertices()).all(|v| {
                (0..p.num_facets())
                    .all(|f| p.incidence(v, f) == q.incidence(self.vertex_map[v], self.facet_map[f]))
            })
    }
}

/// Joint color refinement of the incidence graphs of `P` and `Q`, returning
/// final `(vertex colors, facet colors)` for each.
type Colors = (Vec<usize>, Vec<usize>);

fn refine(p: &Polytope, q: &Polytope) -> (Colors, Colors) {
    let init = |x: &Polytope| -> Colors {
        (
            x.vertex_facets().iter().map(|s| s.count_ones(..)).collect(),
            x.facet_vertices().iter().map(|s| s.count_ones(..)).collect(),
        )
    };
    let mut cp = init(p);
    let mut cq = init(q);
    let classes = |a: &Colors, b: &Colors| {
        let mut all: Vec<(bool, usize)> = Vec::new();
        all.extend(a.0.iter().chain(&b.0).map(|&c| (false, c)));
        all.extend(a.1.iter().chain(&b.1).map(|&c| (true, c)));
        all.sort();
        all.dedup();
        all.len()
    };
    let mut count = classes(&cp, &cq);
    loop {
        let mut dict: HashMap<(bool, usize, Vec<usize>), usize> = HashMap::new();
        let mut step = |x: &Polytope, c: &Colors| -> Colors {
            let mut id = |key| {
                let n = dict.len();
                *dict.entry(key).or_insert(n)
            };
            let verts = x
                .vertex_facets()
                .iter()
                .enumerate()
                .map(|(v, fs)| {
                    let mut nb: Vec<usize> = fs.ones().map(|f| c.1[f]).collect();
                    nb.sort_unstable();
                    id((false, c.0[v], nb))
                })
                .collect();
            let facets = x
                .facet_vertices()
                .iter()
                .enumerate()
                .map(|(f, vs)| {
                    let mut nb: Vec<usize> = vs.ones().map(|v| c.0[v]).collect();
                    nb.sort_unstable();
                    id((true, c.1[f], nb))
                })
                .collect();
            (verts, facets)
        };
        let np = step(p, &cp);
        let nq = step(q, &cq);
        let n = classes(&np, &nq);
        cp = np;
        cq = nq;
        if n == count {
            break;
        }
        count = n;
    }
    (cp, cq)
}

fn histogram(xs: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &x in xs {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

struct Matcher<'a> {
    p: &'a Polytope,
    q: &'a Polytope,
    order: Vec<usize>,
    p_colors: &'a [usize],
    q_colors: &'a [usize],
    facet_map: Vec<usize>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    /// Multisets of vertex incidence patterns restricted to the facets
    /// assigned so far must agree.
    fn consistent(&self, depth: usize) -> bool {
        let pattern = |x: &Polytope, fs: &mut dyn Iterator<Item = usize>| {
            let fs: Vec<usize> = fs.collect();
            let mut rows: Vec<Vec<bool>> = (0..x.num_vertices())
                .map(|v| fs.iter().map(|&f| x.incidence(v, f)).collect())
                .collect();
            rows.sort_unstable();
            rows
        };
        let assigned = &self.order[..depth];
        pattern(self.p, &mut assigned.iter().copied())
            == pattern(self.q, &mut assigned.iter().map(|&f| self.facet_map[f]))
    }

    /// Depth-first over facet assignments; `visit` sees each complete facet
    /// map and returns `true` to stop.
    fn search(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.facet_map);
        }
        let f = self.order[depth];
        for g in 0..self.q.num_facets() {
            if self.used[g] || self.q_colors[g] != self.p_colors[f] {
                continue;
            }
            self.facet_map[f] = g;
            self.used[g] = true;
            if self.consistent(depth + 1) && self.search(depth + 1, visit) {
                return true;
            }
            self.used[g] = false;
        }
        false
    }
}

/// Calls `visit` with the facet map of every combinatorial isomorphism from
/// `P` to `Q` until it returns `true`; returns whether it stopped early.
pub fn for_each_facet_isomorphism(p: &Polytope, q: &Polytope, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    if p.dim() != q.dim() || p.num_vertices() != q.num_vertices() || p.num_facets() != q.num_facets() {
        return false;
    }
    let ((pv, pf), (qv, qf)) = refine(p, q);
    if histogram(&pv) != histogram(&qv) || histogram(&pf) != histogram(&qf) {
        return false;
    }
    // Rarest colors first keeps the branching small.
    let freq = histogram(&pf);
    let mut order: Vec<usize> = (0..p.num_facets()).collect();
    order.sort_by_key(|&f| (freq[&pf[f]], pf[f], f));

    let mut m = Matcher {
        p,
        q,
        order,
        p_colors: &pf,
        q_colors: &qf,
        facet_map: vec![usize::MAX; p.num_facets()],
        used: vec![false; q.num_facets()],
    };
    m.search(0, &mut visit)
}

/// Finds an incidence-preserving bijection between the vertices and facets
/// of `P` and `Q`, if one exists.
pub fn is_combinatorially_isomorphic(p: &Polytope, q: &Polytope) -> Option<IncidenceIsomorphism> {
    let mut found = None;
    for_each_facet_isomorphism(p, q, |m| {
        found = Some(m.to_vec());
        true
    });
    let facet_map = found?;

    // A vertex is determined by the set of facets through it.
    let key = |x: &Polytope, v: usize, map: &dyn Fn(usize) -> usize| {
        let mut fs: Vec<usize> = x.vertex_facets()[v].ones().map(map).collect();
        fs.sort_unstable();
        fs
    };
    let q_index: HashMap<Vec<usize>, usize> =
        (0..q.num_vertices()).map(|w| (key(q, w, &|f| f), w)).collect();
    let vertex_map = (0..p.num_vertices())
        .map(|v| q_index.get(&key(p, v, &|f| facet_map[f])).copied())
        .collect::<Option<Vec<usize>>>()?;
    let iso = IncidenceIsomorphism {
        vertex_map,
        facet_map,
    };
    iso.is_valid(p, q).then_some(iso)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{cube, simplex};
    use super::*;
    use crate::linalg::{AffineMap, RatMatrix, RatVector};

    #[test]
    fn cube_self_and_image() {
        let c = cube(4, -1, 1);
        let m = RatMatrix::from_i64_rows(&[
            vec![1, 1, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 2],
            vec![0, 0, 0, 1],
        ])
        .unwrap();
        let image = c
            .affine_image(&AffineMap::new(m, RatVector::from_i64s(&[3, 0, -1, 2])).unwrap())
            .unwrap();
        let iso = is_combinatorially_isomorphic(&c, &image).unwrap();
        assert!(iso.is_valid(&c, &image));
    }

    #[test]
    fn distinguishes_different_polytopes() {
        assert!(is_combinatorially_isomorphic(&cube(3, 0, 1), &simplex(3)).is_none());
        // Square pyramid vs. triangular bipyramid: 5 vertices each.
        let pyramid = Polytope::from_vrep(&[
            RatVector::from_i64s(&[0, 0, 0]),
            RatVector::from_i64s(&[2, 0, 0]),
            RatVector::from_i64s(&[0, 2, 0]),
            RatVector::from_i64s(&[2, 2, 0]),
            RatVector::from_i64s(&[1, 1, 1]),
        ])
        .unwrap();
        let bipyramid = Polytope::from_vrep(&[
            RatVector::from_i64s(&[1, 0, 0]),
            RatVector::from_i64s(&[0, 1, 0]),
            RatVector::from_i64s(&[-1, -1, 0]),
            RatVector::from_i64s(&[0, 0, 1]),
            RatVector::from_i64s(&[0, 0, -1]),
        ])
        .unwrap();
        assert_eq!(pyramid.num_vertices(), bipyramid.num_vertices());
        assert!(is_combinatorially_isomorphic(&pyramid, &bipyramid).is_none());
    }
}
