//! Exchange matrices with frozen indices and their mutations.
//!
//! Indices are the labels `1..=n` throughout the public API. The matrix is
//! rectangular: one row per unfrozen label, one column per label.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SeedJson", into = "SeedJson")]
pub struct Seed {
    n: usize,
    unfrozen: Vec<usize>,
    epsilon: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct SeedJson {
    n: usize,
    unfrozen: Vec<usize>,
    epsilon: Vec<Vec<i64>>,
}

impl TryFrom<SeedJson> for Seed {
    type Error = Error;

    fn try_from(j: SeedJson) -> Result<Self> {
        Seed::new(j.n, j.unfrozen, j.epsilon)
    }
}

impl From<Seed> for SeedJson {
    fn from(s: Seed) -> Self {
        SeedJson {
            n: s.n,
            unfrozen: s.unfrozen,
            epsilon: s.epsilon,
        }
    }
}

/// A directed edge `from → to` of a quiver, with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub multiplicity: u32,
}

/// Relabeling `σ` of `1..=n` fixing every frozen label; `sigma[j - 1] = σ(j)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SeedEquivalence {
    pub sigma: Vec<usize>,
}

impl SeedEquivalence {
    pub fn identity(n: usize) -> Self {
        SeedEquivalence {
            sigma: (1..=n).collect(),
        }
    }

    pub fn apply(&self, j: usize) -> usize {
        self.sigma[j - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.sigma.len()];
        for (j, &s) in self.sigma.iter().enumerate() {
            inv[s - 1] = j + 1;
        }
        SeedEquivalence { sigma: inv }
    }

    /// `(self ∘ other)(j) = self(other(j))`.
    pub fn compose(&self, other: &SeedEquivalence) -> Self {
        SeedEquivalence {
            sigma: other.sigma.iter().map(|&j| self.apply(j)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(j, &s)| s == j + 1)
    }
}

impl Seed {
    pub fn new(n: usize, unfrozen: Vec<usize>, epsilon: Vec<Vec<i64>>) -> Result<Self> {
        if unfrozen.is_empty() || unfrozen.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSeed(
                "unfrozen labels must be nonempty and strictly increasing".into(),
            ));
        }
        if unfrozen.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::InvalidSeed(format!("unfrozen labels must lie in 1..={n}")));
        }
        if epsilon.len() != unfrozen.len() || epsilon.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSeed(format!(
                "exchange matrix must be {}x{n}",
                unfrozen.len()
            )));
        }
        let seed = Seed {
            n,
            unfrozen,
            epsilon,
        };
        for &i in &seed.unfrozen {
            for &j in &seed.unfrozen {
                if seed.entry(i, j) != -seed.entry(j, i) {
                    return Err(Error::InvalidSeed(format!(
                        "unfrozen block is not skew-symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(seed)
    }

    /// Seed whose quiver has the given arrows, using
    /// `ε_{i,j} = #(j → i) − #(i → j)`.
    pub fn from_quiver(n: usize, unfrozen: Vec<usize>, arrows: &[(usize, usize)]) -> Result<Self> {
        if let Some(&(a, b)) = arrows.iter().find(|&&(a, b)| a == 0 || b == 0 || a > n || b > n || a == b) {
            return Err(Error::InvalidSeed(format!("bad arrow {a}->{b}")));
        }
        let epsilon = unfrozen
            .iter()
            .map(|&i| {
                (1..=n)
                    .map(|j| {
                        let into = arrows.iter().filter(|&&a| a == (j, i)).count() as i64;
                        let out = arrows.iter().filter(|&&a| a == (i, j)).count() as i64;
                        into - out
                    })
                    .collect()
            })
            .collect();
        Self::new(n, unfrozen, epsilon)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn unfrozen(&self) -> &[usize] {
        &self.unfrozen
    }

    pub fn is_unfrozen(&self, i: usize) -> bool {
        self.unfrozen.binary_search(&i).is_ok()
    }

    /// Rows indexed by unfrozen labels (in increasing order), columns by `1..=n`.
    pub fn epsilon(&self) -> &[Vec<i64>] {
        &self.epsilon
    }

    fn row_of(&self, i: usize) -> usize {
        self.unfrozen
            .binary_search(&i)
            .unwrap_or_else(|_| panic!("label {i} is frozen"))
    }

    /// `ε_{i,j}` for an unfrozen label `i`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.epsilon[self.row_of(i)][j - 1]
    }

    /// Mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        if !self.is_unfrozen(k) {
            return Err(Error::FrozenDirection(k));
        }
        let epsilon = self
            .unfrozen
            .iter()
            .map(|&i| {
                (1..=self.n)
                    .map(|j| {
                        let e = self.entry(i, j);
                        if i == k || j == k {
                            -e
                        } else {
                            let eik = self.entry(i, k);
                            e + eik.signum() * (eik * self.entry(k, j)).max(0)
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Seed {
            n: self.n,
            unfrozen: self.unfrozen.clone(),
            epsilon,
        })
    }

    /// Mutations in the given directions, left to right.
    pub fn mutate_path(&self, path: &[usize]) -> Result<Seed> {
        path.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Arrows of the quiver, sorted. Arrows between two frozen labels are not
    /// recorded by a rectangular exchange matrix.
    pub fn to_quiver(&self) -> Vec<Arrow> {
        let mut arrows = Vec::new();
        for &i in &self.unfrozen {
            for j in 1..=self.n {
                if self.is_unfrozen(j) && j < i {
                    continue;
                }
                let e = self.entry(i, j);
                let (from, to) = if e < 0 { (i, j) } else { (j, i) };
                if e != 0 {
                    arrows.push(Arrow {
                        from,
                        to,
                        multiplicity: e.unsigned_abs() as u32,
                    });
                }
            }
        }
        arrows.sort();
        arrows
    }

    /// Matrix `ε'_{i,j} = ε_{σ(i),σ(j)}` of the relabeled seed.
    pub fn relabel(&self, sigma: &SeedEquivalence) -> Seed {
        Seed {
            n: self.n,
            unfrozen: self.unfrozen.clone(),
            epsilon: self
                .unfrozen
                .iter()
                .map(|&i| {
                    (1..=self.n)
                        .map(|j| self.entry(sigma.apply(i), sigma.apply(j)))
                        .collect()
                })
                .collect(),
        }
    }

    /// All relabelings permuting the unfrozen labels and fixing the rest.
    pub fn unfrozen_permutations(&self) -> impl Iterator<Item = SeedEquivalence> + '_ {
        self.unfrozen
            .iter()
            .copied()
            .permutations(self.unfrozen.len())
            .map(move |image| {
                let mut sigma: Vec<usize> = (1..=self.n).collect();
                for (&i, &s) in self.unfrozen.iter().zip(&image) {
                    sigma[i - 1] = s;
                }
                SeedEquivalence { sigma }
            })
    }

    /// Lexicographically least relabeled matrix, with a relabeling achieving it.
    pub fn canonical_form(&self) -> (Vec<Vec<i64>>, SeedEquivalence) {
        self.unfrozen_permutations()
            .map(|s| (self.relabel(&s).epsilon, s))
            .min()
            .expect("at least the identity permutation")
    }
}

/// A relabeling `σ` with `other = s.relabel(σ)`, if one exists. The search
/// runs over all permutations of the unfrozen labels.
pub fn seeds_equivalent(s: &Seed, other: &Seed) -> Option<SeedEquivalence> {
    if s.n != other.n || s.unfrozen != other.unfrozen {
        return None;
    }
    s.unfrozen_permutations()
        .find(|sigma| s.relabel(sigma).epsilon == other.epsilon)
}
