//! Exchange graphs: seeds up to relabeling, joined by single mutations.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::{seeds_equivalent, Seed, SeedEquivalence};

/// Data carried along mutations, such as a polytope.
pub trait Transport {
    type Payload: Clone;

    /// Payload at `μ_k(seed)` given the payload at `seed`.
    fn transport(&self, payload: &Self::Payload, seed: &Seed, k: usize) -> Result<Self::Payload>;

    /// Whether `other`, attached to a seed equal to `representative`
    /// relabeled by `sigma`, describes the same object as `payload`.
    fn agrees(&self, payload: &Self::Payload, other: &Self::Payload, sigma: &SeedEquivalence) -> Result<bool>;
}

/// No payload.
pub struct Bare;

impl Transport for Bare {
    type Payload = ();

    fn transport(&self, _: &(), _: &Seed, _: usize) -> Result<()> {
        Ok(())
    }

    fn agrees(&self, _: &(), _: &(), _: &SeedEquivalence) -> Result<bool> {
        Ok(true)
    }
}

#[derive(Clone, Debug)]
pub struct ExchangeNode<P> {
    /// The first realization reached by the search.
    pub seed: Seed,
    /// Mutation directions from the start seed to `seed`.
    pub path: Vec<usize>,
    pub canonical: Vec<Vec<i64>>,
    pub payload: P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExchangeEdge {
    pub source: usize,
    pub target: usize,
    /// Direction of the mutation at `source` (in its realization's labels).
    pub direction: usize,
}

/// A second way of reaching a node: mutating `from` in `direction` yields
/// `node`'s representative relabeled by `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identification {
    pub from: usize,
    pub direction: usize,
    pub node: usize,
    pub sigma: SeedEquivalence,
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph<P = ()> {
    pub nodes: Vec<ExchangeNode<P>>,
    pub edges: Vec<ExchangeEdge>,
    /// Every mutation from every node, including those that close cycles.
    pub identifications: Vec<Identification>,
}

impl<P> ExchangeGraph<P> {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for e in &self.edges {
            deg[e.source] += 1;
            deg[e.target] += 1;
        }
        deg
    }

    pub fn is_regular(&self, degree: usize) -> bool {
        self.degrees().iter().all(|&d| d == degree)
    }

    /// Node reached from `node` by mutating its representative in direction `k`.
    pub fn neighbor(&self, node: usize, k: usize) -> Option<usize> {
        self.identifications
            .iter()
            .find(|i| i.from == node && i.direction == k)
            .map(|i| i.node)
    }

    /// Sorted unordered adjacency pairs.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (e.source.min(e.target), e.source.max(e.target)))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    pub fn to_json(&self) -> ExchangeGraphJson {
        ExchangeGraphJson {
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(id, n)| NodeJson {
                    id,
                    label: None,
                    path: n.path.clone(),
                    seed: n.seed.clone(),
                    canonical_epsilon: n.canonical.clone(),
                })
                .collect(),
            edges: self.edges.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<usize>,
    pub path: Vec<usize>,
    pub seed: Seed,
    pub canonical_epsilon: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeGraphJson {
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<ExchangeEdge>,
}

/// Breadth-first search over mutations of `start` in every unfrozen
/// direction (in increasing order), identifying equivalent seeds.
pub fn build_exchange_graph(start: &Seed, max_depth: usize) -> Result<ExchangeGraph> {
    build_exchange_graph_with(start, (), max_depth, &Bare)
}

/// As [`build_exchange_graph`], carrying a payload along each new tree edge.
/// When a mutation lands on an already known node, its transported payload
/// must agree with the stored one under the identifying relabeling.
pub fn build_exchange_graph_with<T: Transport>(
    start: &Seed,
    payload: T::Payload,
    max_depth: usize,
    transport: &T,
) -> Result<ExchangeGraph<T::Payload>> {
    let mut nodes = vec![ExchangeNode {
        seed: start.clone(),
        path: Vec::new(),
        canonical: start.canonical_form().0,
        payload,
    }];
    let mut by_key: HashMap<Vec<Vec<i64>>, usize> = HashMap::from([(nodes[0].canonical.clone(), 0)]);
    let mut edges: BTreeMap<(usize, usize), ExchangeEdge> = BTreeMap::new();
    let mut identifications = Vec::new();
    let mut queue = VecDeque::from([0usize]);

    while let Some(u) = queue.pop_front() {
        for &k in start.unfrozen() {
            let seed = nodes[u].seed.mutate(k)?;
            let next = transport.transport(&nodes[u].payload, &nodes[u].seed, k)?;
            let (key, _) = seed.canonical_form();
            let v = match by_key.get(&key) {
                Some(&v) => {
                    let sigma = seeds_equivalent(&nodes[v].seed, &seed)
                        .expect("equal canonical forms imply equivalence");
                    if !transport.agrees(&nodes[v].payload, &next, &sigma)? {
                        return Err(Error::PathDisagreement(format!(
                            "node {v} reached from node {u} by mutation {k} carries a different payload"
                        )));
                    }
                    identifications.push(Identification {
                        from: u,
                        direction: k,
                        node: v,
                        sigma,
                    });
                    v
                }
                None => {
                    let mut path = nodes[u].path.clone();
                    path.push(k);
                    if path.len() > max_depth {
                        return Err(Error::DepthExceeded(max_depth));
                    }
                    let v = nodes.len();
                    by_key.insert(key.clone(), v);
                    nodes.push(ExchangeNode {
                        seed,
                        path,
                        canonical: key,
                        payload: next,
                    });
                    identifications.push(Identification {
                        from: u,
                        direction: k,
                        node: v,
                        sigma: SeedEquivalence::identity(start.n()),
                    });
                    queue.push_back(v);
                    v
                }
            };
            edges.entry((u.min(v), u.max(v))).or_insert(ExchangeEdge {
                source: u,
                target: v,
                direction: k,
            });
        }
    }
    Ok(ExchangeGraph {
        nodes,
        edges: edges.into_values().collect(),
        identifications,
    })
}
