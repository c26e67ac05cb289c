pub mod equivalence;
pub mod error;
pub mod exchange;
pub mod flag;
pub mod linalg;
pub mod polytope;
pub mod rational;
pub mod seed;
pub mod tropical;

pub use error::{Error, Result};
pub use exchange::{build_exchange_graph, build_exchange_graph_with, ExchangeGraph, Transport};
pub use linalg::{AffineMap, RatMatrix, RatVector};
pub use polytope::{HalfSpace, Polytope};
pub use rational::Rational;
pub use seed::{seeds_equivalent, Seed, SeedEquivalence};
pub use tropical::{apply_tropical, tropical_map, TropicalMutation};
