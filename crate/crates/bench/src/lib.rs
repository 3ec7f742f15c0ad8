//! Fixtures shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pathramsey_core::class_p::sample_binomial;
use pathramsey_core::embed::LllInstance;
use pathramsey_core::graph::{sheared_blowup, MatchingRule};
use pathramsey_core::{EdgeColouring, Graph, Vertex};

pub fn binomial(n: usize, p: f64, seed: u64) -> Graph {
    sample_binomial(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// A template cycle whose candidate sets are the cliques of a sheared
/// blow-up of the same cycle, randomly 2-coloured; colour 0 is forbidden.
pub fn cycle_instance(n: usize, t: usize, seed: u64) -> LllInstance {
    let base = Graph::cycle(n);
    let (host, map) = sheared_blowup(&base, t, MatchingRule::Seeded(seed));
    let chi = EdgeColouring::random(&host, 2, seed).expect("two colours");
    let cliques: Vec<Vec<Vertex>> = (0..n).map(|v| map.clique_of(v).collect()).collect();
    LllInstance::from_colouring(base, cliques, &host, &chi, 0).expect("shapes agree")
}
