//! Engine checks against independent enumeration oracles, plus the
//! structural invariants of covers, colorings and bounded matchings.

mod common;

use common::*;
use mepvcb::generate::{random_bipartite, rng_from_seed};
use mepvcb::graph::{BipartiteGraph, EdgeId, Vertex};
use mepvcb::matching::{
    delta_edge_coloring, max_cardinality_matching, max_induced_matching, max_weight_k_matching,
    max_weight_matching, max_weight_matching_within, min_vertex_cover, EdgeColoring,
};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn random_small(seed: u64, max_side: usize, max_edges: usize) -> BipartiteGraph<i64> {
    let mut rng = rng_from_seed(seed);
    use rand::Rng;
    let left = rng.random_range(1..=max_side);
    let right = rng.random_range(1..=max_side);
    let edges = rng.random_range(0..=max_edges.min(left * right));
    random_bipartite(&mut rng, left, right, edges, 0, 9)
}

#[test]
fn cardinality_matching_matches_enumeration() {
    for seed in 0..120 {
        let g = random_small(seed, 8, 16);
        assert_eq!(
            max_cardinality_matching(&g).size(),
            max_matching_size_enum(&g),
            "seed {seed}"
        );
    }
}

#[test]
fn vertex_cover_matches_enumeration_and_covers() {
    for seed in 0..120 {
        let g = random_small(seed, 8, 16);
        let cover = min_vertex_cover(&g);
        assert_eq!(cover.len(), min_cover_size_enum(&g), "seed {seed}");
        let chosen: BTreeSet<Vertex> = cover.into_iter().collect();
        assert_eq!(
            g.covered_edges(&chosen).unwrap().len(),
            g.edge_count(),
            "seed {seed}: cover must cover all edges"
        );
    }
}

#[test]
fn weight_matching_matches_enumeration() {
    for seed in 0..120 {
        let g = random_small(seed, 7, 14);
        assert_eq!(
            max_weight_matching(&g).total_weight,
            max_matching_weight_enum(&g, None, g.vertex_count()),
            "seed {seed}"
        );
    }
}

#[test]
fn weight_matching_within_matches_enumeration() {
    for seed in 0..80 {
        let g = random_small(seed, 7, 14);
        let mut rng = rng_from_seed(seed ^ 0xbeef);
        use rand::Rng;
        let subset: BTreeSet<EdgeId> = (0..g.edge_count())
            .filter(|_| rng.random_bool(0.6))
            .map(EdgeId)
            .collect();
        let engine = max_weight_matching_within(&g, &subset).unwrap();
        let oracle = max_matching_weight_enum(&g, Some(&subset), g.vertex_count());
        assert_eq!(engine.total_weight, oracle, "seed {seed}");
        assert!(engine.edges.iter().all(|e| subset.contains(e)));
    }
}

#[test]
fn k_matching_matches_enumeration_and_is_monotone() {
    for seed in 0..60 {
        let g = random_small(seed, 7, 14);
        let unrestricted = max_weight_matching(&g).total_weight;
        let mut previous = 0;
        for k in 0..=g.vertex_count() {
            let engine = max_weight_k_matching(&g, k).total_weight;
            let oracle = max_matching_weight_enum(&g, None, k);
            assert_eq!(engine, oracle, "seed {seed}, k {k}");
            assert!(engine >= previous, "monotone in k");
            previous = engine;
        }
        assert_eq!(previous, unrestricted, "saturates at the unrestricted optimum");
    }
}

fn assert_coloring_sound(g: &BipartiteGraph<i64>, coloring: &EdgeColoring<i64>) {
    let delta = g.max_degree();
    assert!(coloring.classes.len() <= delta.max(1) || coloring.classes.is_empty());
    let mut seen = vec![false; g.edge_count()];
    for class in &coloring.classes {
        let mut used: BTreeSet<Vertex> = BTreeSet::new();
        for &e in &class.edges {
            assert!(!seen[e.0], "classes are disjoint");
            seen[e.0] = true;
            let (a, b) = g.endpoints(e);
            assert!(used.insert(a), "class is a matching");
            assert!(used.insert(b), "class is a matching");
        }
    }
    assert!(seen.iter().all(|&s| s), "classes cover every edge");
}

#[test]
fn coloring_is_sound_and_meets_averaging_bound() {
    for seed in 0..120 {
        let g = random_small(seed, 8, 24);
        let coloring = delta_edge_coloring(&g);
        assert_coloring_sound(&g, &coloring);
        if g.edge_count() > 0 {
            // The heaviest class carries at least the average class weight.
            let delta = g.max_degree() as i64;
            let heaviest = coloring
                .classes
                .iter()
                .map(|c| c.total_weight)
                .max()
                .unwrap();
            let total = g.total_weight();
            assert!(
                heaviest * delta >= total,
                "seed {seed}: averaging bound violated"
            );
        }
    }
}

#[test]
fn induced_matching_matches_enumeration() {
    for seed in 0..60 {
        let g = random_small(seed, 6, 12);
        assert_eq!(
            max_induced_matching(&g, 24).unwrap(),
            max_induced_enum(&g),
            "seed {seed}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// König equality on arbitrary generated graphs.
    #[test]
    fn koenig_equality(seed in 0u64..1_000_000) {
        let g = random_small(seed, 10, 30);
        prop_assert_eq!(
            min_vertex_cover(&g).len(),
            max_cardinality_matching(&g).size()
        );
    }

    /// covered_edges is monotone under growing the chosen set.
    #[test]
    fn covered_edges_monotone(seed in 0u64..1_000_000) {
        let g = random_small(seed, 8, 20);
        let mut rng = rng_from_seed(seed ^ 0x5eed);
        use rand::Rng;
        let smaller: BTreeSet<Vertex> = g
            .vertices()
            .filter(|_| rng.random_bool(0.3))
            .collect();
        let mut larger = smaller.clone();
        larger.extend(g.vertices().filter(|_| rng.random_bool(0.3)));
        let covered_small = g.covered_edges(&smaller).unwrap();
        let covered_large = g.covered_edges(&larger).unwrap();
        prop_assert!(covered_small.is_subset(&covered_large));
    }

    /// nu_ind <= nu <= |V| / 2 on anything small enough to evaluate.
    #[test]
    fn matching_number_sandwich(seed in 0u64..1_000_000) {
        let g = random_small(seed, 6, 12);
        let nu = max_cardinality_matching(&g).size();
        let nu_ind = max_induced_matching(&g, 24).unwrap();
        prop_assert!(nu_ind <= nu);
        prop_assert!(nu <= g.vertex_count() / 2);
    }
}
