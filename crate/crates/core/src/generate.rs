//! Seeded instance generators for corpora, benchmarks and the CLI.
//!
//! Everything is driven by a caller-provided ChaCha generator so identical
//! seeds reproduce identical instances on any platform.

use crate::graph::BipartiteGraph;
use crate::instance::{BkpInstance, CardinalityMode, MepvcbInstance, SubsetSumInstance};
use crate::matching::max_weight_matching;
use crate::num::Weight;
use rand::seq::SliceRandom;
use rand::Rng;
pub use rand_chacha::ChaCha8Rng;

/// Restriction level of a generated knapsack instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BkpLevel {
    /// Arbitrary signed profits, exact-budget semantics.
    Signed,
    /// Strictly positive profits, at-most-budget semantics.
    Positive,
    /// Positive profits with `pr1 - pr2 <= pr2 < pr1` per item.
    Ordered,
    /// Ordered profits with `sum(pr1 - pr2) < min pr2`.
    Gapped,
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

fn weight_in<W: Weight>(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> W {
    let v = rng.random_range(lo..=hi);
    num_traits::NumCast::from(v).expect("generator ranges fit the scalar")
}

/// Random simple bipartite graph with `edge_count` edges (capped by
/// `left * right`) and weights drawn from `lo..=hi`.
pub fn random_bipartite<W: Weight>(
    rng: &mut ChaCha8Rng,
    left: usize,
    right: usize,
    edge_count: usize,
    lo: i64,
    hi: i64,
) -> BipartiteGraph<W> {
    let mut pairs: Vec<(usize, usize)> = (0..left)
        .flat_map(|u| (0..right).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    let edges: Vec<_> = pairs
        .into_iter()
        .take(edge_count.min(left * right))
        .map(|(u, v)| (u, v, weight_in::<W>(rng, lo, hi)))
        .collect();
    BipartiteGraph::new(left, right, edges).expect("generated edges are valid")
}

/// Disjoint union of `n` 2-paths; centers on the left, endpoints on the
/// right, each edge weighted from `lo..=hi`.
pub fn two_paths<W: Weight>(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> BipartiteGraph<W> {
    let mut edges = Vec::with_capacity(2 * n);
    for i in 0..n {
        edges.push((i, 2 * i, weight_in::<W>(rng, lo, hi)));
        edges.push((i, 2 * i + 1, weight_in::<W>(rng, lo, hi)));
    }
    BipartiteGraph::new(n, 2 * n, edges).expect("generated edges are valid")
}

/// `degree`-regular bipartite graph on `side + side` vertices: a circulant
/// edge set composed with random relabelings of both sides.
pub fn regular_bipartite<W: Weight>(
    rng: &mut ChaCha8Rng,
    side: usize,
    degree: usize,
    lo: i64,
    hi: i64,
) -> BipartiteGraph<W> {
    assert!(degree <= side, "degree {degree} impossible on side {side}");
    let mut left_labels: Vec<usize> = (0..side).collect();
    let mut right_labels: Vec<usize> = (0..side).collect();
    left_labels.shuffle(rng);
    right_labels.shuffle(rng);
    let mut edges = Vec::with_capacity(side * degree);
    for i in 0..side {
        for j in 0..degree {
            let u = left_labels[i];
            let v = right_labels[(i + j) % side];
            edges.push((u, v, weight_in::<W>(rng, lo, hi)));
        }
    }
    BipartiteGraph::new(side, side, edges).expect("circulant edges are simple")
}

/// Complete bipartite graph with random weights.
pub fn complete_bipartite<W: Weight>(
    rng: &mut ChaCha8Rng,
    left: usize,
    right: usize,
    lo: i64,
    hi: i64,
) -> BipartiteGraph<W> {
    let mut edges = Vec::with_capacity(left * right);
    for u in 0..left {
        for v in 0..right {
            edges.push((u, v, weight_in::<W>(rng, lo, hi)));
        }
    }
    BipartiteGraph::new(left, right, edges).expect("generated edges are valid")
}

/// Graph shaped for the core-enumeration solver: a random core, pendant
/// vertices hanging off core vertices, isolated edges, isolated vertices.
pub fn core_pendant_isolated<W: Weight>(
    rng: &mut ChaCha8Rng,
    core_left: usize,
    core_right: usize,
    core_edges: usize,
    pendants: usize,
    isolated_edges: usize,
    isolated_vertices: usize,
    lo: i64,
    hi: i64,
) -> BipartiteGraph<W> {
    let mut edges: Vec<(usize, usize, W)> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = (0..core_left)
        .flat_map(|u| (0..core_right).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    for (u, v) in pairs.into_iter().take(core_edges.min(core_left * core_right)) {
        edges.push((u, v, weight_in::<W>(rng, lo, hi)));
    }
    // Pendants attach alternately: a right pendant to a left core vertex or
    // a left pendant to a right core vertex.
    let mut next_left = core_left;
    let mut next_right = core_right;
    for _ in 0..pendants {
        if rng.random_bool(0.5) && core_left > 0 {
            let u = rng.random_range(0..core_left);
            edges.push((u, next_right, weight_in::<W>(rng, lo, hi)));
            next_right += 1;
        } else if core_right > 0 {
            let v = rng.random_range(0..core_right);
            edges.push((next_left, v, weight_in::<W>(rng, lo, hi)));
            next_left += 1;
        }
    }
    for _ in 0..isolated_edges {
        edges.push((next_left, next_right, weight_in::<W>(rng, lo, hi)));
        next_left += 1;
        next_right += 1;
    }
    next_left += isolated_vertices;
    next_right += isolated_vertices;
    BipartiteGraph::new(next_left.max(1), next_right.max(1), edges)
        .expect("generated edges are valid")
}

/// Random thresholds spanning feasible and infeasible ranges: `k2` up to one
/// past the total weight, `k3` up to one past the maximum matching weight.
pub fn random_thresholds<W: Weight>(
    rng: &mut ChaCha8Rng,
    graph: &BipartiteGraph<W>,
) -> (usize, W, W) {
    let n = graph.vertex_count().max(1);
    let k1 = rng.random_range(1..=n);
    let total: i64 = num_traits::NumCast::from(graph.total_weight()).unwrap_or(i64::MAX);
    let best: i64 =
        num_traits::NumCast::from(max_weight_matching(graph).total_weight).unwrap_or(i64::MAX);
    let k2 = rng.random_range(1..=total.max(1) + 1);
    let k3 = rng.random_range(1..=best.max(1) + 1);
    (
        k1,
        num_traits::NumCast::from(k2).expect("threshold fits the scalar"),
        num_traits::NumCast::from(k3).expect("threshold fits the scalar"),
    )
}

/// Random decision instance over a generated graph.
pub fn random_instance<W: Weight>(
    rng: &mut ChaCha8Rng,
    left: usize,
    right: usize,
    edge_count: usize,
    lo: i64,
    hi: i64,
) -> MepvcbInstance<W> {
    let graph = random_bipartite(rng, left, right, edge_count, lo, hi);
    let (k1, k2, k3) = random_thresholds(rng, &graph);
    MepvcbInstance::new(graph, k1, k2, k3).expect("generated thresholds are valid")
}

/// Random knapsack instance at the requested restriction level.
pub fn random_bkp<W: Weight>(
    rng: &mut ChaCha8Rng,
    items: usize,
    max_profit: i64,
    level: BkpLevel,
) -> BkpInstance<W> {
    assert!(items >= 1);
    let max_profit = max_profit.max(2);
    let (profits1, profits2): (Vec<i64>, Vec<i64>) = match level {
        BkpLevel::Signed => (0..items)
            .map(|_| {
                (
                    rng.random_range(-max_profit..=max_profit),
                    rng.random_range(-max_profit..=max_profit),
                )
            })
            .unzip(),
        BkpLevel::Positive => (0..items)
            .map(|_| {
                (
                    rng.random_range(1..=max_profit),
                    rng.random_range(1..=max_profit),
                )
            })
            .unzip(),
        BkpLevel::Ordered => (0..items)
            .map(|_| {
                // pr2 < pr1 <= 2 * pr2 gives the ordering restriction.
                let p2 = rng.random_range(1..=max_profit);
                let p1 = rng.random_range(p2 + 1..=2 * p2);
                (p1, p2)
            })
            .unzip(),
        BkpLevel::Gapped => {
            let diffs: Vec<i64> = (0..items)
                .map(|_| rng.random_range(1..=max_profit.min(4)))
                .collect();
            let spread: i64 = diffs.iter().sum();
            diffs
                .iter()
                .map(|&d| {
                    // pr2 > spread keeps the gap; pr2 >= d keeps the ordering.
                    let p2 = rng.random_range(spread + 1..=spread + max_profit);
                    (p2 + d, p2)
                })
                .unzip()
        }
    };
    let budget = rng.random_range(1..=items);
    // Center thresholds on an achievable subset so corpora mix yes and no.
    let pick: Vec<usize> = {
        let mut idx: Vec<usize> = (0..items).collect();
        idx.shuffle(rng);
        idx.into_iter().take(budget).collect()
    };
    let base1: i64 = pick.iter().map(|&i| profits1[i]).sum();
    let base2: i64 = pick.iter().map(|&i| profits2[i]).sum();
    let jitter = (max_profit / 2).max(1);
    let threshold1 = base1 + rng.random_range(-jitter..=jitter);
    let threshold2 = base2 + rng.random_range(-jitter..=jitter);
    let mode = match level {
        BkpLevel::Signed => CardinalityMode::ExactlyBudget,
        _ => CardinalityMode::AtMostBudget,
    };
    BkpInstance::new(
        profits1
            .into_iter()
            .map(|p| num_traits::NumCast::from(p).expect("profit fits the scalar"))
            .collect(),
        profits2
            .into_iter()
            .map(|p| num_traits::NumCast::from(p).expect("profit fits the scalar"))
            .collect(),
        budget,
        num_traits::NumCast::from(threshold1).expect("threshold fits the scalar"),
        num_traits::NumCast::from(threshold2).expect("threshold fits the scalar"),
        mode,
    )
    .expect("generated knapsack dimensions are valid")
}

/// Random sized-subset-sum instance; targets are biased toward achievable
/// sums so corpora mix yes and no answers.
pub fn random_subsetsum<W: Weight>(
    rng: &mut ChaCha8Rng,
    items: usize,
    magnitude: i64,
) -> SubsetSumInstance<W> {
    assert!(items >= 1);
    let values: Vec<i64> = (0..items)
        .map(|_| rng.random_range(-magnitude..=magnitude))
        .collect();
    let size = rng.random_range(1..=items);
    let target = if rng.random_bool(0.5) {
        let mut idx: Vec<usize> = (0..items).collect();
        idx.shuffle(rng);
        idx.into_iter().take(size).map(|i| values[i]).sum::<i64>()
    } else {
        rng.random_range(-magnitude * size as i64..=magnitude * size as i64)
    };
    SubsetSumInstance::new(
        values
            .into_iter()
            .map(|v| num_traits::NumCast::from(v).expect("value fits the scalar"))
            .collect(),
        num_traits::NumCast::from(target).expect("target fits the scalar"),
        size,
    )
    .expect("generated dimensions are valid")
}

/// Default verification corpus for a reduction: a few fixed instances that
/// exercise the trivial-instance guards and catch each built-in mutation,
/// plus `count` seeded random instances satisfying the reduction's
/// preconditions. Sizes keep both oracle sides within the default caps.
pub fn reduction_corpus<W: Weight>(
    kind: crate::reductions::ReductionKind,
    seed: u64,
    count: usize,
) -> Vec<crate::instance::AnyInstance<W>> {
    use crate::instance::AnyInstance;
    use crate::reductions::ReductionKind as K;

    let mut rng = rng_from_seed(seed);
    let w = |v: i64| -> W { num_traits::NumCast::from(v).expect("corpus constant fits") };
    let bkp = |p1: Vec<i64>, p2: Vec<i64>, b: usize, t1: i64, t2: i64, mode: CardinalityMode| {
        AnyInstance::Bkp(
            BkpInstance::new(
                p1.into_iter().map(w).collect(),
                p2.into_iter().map(w).collect(),
                b,
                w(t1),
                w(t2),
                mode,
            )
            .expect("corpus constant is valid"),
        )
    };
    let mepvcb = |left: usize,
                  right: usize,
                  edges: Vec<(usize, usize, i64)>,
                  k1: usize,
                  k2: i64,
                  k3: i64| {
        let graph = BipartiteGraph::new(
            left,
            right,
            edges.into_iter().map(|(u, v, x)| (u, v, w(x))),
        )
        .expect("corpus constant is valid");
        AnyInstance::Mepvcb(
            MepvcbInstance::new(graph, k1, w(k2), w(k3)).expect("corpus constant is valid"),
        )
    };

    let mut corpus: Vec<AnyInstance<W>> = match kind {
        K::SubsetsumToBkpSigned | K::ChainSubsetsumTo2Paths => vec![AnyInstance::SubsetSum(
            SubsetSumInstance::new(vec![w(1), w(2)], w(1), 1).expect("valid"),
        )],
        K::BkpShiftPositive => vec![
            // P1 equals the total magnitude: the +1 in Q is what keeps this
            // reachable.
            bkp(vec![5], vec![5], 1, 5, 5, CardinalityMode::ExactlyBudget),
            bkp(vec![5], vec![5], 1, 7, 0, CardinalityMode::ExactlyBudget),
            bkp(vec![2], vec![-2], 1, -9, -9, CardinalityMode::ExactlyBudget),
        ],
        K::BkpEnforceOrdering => vec![bkp(
            vec![3],
            vec![2],
            1,
            4,
            3,
            CardinalityMode::AtMostBudget,
        )],
        K::BkpEnforceGap => vec![bkp(
            vec![9],
            vec![6],
            1,
            10,
            7,
            CardinalityMode::AtMostBudget,
        )],
        K::BkpToMepvcb2Paths => vec![bkp(
            vec![3],
            vec![2],
            1,
            4,
            2,
            CardinalityMode::AtMostBudget,
        )],
        K::EmbedRegular | K::EmbedComplete | K::EmbedCompleteBipartition => {
            vec![mepvcb(1, 1, vec![(0, 0, 5)], 1, 8, 5)]
        }
        K::AddApexForDelta => vec![mepvcb(1, 1, vec![(0, 0, 5)], 1, 8, 5)],
        K::LinkIntoPath | K::LinkIntoCycle => {
            vec![mepvcb(1, 2, vec![(0, 0, 3), (0, 1, 4)], 1, 8, 4)]
        }
        K::IdentifyIntoTree => vec![mepvcb(
            2,
            4,
            vec![(0, 0, 3), (0, 1, 10), (1, 2, 3), (1, 3, 11)],
            1,
            21,
            10,
        )],
    };

    for _ in 0..count {
        use rand::Rng;
        let inst = match kind {
            K::SubsetsumToBkpSigned | K::ChainSubsetsumTo2Paths => {
                let n = rng.random_range(1..=5);
                AnyInstance::SubsetSum(random_subsetsum(&mut rng, n, 6))
            }
            K::BkpShiftPositive => {
                let n = rng.random_range(1..=6);
                AnyInstance::Bkp(random_bkp(&mut rng, n, 8, BkpLevel::Signed))
            }
            K::BkpEnforceOrdering => {
                let n = rng.random_range(1..=6);
                AnyInstance::Bkp(random_bkp(&mut rng, n, 8, BkpLevel::Positive))
            }
            K::BkpEnforceGap => {
                let n = rng.random_range(1..=6);
                AnyInstance::Bkp(random_bkp(&mut rng, n, 8, BkpLevel::Ordered))
            }
            K::BkpToMepvcb2Paths => {
                let n = rng.random_range(1..=5);
                AnyInstance::Bkp(random_bkp(&mut rng, n, 8, BkpLevel::Ordered))
            }
            K::EmbedRegular | K::EmbedComplete | K::EmbedCompleteBipartition => {
                let left = rng.random_range(1..=4);
                let right = rng.random_range(1..=4);
                let edges = rng.random_range(1..=(left * right));
                AnyInstance::Mepvcb(random_instance(&mut rng, left, right, edges, 1, 6))
            }
            K::AddApexForDelta => {
                let left = rng.random_range(1..=4);
                let right = rng.random_range(1..=(7usize.saturating_sub(left)).max(1).min(4));
                let edges = rng.random_range(1..=(left * right));
                AnyInstance::Mepvcb(random_instance(&mut rng, left, right, edges, 1, 6))
            }
            K::LinkIntoPath | K::LinkIntoCycle => {
                let n = rng.random_range(1..=3);
                let graph = two_paths(&mut rng, n, 1, 6);
                let (k1, k2, k3) = random_thresholds(&mut rng, &graph);
                AnyInstance::Mepvcb(
                    MepvcbInstance::new(graph, k1, k2, k3).expect("generated thresholds valid"),
                )
            }
            K::IdentifyIntoTree => {
                let n = rng.random_range(1..=5);
                let bkp: BkpInstance<W> = random_bkp(&mut rng, n, 6, BkpLevel::Gapped);
                let reduced = crate::reductions::bkp_to_mepvcb_2paths(&bkp, false)
                    .expect("gapped instances satisfy the gadget precondition");
                AnyInstance::Mepvcb(reduced.target)
            }
        };
        corpus.push(inst);
    }
    corpus
}
