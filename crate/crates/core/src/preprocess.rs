//! Rewrite rules that solve or simplify instances before exact search.
//!
//! Applied in order by [`normalize`]:
//!
//! 1. `rule_budget_exceeds_cover`: with `k1 >= tau(G)` a minimum vertex
//!    cover reaches everything, so the instance reduces to two global checks.
//! 2. `rule_matching_dominates`: with `k2 <= k3` any matching of weight
//!    `k3` already provides the coverage, so the instance is equivalent to
//!    `(G, w, k1, k3, k3)` and is decided by a maximum-weight matching with
//!    at most `k1` edges.
//! 3. `rule_ratio_reduces_to_epvcb`: with `k2 >= k3 * max_degree` the
//!    coverage-only answer carries over: the covered subgraph splits into at
//!    most `max_degree` color classes, the heaviest of which is a matching
//!    of weight at least `k2 / max_degree >= k3`.
//! 4. `rule_small_k3`: with `k3 <= k1`, grow the covered subgraph returned
//!    by the coverage subroutine one edge at a time; its cover number rises
//!    by at most one per edge, and once it reaches `k3` a König matching of
//!    that size certifies the matching threshold (weights are at least 1).
//!
//! A surviving instance satisfies `k1 < k3 < k2 < k3 * max_degree(G)`, which
//! is asserted. `rule_complement_budget` and `rule_one_regular` are opt-in
//! strategies, not part of normalization.
//!
//! Rules 3 and 4 read a matching of size `s` as having weight at least `s`,
//! which needs every weight to be at least 1. Zero-weight edges never affect
//! a verdict (they add nothing to either threshold), so callers strip them
//! first; see [`strip_zero_weight_edges`].

use crate::graph::{BipartiteGraph, EdgeId, Vertex};
use crate::instance::{check_certificate, Certificate, MepvcbInstance, Verdict};
use crate::matching::{
    delta_edge_coloring_masked, koenig_cover, kuhn_matching, max_weight_k_matching,
    max_weight_matching, min_vertex_cover,
};
use crate::num::Weight;
use crate::solvers::{brute_force_mepvcb, EpvcbSolver};
use std::collections::BTreeSet;

/// Result of attempting one rewrite rule.
#[derive(Debug, Clone)]
pub enum PreprocessOutcome<W> {
    /// The rule solved the instance outright.
    Decided(Verdict<W>),
    /// The rule produced an equivalent instance (yes iff the source is yes).
    Rewritten(MepvcbInstance<W>, &'static str),
    /// The instance reduces to the coverage-only problem with these
    /// parameters on the same graph.
    ReducedToEpvcb {
        graph: BipartiteGraph<W>,
        k1: usize,
        k2: W,
    },
    /// The rule's guard did not fire.
    Unchanged,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PreprocessError {
    #[error("normalization requires all edge weights >= 1; strip zero-weight edges first")]
    ZeroWeightEdges,
}

pub const BUDGET_RULE: &str = "rule:budget-exceeds-cover";
pub const MATCHING_RULE: &str = "rule:matching-dominates";
pub const RATIO_RULE: &str = "rule:ratio-epvcb";
pub const SMALL_K3_RULE: &str = "rule:small-k3";
pub const COMPLEMENT_RULE: &str = "rule:complement-budget";
pub const ONE_REGULAR_RULE: &str = "rule:one-regular";
pub const ZERO_WEIGHT_REWRITE: &str = "rewrite:drop-zero-weight-edges";

/// Remove zero-weight edges; `None` when there are none. Zero-weight edges
/// contribute nothing to coverage or matching weight, so the rewrite
/// preserves the verdict with the same vertex set.
pub fn strip_zero_weight_edges<W: Weight>(
    inst: &MepvcbInstance<W>,
) -> Option<MepvcbInstance<W>> {
    let g = &inst.graph;
    if g.edges().iter().all(|e| e.weight > W::zero()) {
        return None;
    }
    let kept = g
        .edges()
        .iter()
        .filter(|e| e.weight > W::zero())
        .map(|e| (e.left, e.right, e.weight));
    let graph = BipartiteGraph::new(g.left_count(), g.right_count(), kept)
        .expect("filtering edges preserves validity");
    Some(
        MepvcbInstance::new(graph, inst.k1, inst.k2, inst.k3)
            .expect("thresholds unchanged, vertex set unchanged"),
    )
}

/// Rule wrapper around [`strip_zero_weight_edges`].
pub fn rule_strip_zero_weight<W: Weight>(inst: &MepvcbInstance<W>) -> PreprocessOutcome<W> {
    match strip_zero_weight_edges(inst) {
        Some(rewritten) => PreprocessOutcome::Rewritten(rewritten, ZERO_WEIGHT_REWRITE),
        None => PreprocessOutcome::Unchanged,
    }
}

/// With `k1 >= tau(G)` a minimum vertex cover fits the budget and covers
/// every edge, so the best achievable coverage is `w(E)` and the best
/// matching is the global maximum-weight matching.
pub fn rule_budget_exceeds_cover<W: Weight>(inst: &MepvcbInstance<W>) -> PreprocessOutcome<W> {
    let g = &inst.graph;
    let cover = min_vertex_cover(g);
    if inst.k1 < cover.len() {
        return PreprocessOutcome::Unchanged;
    }
    let best_matching = max_weight_matching(g);
    if g.total_weight() >= inst.k2 && best_matching.total_weight >= inst.k3 {
        let cert = Certificate::from_parts(
            g,
            cover.into_iter().collect(),
            best_matching.edges.into_iter().collect(),
        )
        .expect("cover vertices belong to the graph");
        debug_assert_eq!(check_certificate(inst, &cert), Ok(()));
        PreprocessOutcome::Decided(Verdict::yes(cert, BUDGET_RULE))
    } else {
        PreprocessOutcome::Decided(Verdict::no(BUDGET_RULE))
    }
}

/// With `k2 <= k3` the instance is equivalent to `(G, w, k1, k3, k3)`: a
/// matching of weight `k3` inside the covered edges needs at most `k1`
/// edges (one chosen endpoint each), so the decision is exactly whether the
/// best matching with at most `k1` edges weighs `k3`.
pub fn rule_matching_dominates<W: Weight>(inst: &MepvcbInstance<W>) -> PreprocessOutcome<W> {
    if inst.k2 > inst.k3 {
        return PreprocessOutcome::Unchanged;
    }
    let g = &inst.graph;
    let best = max_weight_k_matching(g, inst.k1);
    if best.total_weight >= inst.k3 {
        let chosen: BTreeSet<Vertex> = best
            .edges
            .iter()
            .map(|&e| Vertex::Left(g.edge(e).left))
            .collect();
        let cert = Certificate::from_parts(g, chosen, best.edges.into_iter().collect())
            .expect("matching endpoints belong to the graph");
        debug_assert_eq!(check_certificate(inst, &cert), Ok(()));
        PreprocessOutcome::Decided(Verdict::yes(cert, MATCHING_RULE))
    } else {
        PreprocessOutcome::Decided(Verdict::no(MATCHING_RULE))
    }
}

/// With `k2 / k3 >= max_degree(G)` the matching threshold is implied by the
/// coverage threshold, so the instance reduces to the coverage-only problem.
pub fn rule_ratio_reduces_to_epvcb<W: Weight>(inst: &MepvcbInstance<W>) -> PreprocessOutcome<W> {
    let delta = inst.graph.max_degree();
    let Some(delta_w) = W::from_count(delta)
        .ok()
        .and_then(|d| inst.k3.checked_mul(&d))
    else {
        // k3 * delta overflows the scalar, so it certainly exceeds k2.
        return PreprocessOutcome::Unchanged;
    };
    if inst.k2 >= delta_w {
        PreprocessOutcome::ReducedToEpvcb {
            graph: inst.graph.clone(),
            k1: inst.k1,
            k2: inst.k2,
        }
    } else {
        PreprocessOutcome::Unchanged
    }
}

/// Decide an instance that [`rule_ratio_reduces_to_epvcb`] reduced, using
/// `solver` for the coverage-only question. A positive answer is lifted to a
/// full certificate by taking the heaviest color class of the covered
/// subgraph, whose weight is at least `k2 / max_degree >= k3`.
pub fn resolve_epvcb_reduction<W: Weight>(
    inst: &MepvcbInstance<W>,
    solver: &dyn EpvcbSolver<W>,
) -> Verdict<W> {
    let g = &inst.graph;
    match solver.solve(g, inst.k1, inst.k2) {
        None => Verdict::no(RATIO_RULE),
        Some(chosen) => {
            let chosen: BTreeSet<Vertex> = chosen.into_iter().collect();
            let covered = g.covered_edges(&chosen).expect("solver returns graph vertices");
            let mut mask = vec![false; g.edge_count()];
            for &e in &covered {
                mask[e.0] = true;
            }
            let coloring = delta_edge_coloring_masked(g, Some(&mask));
            let heaviest = coloring
                .classes
                .iter()
                .max_by(|a, b| {
                    a.total_weight
                        .cmp(&b.total_weight)
                        // First class wins ties for determinism.
                        .then(b.edges.cmp(&a.edges))
                })
                .expect("a feasible cover with k2 >= 1 covers at least one edge");
            let cert =
                Certificate::from_parts(g, chosen, heaviest.edges.iter().copied().collect())
                    .expect("chosen vertices belong to the graph");
            debug_assert!(cert.matching_weight >= inst.k3);
            debug_assert_eq!(check_certificate(inst, &cert), Ok(()));
            Verdict::yes(cert, RATIO_RULE)
        }
    }
}

/// With `k3 <= k1` (and weights at least 1) the instance is decided by the
/// coverage subroutine plus a grow-the-subgraph argument.
///
/// Let `R` be the least budget making coverage `k2` feasible and `H` the
/// edges covered by that solution; minimality forces `tau(H) = R`. If
/// `R >= k3`, a maximum matching of `H` has `R` edges and thus weight at
/// least `k3`. Otherwise edges of `G - H` are added in ascending id order;
/// `tau(H)` rises by at most one per edge, so it hits `k3` exactly, at which
/// point a König cover of `H` (size `k3 <= k1`) plus a maximum matching of
/// `H` certify both thresholds. The answer is no only when even budget `k1`
/// cannot reach coverage `k2`.
pub fn rule_small_k3<W: Weight>(
    inst: &MepvcbInstance<W>,
    solver: &dyn EpvcbSolver<W>,
) -> PreprocessOutcome<W> {
    let k3_count = match usize::try_from(
        <i128 as num_traits::NumCast>::from(inst.k3).expect("k3 fits in i128"),
    ) {
        Ok(v) => v,
        Err(_) => return PreprocessOutcome::Unchanged,
    };
    if k3_count > inst.k1 {
        return PreprocessOutcome::Unchanged;
    }
    let g = &inst.graph;
    if g.edges().iter().any(|e| e.weight < W::one()) {
        // The size-to-weight argument needs weights >= 1.
        return PreprocessOutcome::Unchanged;
    }

    let mut feasible: Option<(usize, Vec<Vertex>)> = None;
    for r in 1..=inst.k1 {
        if let Some(chosen) = solver.solve(g, r, inst.k2) {
            feasible = Some((r, chosen));
            break;
        }
    }
    let Some((r, chosen)) = feasible else {
        return PreprocessOutcome::Decided(Verdict::no(SMALL_K3_RULE));
    };

    let chosen_set: BTreeSet<Vertex> = chosen.iter().copied().collect();
    let covered = g
        .covered_edges(&chosen_set)
        .expect("solver returns graph vertices");
    let mut h_mask = vec![false; g.edge_count()];
    for &e in &covered {
        h_mask[e.0] = true;
    }
    let state = kuhn_matching(g, Some(&h_mask));
    debug_assert_eq!(state.size, r, "minimal budget equals the cover number of H");

    if state.size >= k3_count {
        let matching: BTreeSet<EdgeId> = state.edge_ids().into_iter().collect();
        let cert = Certificate::from_parts(g, chosen_set, matching)
            .expect("solver returns graph vertices");
        debug_assert_eq!(check_certificate(inst, &cert), Ok(()));
        return PreprocessOutcome::Decided(Verdict::yes(cert, SMALL_K3_RULE));
    }

    // Grow H edge by edge until its cover number reaches k3.
    let mut tau_h = state.size;
    let mut steps = 0usize;
    for id in 0..g.edge_count() {
        if tau_h == k3_count {
            break;
        }
        if h_mask[id] {
            continue;
        }
        h_mask[id] = true;
        steps += 1;
        let new_tau = kuhn_matching(g, Some(&h_mask)).size;
        assert!(
            new_tau <= tau_h + 1,
            "adding one edge raises the cover number by at most one"
        );
        tau_h = new_tau;
    }
    assert!(steps <= g.edge_count(), "growth terminates within |E| steps");

    if tau_h < k3_count {
        // H is the whole graph and tau(G) < k3; possible only when the
        // budget rule was skipped. A matching of weight k3 exists iff the
        // global maximum-weight matching reaches it, and coverage k2 is
        // already feasible within k1 <= |V| vertices.
        let best = max_weight_matching(g);
        if best.total_weight >= inst.k3 {
            let cover: BTreeSet<Vertex> = min_vertex_cover(g).into_iter().collect();
            let cert = Certificate::from_parts(g, cover, best.edges.into_iter().collect())
                .expect("cover vertices belong to the graph");
            debug_assert_eq!(check_certificate(inst, &cert), Ok(()));
            return PreprocessOutcome::Decided(Verdict::yes(cert, SMALL_K3_RULE));
        }
        return PreprocessOutcome::Decided(Verdict::no(SMALL_K3_RULE));
    }

    let final_state = kuhn_matching(g, Some(&h_mask));
    let cover: BTreeSet<Vertex> = koenig_cover(g, Some(&h_mask), &final_state)
        .into_iter()
        .collect();
    debug_assert_eq!(cover.len(), k3_count);
    let matching: BTreeSet<EdgeId> = final_state.edge_ids().into_iter().collect();
    let cert = Certificate::from_parts(g, cover, matching)
        .expect("cover vertices belong to the graph");
    debug_assert_eq!(check_certificate(inst, &cert), Ok(()));
    PreprocessOutcome::Decided(Verdict::yes(cert, SMALL_K3_RULE))
}

/// Decide via the complementary budget `|V| - k1`: either the budget covers
/// half the vertices (then it covers a minimum vertex cover, and the budget
/// rule's two checks decide), or `|V| <= 2 (|V| - k1)` and plain subset
/// enumeration is fixed-parameter tractable in `|V| - k1`.
pub fn decide_complement_budget<W: Weight>(inst: &MepvcbInstance<W>) -> Verdict<W> {
    let n = inst.graph.vertex_count();
    if 2 * inst.k1 >= n {
        // tau <= |V| / 2 <= k1 in any bipartite graph.
        match rule_budget_exceeds_cover(inst) {
            PreprocessOutcome::Decided(v) => Verdict {
                answer: v.answer,
                method: COMPLEMENT_RULE.into(),
            },
            _ => unreachable!("budget rule fires whenever k1 >= tau"),
        }
    } else {
        let mut verdict = brute_force_mepvcb(inst, n).expect("cap equals the vertex count");
        verdict.method = COMPLEMENT_RULE.into();
        verdict
    }
}

/// Rule wrapper around [`decide_complement_budget`]; always decides.
pub fn rule_complement_budget<W: Weight>(inst: &MepvcbInstance<W>) -> PreprocessOutcome<W> {
    PreprocessOutcome::Decided(decide_complement_budget(inst))
}

/// On a 1-regular graph (ignoring isolated vertices) the k1 heaviest edges
/// maximize coverage and matching weight simultaneously.
pub fn rule_one_regular<W: Weight>(inst: &MepvcbInstance<W>) -> PreprocessOutcome<W> {
    let g = &inst.graph;
    if g.max_degree() > 1 {
        return PreprocessOutcome::Unchanged;
    }
    let mut ids: Vec<EdgeId> = (0..g.edge_count()).map(EdgeId).collect();
    ids.sort_by(|&a, &b| g.weight(b).cmp(&g.weight(a)).then(a.cmp(&b)));
    let picked: Vec<EdgeId> = ids.into_iter().take(inst.k1).collect();
    let total = g.weight_of(picked.iter().copied());
    if total >= inst.k2 && total >= inst.k3 {
        let chosen: BTreeSet<Vertex> = picked
            .iter()
            .map(|&e| Vertex::Left(g.edge(e).left))
            .collect();
        let cert = Certificate::from_parts(g, chosen, picked.into_iter().collect())
            .expect("edge endpoints belong to the graph");
        debug_assert_eq!(check_certificate(inst, &cert), Ok(()));
        PreprocessOutcome::Decided(Verdict::yes(cert, ONE_REGULAR_RULE))
    } else {
        PreprocessOutcome::Decided(Verdict::no(ONE_REGULAR_RULE))
    }
}

/// Result of running the normalization pipeline.
#[derive(Debug, Clone)]
pub enum NormalizeOutcome<W> {
    Decided(Verdict<W>),
    /// Instance surviving all rules; satisfies `k1 < k3 < k2 < k3 * delta`.
    Normalized(MepvcbInstance<W>),
}

/// Apply the four normalization rules in order. Requires weights >= 1.
pub fn normalize<W: Weight>(
    inst: &MepvcbInstance<W>,
    solver: &dyn EpvcbSolver<W>,
) -> Result<NormalizeOutcome<W>, PreprocessError> {
    if inst.graph.edges().iter().any(|e| e.weight < W::one()) {
        return Err(PreprocessError::ZeroWeightEdges);
    }
    if let PreprocessOutcome::Decided(v) = rule_budget_exceeds_cover(inst) {
        return Ok(NormalizeOutcome::Decided(v));
    }
    if let PreprocessOutcome::Decided(v) = rule_matching_dominates(inst) {
        return Ok(NormalizeOutcome::Decided(v));
    }
    if let PreprocessOutcome::ReducedToEpvcb { .. } = rule_ratio_reduces_to_epvcb(inst) {
        return Ok(NormalizeOutcome::Decided(resolve_epvcb_reduction(
            inst, solver,
        )));
    }
    if let PreprocessOutcome::Decided(v) = rule_small_k3(inst, solver) {
        return Ok(NormalizeOutcome::Decided(v));
    }
    // Failed guards pin down the survivor's parameter ordering.
    let k1 = W::from_count(inst.k1).expect("k1 <= |V| fits the scalar");
    assert!(k1 < inst.k3, "survivor satisfies k1 < k3");
    assert!(inst.k3 < inst.k2, "survivor satisfies k3 < k2");
    let delta = W::from_count(inst.graph.max_degree()).expect("degree fits the scalar");
    if let Some(bound) = inst.k3.checked_mul(&delta) {
        assert!(inst.k2 < bound, "survivor satisfies k2 < k3 * delta");
    }
    Ok(NormalizeOutcome::Normalized(inst.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::BranchAndBoundEpvcb;

    fn two_path_instance(w1: i64, w2: i64, k1: usize, k2: i64, k3: i64) -> MepvcbInstance<i64> {
        let g = BipartiteGraph::new(1, 2, [(0, 0, w1), (0, 1, w2)]).unwrap();
        MepvcbInstance::new(g, k1, k2, k3).unwrap()
    }

    fn disjoint_edges_instance(weights: &[i64], k1: usize, k2: i64, k3: i64) -> MepvcbInstance<i64> {
        let n = weights.len();
        let edges: Vec<_> = weights.iter().enumerate().map(|(i, &w)| (i, i, w)).collect();
        let g = BipartiteGraph::new(n, n, edges).unwrap();
        MepvcbInstance::new(g, k1, k2, k3).unwrap()
    }

    fn k22_unit(k1: usize, k2: i64, k3: i64) -> MepvcbInstance<i64> {
        let g = BipartiteGraph::new(2, 2, [(0, 0, 1i64), (0, 1, 1), (1, 0, 1), (1, 1, 1)])
            .unwrap();
        MepvcbInstance::new(g, k1, k2, k3).unwrap()
    }

    #[test]
    fn budget_rule_two_path_yes_and_no() {
        // tau = 1 <= k1, w(E) = 7, nu_w = 4.
        let yes = two_path_instance(3, 4, 1, 7, 4);
        let PreprocessOutcome::Decided(v) = rule_budget_exceeds_cover(&yes) else {
            panic!("guard should fire")
        };
        assert!(v.is_yes());
        assert_eq!(
            v.certificate().unwrap().chosen,
            [Vertex::Left(0)].into()
        );

        let no = two_path_instance(3, 4, 1, 8, 4);
        let PreprocessOutcome::Decided(v) = rule_budget_exceeds_cover(&no) else {
            panic!("guard should fire")
        };
        assert!(!v.is_yes());
    }

    #[test]
    fn budget_rule_guard_fails_below_tau() {
        let inst = k22_unit(1, 2, 1);
        assert!(matches!(
            rule_budget_exceeds_cover(&inst),
            PreprocessOutcome::Unchanged
        ));
    }

    #[test]
    fn matching_rule_three_disjoint_edges() {
        let yes = disjoint_edges_instance(&[5, 4, 1], 2, 6, 9);
        let PreprocessOutcome::Decided(v) = rule_matching_dominates(&yes) else {
            panic!("guard should fire")
        };
        assert!(v.is_yes());

        let no = disjoint_edges_instance(&[5, 4, 1], 2, 6, 10);
        let PreprocessOutcome::Decided(v) = rule_matching_dominates(&no) else {
            panic!("guard should fire")
        };
        assert!(!v.is_yes());

        let unchanged = disjoint_edges_instance(&[5, 4, 1], 2, 9, 6);
        assert!(matches!(
            rule_matching_dominates(&unchanged),
            PreprocessOutcome::Unchanged
        ));
    }

    #[test]
    fn ratio_rule_guard_boundary() {
        // max_degree = 2: fires at k2 = 10, k3 = 5; not at k2 = 9.
        let fires = k22_unit(1, 10, 5);
        assert!(matches!(
            rule_ratio_reduces_to_epvcb(&fires),
            PreprocessOutcome::ReducedToEpvcb { k1: 1, k2: 10, .. }
        ));
        let not = k22_unit(1, 9, 5);
        assert!(matches!(
            rule_ratio_reduces_to_epvcb(&not),
            PreprocessOutcome::Unchanged
        ));
    }

    #[test]
    fn small_k3_rule_examples() {
        // k3 = 1: a single covered edge of weight >= 1 is matching enough.
        let inst = two_path_instance(3, 4, 1, 3, 1);
        let PreprocessOutcome::Decided(v) = rule_small_k3(&inst, &BranchAndBoundEpvcb) else {
            panic!("guard should fire")
        };
        assert!(v.is_yes());

        // Path with 4 unit edges, k = (2, 3, 2).
        let g = BipartiteGraph::new(
            2,
            3,
            [(0, 0, 1i64), (0, 1, 1), (1, 1, 1), (1, 2, 1)],
        )
        .unwrap();
        let inst = MepvcbInstance::new(g, 2, 3, 2).unwrap();
        let PreprocessOutcome::Decided(v) = rule_small_k3(&inst, &BranchAndBoundEpvcb) else {
            panic!("guard should fire")
        };
        assert!(v.is_yes());

        // Even k1 vertices cover too little weight.
        let inst = disjoint_edges_instance(&[1, 1, 1], 2, 3, 1);
        let PreprocessOutcome::Decided(v) = rule_small_k3(&inst, &BranchAndBoundEpvcb) else {
            panic!("guard should fire")
        };
        assert!(!v.is_yes());
    }

    #[test]
    fn complement_rule_branches() {
        // |V| = 6, k1 = 3: the cover-number branch.
        let inst = disjoint_edges_instance(&[2, 3, 4], 3, 9, 9);
        let v = decide_complement_budget(&inst);
        assert!(v.is_yes());
        assert_eq!(v.method, COMPLEMENT_RULE);

        // |V| = 6, k1 = 2: the enumeration branch.
        let inst = disjoint_edges_instance(&[2, 3, 4], 2, 7, 7);
        assert!(decide_complement_budget(&inst).is_yes());
        let inst = disjoint_edges_instance(&[2, 3, 4], 2, 8, 7);
        assert!(!decide_complement_budget(&inst).is_yes());
    }

    #[test]
    fn one_regular_rule_examples() {
        let yes = disjoint_edges_instance(&[5, 4, 1], 2, 9, 9);
        let PreprocessOutcome::Decided(v) = rule_one_regular(&yes) else {
            panic!("guard should fire")
        };
        assert!(v.is_yes());

        let no = disjoint_edges_instance(&[5, 4, 1], 2, 10, 9);
        let PreprocessOutcome::Decided(v) = rule_one_regular(&no) else {
            panic!("guard should fire")
        };
        assert!(!v.is_yes());

        let unchanged = two_path_instance(1, 1, 1, 1, 1);
        assert!(matches!(
            rule_one_regular(&unchanged),
            PreprocessOutcome::Unchanged
        ));
    }

    #[test]
    fn normalize_decides_k2_below_k3_via_matching_rule() {
        let inst = k22_unit(1, 1, 1);
        let NormalizeOutcome::Decided(v) = normalize(&inst, &BranchAndBoundEpvcb).unwrap()
        else {
            panic!("k2 <= k3 must be decided")
        };
        assert_eq!(v.method, MATCHING_RULE);
        assert!(v.is_yes());
    }

    #[test]
    fn normalize_rejects_zero_weight_edges() {
        let g = BipartiteGraph::new(1, 2, [(0, 0, 0i64), (0, 1, 4)]).unwrap();
        let inst = MepvcbInstance::new(g, 1, 2, 1).unwrap();
        assert_eq!(
            normalize(&inst, &BranchAndBoundEpvcb).unwrap_err(),
            PreprocessError::ZeroWeightEdges
        );
    }

    #[test]
    fn strip_zero_weight_preserves_structure() {
        let g = BipartiteGraph::new(1, 2, [(0, 0, 0i64), (0, 1, 4)]).unwrap();
        let inst = MepvcbInstance::new(g, 1, 2, 1).unwrap();
        let stripped = strip_zero_weight_edges(&inst).unwrap();
        assert_eq!(stripped.graph.edge_count(), 1);
        assert_eq!(stripped.graph.vertex_count(), 3);
        let clean = two_path_instance(3, 4, 1, 7, 4);
        assert!(strip_zero_weight_edges(&clean).is_none());
    }

    #[test]
    fn normalized_survivor_satisfies_the_chain() {
        // K_{2,2} with k = (1, 4, 3): tau = 2 > k1, k3 < k2, k2 < k3 * 2,
        // k3 > k1, so it survives all four rules.
        let g = BipartiteGraph::new(2, 2, [(0, 0, 3i64), (0, 1, 3), (1, 0, 3), (1, 1, 3)])
            .unwrap();
        let inst = MepvcbInstance::new(g, 1, 4, 3).unwrap();
        let NormalizeOutcome::Normalized(survivor) =
            normalize(&inst, &BranchAndBoundEpvcb).unwrap()
        else {
            panic!("instance should survive")
        };
        assert_eq!(survivor, inst);
    }
}
