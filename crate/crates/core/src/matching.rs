//! Bipartite combinatorial kernels: matchings, covers and edge colorings.
//!
//! All operations are exact and deterministic. Cardinality matching uses
//! augmenting-path search; minimum vertex cover is extracted from a maximum
//! matching by alternating reachability (König); weighted matching uses
//! successive maximum-gain augmenting paths, which yields the optimum among
//! matchings of every intermediate cardinality and therefore also the
//! cardinality-bounded optimum; edge coloring uses Kempe chain swaps, which
//! on bipartite graphs never loop back and give at most `max_degree` classes.
//!
//! Several kernels accept an `allowed` edge mask so callers can work on edge
//! subgraphs without rebuilding the graph.

use crate::graph::{BipartiteGraph, EdgeId, Vertex};
use crate::num::Weight;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("edge id {id} out of range (graph has {count} edges)")]
    EdgeOutOfRange { id: usize, count: usize },
    #[error("induced matching search needs |V| <= {cap}, got {vertices}")]
    InducedMatchingCapExceeded { vertices: usize, cap: usize },
}

/// A matching: pairwise vertex-disjoint edges and their total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching<W> {
    pub edges: Vec<EdgeId>,
    pub total_weight: W,
}

impl<W: Weight> Matching<W> {
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

/// An edge coloring: matchings (color classes) partitioning the edge set.
#[derive(Debug, Clone)]
pub struct EdgeColoring<W> {
    pub classes: Vec<Matching<W>>,
}

/// Mutable matching state shared by the augmenting-path kernels.
#[derive(Debug, Clone)]
pub(crate) struct MatchState {
    pub match_left: Vec<Option<EdgeId>>,
    pub match_right: Vec<Option<EdgeId>>,
    pub size: usize,
}

impl MatchState {
    fn new(left: usize, right: usize) -> Self {
        Self {
            match_left: vec![None; left],
            match_right: vec![None; right],
            size: 0,
        }
    }

    /// The matched edges in ascending id order.
    pub fn edge_ids(&self) -> Vec<EdgeId> {
        let mut ids: Vec<EdgeId> = self.match_left.iter().flatten().copied().collect();
        ids.sort();
        ids
    }
}

fn edge_allowed(allowed: Option<&[bool]>, id: EdgeId) -> bool {
    allowed.map_or(true, |mask| mask[id.0])
}

/// Maximum-cardinality matching restricted to `allowed` edges (Kuhn).
pub(crate) fn kuhn_matching<W: Weight>(
    g: &BipartiteGraph<W>,
    allowed: Option<&[bool]>,
) -> MatchState {
    fn try_augment<W: Weight>(
        g: &BipartiteGraph<W>,
        allowed: Option<&[bool]>,
        state: &mut MatchState,
        u: usize,
        visited: &mut [bool],
    ) -> bool {
        for &e in g.incident(Vertex::Left(u)) {
            if !edge_allowed(allowed, e) {
                continue;
            }
            let v = g.edge(e).right;
            if visited[v] {
                continue;
            }
            visited[v] = true;
            let free = match state.match_right[v] {
                None => true,
                Some(m) => {
                    let u2 = g.edge(m).left;
                    try_augment(g, allowed, state, u2, visited)
                }
            };
            if free {
                state.match_left[u] = Some(e);
                state.match_right[v] = Some(e);
                return true;
            }
        }
        false
    }

    let mut state = MatchState::new(g.left_count(), g.right_count());
    for u in 0..g.left_count() {
        let mut visited = vec![false; g.right_count()];
        if try_augment(g, allowed, &mut state, u, &mut visited) {
            state.size += 1;
        }
    }
    state
}

/// Minimum vertex cover of the `allowed` subgraph, extracted from a maximum
/// matching by König's alternating reachability argument.
pub(crate) fn koenig_cover<W: Weight>(
    g: &BipartiteGraph<W>,
    allowed: Option<&[bool]>,
    state: &MatchState,
) -> Vec<Vertex> {
    let (l, r) = (g.left_count(), g.right_count());
    let mut reach_left = vec![false; l];
    let mut reach_right = vec![false; r];
    let mut queue: Vec<usize> = Vec::new();
    for u in 0..l {
        // Unmatched means unmatched within the subgraph; edges outside
        // `allowed` do not exist for this computation.
        if state.match_left[u].is_none() {
            reach_left[u] = true;
            queue.push(u);
        }
    }
    while let Some(u) = queue.pop() {
        for &e in g.incident(Vertex::Left(u)) {
            if !edge_allowed(allowed, e) || Some(e) == state.match_left[u] {
                continue;
            }
            let v = g.edge(e).right;
            if reach_right[v] {
                continue;
            }
            reach_right[v] = true;
            if let Some(m) = state.match_right[v] {
                let u2 = g.edge(m).left;
                if !reach_left[u2] {
                    reach_left[u2] = true;
                    queue.push(u2);
                }
            }
        }
    }
    let mut cover: Vec<Vertex> = Vec::new();
    for u in 0..l {
        // Only vertices incident to an allowed edge can be needed.
        if !reach_left[u]
            && g.incident(Vertex::Left(u))
                .iter()
                .any(|&e| edge_allowed(allowed, e))
        {
            cover.push(Vertex::Left(u));
        }
    }
    for v in 0..r {
        if reach_right[v] {
            cover.push(Vertex::Right(v));
        }
    }
    debug_assert_eq!(cover.len(), state.size);
    cover
}

/// Size of a maximum matching, `nu(G)`.
pub fn max_cardinality_matching<W: Weight>(g: &BipartiteGraph<W>) -> Matching<W> {
    let state = kuhn_matching(g, None);
    let edges = state.edge_ids();
    let total_weight = g.weight_of(edges.iter().copied());
    Matching {
        edges,
        total_weight,
    }
}

/// A minimum vertex cover; by König its size equals `nu(G)`.
pub fn min_vertex_cover<W: Weight>(g: &BipartiteGraph<W>) -> Vec<Vertex> {
    let state = kuhn_matching(g, None);
    let mut cover = koenig_cover(g, None, &state);
    cover.sort();
    cover
}

/// Successive maximum-gain augmentation. After `i` rounds the state holds a
/// maximum-weight matching among all matchings of cardinality `i`; stopping
/// at the first non-positive gain (weights are non-negative, so zero-gain
/// augmentations never help) or at `max_card` rounds yields the optimum over
/// matchings with at most `max_card` edges.
fn ssp_matching<W: Weight>(
    g: &BipartiteGraph<W>,
    allowed: Option<&[bool]>,
    max_card: usize,
) -> (MatchState, W) {
    let (l, r) = (g.left_count(), g.right_count());
    let mut state = MatchState::new(l, r);
    let mut total = W::zero();
    let rounds = max_card.min(l).min(r);
    for _ in 0..rounds {
        // Bellman-Ford for the maximum-gain alternating path from an
        // unmatched left vertex to an unmatched right vertex. Gains carry no
        // positive alternating cycle (the current state is optimal for its
        // cardinality), so |V| relaxation sweeps suffice.
        let n = l + r;
        let mut dist: Vec<Option<W>> = vec![None; n];
        let mut pred: Vec<Option<EdgeId>> = vec![None; n];
        for u in 0..l {
            if state.match_left[u].is_none() {
                dist[u] = Some(W::zero());
            }
        }
        for _sweep in 0..=n {
            let mut changed = false;
            for (idx, e) in g.edges().iter().enumerate() {
                let id = EdgeId(idx);
                if !edge_allowed(allowed, id) {
                    continue;
                }
                let (lu, rv) = (e.left, l + e.right);
                if state.match_left[e.left] == Some(id) {
                    // Matched edge traversed right-to-left removes weight.
                    if let Some(dv) = dist[rv] {
                        let cand = dv - e.weight;
                        if dist[lu].map_or(true, |du| cand > du) {
                            dist[lu] = Some(cand);
                            pred[lu] = Some(id);
                            changed = true;
                        }
                    }
                } else if let Some(du) = dist[lu] {
                    let cand = du + e.weight;
                    if dist[rv].map_or(true, |dv| cand > dv) {
                        dist[rv] = Some(cand);
                        pred[rv] = Some(id);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut best: Option<(W, usize)> = None;
        for v in 0..r {
            if state.match_right[v].is_none() {
                if let Some(dv) = dist[l + v] {
                    if best.map_or(true, |(b, _)| dv > b) {
                        best = Some((dv, v));
                    }
                }
            }
        }
        let Some((gain, sink)) = best else { break };
        if gain <= W::zero() {
            break;
        }
        // Trace the path back and flip it.
        let mut added: Vec<EdgeId> = Vec::new();
        let mut removed: Vec<EdgeId> = Vec::new();
        let mut at_right = sink;
        loop {
            assert!(added.len() <= n, "augmenting path is simple");
            let add = pred[l + at_right].expect("path reaches an initialized vertex");
            added.push(add);
            let u = g.edge(add).left;
            match state.match_left[u] {
                Some(m) if pred[u] == Some(m) => {
                    removed.push(m);
                    at_right = g.edge(m).right;
                }
                _ => break,
            }
        }
        for &m in &removed {
            state.match_left[g.edge(m).left] = None;
            state.match_right[g.edge(m).right] = None;
        }
        for &a in &added {
            state.match_left[g.edge(a).left] = Some(a);
            state.match_right[g.edge(a).right] = Some(a);
        }
        state.size += 1;
        total = total + gain;
        debug_assert_eq!(added.len(), removed.len() + 1);
    }
    debug_assert_eq!(total, g.weight_of(state.edge_ids()));
    (state, total)
}

fn matching_from_state<W: Weight>(g: &BipartiteGraph<W>, state: &MatchState) -> Matching<W> {
    let edges = state.edge_ids();
    let total_weight = g.weight_of(edges.iter().copied());
    Matching {
        edges,
        total_weight,
    }
}

/// Maximum-weight matching, `nu_w(G)`. Never includes zero-weight edges.
pub fn max_weight_matching<W: Weight>(g: &BipartiteGraph<W>) -> Matching<W> {
    let (state, _) = ssp_matching(g, None, g.left_count().min(g.right_count()));
    matching_from_state(g, &state)
}

/// Maximum-weight matching restricted to `subset`, `nu_w(subset)`.
pub fn max_weight_matching_within<W: Weight>(
    g: &BipartiteGraph<W>,
    subset: &BTreeSet<EdgeId>,
) -> Result<Matching<W>, EngineError> {
    let mut mask = vec![false; g.edge_count()];
    for &id in subset {
        if id.0 >= g.edge_count() {
            return Err(EngineError::EdgeOutOfRange {
                id: id.0,
                count: g.edge_count(),
            });
        }
        mask[id.0] = true;
    }
    let (state, _) = ssp_matching(g, Some(&mask), g.left_count().min(g.right_count()));
    Ok(matching_from_state(g, &state))
}

/// Maximum-weight matching over an `allowed` mask; internal fast path.
pub(crate) fn max_weight_matching_masked<W: Weight>(
    g: &BipartiteGraph<W>,
    allowed: Option<&[bool]>,
) -> Matching<W> {
    let (state, _) = ssp_matching(g, allowed, g.left_count().min(g.right_count()));
    matching_from_state(g, &state)
}

/// Maximum total weight over matchings with at most `k` edges.
pub fn max_weight_k_matching<W: Weight>(g: &BipartiteGraph<W>, k: usize) -> Matching<W> {
    let (state, _) = ssp_matching(g, None, k);
    matching_from_state(g, &state)
}

/// Edge coloring of the `allowed` subgraph with at most its maximum degree
/// many classes, via Kempe chain swaps.
pub(crate) fn delta_edge_coloring_masked<W: Weight>(
    g: &BipartiteGraph<W>,
    allowed: Option<&[bool]>,
) -> EdgeColoring<W> {
    let sub_degree = |v: Vertex| {
        g.incident(v)
            .iter()
            .filter(|&&e| edge_allowed(allowed, e))
            .count()
    };
    let delta = g.vertices().map(sub_degree).max().unwrap_or(0);
    if delta == 0 {
        return EdgeColoring { classes: vec![] };
    }
    let n = g.vertex_count();
    // at[vertex][color] = edge currently carrying that color at the vertex.
    let mut at: Vec<Vec<Option<EdgeId>>> = vec![vec![None; delta]; n];
    let mut color_of: Vec<Option<usize>> = vec![None; g.edge_count()];

    let free_color = |at: &Vec<Vec<Option<EdgeId>>>, v: usize| -> usize {
        (0..delta)
            .find(|&c| at[v][c].is_none())
            .expect("a vertex of degree <= delta always has a free color")
    };

    for (idx, e) in g.edges().iter().enumerate() {
        let id = EdgeId(idx);
        if !edge_allowed(allowed, id) {
            continue;
        }
        let (u, v) = (
            g.linear_index(Vertex::Left(e.left)),
            g.linear_index(Vertex::Right(e.right)),
        );
        let a = free_color(&at, u);
        let b = free_color(&at, v);
        if a != b {
            // Swap colors a and b along the maximal alternating chain
            // starting at v. In a bipartite graph the chain cannot end at u
            // (it would have to arrive with the wrong color for the path
            // parity), so after the swap color a is free at both endpoints.
            let mut chain: Vec<EdgeId> = Vec::new();
            let mut w = v;
            let mut want = a;
            while let Some(chain_edge) = at[w][want] {
                chain.push(chain_edge);
                assert!(chain.len() <= g.edge_count(), "kempe chain is a simple path");
                let ce = g.edge(chain_edge);
                let lu = g.linear_index(Vertex::Left(ce.left));
                w = if w == lu {
                    g.linear_index(Vertex::Right(ce.right))
                } else {
                    lu
                };
                want = if want == a { b } else { a };
            }
            for &chain_edge in &chain {
                let old = color_of[chain_edge.0].expect("chain edges are colored");
                let ce = g.edge(chain_edge);
                at[g.linear_index(Vertex::Left(ce.left))][old] = None;
                at[g.linear_index(Vertex::Right(ce.right))][old] = None;
            }
            for &chain_edge in &chain {
                let old = color_of[chain_edge.0].expect("chain edges are colored");
                let new = if old == a { b } else { a };
                let ce = g.edge(chain_edge);
                at[g.linear_index(Vertex::Left(ce.left))][new] = Some(chain_edge);
                at[g.linear_index(Vertex::Right(ce.right))][new] = Some(chain_edge);
                color_of[chain_edge.0] = Some(new);
            }
            debug_assert!(at[u][a].is_none() && at[v][a].is_none());
        }
        at[u][a] = Some(id);
        at[v][a] = Some(id);
        color_of[idx] = Some(a);
    }

    let mut classes: Vec<Vec<EdgeId>> = vec![Vec::new(); delta];
    for (idx, c) in color_of.iter().enumerate() {
        if let Some(c) = c {
            classes[*c].push(EdgeId(idx));
        }
    }
    let classes = classes
        .into_iter()
        .filter(|edges| !edges.is_empty())
        .map(|edges| {
            let total_weight = g.weight_of(edges.iter().copied());
            Matching {
                edges,
                total_weight,
            }
        })
        .collect();
    EdgeColoring { classes }
}

/// Proper edge coloring with at most `max_degree(G)` color classes.
pub fn delta_edge_coloring<W: Weight>(g: &BipartiteGraph<W>) -> EdgeColoring<W> {
    delta_edge_coloring_masked(g, None)
}

/// Exact maximum induced matching size, `nu_ind(G)`, by branch and bound on
/// the edge conflict graph. Exponential in general; guarded by `cap`.
pub fn max_induced_matching<W: Weight>(
    g: &BipartiteGraph<W>,
    cap: usize,
) -> Result<usize, EngineError> {
    if g.vertex_count() > cap {
        return Err(EngineError::InducedMatchingCapExceeded {
            vertices: g.vertex_count(),
            cap,
        });
    }
    let m = g.edge_count();
    // conflicts[e] = edges that cannot join e in an induced matching: sharing
    // a vertex, or joined to e by some edge of the graph.
    let mut conflicts: Vec<Vec<usize>> = vec![Vec::new(); m];
    for i in 0..m {
        let ei = g.edge(EdgeId(i));
        for j in (i + 1)..m {
            let ej = g.edge(EdgeId(j));
            let conflict = ei.left == ej.left
                || ei.right == ej.right
                || g.edge_id(ei.left, ej.right).is_some()
                || g.edge_id(ej.left, ei.right).is_some();
            if conflict {
                conflicts[i].push(j);
                conflicts[j].push(i);
            }
        }
    }

    fn search(conflicts: &[Vec<usize>], available: &[usize], current: usize, best: &mut usize) {
        if current + available.len() <= *best {
            return;
        }
        let Some((&pick, rest)) = available.split_first() else {
            *best = (*best).max(current);
            return;
        };
        // Include `pick`.
        let filtered: Vec<usize> = rest
            .iter()
            .copied()
            .filter(|&x| !conflicts[pick].contains(&x))
            .collect();
        search(conflicts, &filtered, current + 1, best);
        // Exclude `pick`.
        search(conflicts, rest, current, best);
    }

    // Branch on high-conflict edges first.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(conflicts[i].len()));
    let mut best = 0;
    search(&conflicts, &order, 0, &mut best);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(l: usize, r: usize) -> BipartiteGraph<i64> {
        let mut edges = Vec::new();
        for u in 0..l {
            for v in 0..r {
                edges.push((u, v, 1i64));
            }
        }
        BipartiteGraph::new(l, r, edges).unwrap()
    }

    fn two_path(w1: i64, w2: i64) -> BipartiteGraph<i64> {
        BipartiteGraph::new(1, 2, [(0, 0, w1), (0, 1, w2)]).unwrap()
    }

    fn disjoint_edges(weights: &[i64]) -> BipartiteGraph<i64> {
        let n = weights.len();
        let edges: Vec<_> = weights.iter().enumerate().map(|(i, &w)| (i, i, w)).collect();
        BipartiteGraph::new(n, n, edges).unwrap()
    }

    #[test]
    fn k33_has_perfect_matching() {
        assert_eq!(max_cardinality_matching(&complete(3, 3)).size(), 3);
    }

    #[test]
    fn two_path_matching_size_one() {
        assert_eq!(max_cardinality_matching(&two_path(1, 1)).size(), 1);
    }

    #[test]
    fn k22_cover_has_size_two_and_covers_all() {
        let g = complete(2, 2);
        let cover = min_vertex_cover(&g);
        assert_eq!(cover.len(), 2);
        let chosen: BTreeSet<Vertex> = cover.into_iter().collect();
        assert_eq!(g.covered_edges(&chosen).unwrap().len(), g.edge_count());
    }

    #[test]
    fn star_cover_is_the_center() {
        let g = complete(1, 5);
        assert_eq!(min_vertex_cover(&g), vec![Vertex::Left(0)]);
    }

    #[test]
    fn single_edge_weight_five() {
        let g = BipartiteGraph::new(1, 1, [(0, 0, 5i64)]).unwrap();
        assert_eq!(max_weight_matching(&g).total_weight, 5);
    }

    #[test]
    fn two_path_picks_heavier_edge() {
        let m = max_weight_matching(&two_path(3, 4));
        assert_eq!(m.total_weight, 4);
        assert_eq!(m.edges, vec![EdgeId(1)]);
    }

    #[test]
    fn weight_matching_skips_zero_weight_edges() {
        let g = disjoint_edges(&[0, 7, 0]);
        let m = max_weight_matching(&g);
        assert_eq!(m.total_weight, 7);
        assert_eq!(m.size(), 1);
    }

    #[test]
    fn within_subset_respects_restriction() {
        let g = two_path(3, 4);
        let only_light: BTreeSet<EdgeId> = [EdgeId(0)].into();
        let m = max_weight_matching_within(&g, &only_light).unwrap();
        assert_eq!(m.total_weight, 3);
        assert_eq!(m.edges, vec![EdgeId(0)]);
    }

    #[test]
    fn within_rejects_unknown_edge() {
        let g = two_path(3, 4);
        let bad: BTreeSet<EdgeId> = [EdgeId(9)].into();
        assert!(matches!(
            max_weight_matching_within(&g, &bad),
            Err(EngineError::EdgeOutOfRange { .. })
        ));
    }

    #[test]
    fn k_matching_zero_budget_is_empty() {
        let g = disjoint_edges(&[5, 4, 1]);
        let m = max_weight_k_matching(&g, 0);
        assert_eq!(m.size(), 0);
        assert_eq!(m.total_weight, 0);
    }

    #[test]
    fn k_matching_takes_two_heaviest() {
        // Three disjoint edges (5, 4, 1): the best 2-matching weighs 9.
        let g = disjoint_edges(&[5, 4, 1]);
        assert_eq!(max_weight_k_matching(&g, 2).total_weight, 9);
    }

    #[test]
    fn k_matching_saturates_at_nu() {
        let g = disjoint_edges(&[5, 4, 1]);
        let unrestricted = max_weight_matching(&g);
        assert_eq!(
            max_weight_k_matching(&g, 17).total_weight,
            unrestricted.total_weight
        );
    }

    #[test]
    fn coloring_perfect_matching_single_class() {
        let g = disjoint_edges(&[2, 3, 4]);
        let coloring = delta_edge_coloring(&g);
        assert_eq!(coloring.classes.len(), 1);
        assert_eq!(coloring.classes[0].edges.len(), 3);
    }

    #[test]
    fn coloring_k33_three_classes_of_three() {
        let coloring = delta_edge_coloring(&complete(3, 3));
        assert_eq!(coloring.classes.len(), 3);
        for class in &coloring.classes {
            assert_eq!(class.edges.len(), 3);
        }
    }

    #[test]
    fn induced_matching_complete_bipartite_is_one() {
        for t in 1..=4 {
            assert_eq!(max_induced_matching(&complete(t, t), 24).unwrap(), 1);
        }
    }

    #[test]
    fn induced_matching_disjoint_edges_all() {
        let g = disjoint_edges(&[1, 1, 1, 1]);
        assert_eq!(max_induced_matching(&g, 24).unwrap(), 4);
    }

    #[test]
    fn induced_matching_three_edge_path_is_one() {
        // Path a - b - c - d: taking both end edges leaves them joined by
        // the middle edge, so only one edge fits.
        let g = BipartiteGraph::new(2, 2, [(0, 0, 1i64), (1, 0, 1), (1, 1, 1)]).unwrap();
        assert_eq!(max_induced_matching(&g, 24).unwrap(), 1);
    }

    #[test]
    fn induced_matching_cap_enforced() {
        let g = complete(3, 3);
        assert!(matches!(
            max_induced_matching(&g, 4),
            Err(EngineError::InducedMatchingCapExceeded { .. })
        ));
    }
}
