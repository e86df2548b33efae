//! Shared test oracles: exhaustive enumerations that are independent of the
//! augmenting-path / branch-and-bound implementation paths they check.
//!
//! Each integration test binary pulls in the subset it needs.
#![allow(dead_code)]

use mepvcb::graph::{BipartiteGraph, EdgeId, Vertex};
use mepvcb::instance::MepvcbInstance;
use std::collections::BTreeSet;

/// Maximum total weight over matchings with at most `max_edges` edges,
/// restricted to `allowed`, by recursion over the edge list.
pub fn max_matching_weight_enum(
    g: &BipartiteGraph<i64>,
    allowed: Option<&BTreeSet<EdgeId>>,
    max_edges: usize,
) -> i64 {
    fn rec(
        g: &BipartiteGraph<i64>,
        allowed: Option<&BTreeSet<EdgeId>>,
        idx: usize,
        used_left: &mut Vec<bool>,
        used_right: &mut Vec<bool>,
        remaining: usize,
        weight: i64,
        best: &mut i64,
    ) {
        *best = (*best).max(weight);
        if idx == g.edge_count() || remaining == 0 {
            return;
        }
        // Skip edge idx.
        rec(g, allowed, idx + 1, used_left, used_right, remaining, weight, best);
        // Take edge idx when permitted.
        let e = g.edge(EdgeId(idx));
        let permitted = allowed.map_or(true, |set| set.contains(&EdgeId(idx)));
        if permitted && !used_left[e.left] && !used_right[e.right] {
            used_left[e.left] = true;
            used_right[e.right] = true;
            rec(
                g,
                allowed,
                idx + 1,
                used_left,
                used_right,
                remaining - 1,
                weight + e.weight,
                best,
            );
            used_left[e.left] = false;
            used_right[e.right] = false;
        }
    }
    let mut best = 0;
    rec(
        g,
        allowed,
        0,
        &mut vec![false; g.left_count()],
        &mut vec![false; g.right_count()],
        max_edges,
        0,
        &mut best,
    );
    best
}

/// Maximum matching cardinality by the same edge-list recursion.
pub fn max_matching_size_enum(g: &BipartiteGraph<i64>) -> usize {
    fn rec(
        g: &BipartiteGraph<i64>,
        idx: usize,
        used_left: &mut Vec<bool>,
        used_right: &mut Vec<bool>,
        count: usize,
        best: &mut usize,
    ) {
        *best = (*best).max(count);
        if idx == g.edge_count() {
            return;
        }
        rec(g, idx + 1, used_left, used_right, count, best);
        let e = g.edge(EdgeId(idx));
        if !used_left[e.left] && !used_right[e.right] {
            used_left[e.left] = true;
            used_right[e.right] = true;
            rec(g, idx + 1, used_left, used_right, count + 1, best);
            used_left[e.left] = false;
            used_right[e.right] = false;
        }
    }
    let mut best = 0;
    rec(
        g,
        0,
        &mut vec![false; g.left_count()],
        &mut vec![false; g.right_count()],
        0,
        &mut best,
    );
    best
}

/// Minimum vertex cover size by enumerating vertex subsets as bitmasks.
pub fn min_cover_size_enum(g: &BipartiteGraph<i64>) -> usize {
    let n = g.vertex_count();
    assert!(n <= 20, "enumeration oracle works on small graphs");
    let vertices: Vec<Vertex> = g.vertices().collect();
    let mut best = n;
    for mask in 0usize..1 << n {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let covers = g.edges().iter().all(|e| {
            let u = vertices.iter().position(|&v| v == Vertex::Left(e.left)).unwrap();
            let v = vertices
                .iter()
                .position(|&v| v == Vertex::Right(e.right))
                .unwrap();
            mask >> u & 1 == 1 || mask >> v & 1 == 1
        });
        if covers {
            best = size;
        }
    }
    best
}

/// Maximum induced matching size by enumerating edge subsets.
pub fn max_induced_enum(g: &BipartiteGraph<i64>) -> usize {
    let m = g.edge_count();
    assert!(m <= 20, "enumeration oracle works on sparse graphs");
    let mut best = 0;
    'mask: for mask in 0usize..1 << m {
        let picked: Vec<EdgeId> = (0..m).filter(|i| mask >> i & 1 == 1).map(EdgeId).collect();
        if picked.len() <= best {
            continue;
        }
        for (i, &a) in picked.iter().enumerate() {
            for &b in &picked[i + 1..] {
                let (ea, eb) = (g.edge(a), g.edge(b));
                let shares = ea.left == eb.left || ea.right == eb.right;
                let joined = g.edge_id(ea.left, eb.right).is_some()
                    || g.edge_id(eb.left, ea.right).is_some();
                if shares || joined {
                    continue 'mask;
                }
            }
        }
        best = picked.len();
    }
    best
}

/// Fully independent decision oracle: vertex subsets as bitmasks, matching
/// weight within the covered set by edge-list recursion. Used to
/// cross-validate the shipped subset-enumeration oracle.
pub fn mepvcb_verdict_enum(inst: &MepvcbInstance<i64>) -> bool {
    let g = &inst.graph;
    let n = g.vertex_count();
    assert!(n <= 16, "enumeration oracle works on small instances");
    let vertices: Vec<Vertex> = g.vertices().collect();
    for mask in 0usize..1 << n {
        if (mask.count_ones() as usize) > inst.k1 {
            continue;
        }
        let chosen: BTreeSet<Vertex> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| vertices[i])
            .collect();
        let covered = g.covered_edges(&chosen).unwrap();
        let covered_weight: i64 = covered.iter().map(|&e| g.weight(e)).sum();
        if covered_weight < inst.k2 {
            continue;
        }
        let best = max_matching_weight_enum(g, Some(&covered), n);
        if best >= inst.k3 {
            return true;
        }
    }
    false
}
