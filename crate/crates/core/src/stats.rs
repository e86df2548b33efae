//! Derived graph statistics: degree profile, cover/matching/independence
//! numbers, induced matching size (capped) and metric radius/diameter.

use crate::graph::{BipartiteGraph, Vertex};
use crate::matching::{kuhn_matching, max_cardinality_matching, max_induced_matching};
use crate::num::Weight;
use std::collections::VecDeque;

/// Statistics of a bipartite graph.
///
/// `tau` and `nu` are computed independently (König cover extraction versus
/// augmenting-path matching) and agree by König's theorem; `alpha` is
/// `|V| - tau` by Gallai. `nu_ind` is exact but exponential to compute, so it
/// is `None` when the vertex count exceeds the requested cap. Radius and
/// diameter of a disconnected graph are the maxima over its connected
/// components, with `disconnected` set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphStats {
    pub max_degree: usize,
    pub tau: usize,
    pub nu: usize,
    pub alpha: usize,
    pub nu_ind: Option<usize>,
    pub radius: usize,
    pub diameter: usize,
    pub disconnected: bool,
    pub degree_0: usize,
    pub degree_1: usize,
    pub degree_2: usize,
    pub at_least_2: usize,
    pub at_least_3: usize,
}

/// Default vertex-count cap for the exact induced matching search.
pub const DEFAULT_INDUCED_MATCHING_CAP: usize = 24;

pub fn graph_stats<W: Weight>(g: &BipartiteGraph<W>, induced_matching_cap: usize) -> GraphStats {
    let n = g.vertex_count();
    let mut degree_0 = 0;
    let mut degree_1 = 0;
    let mut degree_2 = 0;
    let mut at_least_2 = 0;
    let mut at_least_3 = 0;
    for v in g.vertices() {
        match g.degree(v) {
            0 => degree_0 += 1,
            1 => degree_1 += 1,
            2 => degree_2 += 1,
            _ => {}
        }
        if g.degree(v) >= 2 {
            at_least_2 += 1;
        }
        if g.degree(v) >= 3 {
            at_least_3 += 1;
        }
    }

    let nu = max_cardinality_matching(g).size();
    let state = kuhn_matching(g, None);
    let tau = crate::matching::koenig_cover(g, None, &state).len();
    debug_assert_eq!(tau, nu);
    let alpha = n - tau;
    let nu_ind = max_induced_matching(g, induced_matching_cap).ok();

    let (radius, diameter, disconnected) = metric_profile(g);

    GraphStats {
        max_degree: g.max_degree(),
        tau,
        nu,
        alpha,
        nu_ind,
        radius,
        diameter,
        disconnected,
        degree_0,
        degree_1,
        degree_2,
        at_least_2,
        at_least_3,
    }
}

/// Radius and diameter taken as maxima over connected components.
fn metric_profile<W: Weight>(g: &BipartiteGraph<W>) -> (usize, usize, bool) {
    let n = g.vertex_count();
    if n == 0 {
        return (0, 0, false);
    }
    let vertices: Vec<Vertex> = g.vertices().collect();
    let mut component = vec![usize::MAX; n];
    let mut components = 0;
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = components;
        components += 1;
        let mut queue = VecDeque::from([start]);
        component[start] = id;
        while let Some(x) = queue.pop_front() {
            for &e in g.incident(vertices[x]) {
                let y = g.linear_index(g.other_endpoint(e, vertices[x]));
                if component[y] == usize::MAX {
                    component[y] = id;
                    queue.push_back(y);
                }
            }
        }
    }

    let mut radius_per: Vec<usize> = vec![usize::MAX; components];
    let mut diameter_per: Vec<usize> = vec![0; components];
    for start in 0..n {
        // BFS eccentricity of `start` within its component.
        let mut dist = vec![usize::MAX; n];
        dist[start] = 0;
        let mut ecc = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &e in g.incident(vertices[x]) {
                let y = g.linear_index(g.other_endpoint(e, vertices[x]));
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    ecc = ecc.max(dist[y]);
                    queue.push_back(y);
                }
            }
        }
        let c = component[start];
        radius_per[c] = radius_per[c].min(ecc);
        diameter_per[c] = diameter_per[c].max(ecc);
    }
    let radius = radius_per.into_iter().max().unwrap_or(0);
    let diameter = diameter_per.into_iter().max().unwrap_or(0);
    (radius, diameter, components > 1)
}
