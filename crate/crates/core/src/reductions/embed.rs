//! Graph-side transformations: embeddings into regular and complete
//! bipartite graphs, tree identification, path/cycle linking, and the apex
//! construction.
//!
//! All of them follow the same scale-separation scheme: original edge
//! weights are multiplied by `C = |V|^2`, new edges weigh 1, and thresholds
//! scale to `C * k2` and `C * k3`. Fewer than `C` new edges are added, so
//! any feasible set in the image induces coverage strictly above
//! `C * (k - 1)` from original edges alone, which forces the unscaled
//! thresholds in the source.

use super::{Reduced, ReductionError};
use crate::graph::{BipartiteGraph, Vertex};
use crate::instance::MepvcbInstance;
use crate::matching::{max_cardinality_matching, max_induced_matching};
use crate::num::{mul_checked, Weight};

/// The separation constant `C = |V|^2` of `graph`.
fn scale_constant<W: Weight>(graph: &BipartiteGraph<W>) -> Result<W, ReductionError> {
    let n = W::from_count(graph.vertex_count())?;
    Ok(mul_checked(n, n)?)
}

fn require_positive_weights<W: Weight>(graph: &BipartiteGraph<W>) -> Result<(), ReductionError> {
    if graph.edges().iter().any(|e| e.weight < W::one()) {
        return Err(ReductionError::Precondition(
            "embedding expects edge weights >= 1".into(),
        ));
    }
    Ok(())
}

fn scale_weight<W: Weight>(w: W, c: W) -> Result<W, ReductionError> {
    Ok(mul_checked(w, c)?)
}

fn scaled_thresholds<W: Weight>(
    inst: &MepvcbInstance<W>,
    c: W,
    mutated: bool,
) -> Result<(W, W), ReductionError> {
    // The mutated variant forgets to scale the thresholds, which lets the
    // weight-1 filler edges and the C-scaled originals satisfy unscaled
    // demands in the image of no-instances.
    if mutated {
        Ok((inst.k2, inst.k3))
    } else {
        Ok((mul_checked(inst.k2, c)?, mul_checked(inst.k3, c)?))
    }
}

/// Minimal Edmonds-Karp flow used by the regular completion.
struct FlowNet {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        Self {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, cap: i64) -> usize {
        let id = self.to.len();
        self.adj[u].push(id);
        self.to.push(v);
        self.cap.push(cap);
        self.adj[v].push(id + 1);
        self.to.push(u);
        self.cap.push(0);
        id
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> i64 {
        let mut total = 0;
        loop {
            let mut pred: Vec<Option<usize>> = vec![None; self.adj.len()];
            let mut queue = std::collections::VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                if u == sink {
                    break;
                }
                for &e in &self.adj[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && pred[v].is_none() && v != source {
                        pred[v] = Some(e);
                        queue.push_back(v);
                    }
                }
            }
            if pred[sink].is_none() {
                return total;
            }
            let mut bottleneck = i64::MAX;
            let mut v = sink;
            while v != source {
                let e = pred[v].expect("path reaches the source");
                bottleneck = bottleneck.min(self.cap[e]);
                v = self.to[e ^ 1];
            }
            let mut v = sink;
            while v != source {
                let e = pred[v].expect("path reaches the source");
                self.cap[e] -= bottleneck;
                self.cap[e ^ 1] += bottleneck;
                v = self.to[e ^ 1];
            }
            total += bottleneck;
        }
    }
}

/// Find new edges turning `g` (padded to `t + t` vertices) into a
/// `degree`-regular simple bipartite graph, if the padding admits one.
fn regular_completion<W: Weight>(
    g: &BipartiteGraph<W>,
    t: usize,
    degree: usize,
) -> Option<Vec<(usize, usize)>> {
    let source = 2 * t;
    let sink = 2 * t + 1;
    let mut net = FlowNet::new(2 * t + 2);
    let mut demand_total = 0i64;
    let mut left_slots = Vec::with_capacity(t);
    for u in 0..t {
        let deg = if u < g.left_count() {
            g.degree(Vertex::Left(u))
        } else {
            0
        };
        let demand = (degree - deg) as i64;
        demand_total += demand;
        left_slots.push(net.add_edge(source, u, demand));
    }
    for v in 0..t {
        let deg = if v < g.right_count() {
            g.degree(Vertex::Right(v))
        } else {
            0
        };
        net.add_edge(t + v, sink, (degree - deg) as i64);
    }
    let mut pair_edges = Vec::new();
    for u in 0..t {
        for v in 0..t {
            let exists = u < g.left_count() && v < g.right_count() && g.edge_id(u, v).is_some();
            if !exists {
                pair_edges.push((u, v, net.add_edge(u, t + v, 1)));
            }
        }
    }
    let _ = left_slots;
    if net.max_flow(source, sink) != demand_total {
        return None;
    }
    Some(
        pair_edges
            .into_iter()
            .filter(|&(_, _, e)| net.cap[e] == 0)
            .map(|(u, v, _)| (u, v))
            .collect(),
    )
}

/// Embed into a `max_degree`-regular bipartite graph: pad both sides to
/// equal size (growing the padding when a simple completion needs room),
/// add weight-1 edges until regular, scale original weights and thresholds
/// by `C`. The budget `k1` is unchanged.
pub fn embed_regular<W: Weight>(
    inst: &MepvcbInstance<W>,
    mutated: bool,
) -> Result<Reduced<MepvcbInstance<W>>, ReductionError> {
    require_positive_weights(&inst.graph)?;
    if inst.graph.edge_count() == 0 {
        return Err(ReductionError::Precondition(
            "regular embedding expects at least one edge".into(),
        ));
    }
    let g = &inst.graph;
    let n = g.vertex_count();
    let c = scale_constant(g)?;
    let degree = g.max_degree();
    let base = g.left_count().max(g.right_count());

    // A completion on the same vertex set is not always possible (a
    // deficient pair may already be adjacent with every alternative
    // saturated), so the padding grows until the flow saturates.
    let mut completion = None;
    for t in base..=base + n {
        if let Some(news) = regular_completion(g, t, degree) {
            completion = Some((t, news));
            break;
        }
    }
    let Some((t, news)) = completion else {
        return Err(ReductionError::Construct(
            "no simple regular completion within the padding budget".into(),
        ));
    };
    if news.len() >= n * n {
        return Err(ReductionError::Construct(
            "regular completion would violate the scale separation bound".into(),
        ));
    }

    let mut edges: Vec<(usize, usize, W)> = Vec::with_capacity(g.edge_count() + news.len());
    for e in g.edges() {
        edges.push((e.left, e.right, scale_weight(e.weight, c)?));
    }
    for (u, v) in &news {
        edges.push((*u, *v, W::one()));
    }
    let graph = BipartiteGraph::new(t, t, edges)?;
    assert!(
        graph.vertices().all(|v| graph.degree(v) == degree),
        "completion yields a {degree}-regular graph"
    );
    let (k2, k3) = scaled_thresholds(inst, c, mutated)?;
    let target = MepvcbInstance::new(graph, inst.k1, k2, k3)?;
    Ok(Reduced::new(target)
        .with("c", c)
        .with("degree", degree)
        .with("side", t)
        .with("added_edges", news.len()))
}

/// Embed into the complete bipartite graph `K_{t,t}` with `t` the larger
/// side: fill every missing pair with a weight-1 edge.
pub fn embed_complete<W: Weight>(
    inst: &MepvcbInstance<W>,
    mutated: bool,
) -> Result<Reduced<MepvcbInstance<W>>, ReductionError> {
    require_positive_weights(&inst.graph)?;
    if inst.graph.edge_count() == 0 {
        return Err(ReductionError::Precondition(
            "complete embedding expects at least one edge".into(),
        ));
    }
    let g = &inst.graph;
    let c = scale_constant(g)?;
    let t = g.left_count().max(g.right_count());
    let mut edges: Vec<(usize, usize, W)> = Vec::with_capacity(t * t);
    let mut added = 0usize;
    for u in 0..t {
        for v in 0..t {
            let original = if u < g.left_count() && v < g.right_count() {
                g.edge_id(u, v)
            } else {
                None
            };
            match original {
                Some(id) => edges.push((u, v, scale_weight(g.weight(id), c)?)),
                None => {
                    edges.push((u, v, W::one()));
                    added += 1;
                }
            }
        }
    }
    assert!(added < g.vertex_count() * g.vertex_count());
    let graph = BipartiteGraph::new(t, t, edges)?;
    assert_eq!(graph.edge_count(), t * t, "the image is complete bipartite");
    let (k2, k3) = scaled_thresholds(inst, c, mutated)?;
    let target = MepvcbInstance::new(graph, inst.k1, k2, k3)?;
    Ok(Reduced::new(target)
        .with("c", c)
        .with("side", t)
        .with("added_edges", added))
}

/// One 2-path of the canonical gadget layout: center on the left with
/// exactly two pendant right neighbors.
struct TwoPath<W> {
    light: W,
    heavy: W,
}

/// Decompose a disjoint union of 2-paths (centers left, endpoints right).
fn decompose_two_paths<W: Weight>(
    g: &BipartiteGraph<W>,
) -> Result<Vec<TwoPath<W>>, ReductionError> {
    let n = g.left_count();
    let valid = g.right_count() == 2 * n
        && g.edge_count() == 2 * n
        && (0..n).all(|u| g.degree(Vertex::Left(u)) == 2)
        && (0..2 * n).all(|v| g.degree(Vertex::Right(v)) == 1);
    if !valid || n == 0 {
        return Err(ReductionError::Precondition(
            "source must be a disjoint union of 2-paths (centers left, endpoints right)".into(),
        ));
    }
    Ok((0..n)
        .map(|u| {
            let inc = g.incident(Vertex::Left(u));
            let (a, b) = (inc[0], inc[1]);
            // Lighter edge first; ties break toward the lower edge id.
            let (light_id, heavy_id) = if g.weight(a) <= g.weight(b) {
                (a, b)
            } else {
                (b, a)
            };
            TwoPath {
                light: g.weight(light_id),
                heavy: g.weight(heavy_id),
            }
        })
        .collect())
}

/// Identify the light endpoint of every 2-path into one vertex `z`, turning
/// `n` disjoint paths into a tree with `|V| - 2 nu_ind = 1`.
///
/// Requires the gap condition `sum(light) < min(heavy)`: replacing `z` by
/// an unchosen center loses at most the sum of all light weights and gains
/// a heavy edge, so a feasible set avoiding `z` always exists and center
/// subsets remain exhaustive. Thresholds carry over unchanged.
pub fn identify_into_tree<W: Weight>(
    inst: &MepvcbInstance<W>,
    mutated: bool,
) -> Result<Reduced<MepvcbInstance<W>>, ReductionError> {
    let paths = decompose_two_paths(&inst.graph)?;
    let light_sum = crate::num::sum_checked(paths.iter().map(|p| p.light))?;
    let heavy_min = paths
        .iter()
        .map(|p| p.heavy)
        .min()
        .expect("decomposition is non-empty");
    if light_sum >= heavy_min {
        return Err(ReductionError::Precondition(format!(
            "gap condition violated: sum of light weights {light_sum} >= minimum heavy weight {heavy_min}"
        )));
    }
    let n = paths.len();
    let mut edges = Vec::with_capacity(2 * n);
    for (i, p) in paths.iter().enumerate() {
        // z is Right(0); the mutated variant merges the heavy endpoints
        // instead, which lets z alone collect the heavy weights.
        let (to_z, kept) = if mutated {
            (p.heavy, p.light)
        } else {
            (p.light, p.heavy)
        };
        edges.push((i, 0, to_z));
        edges.push((i, 1 + i, kept));
    }
    let graph = BipartiteGraph::new(n, n + 1, edges)?;
    let target = MepvcbInstance::new(graph, inst.k1, inst.k2, inst.k3)?;
    if !mutated && target.graph.vertex_count() <= 24 {
        let nu_ind = max_induced_matching(&target.graph, 24).expect("within cap");
        assert_eq!(
            target.graph.vertex_count(),
            2 * nu_ind + 1,
            "the identified tree satisfies |V| - 2 nu_ind = 1"
        );
    }
    Ok(Reduced::new(target)
        .with("n", n)
        .with("light_sum", light_sum)
        .with("heavy_min", heavy_min))
}

/// Target shape for [`link_into_path_or_cycle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkShape {
    Path,
    Cycle,
}

/// Chain disjoint 2-paths into a single path or cycle with weight-1
/// connector edges, scaling original weights and thresholds by `C`.
///
/// In path mode each junction goes through a fresh connector vertex (two
/// weight-1 edges), preserving the original bipartition sides. In cycle
/// mode consecutive end vertices are joined directly; when the resulting
/// cycle would have odd length, the last connector is subdivided by an
/// extra vertex so the graph stays bipartite.
pub fn link_into_path_or_cycle<W: Weight>(
    inst: &MepvcbInstance<W>,
    shape: LinkShape,
    mutated: bool,
) -> Result<Reduced<MepvcbInstance<W>>, ReductionError> {
    require_positive_weights(&inst.graph)?;
    let paths = decompose_two_paths(&inst.graph)?;
    let g = &inst.graph;
    let n = paths.len();
    let c = scale_constant(g)?;
    let (k2, k3) = scaled_thresholds(inst, c, mutated)?;

    let target = match shape {
        LinkShape::Path => {
            // Left side: n centers then n - 1 connectors; right side: the 2n
            // original endpoints in path order.
            let mut edges: Vec<(usize, usize, W)> = Vec::new();
            for (i, u) in (0..n).enumerate() {
                let inc = g.incident(Vertex::Left(u));
                let (a, b) = (inc[0], inc[1]);
                edges.push((i, 2 * i, scale_weight(g.weight(a), c)?));
                edges.push((i, 2 * i + 1, scale_weight(g.weight(b), c)?));
            }
            for i in 0..n.saturating_sub(1) {
                edges.push((n + i, 2 * i + 1, W::one()));
                edges.push((n + i, 2 * i + 2, W::one()));
            }
            let graph = BipartiteGraph::new(n + n.saturating_sub(1), 2 * n, edges)?;
            let ones = graph
                .vertices()
                .filter(|&v| graph.degree(v) == 1)
                .count();
            assert_eq!(ones, 2, "the linked graph is a single path");
            assert!(graph.vertices().all(|v| graph.degree(v) <= 2));
            MepvcbInstance::new(graph, inst.k1, k2, k3)?
        }
        LinkShape::Cycle => {
            // Walk the cycle as a weight sequence, then 2-color positions.
            let mut hops: Vec<W> = Vec::with_capacity(3 * n + 1);
            for (u, _path) in paths.iter().enumerate() {
                let inc = g.incident(Vertex::Left(u));
                hops.push(scale_weight(g.weight(inc[0]), c)?);
                hops.push(scale_weight(g.weight(inc[1]), c)?);
                hops.push(W::one());
            }
            let mut length = 3 * n;
            if length % 2 == 1 {
                // Subdivide the closing connector with an extra vertex.
                hops.push(W::one());
                length += 1;
            }
            let mut edges: Vec<(usize, usize, W)> = Vec::with_capacity(length);
            for (p, &w) in hops.iter().enumerate() {
                let q = (p + 1) % length;
                let (even, odd) = if p % 2 == 0 { (p, q) } else { (q, p) };
                edges.push((even / 2, odd / 2, w));
            }
            let graph = BipartiteGraph::new(length / 2, length / 2, edges)?;
            assert_eq!(length % 2, 0, "cycle length is even");
            assert!(graph.vertices().all(|v| graph.degree(v) == 2));
            MepvcbInstance::new(graph, inst.k1, k2, k3)?
        }
    };
    // Both shapes keep the 2n scaled path edges; the rest are connectors.
    let connectors = target.graph.edge_count() - 2 * n;
    Ok(Reduced::new(target)
        .with("c", c)
        .with("n", n)
        .with("connector_edges", connectors))
}

/// Swap the two sides of a bipartite graph.
fn mirror<W: Weight>(g: &BipartiteGraph<W>) -> BipartiteGraph<W> {
    BipartiteGraph::new(
        g.right_count(),
        g.left_count(),
        g.edges().iter().map(|e| (e.right, e.left, e.weight)),
    )
    .expect("mirroring preserves validity")
}

/// Apex construction: with `|Y| <= |X|` (sides swapped if needed), add a
/// vertex `z` to the right side and `|V|` fresh left vertices, join `z` to
/// every left vertex with weight-1 edges, and scale everything else by `C`.
/// The image satisfies `|V(H)| - max_degree(H) = min(|X|, |Y|) + 1`.
pub fn add_apex_for_delta<W: Weight>(
    inst: &MepvcbInstance<W>,
    mutated: bool,
) -> Result<Reduced<MepvcbInstance<W>>, ReductionError> {
    require_positive_weights(&inst.graph)?;
    if inst.graph.edge_count() == 0 {
        return Err(ReductionError::Precondition(
            "apex construction expects at least one edge".into(),
        ));
    }
    let swapped = inst.graph.left_count() < inst.graph.right_count();
    let base = if swapped {
        mirror(&inst.graph)
    } else {
        inst.graph.clone()
    };
    let n = base.vertex_count();
    let c = scale_constant(&base)?;
    let left = base.left_count() + n;
    let right = base.right_count() + 1;
    let apex = base.right_count();
    let mut edges: Vec<(usize, usize, W)> = Vec::new();
    for e in base.edges() {
        edges.push((e.left, e.right, scale_weight(e.weight, c)?));
    }
    for u in 0..left {
        edges.push((u, apex, W::one()));
    }
    let graph = BipartiteGraph::new(left, right, edges)?;
    let expected = base.left_count().min(base.right_count()) + 1;
    assert_eq!(
        graph.vertex_count() - graph.max_degree(),
        expected,
        "apex image satisfies |V(H)| - max_degree(H) = min side + 1"
    );
    let (k2, k3) = scaled_thresholds(inst, c, mutated)?;
    let target = MepvcbInstance::new(graph, inst.k1, k2, k3)?;
    Ok(Reduced::new(target)
        .with("c", c)
        .with("swapped", swapped)
        .with("apex_degree", left))
}

/// Fill every missing pair of the original bipartition with a weight-1
/// edge, yielding `K_{|X|,|Y|}` whose maximum matching size is
/// `min(|X|, |Y|)`.
pub fn embed_complete_bipartition<W: Weight>(
    inst: &MepvcbInstance<W>,
    mutated: bool,
) -> Result<Reduced<MepvcbInstance<W>>, ReductionError> {
    require_positive_weights(&inst.graph)?;
    let g = &inst.graph;
    let c = scale_constant(g)?;
    let mut edges: Vec<(usize, usize, W)> = Vec::new();
    let mut added = 0usize;
    for u in 0..g.left_count() {
        for v in 0..g.right_count() {
            match g.edge_id(u, v) {
                Some(id) => edges.push((u, v, scale_weight(g.weight(id), c)?)),
                None => {
                    edges.push((u, v, W::one()));
                    added += 1;
                }
            }
        }
    }
    let graph = BipartiteGraph::new(g.left_count(), g.right_count(), edges)?;
    let nu = max_cardinality_matching(&graph).size();
    assert_eq!(
        nu,
        g.left_count().min(g.right_count()),
        "the complete bipartition has matching number min(|X|, |Y|)"
    );
    let (k2, k3) = scaled_thresholds(inst, c, mutated)?;
    let target = MepvcbInstance::new(graph, inst.k1, k2, k3)?;
    Ok(Reduced::new(target)
        .with("c", c)
        .with("added_edges", added)
        .with("nu", nu))
}
