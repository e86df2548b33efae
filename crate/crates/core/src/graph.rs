//! Bipartite graphs with non-negative integer edge weights.
//!
//! Vertices are namespaced by side: left vertices are `0..left_count`, right
//! vertices are `0..right_count`. Edges are stored sorted by `(left, right)`
//! and [`EdgeId`] indexes that canonical order, so identical edge sets always
//! produce identical ids regardless of construction order.

use crate::num::{headroom_limit, sum_checked, Weight};
use std::collections::BTreeSet;
use std::fmt;

/// A vertex of a bipartite graph, tagged with its side of the bipartition.
///
/// The derived ordering (all left vertices before all right vertices, each
/// side by index) is the canonical vertex order used for deterministic
/// enumeration and tie-breaking throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Left(usize),
    Right(usize),
}

impl Vertex {
    pub fn index(self) -> usize {
        match self {
            Vertex::Left(i) | Vertex::Right(i) => i,
        }
    }

    pub fn is_left(self) -> bool {
        matches!(self, Vertex::Left(_))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Left(i) => write!(f, "L{i}"),
            Vertex::Right(i) => write!(f, "R{i}"),
        }
    }
}

/// Index of an edge in the canonical sorted edge list of its graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

/// A weighted edge between `Left(left)` and `Right(right)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge<W> {
    pub left: usize,
    pub right: usize,
    pub weight: W,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("left vertex {left} out of range (left side has {count} vertices)")]
    LeftOutOfRange { left: usize, count: usize },
    #[error("right vertex {right} out of range (right side has {count} vertices)")]
    RightOutOfRange { right: usize, count: usize },
    #[error("duplicate edge ({left}, {right})")]
    DuplicateEdge { left: usize, right: usize },
    #[error("negative weight {weight} on edge ({left}, {right})")]
    NegativeWeight {
        left: usize,
        right: usize,
        weight: String,
    },
    #[error("total edge weight exceeds the scalar headroom bound")]
    WeightOverflow,
    #[error("vertex {vertex} out of range")]
    VertexOutOfRange { vertex: Vertex },
}

/// A simple bipartite graph with non-negative integer edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph<W> {
    left_count: usize,
    right_count: usize,
    edges: Vec<Edge<W>>,
    adj_left: Vec<Vec<EdgeId>>,
    adj_right: Vec<Vec<EdgeId>>,
    total_weight: W,
}

impl<W: Weight> BipartiteGraph<W> {
    /// Build a graph, validating simplicity, vertex ranges, non-negative
    /// weights and the total-weight headroom bound.
    pub fn new(
        left_count: usize,
        right_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, W)>,
    ) -> Result<Self, GraphError> {
        let mut list: Vec<Edge<W>> = Vec::new();
        for (left, right, weight) in edges {
            if left >= left_count {
                return Err(GraphError::LeftOutOfRange {
                    left,
                    count: left_count,
                });
            }
            if right >= right_count {
                return Err(GraphError::RightOutOfRange {
                    right,
                    count: right_count,
                });
            }
            if weight < W::zero() {
                return Err(GraphError::NegativeWeight {
                    left,
                    right,
                    weight: weight.to_string(),
                });
            }
            list.push(Edge {
                left,
                right,
                weight,
            });
        }
        list.sort_by_key(|e| (e.left, e.right));
        for pair in list.windows(2) {
            if pair[0].left == pair[1].left && pair[0].right == pair[1].right {
                return Err(GraphError::DuplicateEdge {
                    left: pair[0].left,
                    right: pair[0].right,
                });
            }
        }
        let total_weight = sum_checked(list.iter().map(|e| e.weight))
            .map_err(|_| GraphError::WeightOverflow)?;
        if total_weight > headroom_limit::<W>() {
            return Err(GraphError::WeightOverflow);
        }
        let mut adj_left = vec![Vec::new(); left_count];
        let mut adj_right = vec![Vec::new(); right_count];
        for (id, e) in list.iter().enumerate() {
            adj_left[e.left].push(EdgeId(id));
            adj_right[e.right].push(EdgeId(id));
        }
        Ok(Self {
            left_count,
            right_count,
            edges: list,
            adj_left,
            adj_right,
            total_weight,
        })
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn vertex_count(&self) -> usize {
        self.left_count + self.right_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge<W>] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge<W> {
        &self.edges[id.0]
    }

    pub fn weight(&self, id: EdgeId) -> W {
        self.edges[id.0].weight
    }

    /// Sum of all edge weights, `w(E)`.
    pub fn total_weight(&self) -> W {
        self.total_weight
    }

    /// All vertices in canonical order: left side first, then right side.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.left_count)
            .map(Vertex::Left)
            .chain((0..self.right_count).map(Vertex::Right))
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        match v {
            Vertex::Left(i) => i < self.left_count,
            Vertex::Right(i) => i < self.right_count,
        }
    }

    /// Incident edge ids of `v`, ascending.
    pub fn incident(&self, v: Vertex) -> &[EdgeId] {
        match v {
            Vertex::Left(i) => &self.adj_left[i],
            Vertex::Right(i) => &self.adj_right[i],
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incident(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices()
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn endpoints(&self, id: EdgeId) -> (Vertex, Vertex) {
        let e = &self.edges[id.0];
        (Vertex::Left(e.left), Vertex::Right(e.right))
    }

    /// The endpoint of `id` that is not `v`.
    pub fn other_endpoint(&self, id: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.endpoints(id);
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Look up the id of edge `(left, right)` by binary search.
    pub fn edge_id(&self, left: usize, right: usize) -> Option<EdgeId> {
        self.edges
            .binary_search_by_key(&(left, right), |e| (e.left, e.right))
            .ok()
            .map(EdgeId)
    }

    /// Linearized vertex index: left vertices first, then right.
    pub fn linear_index(&self, v: Vertex) -> usize {
        match v {
            Vertex::Left(i) => i,
            Vertex::Right(i) => self.left_count + i,
        }
    }

    /// Edges with at least one endpoint in `chosen`, the set `E(V_0)`.
    ///
    /// Errors if a chosen vertex is out of range.
    pub fn covered_edges(&self, chosen: &BTreeSet<Vertex>) -> Result<BTreeSet<EdgeId>, GraphError> {
        let mut covered = BTreeSet::new();
        for &v in chosen {
            if !self.contains_vertex(v) {
                return Err(GraphError::VertexOutOfRange { vertex: v });
            }
            covered.extend(self.incident(v).iter().copied());
        }
        Ok(covered)
    }

    /// Sum of weights of the given edges.
    pub fn weight_of(&self, ids: impl IntoIterator<Item = EdgeId>) -> W {
        sum_checked(ids.into_iter().map(|id| self.weight(id)))
            .expect("instance headroom bound keeps edge-weight sums in range")
    }
}
