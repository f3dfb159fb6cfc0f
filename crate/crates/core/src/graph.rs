//! Simple undirected graphs, the standard generators and the cartesian
//! product.
//!
//! A [`Graph`] is immutable once built. Edges are stored normalised
//! (`u < v`), deduplicated and sorted lexicographically, so the edge index of
//! an edge is a stable function of the edge set. Everything else (adjacency,
//! incidence, degrees) is precomputed at construction.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {{{u}, {v}}} has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{what} needs a parameter of at least {min}, got {got}")]
    ParameterTooSmall { what: &'static str, min: usize, got: usize },
    #[error("label count {labels} does not match vertex count {n}")]
    LabelCount { labels: usize, n: usize },
    #[error("vertex labels are not pairwise distinct")]
    DuplicateLabel,
    #[error("graph must be connected and have at least two vertices")]
    TrivialOrDisconnected,
}

/// Coordinates of a vertex. Product graphs record one coordinate per factor.
pub type Label = Vec<usize>;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<Label>>,
    adjacency: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a simple graph on vertices `0..n`. Duplicate edges (in either
    /// orientation) are merged.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut normalised = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            normalised.push((u.min(v), u.max(v)));
        }
        normalised.sort_unstable();
        normalised.dedup();

        let mut adjacency = vec![Vec::new(); n];
        let mut incidence = vec![Vec::new(); n];
        for (i, &(u, v)) in normalised.iter().enumerate() {
            adjacency[u].push(v);
            adjacency[v].push(u);
            incidence[u].push(i);
            incidence[v].push(i);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: normalised,
            labels: None,
            adjacency,
            incidence,
        })
    }

    /// Attaches vertex labels. Labels must be pairwise distinct.
    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount {
                labels: labels.len(),
                n: self.n,
            });
        }
        let mut sorted: Vec<&Label> = labels.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateLabel);
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.edges[index]
    }

    /// Index of the edge `{u, v}`, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Sorted neighbours of `v`.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Indices of the edges incident to `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Degrees sorted descending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        seq
    }

    pub fn is_regular(&self) -> bool {
        self.max_degree() == self.min_degree()
    }

    /// A graph with fewer than two vertices.
    pub fn is_trivial(&self) -> bool {
        self.n < 2
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    /// Label of `v`, or the singleton `[v]` for unlabelled graphs.
    pub fn label(&self, v: usize) -> Label {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => vec![v],
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.component_of(0, &[]).iter().filter(|&&seen| seen).count() == self.n
    }

    /// Whether the graph stays connected after deleting `removed`.
    pub(crate) fn is_connected_without(&self, removed: &[usize]) -> bool {
        let Some(start) = (0..self.n).find(|v| !removed.contains(v)) else {
            return true;
        };
        let reached = self.component_of(start, removed).iter().filter(|&&s| s).count();
        reached + removed.len() == self.n
    }

    fn component_of(&self, start: usize, removed: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        for &r in removed {
            seen[r] = true;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut reached = vec![false; self.n];
        reached[start] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached[w] = true;
                    stack.push(w);
                }
            }
        }
        reached
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Two-colours the vertices if the graph is bipartite (BFS layering).
    pub fn bipartition(&self) -> Option<Vec<usize>> {
        let mut side = vec![usize::MAX; self.n];
        for root in 0..self.n {
            if side[root] != usize::MAX {
                continue;
            }
            side[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if side[w] == usize::MAX {
                        side[w] = 1 - side[v];
                        queue.push_back(w);
                    } else if side[w] == side[v] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    /// Subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut position = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| position[u] != usize::MAX && position[v] != usize::MAX)
            .map(|&(u, v)| (position[u], position[v]));
        Graph::new(vertices.len(), edges).expect("induced subgraph of a valid graph")
    }

    pub fn classify(&self) -> Result<Classification, GraphError> {
        if self.is_trivial() {
            return Err(GraphError::TrivialOrDisconnected);
        }
        let max_degree = self.max_degree();
        let is_regular = self.is_regular();
        Ok(Classification {
            max_degree,
            is_regular,
            is_complete: self.is_complete(),
            is_odd_cycle: is_regular && max_degree == 2 && self.n % 2 == 1 && self.is_connected(),
        })
    }
}

/// The structural facts about a factor that decide how many vertex colours
/// the product construction needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub max_degree: usize,
    pub is_regular: bool,
    pub is_complete: bool,
    pub is_odd_cycle: bool,
}

/// Vertex of `G □ H` as a pair of factor vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductVertex {
    pub g_index: usize,
    pub h_index: usize,
}

impl ProductVertex {
    /// Row-major index in a product whose second factor has `h_order` vertices.
    pub fn index(self, h_order: usize) -> usize {
        self.g_index * h_order + self.h_index
    }

    pub fn from_index(index: usize, h_order: usize) -> Self {
        ProductVertex {
            g_index: index / h_order,
            h_index: index % h_order,
        }
    }
}

/// Which factor a product edge comes from.
///
/// `GEdge { e, v }` joins `(u1, v)` and `(u2, v)` for `e = {u1, u2}` in `G`;
/// `HEdge { f, u }` joins `(u, v1)` and `(u, v2)` for `f = {v1, v2}` in `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductEdgeKind {
    GEdge { e: usize, v: usize },
    HEdge { f: usize, u: usize },
}

/// A product graph together with the factor provenance of every edge.
#[derive(Debug, Clone)]
pub struct Product {
    pub graph: Graph,
    pub g_order: usize,
    pub h_order: usize,
    kinds: Vec<ProductEdgeKind>,
}

impl Product {
    pub fn kind(&self, edge: usize) -> ProductEdgeKind {
        self.kinds[edge]
    }

    pub fn kinds(&self) -> &[ProductEdgeKind] {
        &self.kinds
    }

    pub fn vertex(&self, index: usize) -> ProductVertex {
        ProductVertex::from_index(index, self.h_order)
    }

    pub fn index(&self, vertex: ProductVertex) -> usize {
        vertex.index(self.h_order)
    }

    /// Product endpoints of the factor edge described by `kind`.
    pub fn endpoints(&self, g: &Graph, h: &Graph, kind: ProductEdgeKind) -> (usize, usize) {
        let (a, b) = match kind {
            ProductEdgeKind::GEdge { e, v } => {
                let (u1, u2) = g.edge(e);
                (
                    ProductVertex {
                        g_index: u1,
                        h_index: v,
                    },
                    ProductVertex {
                        g_index: u2,
                        h_index: v,
                    },
                )
            }
            ProductEdgeKind::HEdge { f, u } => {
                let (v1, v2) = h.edge(f);
                (
                    ProductVertex {
                        g_index: u,
                        h_index: v1,
                    },
                    ProductVertex {
                        g_index: u,
                        h_index: v2,
                    },
                )
            }
        };
        let (a, b) = (self.index(a), self.index(b));
        (a.min(b), a.max(b))
    }
}

/// The cartesian product `G □ H`, indexed row-major over `V_G × V_H`.
///
/// Labels of the product concatenate the factor labels, so iterated products
/// carry flat k-tuples.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Product {
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let mut edges = Vec::with_capacity(g.edge_count() * nh + h.edge_count() * ng);
    for &(u1, u2) in g.edges() {
        for v in 0..nh {
            edges.push((u1 * nh + v, u2 * nh + v));
        }
    }
    for &(v1, v2) in h.edges() {
        for u in 0..ng {
            edges.push((u * nh + v1, u * nh + v2));
        }
    }
    let labels = (0..ng * nh)
        .map(|i| {
            let mut label = g.label(i / nh);
            label.extend(h.label(i % nh));
            label
        })
        .collect();
    let graph = Graph::new(ng * nh, edges)
        .expect("product of valid graphs")
        .with_labels(labels)
        .expect("product labels are distinct");

    let kinds = graph
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (pa, pb) = (ProductVertex::from_index(a, nh), ProductVertex::from_index(b, nh));
            if pa.g_index == pb.g_index {
                let f = h.edge_index(pa.h_index, pb.h_index).expect("H-edge of the product");
                ProductEdgeKind::HEdge { f, u: pa.g_index }
            } else {
                let e = g.edge_index(pa.g_index, pb.g_index).expect("G-edge of the product");
                ProductEdgeKind::GEdge { e, v: pa.h_index }
            }
        })
        .collect();

    Product {
        graph,
        g_order: ng,
        h_order: nh,
        kinds,
    }
}

fn at_least(what: &'static str, min: usize, got: usize) -> Result<(), GraphError> {
    if got < min {
        Err(GraphError::ParameterTooSmall { what, min, got })
    } else {
        Ok(())
    }
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    at_least("path", 1, n)?;
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    at_least("cycle", 3, n)?;
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    at_least("complete", 1, n)?;
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `path(m) □ path(n)`, labelled by `(row, column)`.
pub fn grid(m: usize, n: usize) -> Result<Graph, GraphError> {
    Ok(cartesian_product(&path(m)?, &path(n)?).graph)
}

/// The `d`-fold product of `K2`, labelled by bit tuples.
pub fn hypercube(d: usize) -> Result<Graph, GraphError> {
    at_least("hypercube", 1, d)?;
    let k2 = complete(2)?;
    let mut cube = k2.clone();
    for _ in 1..d {
        cube = cartesian_product(&cube, &k2).graph;
    }
    Ok(cube)
}

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::new(10, outer.chain(inner).chain(spokes)).expect("valid")
}
