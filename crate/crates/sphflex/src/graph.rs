//! Graphs: validated construction, subgraphs, and Laman counting.
//!
//! Purpose
//! - Hold the connected simple graph `G = (V, E)` that every other module
//!   analyses. Connectedness, absence of loops, and absence of multi-edges are
//!   construction-time invariants, so downstream code never re-checks them.
//!
//! Why this design
//! - Vertices carry arbitrary non-negative integer labels but are stored in a
//!   sorted vector, so every algorithm can work on dense indices `0..n` while
//!   users keep their own labels.
//! - Edges are stored normalised (`a < b`) and sorted, which fixes one
//!   canonical edge order. Colorings and length assignments index into it.
//! - Minimal rigidity is decided by the (2,3) pebble game. An exhaustive
//!   subgraph count is kept next to it as an independent check for small
//!   graphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Vertex label.
pub type Vertex = u32;

/// Errors raised while building or slicing a graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("duplicate vertex label {0}")]
    DuplicateVertex(Vertex),
    #[error("edge endpoint {0} is not a declared vertex")]
    UnknownVertex(Vertex),
}

/// Unordered pair of distinct vertices, normalised so that `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexPair {
    pub a: Vertex,
    pub b: Vertex,
}

impl VertexPair {
    /// Normalised pair; `None` when `x == y`.
    pub fn new(x: Vertex, y: Vertex) -> Option<Self> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Some(Self { a: x, b: y }),
            std::cmp::Ordering::Greater => Some(Self { a: y, b: x }),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// True if `v` is one of the endpoints.
    pub fn contains(&self, v: Vertex) -> bool {
        self.a == v || self.b == v
    }
}

impl fmt::Display for VertexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

/// Connected simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<Vertex>,
    edges: Vec<VertexPair>,
    /// `edge_ends[k] = (index of a, index of b)` for edge `k`.
    edge_ends: Vec<(usize, usize)>,
    /// Incident edge indices per vertex index.
    incident: Vec<Vec<usize>>,
    /// Neighbour vertex indices per vertex index.
    neighbours: Vec<Vec<usize>>,
}

impl Graph {
    /// Validate and build a graph.
    ///
    /// Rejects empty vertex sets, repeated vertex labels, self-loops,
    /// repeated edges, edges with undeclared endpoints, and disconnected input.
    pub fn new(
        vertex_labels: impl IntoIterator<Item = Vertex>,
        edge_pairs: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let mut vertices: Vec<Vertex> = Vec::new();
        let mut seen = BTreeSet::new();
        for v in vertex_labels {
            if !seen.insert(v) {
                return Err(GraphError::DuplicateVertex(v));
            }
            vertices.push(v);
        }
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        vertices.sort_unstable();

        let mut edge_set = BTreeSet::new();
        for (x, y) in edge_pairs {
            for v in [x, y] {
                if !seen.contains(&v) {
                    return Err(GraphError::UnknownVertex(v));
                }
            }
            let pair = VertexPair::new(x, y).ok_or(GraphError::SelfLoop(x))?;
            if !edge_set.insert(pair) {
                return Err(GraphError::DuplicateEdge(pair.a, pair.b));
            }
        }
        let graph = Self::from_parts(vertices, edge_set.into_iter().collect());
        if !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(graph)
    }

    /// Build a graph from a plain edge list; the vertex set is inferred.
    pub fn from_edges(
        edge_pairs: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let edges: Vec<(Vertex, Vertex)> = edge_pairs.into_iter().collect();
        let vertices: BTreeSet<Vertex> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        Self::new(vertices, edges)
    }

    fn from_parts(vertices: Vec<Vertex>, edges: Vec<VertexPair>) -> Self {
        let index: BTreeMap<Vertex, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = vertices.len();
        let mut incident = vec![Vec::new(); n];
        let mut neighbours = vec![Vec::new(); n];
        let mut edge_ends = Vec::with_capacity(edges.len());
        for (k, e) in edges.iter().enumerate() {
            let (i, j) = (index[&e.a], index[&e.b]);
            edge_ends.push((i, j));
            incident[i].push(k);
            incident[j].push(k);
            neighbours[i].push(j);
            neighbours[j].push(i);
        }
        Self {
            vertices,
            edges,
            edge_ends,
            incident,
            neighbours,
        }
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = queue.pop_front() {
            for &j in &self.neighbours[i] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    queue.push_back(j);
                }
            }
        }
        count == n
    }

    /// Sorted vertex labels.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Edges in canonical (sorted, normalised) order.
    pub fn edges(&self) -> &[VertexPair] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Dense index of a vertex label.
    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Index of the edge `{x, y}` in canonical order.
    pub fn edge_index(&self, x: Vertex, y: Vertex) -> Option<usize> {
        let pair = VertexPair::new(x, y)?;
        self.edges.binary_search(&pair).ok()
    }

    pub fn has_edge(&self, x: Vertex, y: Vertex) -> bool {
        self.edge_index(x, y).is_some()
    }

    /// Dense endpoint indices of edge `k`.
    pub fn edge_endpoints(&self, k: usize) -> (usize, usize) {
        self.edge_ends[k]
    }

    /// Indices of the edges incident to the vertex with dense index `i`.
    pub fn incident_edges(&self, i: usize) -> &[usize] {
        &self.incident[i]
    }

    /// Dense indices of the neighbours of vertex index `i`.
    pub fn neighbour_indices(&self, i: usize) -> &[usize] {
        &self.neighbours[i]
    }

    /// Neighbour labels of `v` (empty if `v` is unknown).
    pub fn neighbours(&self, v: Vertex) -> Vec<Vertex> {
        match self.index_of(v) {
            Some(i) => self.neighbours[i].iter().map(|&j| self.vertices[j]).collect(),
            None => Vec::new(),
        }
    }

    /// All unordered pairs of distinct vertices that are not edges.
    pub fn nonedges(&self) -> Vec<VertexPair> {
        let mut out = Vec::new();
        for (i, &a) in self.vertices.iter().enumerate() {
            for &b in &self.vertices[i + 1..] {
                if !self.has_edge(a, b) {
                    out.push(VertexPair { a, b });
                }
            }
        }
        out
    }

    /// Subgraph induced by `keep`; fails if it is empty or disconnected.
    pub fn induced_subgraph(&self, keep: &BTreeSet<Vertex>) -> Result<Self, GraphError> {
        for &v in keep {
            if self.index_of(v).is_none() {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        let edges: Vec<(Vertex, Vertex)> = self
            .edges
            .iter()
            .filter(|e| keep.contains(&e.a) && keep.contains(&e.b))
            .map(|e| (e.a, e.b))
            .collect();
        Self::new(keep.iter().copied(), edges)
    }

    /// Subgraph induced by all vertices except `drop`.
    pub fn without_vertices(&self, drop: &[Vertex]) -> Result<Self, GraphError> {
        let keep: BTreeSet<Vertex> = self
            .vertices
            .iter()
            .copied()
            .filter(|v| !drop.contains(v))
            .collect();
        self.induced_subgraph(&keep)
    }

    /// Laman test via the (2,3) pebble game.
    ///
    /// True iff `|E| = 2|V| - 3` and every subgraph on `k >= 2` vertices spans
    /// at most `2k - 3` edges.
    pub fn is_laman(&self) -> bool {
        let n = self.vertex_count();
        if n < 2 || self.edge_count() != 2 * n - 3 {
            return false;
        }
        PebbleGame::new(n).accepts_all(&self.edge_ends)
    }

    /// Laman test by exhaustive subgraph counting (`|V| <= 20`).
    ///
    /// Exponential in `|V|`; intended as an independent check of
    /// [`Graph::is_laman`] on small graphs.
    pub fn is_laman_exhaustive(&self) -> bool {
        let n = self.vertex_count();
        assert!(n <= 20, "exhaustive Laman check limited to 20 vertices");
        if n < 2 || self.edge_count() != 2 * n - 3 {
            return false;
        }
        let masks: Vec<u32> = self
            .edge_ends
            .iter()
            .map(|&(i, j)| (1u32 << i) | (1u32 << j))
            .collect();
        (0u32..(1u32 << n)).all(|subset| {
            let k = subset.count_ones() as usize;
            if k < 2 {
                return true;
            }
            let spanned = masks.iter().filter(|&&m| m & subset == m).count();
            spanned + 3 <= 2 * k
        })
    }
}

/// The (2,3) pebble game: every vertex starts with two pebbles; an edge is
/// independent iff four pebbles can be gathered on its endpoints.
struct PebbleGame {
    pebbles: Vec<u8>,
    /// Directed edges `out[v]` (pebble placed on the tail covers the edge).
    out: Vec<Vec<usize>>,
}

impl PebbleGame {
    fn new(n: usize) -> Self {
        Self {
            pebbles: vec![2; n],
            out: vec![Vec::new(); n],
        }
    }

    fn accepts_all(&mut self, edges: &[(usize, usize)]) -> bool {
        edges.iter().all(|&(u, v)| self.insert(u, v))
    }

    /// Try to insert edge `u -- v`; returns false if it is dependent.
    fn insert(&mut self, u: usize, v: usize) -> bool {
        while self.pebbles[u] + self.pebbles[v] < 4 {
            let fetched = (self.pebbles[u] < 2 && self.fetch(u, v))
                || (self.pebbles[v] < 2 && self.fetch(v, u));
            if !fetched {
                return false;
            }
        }
        self.pebbles[u] -= 1;
        self.out[u].push(v);
        true
    }

    /// Bring one pebble to `root` along a directed path avoiding `keep`.
    fn fetch(&mut self, root: usize, keep: usize) -> bool {
        let n = self.pebbles.len();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        seen[keep] = true;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &y in &self.out[x] {
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                parent[y] = x;
                if self.pebbles[y] > 0 {
                    // Reverse the path root -> ... -> y.
                    self.pebbles[y] -= 1;
                    let mut cur = y;
                    while cur != root {
                        let p = parent[cur];
                        let pos = self.out[p].iter().position(|&w| w == cur).unwrap();
                        self.out[p].swap_remove(pos);
                        self.out[cur].push(p);
                        cur = p;
                    }
                    self.pebbles[root] += 1;
                    return true;
                }
                stack.push(y);
            }
        }
        false
    }
}

/// Named small graphs used throughout the library, tests, and CLI corpus.
pub mod named {
    use super::{Graph, Vertex};

    /// Complete graph on `1..=n`.
    pub fn complete(n: Vertex) -> Graph {
        let edges = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b)));
        Graph::new(1..=n, edges).expect("complete graph is valid")
    }

    /// `K_{m,n}` with side A = `1..=m` and side B = `m+1..=m+n`.
    pub fn complete_bipartite(m: Vertex, n: Vertex) -> Graph {
        let edges = (1..=m).flat_map(|a| (m + 1..=m + n).map(move |b| (a, b)));
        Graph::new(1..=m + n, edges).expect("complete bipartite graph is valid")
    }

    /// `K_{3,3}` with odd labels `{1,3,5}` on one side and even `{2,4,6}` on the other.
    pub fn k33() -> Graph {
        let edges = [1, 3, 5]
            .into_iter()
            .flat_map(|a| [2, 4, 6].into_iter().map(move |b| (a, b)));
        Graph::new(1..=6, edges).expect("K33 is valid")
    }

    /// `K_{4,4}` with odd labels `{1,3,5,7}` and even `{2,4,6,8}`.
    pub fn k44() -> Graph {
        let edges = [1, 3, 5, 7]
            .into_iter()
            .flat_map(|a| [2, 4, 6, 8].into_iter().map(move |b| (a, b)));
        Graph::new(1..=8, edges).expect("K44 is valid")
    }

    /// 4-cycle `1-2-3-4-1` (`K_{2,2}` with odd/even sides).
    pub fn k22() -> Graph {
        cycle(4)
    }

    /// `K_{3,2}` with the three-vertex side `{1,3,5}` and the two-vertex side `{2,4}`.
    pub fn k32() -> Graph {
        let edges = [1, 3, 5]
            .into_iter()
            .flat_map(|a| [2, 4].into_iter().map(move |b| (a, b)));
        Graph::new([1, 2, 3, 4, 5], edges).expect("K32 is valid")
    }

    /// Path `1-2-...-n`.
    pub fn path(n: Vertex) -> Graph {
        Graph::new(1..=n, (1..n).map(|a| (a, a + 1))).expect("path is valid")
    }

    /// Cycle `1-2-...-n-1`.
    pub fn cycle(n: Vertex) -> Graph {
        let edges = (1..n).map(|a| (a, a + 1)).chain(std::iter::once((1, n)));
        Graph::new(1..=n, edges).expect("cycle is valid")
    }

    /// Star with centre 1 and leaves `2..=k+1`.
    pub fn star(k: Vertex) -> Graph {
        Graph::new(1..=k + 1, (2..=k + 1).map(|b| (1, b))).expect("star is valid")
    }

    /// Triangular prism: triangles `1-2-3`, `4-5-6` joined by `1-4, 2-5, 3-6`.
    pub fn prism() -> Graph {
        Graph::new(
            1..=6,
            [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (1, 4), (2, 5), (3, 6)],
        )
        .expect("prism is valid")
    }

    /// Smallest minimally rigid graph with a NAP-coloring: two triangles
    /// `1-2-3`, `2-3-4` sharing the edge `2-3`, plus a vertex 5 joined to 1 and 4.
    pub fn two_triangles_with_apex() -> Graph {
        Graph::new(1..=5, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (1, 5), (4, 5)])
            .expect("graph is valid")
    }

    /// The graph corpus used by verification suites: rigid and flexible,
    /// NAP-free and NAP-admitting examples.
    pub fn corpus() -> Vec<(&'static str, Graph)> {
        vec![
            ("K3", complete(3)),
            ("K4", complete(4)),
            ("K22", k22()),
            ("K32", k32()),
            ("K33", k33()),
            ("two-triangles-apex", two_triangles_with_apex()),
            ("prism", prism()),
        ]
    }
}
