//! Simple undirected graphs on dense vertex ids, the standard families used
//! throughout the crate, and the edge-list / DOT text formats.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

/// Dense 0-based vertex index.
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("endpoint {vertex} out of range for a graph of order {order}")]
    OutOfRange { vertex: VertexId, order: usize },
    #[error("{family} requires parameter >= {min}, got {got}")]
    ParameterTooSmall {
        family: &'static str,
        min: usize,
        got: usize,
    },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("missing vertex count header")]
    MissingHeader,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("a path needs at least one edge")]
    TooShort,
    #[error("vertex {0} is not in the graph")]
    OutOfRange(VertexId),
    #[error("vertex {0} is repeated")]
    RepeatedVertex(VertexId),
    #[error("{0} and {1} are not adjacent")]
    NotAdjacent(VertexId, VertexId),
}

/// An immutable simple undirected graph.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted; adjacency lists are
/// sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<VertexId>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate and reversed pairs collapse
    /// into one edge.
    pub fn new<I>(n: usize, edge_list: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edge_list {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            adjacency,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, each edge as `(min, max)`, sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && v < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Connectivity test. The empty graph and `K_1` count as connected.
    pub fn is_connected(&self) -> bool {
        self.is_connected_avoiding(|_, _| false)
    }

    /// Connectivity after deleting every edge for which `removed` is true.
    pub fn is_connected_avoiding<F>(&self, removed: F) -> bool
    where
        F: Fn(VertexId, VertexId) -> bool,
    {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u] {
                if !seen[v] && !removed(u.min(v), u.max(v)) {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Whether the graph minus `gone` is disconnected or has at most one vertex left.
    pub fn is_separated_by_vertices(&self, gone: &[VertexId]) -> bool {
        let mut dead = vec![false; self.n];
        for &v in gone {
            dead[v] = true;
        }
        let alive: Vec<_> = self.vertices().filter(|&v| !dead[v]).collect();
        if alive.len() <= 1 {
            return true;
        }
        let mut seen = dead;
        let mut stack = vec![alive[0]];
        seen[alive[0]] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count < alive.len()
    }

    /// Writes the whitespace edge-list format: vertex count, then one `u v` per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// DOT text with integer vertex labels.
    pub fn to_dot(&self) -> String {
        self.to_dot_labeled(|v| v.to_string())
    }

    /// DOT text with caller-provided vertex labels. Labels are quoted, so set
    /// notation like `{0,3}` is safe.
    pub fn to_dot_labeled<F>(&self, label: F) -> String
    where
        F: Fn(VertexId) -> String,
    {
        let mut out = String::from("graph {\n");
        for v in self.vertices() {
            let _ = writeln!(out, "    {v} [label=\"{}\"];", label(v));
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "    {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// Parses the edge-list format. `#` starts a comment; blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<_> = line.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| GraphError::Malformed {
                line: line_no,
                reason: format!("expected a non-negative integer, found {s:?}"),
            })
        };
        match (n, fields.as_slice()) {
            (None, [count]) => n = Some(parse(count)?),
            (None, _) => {
                return Err(GraphError::Malformed {
                    line: line_no,
                    reason: "first line must hold the vertex count alone".into(),
                })
            }
            (Some(_), [u, v]) => edges.push((parse(u)?, parse(v)?)),
            (Some(_), _) => {
                return Err(GraphError::Malformed {
                    line: line_no,
                    reason: format!("expected `u v`, found {line:?}"),
                })
            }
        }
    }
    Graph::new(n.ok_or(GraphError::MissingHeader)?, edges)
}

/// Parses the DOT dialect produced by [`Graph::to_dot`]: numeric node ids,
/// `u -- v;` edge statements and `v [..];` node statements.
pub fn parse_dot(text: &str) -> Result<Graph, GraphError> {
    let mut max_vertex: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim().trim_end_matches(';').trim();
        if line.is_empty() || line.starts_with("graph") || line == "}" || line.starts_with("//") {
            continue;
        }
        let malformed = || GraphError::Malformed {
            line: line_no,
            reason: format!("unrecognized statement {line:?}"),
        };
        let id = |s: &str| s.trim().parse::<usize>().map_err(|_| malformed());
        let stmt = line.split('[').next().unwrap_or("").trim();
        if let Some((a, b)) = stmt.split_once("--") {
            let (u, v) = (id(a)?, id(b)?);
            max_vertex = max_vertex.max(Some(u.max(v)));
            edges.push((u, v));
        } else {
            let v = id(stmt)?;
            max_vertex = max_vertex.max(Some(v));
        }
    }
    Graph::new(max_vertex.map_or(0, |m| m + 1), edges)
}

/// A path given as a vertex sequence, traversed from its first to its last vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedPath {
    vertices: Vec<VertexId>,
}

impl DirectedPath {
    /// Validates that `vertices` is a simple path of `graph` with at least one edge.
    pub fn new(graph: &Graph, vertices: Vec<VertexId>) -> Result<Self, PathError> {
        if vertices.len() < 2 {
            return Err(PathError::TooShort);
        }
        let mut seen = vec![false; graph.order()];
        for &v in &vertices {
            if v >= graph.order() {
                return Err(PathError::OutOfRange(v));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(PathError::RepeatedVertex(v));
            }
        }
        for w in vertices.windows(2) {
            if !graph.has_edge(w[0], w[1]) {
                return Err(PathError::NotAdjacent(w[0], w[1]));
            }
        }
        Ok(DirectedPath { vertices })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        self.vertices[self.vertices.len() - 1]
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Directed edges in traversal order.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// Undirected edges as `(min, max)` in traversal order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.arcs().map(|(u, v)| (u.min(v), u.max(v)))
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn uses_edge(&self, u: VertexId, v: VertexId) -> bool {
        let e = (u.min(v), u.max(v));
        self.edges().any(|f| f == e)
    }
}

fn require(family: &'static str, min: usize, got: usize) -> Result<(), GraphError> {
    if got < min {
        Err(GraphError::ParameterTooSmall { family, min, got })
    } else {
        Ok(())
    }
}

fn clique_edges(offset: usize, size: usize) -> impl Iterator<Item = (VertexId, VertexId)> {
    (0..size).flat_map(move |u| (u + 1..size).map(move |v| (offset + u, offset + v)))
}

/// `K_n`.
pub fn complete_graph(n: usize) -> Result<Graph, GraphError> {
    require("complete_graph", 1, n)?;
    Graph::new(n, clique_edges(0, n))
}

/// Two copies of `K_t` on `0..t` and `t..2t`, vertex `i` joined to `t + i`.
pub fn matched_cliques(t: usize) -> Result<Graph, GraphError> {
    require("matched_cliques", 2, t)?;
    let matching = (0..t).map(|i| (i, t + i));
    Graph::new(
        2 * t,
        clique_edges(0, t).chain(clique_edges(t, t)).chain(matching),
    )
}

/// `C_n` with edges `i -- i+1 (mod n)`.
pub fn cycle_graph(n: usize) -> Result<Graph, GraphError> {
    require("cycle_graph", 3, n)?;
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `P_n`, the path on `n` vertices.
pub fn path_graph(n: usize) -> Result<Graph, GraphError> {
    require("path_graph", 1, n)?;
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

/// Two copies of `K_r` on `0..r` and `r..2r` joined by the single bridge `(r-1, r)`.
pub fn bridged_cliques(r: usize) -> Result<Graph, GraphError> {
    require("bridged_cliques", 2, r)?;
    Graph::new(
        2 * r,
        clique_edges(0, r)
            .chain(clique_edges(r, r))
            .chain([(r - 1, r)]),
    )
}

/// Two copies of `K_r` sharing vertex `r-1`; order `2r - 1`.
pub fn shared_vertex_cliques(r: usize) -> Result<Graph, GraphError> {
    require("shared_vertex_cliques", 2, r)?;
    Graph::new(2 * r - 1, clique_edges(0, r).chain(clique_edges(r - 1, r)))
}
