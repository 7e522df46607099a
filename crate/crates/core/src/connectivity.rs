//! Minimum degree, edge- and vertex-connectivity, and explicit families of
//! edge-disjoint paths extracted from unit-capacity maximum flows.

use std::collections::VecDeque;

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{DirectedPath, Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectivityError {
    #[error("source and sink coincide at vertex {0}")]
    SameEndpoints(VertexId),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    OutOfRange { vertex: VertexId, order: usize },
}

/// `δ`, `λ` and `κ` of a graph together with minimum cuts realising `λ` and `κ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub delta: usize,
    pub lambda: usize,
    pub kappa: usize,
    pub edge_cut: Vec<(VertexId, VertexId)>,
    pub vertex_cut: Vec<VertexId>,
}

pub fn min_degree(graph: &Graph) -> usize {
    graph.vertices().map(|v| graph.degree(v)).min().unwrap_or(0)
}

/// Flow on an undirected unit-capacity graph. Each edge carries a net flow in
/// `{-1, 0, 1}` measured in its canonical `(min, max)` direction, so opposing
/// flows cancel automatically.
struct UnitFlow<'g> {
    graph: &'g Graph,
    /// `incidence[u]` lists `(v, edge id)` in ascending `v`.
    incidence: Vec<Vec<(VertexId, usize)>>,
    flow: Vec<i8>,
}

impl<'g> UnitFlow<'g> {
    fn new(graph: &'g Graph) -> Self {
        let edges = graph.edges();
        let incidence = graph
            .vertices()
            .map(|u| {
                graph
                    .neighbors(u)
                    .iter()
                    .map(|&v| {
                        let id = edges
                            .binary_search(&(u.min(v), u.max(v)))
                            .expect("adjacency and edge list agree");
                        (v, id)
                    })
                    .collect()
            })
            .collect();
        UnitFlow {
            graph,
            incidence,
            flow: vec![0; edges.len()],
        }
    }

    /// Net flow pushed along `u -> v` over edge `id`.
    fn along(&self, u: VertexId, v: VertexId, id: usize) -> i8 {
        if u < v {
            self.flow[id]
        } else {
            -self.flow[id]
        }
    }

    fn push(&mut self, u: VertexId, v: VertexId, id: usize, amount: i8) {
        if u < v {
            self.flow[id] += amount;
        } else {
            self.flow[id] -= amount;
        }
    }

    fn residual(&self, u: VertexId, v: VertexId, id: usize) -> bool {
        self.along(u, v, id) < 1
    }

    /// BFS over the residual graph; returns the predecessor table.
    fn search(&self, s: VertexId) -> Vec<Option<(VertexId, usize)>> {
        let mut pred = vec![None; self.graph.order()];
        let mut seen = vec![false; self.graph.order()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(v, id) in &self.incidence[u] {
                if !seen[v] && self.residual(u, v, id) {
                    seen[v] = true;
                    pred[v] = Some((u, id));
                    queue.push_back(v);
                }
            }
        }
        pred
    }

    /// Edmonds–Karp; returns the flow value.
    fn run(&mut self, s: VertexId, t: VertexId) -> usize {
        let mut value = 0;
        loop {
            let pred = self.search(s);
            if pred[t].is_none() {
                return value;
            }
            let mut v = t;
            while v != s {
                let (u, id) = pred[v].expect("augmenting path is connected");
                self.push(u, v, id, 1);
                v = u;
            }
            value += 1;
        }
    }

    fn reachable(&self, s: VertexId) -> Vec<bool> {
        let pred = self.search(s);
        self.graph
            .vertices()
            .map(|v| v == s || pred[v].is_some())
            .collect()
    }

    /// Splits the current flow into `value` simple `s -> t` paths, always
    /// following the lowest-numbered neighbour that carries flow and cancelling
    /// any cycle the walk closes.
    fn decompose(&mut self, s: VertexId, t: VertexId, value: usize) -> Vec<Vec<VertexId>> {
        let mut paths = Vec::with_capacity(value);
        let mut position = vec![usize::MAX; self.graph.order()];
        for _ in 0..value {
            let mut walk = vec![s];
            let mut arcs: Vec<usize> = Vec::new();
            position[s] = 0;
            while let Some(&u) = walk.last() {
                if u == t {
                    break;
                }
                let (v, id) = self.incidence[u]
                    .iter()
                    .copied()
                    .find(|&(v, id)| self.along(u, v, id) > 0)
                    .expect("flow conservation guarantees an outgoing arc");
                if position[v] != usize::MAX {
                    // Closed a cycle at v: cancel it and resume from v.
                    self.push(u, v, id, -1);
                    let start = position[v];
                    for (i, &arc) in arcs.iter().enumerate().skip(start) {
                        self.push(walk[i], walk[i + 1], arc, -1);
                    }
                    for &w in &walk[start + 1..] {
                        position[w] = usize::MAX;
                    }
                    walk.truncate(start + 1);
                    arcs.truncate(start);
                } else {
                    position[v] = walk.len();
                    walk.push(v);
                    arcs.push(id);
                }
            }
            for (i, &arc) in arcs.iter().enumerate() {
                self.push(walk[i], walk[i + 1], arc, -1);
            }
            for &w in &walk {
                position[w] = usize::MAX;
            }
            paths.push(walk);
        }
        paths
    }
}

fn check_endpoints(graph: &Graph, s: VertexId, t: VertexId) -> Result<(), ConnectivityError> {
    for v in [s, t] {
        if v >= graph.order() {
            return Err(ConnectivityError::OutOfRange {
                vertex: v,
                order: graph.order(),
            });
        }
    }
    if s == t {
        return Err(ConnectivityError::SameEndpoints(s));
    }
    Ok(())
}

/// A maximum family of pairwise edge-disjoint `s -> t` paths.
///
/// Paths come out of flow decomposition in a deterministic order: each walk
/// leaves `s` and every later vertex through its lowest-numbered neighbour
/// still carrying flow.
pub fn max_flow_paths(
    graph: &Graph,
    s: VertexId,
    t: VertexId,
) -> Result<Vec<DirectedPath>, ConnectivityError> {
    check_endpoints(graph, s, t)?;
    let mut flow = UnitFlow::new(graph);
    let value = flow.run(s, t);
    Ok(flow
        .decompose(s, t, value)
        .into_iter()
        .map(|walk| DirectedPath::new(graph, walk).expect("decomposition yields simple paths"))
        .collect())
}

/// Maximum number of edge-disjoint `s -> t` paths (the local edge-connectivity).
pub fn local_edge_connectivity(
    graph: &Graph,
    s: VertexId,
    t: VertexId,
) -> Result<usize, ConnectivityError> {
    check_endpoints(graph, s, t)?;
    Ok(UnitFlow::new(graph).run(s, t))
}

/// `λ(G)` together with a minimum edge cut. Disconnected graphs and graphs on
/// fewer than two vertices report `0` with an empty cut.
pub fn min_edge_cut(graph: &Graph) -> (usize, Vec<(VertexId, VertexId)>) {
    if graph.order() < 2 || !graph.is_connected() {
        return (0, Vec::new());
    }
    // Every edge cut separates vertex 0 from some other vertex.
    let mut best: Option<(usize, VertexId)> = None;
    for t in 1..graph.order() {
        let value = UnitFlow::new(graph).run(0, t);
        if best.is_none_or(|(b, _)| value < b) {
            best = Some((value, t));
        }
    }
    let (value, t) = best.expect("order >= 2");
    let mut flow = UnitFlow::new(graph);
    flow.run(0, t);
    let side = flow.reachable(0);
    let cut = graph
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| side[u] != side[v])
        .collect();
    (value, cut)
}

/// `λ(G)` as the minimum over vertex pairs `(0, t)` of the local edge-connectivity.
pub fn edge_connectivity(graph: &Graph) -> usize {
    if graph.order() < 2 || !graph.is_connected() {
        return 0;
    }
    (1..graph.order())
        .map(|t| UnitFlow::new(graph).run(0, t))
        .min()
        .expect("order >= 2")
}

/// `λ(G)` as the minimum over edges `uv` of the number of edge-disjoint `u-v`
/// paths. On connected graphs this agrees with [`edge_connectivity`].
pub fn edge_connectivity_over_edges(graph: &Graph) -> usize {
    if graph.order() < 2 || !graph.is_connected() {
        return 0;
    }
    graph
        .edges()
        .iter()
        .map(|&(u, v)| UnitFlow::new(graph).run(u, v))
        .min()
        .unwrap_or(0)
}

/// `λ(G)` by trying every edge subset in increasing size until one
/// disconnects the graph. Only practical for a few dozen edges.
pub fn exhaustive_edge_connectivity(graph: &Graph) -> usize {
    if graph.order() < 2 || !graph.is_connected() {
        return 0;
    }
    let edges = graph.edges();
    for size in 1..=edges.len() {
        for subset in (0..edges.len()).combinations(size) {
            let mut removed = vec![false; edges.len()];
            for &i in &subset {
                removed[i] = true;
            }
            let disconnected = !graph.is_connected_avoiding(|u, v| {
                removed[edges.binary_search(&(u, v)).expect("edge exists")]
            });
            if disconnected {
                return size;
            }
        }
    }
    edges.len()
}

/// Directed network with integer capacities, used for the vertex-splitting
/// reduction.
struct FlowNetwork {
    head: Vec<usize>,
    cap: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            head: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: usize) {
        self.out[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.out[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    fn search(&self, s: usize) -> Vec<Option<usize>> {
        let mut pred_arc = vec![None; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let v = self.head[a];
                if !seen[v] && self.cap[a] > 0 {
                    seen[v] = true;
                    pred_arc[v] = Some(a);
                    queue.push_back(v);
                }
            }
        }
        pred_arc
    }

    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut value = 0;
        loop {
            let pred = self.search(s);
            if pred[t].is_none() {
                return value;
            }
            let mut bottleneck = usize::MAX;
            let mut v = t;
            while v != s {
                let a = pred[v].expect("on augmenting path");
                bottleneck = bottleneck.min(self.cap[a]);
                v = self.head[a ^ 1];
            }
            let mut v = t;
            while v != s {
                let a = pred[v].expect("on augmenting path");
                self.cap[a] -= bottleneck;
                self.cap[a ^ 1] += bottleneck;
                v = self.head[a ^ 1];
            }
            value += bottleneck;
        }
    }
}

/// Split network: vertex `v` becomes `2v -> 2v+1` with unit capacity; edges
/// become uncapacitated arcs between the halves.
fn split_network(graph: &Graph) -> FlowNetwork {
    let n = graph.order();
    let mut net = FlowNetwork::new(2 * n);
    for v in graph.vertices() {
        net.add_arc(2 * v, 2 * v + 1, 1);
    }
    for &(u, v) in graph.edges() {
        net.add_arc(2 * u + 1, 2 * v, n);
        net.add_arc(2 * v + 1, 2 * u, n);
    }
    net
}

/// Maximum number of internally vertex-disjoint paths between non-adjacent `s` and `t`.
fn local_vertex_connectivity(graph: &Graph, s: VertexId, t: VertexId) -> (usize, FlowNetwork) {
    let mut net = split_network(graph);
    let value = net.max_flow(2 * s + 1, 2 * t);
    (value, net)
}

/// `κ(G)` with a minimum vertex cut. `κ(K_n) = n - 1`; disconnected graphs report `0`.
pub fn min_vertex_cut(graph: &Graph) -> (usize, Vec<VertexId>) {
    let n = graph.order();
    if n < 2 || !graph.is_connected() {
        return (0, Vec::new());
    }
    if graph.is_complete() {
        return (n - 1, (0..n - 1).collect());
    }
    let mut best: Option<(usize, VertexId, VertexId)> = None;
    for s in graph.vertices() {
        for t in s + 1..n {
            if graph.has_edge(s, t) {
                continue;
            }
            let (value, _) = local_vertex_connectivity(graph, s, t);
            if best.is_none_or(|(b, _, _)| value < b) {
                best = Some((value, s, t));
            }
        }
    }
    let (value, s, t) = best.expect("a non-complete graph has a non-adjacent pair");
    let (_, net) = local_vertex_connectivity(graph, s, t);
    let pred = net.search(2 * s + 1);
    let reached = |node: usize| node == 2 * s + 1 || pred[node].is_some();
    let cut = graph
        .vertices()
        .filter(|&v| v != s && reached(2 * v) && !reached(2 * v + 1))
        .collect();
    (value, cut)
}

pub fn vertex_connectivity(graph: &Graph) -> usize {
    min_vertex_cut(graph).0
}

pub fn connectivity_report(graph: &Graph) -> ConnectivityReport {
    let (lambda, edge_cut) = min_edge_cut(graph);
    let (kappa, vertex_cut) = min_vertex_cut(graph);
    ConnectivityReport {
        delta: min_degree(graph),
        lambda,
        kappa,
        edge_cut,
        vertex_cut,
    }
}
