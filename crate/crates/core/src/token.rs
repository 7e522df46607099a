//! Token configurations (k-subsets of a base graph) and the materialized
//! k-token graph `F_k(G)`.
//!
//! Configurations are ranked colexicographically: the subset
//! `c_0 < c_1 < ... < c_{k-1}` has rank `C(c_0, 1) + C(c_1, 2) + ... + C(c_{k-1}, k)`.

use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TokenError {
    #[error("token count {k} must lie in 1..={max} for a base graph of order {n}", max = n.saturating_sub(1))]
    TokenCountOutOfRange { k: usize, n: usize },
    #[error("rank {rank} out of range, only {count} configurations exist")]
    RankOutOfRange { rank: usize, count: usize },
    #[error("configuration {members:?} is not {k} distinct vertices below {n}")]
    MalformedConfig {
        members: Vec<VertexId>,
        k: usize,
        n: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).expect("binomial coefficient fits in usize")
}

/// A set of occupied vertices, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TokenConfig(Vec<VertexId>);

impl TokenConfig {
    /// Accepts members in any order; rejects duplicates, vertices `>= n`, and
    /// sets whose size differs from `k`.
    pub fn new(mut members: Vec<VertexId>, k: usize, n: usize) -> Result<Self, TokenError> {
        members.sort_unstable();
        let distinct = members.windows(2).all(|w| w[0] < w[1]);
        if members.len() != k || !distinct || members.last().is_some_and(|&v| v >= n) {
            return Err(TokenError::MalformedConfig { members, k, n });
        }
        Ok(TokenConfig(members))
    }

    /// Caller guarantees `members` is strictly increasing.
    pub(crate) fn from_sorted(members: Vec<VertexId>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        TokenConfig(members)
    }

    pub fn members(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The configuration after sliding the token on `from` to the empty vertex `to`.
    pub fn moved(&self, from: VertexId, to: VertexId) -> Option<TokenConfig> {
        if !self.contains(from) || self.contains(to) {
            return None;
        }
        let mut members: Vec<_> = self.0.iter().copied().filter(|&v| v != from).collect();
        let at = members.partition_point(|&v| v < to);
        members.insert(at, to);
        Some(TokenConfig(members))
    }

    /// `(a, b)` when `self \ other = {a}` and `other \ self = {b}`.
    pub fn single_difference(&self, other: &TokenConfig) -> Option<(VertexId, VertexId)> {
        if self.len() != other.len() {
            return None;
        }
        let mut only_self = self.0.iter().filter(|v| !other.contains(**v));
        let mut only_other = other.0.iter().filter(|v| !self.contains(**v));
        match (
            only_self.next(),
            only_self.next(),
            only_other.next(),
            only_other.next(),
        ) {
            (Some(&a), None, Some(&b), None) => Some((a, b)),
            _ => None,
        }
    }

    /// `V \ self` for a base graph of order `n`.
    pub fn complement(&self, n: usize) -> TokenConfig {
        TokenConfig((0..n).filter(|&v| !self.contains(v)).collect())
    }

    /// Colexicographic rank among the k-subsets of any ground set containing the members.
    pub fn rank(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &c)| binomial(c, i + 1))
            .sum()
    }

    /// Inverse of [`TokenConfig::rank`] over k-subsets of `0..n`.
    pub fn unrank(rank: usize, n: usize, k: usize) -> Result<Self, TokenError> {
        let count = binomial(n, k);
        if rank >= count {
            return Err(TokenError::RankOutOfRange { rank, count });
        }
        let mut remaining = rank;
        let mut members = vec![0; k];
        let mut candidate = n;
        for i in (1..=k).rev() {
            // Largest c with C(c, i) <= remaining.
            candidate -= 1;
            while binomial(candidate, i) > remaining {
                candidate -= 1;
            }
            remaining -= binomial(candidate, i);
            members[i - 1] = candidate;
        }
        Ok(TokenConfig(members))
    }
}

impl fmt::Display for TokenConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl Serialize for TokenConfig {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// `F_k(G)` materialized as a [`Graph`] whose vertex ids are configuration ranks.
#[derive(Debug, Clone)]
pub struct TokenGraph {
    base: Graph,
    k: usize,
    graph: Graph,
    configs: Vec<TokenConfig>,
}

impl TokenGraph {
    /// Builds `F_k(G)` for `1 <= k <= n - 1`. Each edge `uv` of `G` contributes
    /// one edge per (k-1)-subset of the other `n - 2` vertices.
    pub fn build(base: &Graph, k: usize) -> Result<Self, TokenError> {
        let n = base.order();
        if k == 0 || k >= n {
            return Err(TokenError::TokenCountOutOfRange { k, n });
        }
        let count = binomial(n, k);
        let configs = (0..count)
            .map(|r| TokenConfig::unrank(r, n, k))
            .collect::<Result<Vec<_>, _>>()?;
        let mut edges = Vec::with_capacity(base.size() * binomial(n - 2, k - 1));
        for &(u, v) in base.edges() {
            let rest = base.vertices().filter(|&w| w != u && w != v);
            for stationary in rest.combinations(k - 1) {
                let with = |w: VertexId| {
                    let mut m = stationary.clone();
                    let at = m.partition_point(|&s| s < w);
                    m.insert(at, w);
                    TokenConfig::from_sorted(m).rank()
                };
                edges.push((with(u), with(v)));
            }
        }
        let graph = Graph::new(count, edges)?;
        Ok(TokenGraph {
            base: base.clone(),
            k,
            graph,
            configs,
        })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The token graph itself.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn config(&self, id: VertexId) -> &TokenConfig {
        &self.configs[id]
    }

    pub fn configs(&self) -> &[TokenConfig] {
        &self.configs
    }

    /// Vertex id of a configuration, after checking it belongs to this token graph.
    pub fn id_of(&self, config: &TokenConfig) -> Result<VertexId, TokenError> {
        let n = self.base.order();
        if config.len() != self.k || config.members().last().is_some_and(|&v| v >= n) {
            return Err(TokenError::MalformedConfig {
                members: config.members().to_vec(),
                k: self.k,
                n,
            });
        }
        Ok(config.rank())
    }

    /// Parses and validates a configuration for this token graph.
    pub fn config_from(&self, members: Vec<VertexId>) -> Result<TokenConfig, TokenError> {
        TokenConfig::new(members, self.k, self.base.order())
    }

    pub fn adjacent(&self, a: &TokenConfig, b: &TokenConfig) -> bool {
        a.single_difference(b)
            .is_some_and(|(u, v)| self.base.has_edge(u, v))
    }

    /// Number of (occupied, unoccupied) neighbour pairs of `config` in the base
    /// graph; equals the degree of `config` in `F_k(G)`.
    pub fn config_degree(&self, config: &TokenConfig) -> usize {
        config_degree(&self.base, config)
    }

    /// DOT text labelling each vertex with its token set.
    pub fn to_dot(&self) -> String {
        self.graph.to_dot_labeled(|v| self.configs[v].to_string())
    }
}

pub fn build_token_graph(base: &Graph, k: usize) -> Result<TokenGraph, TokenError> {
    TokenGraph::build(base, k)
}

/// Counts token moves available from `config` in `base`.
pub fn config_degree(base: &Graph, config: &TokenConfig) -> usize {
    config
        .members()
        .iter()
        .map(|&v| {
            base.neighbors(v)
                .iter()
                .filter(|&&w| !config.contains(w))
                .count()
        })
        .sum()
}

/// Checks that `A -> V \ A` maps `F_k(G)` isomorphically onto `F_{n-k}(G)`.
pub fn complement_is_isomorphism(base: &Graph, k: usize) -> Result<bool, TokenError> {
    let n = base.order();
    let left = TokenGraph::build(base, k)?;
    let right = TokenGraph::build(base, n - k)?;
    let image: Vec<VertexId> = left
        .configs()
        .iter()
        .map(|c| c.complement(n).rank())
        .collect();
    let mut hit = vec![false; right.graph().order()];
    for &i in &image {
        if i >= hit.len() || std::mem::replace(&mut hit[i], true) {
            return Ok(false);
        }
    }
    if left.graph().size() != right.graph().size() {
        return Ok(false);
    }
    Ok(left
        .graph()
        .edges()
        .iter()
        .all(|&(a, b)| right.graph().has_edge(image[a], image[b])))
}
