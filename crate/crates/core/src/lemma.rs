//! Explicit families of `k(λ(G) - k + 1)` pairwise edge-disjoint paths between
//! two adjacent configurations `X = Z ∪ {x}` and `Y = Z ∪ {y}` of `F_k(G)`.
//!
//! The family is the union of three parts:
//!
//! * **C1**: for every stationary token `z` and every neighbour `u` of `z`
//!   outside `X ∪ Y`, the length-3 detour "move `z` to `u`, move `x` to `y`,
//!   move `u` back to `z`".
//! * **C2**: lifts of the token-free paths of a Menger system between `x` and
//!   `y`, plus the two-edge paths `x, z, y` through stationary tokens adjacent
//!   to both `x` and `y`.
//! * **Cg**: lifts of the remaining ("good") Menger paths whose first and last
//!   inner vertices are free, routed as `x -> x_r`, then `x_r ... y_r` along
//!   the path, then `y_r -> y`.
//!
//! Every piece is checked as it is assembled and the final certificate is
//! verified against the materialized token graph.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::connectivity::{edge_connectivity, max_flow_paths, ConnectivityError};
use crate::graph::{DirectedPath, Graph, PathError, VertexId};
use crate::token::{TokenConfig, TokenError, TokenGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("configurations {0} and {1} are not adjacent in the token graph")]
    NotAdjacent(TokenConfig, TokenConfig),
    #[error("path from {first} to {last} is not admissible for {config}")]
    Inadmissible {
        config: TokenConfig,
        first: VertexId,
        last: VertexId,
    },
    #[error("token on {from} cannot move to occupied vertex {to}")]
    BlockedMove { from: VertexId, to: VertexId },
    #[error("lifted paths do not meet: {0} then {1}")]
    Discontinuous(TokenConfig, TokenConfig),
    #[error("k = {k} exceeds the edge-connectivity {lambda} of the base graph")]
    HypothesisViolated { k: usize, lambda: usize },
    #[error("need at least {need} edge-disjoint paths, got {have}")]
    TooFewPaths { have: usize, need: usize },
    #[error("edge ({0}, {1}) is used by two Menger paths")]
    NotEdgeDisjoint(VertexId, VertexId),
    #[error("Menger path {index} does not run from {x} to {y}")]
    WrongEndpoints {
        index: usize,
        x: VertexId,
        y: VertexId,
    },
    #[error("certificate check failed: {0}")]
    Certificate(String),
    #[error(transparent)]
    Token(#[from] TokenError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Connectivity(#[from] ConnectivityError),
}

impl LemmaError {
    /// True for failures of the construction itself, as opposed to bad input.
    pub fn is_invariant_failure(&self) -> bool {
        matches!(
            self,
            LemmaError::Certificate(_)
                | LemmaError::BlockedMove { .. }
                | LemmaError::Discontinuous(..)
                | LemmaError::NotEdgeDisjoint(..)
                | LemmaError::TooFewPaths { .. }
                | LemmaError::WrongEndpoints { .. }
        )
    }
}

fn violation(msg: impl Into<String>) -> LemmaError {
    LemmaError::Certificate(msg.into())
}

/// A path of `F_k(G)` given by its configurations and the token move
/// `(from, to)` taken at each step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedPath {
    configs: Vec<TokenConfig>,
    moves: Vec<(VertexId, VertexId)>,
}

impl LiftedPath {
    pub fn configs(&self) -> &[TokenConfig] {
        &self.configs
    }

    pub fn moves(&self) -> &[(VertexId, VertexId)] {
        &self.moves
    }

    pub fn start(&self) -> &TokenConfig {
        &self.configs[0]
    }

    pub fn end(&self) -> &TokenConfig {
        &self.configs[self.configs.len() - 1]
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Configurations strictly between the two ends.
    pub fn internal(&self) -> &[TokenConfig] {
        if self.configs.len() <= 2 {
            &[]
        } else {
            &self.configs[1..self.configs.len() - 1]
        }
    }

    /// Appends `next`, which must start where `self` ends.
    pub fn concat(mut self, next: LiftedPath) -> Result<LiftedPath, LemmaError> {
        if self.end() != next.start() {
            return Err(LemmaError::Discontinuous(
                self.end().clone(),
                next.start().clone(),
            ));
        }
        self.configs.extend(next.configs.into_iter().skip(1));
        self.moves.extend(next.moves);
        Ok(self)
    }
}

/// A path is admissible for `config` when it leaves an occupied vertex and ends
/// on an empty one.
pub fn is_admissible(path: &DirectedPath, config: &TokenConfig) -> bool {
    config.contains(path.first()) && !config.contains(path.last())
}

/// Lifts an admissible path `P` from `x` to `y` to a path of `F_k(G)` from
/// `config` to `config - x + y`.
///
/// Let `v_1 = x, ..., v_q` be the occupied vertices of `P` in path order. The
/// token on `v_q` slides along `P` to `y`; then for `i = q-1, ..., 1` the token
/// on `v_i` slides along `P` to `v_{i+1}`. Every single step is simulated and
/// must land on an empty vertex.
pub fn lift_path(config: &TokenConfig, path: &DirectedPath) -> Result<LiftedPath, LemmaError> {
    if !is_admissible(path, config) {
        return Err(LemmaError::Inadmissible {
            config: config.clone(),
            first: path.first(),
            last: path.last(),
        });
    }
    let vertices = path.vertices();
    let occupied: Vec<usize> = (0..vertices.len())
        .filter(|&i| config.contains(vertices[i]))
        .collect();
    let mut current = config.clone();
    let mut lifted = LiftedPath {
        configs: vec![current.clone()],
        moves: Vec::with_capacity(path.len()),
    };
    let mut target = vertices.len() - 1;
    for &start in occupied.iter().rev() {
        for step in start..target {
            let (from, to) = (vertices[step], vertices[step + 1]);
            current = current
                .moved(from, to)
                .ok_or(LemmaError::BlockedMove { from, to })?;
            lifted.configs.push(current.clone());
            lifted.moves.push((from, to));
        }
        target = start;
    }
    Ok(lifted)
}

/// The swapped pair of two adjacent configurations: `X = Z ∪ {x}`, `Y = Z ∪ {y}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Swap {
    pub x: VertexId,
    pub y: VertexId,
    /// `Z`, ascending.
    pub stationary: Vec<VertexId>,
}

impl Swap {
    pub fn between(base: &Graph, from: &TokenConfig, to: &TokenConfig) -> Result<Swap, LemmaError> {
        match from.single_difference(to) {
            Some((x, y)) if base.has_edge(x, y) => Ok(Swap {
                x,
                y,
                stationary: from.members().iter().copied().filter(|&v| v != x).collect(),
            }),
            _ => Err(LemmaError::NotAdjacent(from.clone(), to.clone())),
        }
    }

    /// Stationary tokens adjacent to both `x` and `y`.
    pub fn doubly_adjacent(&self, base: &Graph) -> Vec<VertexId> {
        self.stationary
            .iter()
            .copied()
            .filter(|&z| base.has_edge(self.x, z) && base.has_edge(z, self.y))
            .collect()
    }
}

/// Which family a member of the certificate belongs to, with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    /// Detour through outside neighbour `outside` of stationary token `token`.
    C1 { token: VertexId, outside: VertexId },
    /// Direct lift of Menger path `source`.
    C2 { source: usize },
    /// Endpoint-shifted lift of good Menger path `source`.
    Cg { source: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    #[serde(flatten)]
    pub family: Family,
    #[serde(flatten)]
    pub path: LiftedPath,
}

/// The C1 detours and the per-token counts `m_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetourFamily {
    pub members: Vec<FamilyMember>,
    /// `m_i` for the stationary tokens in ascending order.
    pub counts: Vec<usize>,
}

fn single_edge(base: &Graph, from: VertexId, to: VertexId) -> Result<DirectedPath, PathError> {
    DirectedPath::new(base, vec![from, to])
}

/// For each stationary token `z` (ascending) and each neighbour `u` of `z`
/// outside `X ∪ Y` (ascending): `X -[z->u]- X' -[x->y]- Y' -[u->z]- Y`.
pub fn build_c1(
    base: &Graph,
    from: &TokenConfig,
    to: &TokenConfig,
) -> Result<DetourFamily, LemmaError> {
    let swap = Swap::between(base, from, to)?;
    let mut members = Vec::new();
    let mut counts = Vec::with_capacity(swap.stationary.len());
    for &z in &swap.stationary {
        let outside: Vec<_> = base
            .neighbors(z)
            .iter()
            .copied()
            .filter(|&u| u != swap.x && u != swap.y && !from.contains(u))
            .collect();
        counts.push(outside.len());
        for u in outside {
            let leave = lift_path(from, &single_edge(base, z, u)?)?;
            let swap_step = lift_path(leave.end(), &single_edge(base, swap.x, swap.y)?)?;
            let back = lift_path(swap_step.end(), &single_edge(base, u, z)?)?;
            let path = leave.concat(swap_step)?.concat(back)?;
            members.push(FamilyMember {
                family: Family::C1 {
                    token: z,
                    outside: u,
                },
                path,
            });
        }
    }
    Ok(DetourFamily { members, counts })
}

/// Role of a Menger path once the system is repaired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathClass {
    /// `x, z, y` for a stationary token `z` adjacent to both ends.
    Detour,
    /// Avoids every stationary token.
    TokenFree,
    /// First or last inner vertex is a stationary token adjacent to only one end.
    Bad,
    Good,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedPath {
    pub path: DirectedPath,
    pub class: PathClass,
}

impl ClassifiedPath {
    /// `x_r`, the vertex after `x`.
    pub fn first_inner(&self) -> VertexId {
        self.path.vertices()[1]
    }

    /// `y_r`, the vertex before `y`.
    pub fn last_inner(&self) -> VertexId {
        let v = self.path.vertices();
        v[v.len() - 2]
    }
}

/// A family of `t` pairwise edge-disjoint `x -> y` paths containing `x, z, y`
/// for every doubly adjacent stationary token `z`, with each path classified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MengerSystem {
    pub x: VertexId,
    pub y: VertexId,
    pub stationary: Vec<VertexId>,
    pub doubly_adjacent: Vec<VertexId>,
    pub paths: Vec<ClassifiedPath>,
}

impl MengerSystem {
    pub fn t(&self) -> usize {
        self.paths.len()
    }

    pub fn count(&self, class: PathClass) -> usize {
        self.paths.iter().filter(|p| p.class == class).count()
    }

    /// `ℓ`, the number of doubly adjacent stationary tokens.
    pub fn ell(&self) -> usize {
        self.doubly_adjacent.len()
    }

    pub fn n0(&self) -> usize {
        self.count(PathClass::TokenFree)
    }

    pub fn nb(&self) -> usize {
        self.count(PathClass::Bad)
    }

    pub fn ng(&self) -> usize {
        self.count(PathClass::Good)
    }

    fn token_count(&self) -> usize {
        self.stationary.len() + 1
    }

    /// Re-checks every structural property of the system.
    pub fn check(&self) -> Result<(), LemmaError> {
        let raw: Vec<_> = self.paths.iter().map(|p| p.path.clone()).collect();
        check_path_family(&raw, self.x, self.y)?;
        for &z in &self.doubly_adjacent {
            let present = self
                .paths
                .iter()
                .any(|p| p.class == PathClass::Detour && p.path.vertices() == [self.x, z, self.y]);
            if !present {
                return Err(violation(format!(
                    "detour {}, {z}, {} missing",
                    self.x, self.y
                )));
            }
        }
        if self.count(PathClass::Detour) != self.ell() {
            return Err(violation(
                "detour count differs from the doubly adjacent token count",
            ));
        }
        let (ell, n0, nb, ng) = (self.ell(), self.n0(), self.nb(), self.ng());
        if self.t() != ell + n0 + nb + ng {
            return Err(violation(format!(
                "t = {} but ℓ + n0 + nb + ng = {}",
                self.t(),
                ell + n0 + nb + ng
            )));
        }
        if nb + ell > self.token_count() - 1 {
            return Err(violation(format!(
                "{nb} bad paths exceed k - 1 - ℓ = {}",
                self.token_count() - 1 - ell
            )));
        }
        let is_stationary = |v: VertexId| self.stationary.contains(&v);
        let is_single = |v: VertexId| is_stationary(v) && !self.doubly_adjacent.contains(&v);
        for (i, p) in self.paths.iter().enumerate() {
            let ok = match p.class {
                PathClass::Detour => p.path.len() == 2,
                PathClass::TokenFree => !p.path.vertices().iter().any(|&v| is_stationary(v)),
                PathClass::Bad => is_single(p.first_inner()) || is_single(p.last_inner()),
                PathClass::Good => {
                    p.path.len() >= 3 && !is_single(p.first_inner()) && !is_single(p.last_inner())
                }
            };
            if !ok {
                return Err(violation(format!(
                    "path {i} misclassified as {:?}",
                    p.class
                )));
            }
        }
        Ok(())
    }
}

/// Checks that `paths` are `x -> y` paths sharing no edge.
fn check_path_family(paths: &[DirectedPath], x: VertexId, y: VertexId) -> Result<(), LemmaError> {
    let mut used = std::collections::HashSet::new();
    for (index, p) in paths.iter().enumerate() {
        if p.first() != x || p.last() != y {
            return Err(LemmaError::WrongEndpoints { index, x, y });
        }
        for (u, v) in p.edges() {
            if !used.insert((u, v)) {
                return Err(LemmaError::NotEdgeDisjoint(u, v));
            }
        }
    }
    Ok(())
}

/// Removes closed loops from a walk, keeping a simple path over a subset of its edges.
fn erase_loops(walk: &[VertexId]) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = Vec::with_capacity(walk.len());
    let mut at: HashMap<VertexId, usize> = HashMap::new();
    for &v in walk {
        if let Some(&i) = at.get(&v) {
            for w in out.drain(i + 1..) {
                at.remove(&w);
            }
        } else {
            at.insert(v, out.len());
            out.push(v);
        }
    }
    out
}

fn classify(
    path: DirectedPath,
    x: VertexId,
    y: VertexId,
    stationary: &[VertexId],
    doubly_adjacent: &[VertexId],
) -> ClassifiedPath {
    let v = path.vertices();
    let class = if v.len() == 3 && doubly_adjacent.contains(&v[1]) {
        PathClass::Detour
    } else if !v.iter().any(|w| stationary.contains(w)) {
        PathClass::TokenFree
    } else {
        let single = |w: VertexId| stationary.contains(&w) && !doubly_adjacent.contains(&w);
        if single(v[1]) || single(v[v.len() - 2]) {
            PathClass::Bad
        } else {
            PathClass::Good
        }
    };
    debug_assert!(v[0] == x && v[v.len() - 1] == y);
    ClassifiedPath { path, class }
}

/// Rewrites a family of edge-disjoint `x -> y` paths so that it contains
/// `x, z, y` for every stationary `z` adjacent to both `x` and `y`, then
/// classifies every path.
///
/// Tokens `z` are handled in ascending order against the current family:
///
/// 1. neither `xz` nor `zy` is used: `x, z, y` replaces the lowest-index path
///    that is not already such a detour;
/// 2. exactly one is used, by `P_r`: `x, z, y` replaces `P_r`;
/// 3. `xz` is on `P_i` and `zy` on `P_j != P_i`: `P_i` becomes `x, z, y` and
///    `P_j` becomes the rest of `P_j ∪ P_i` (the `x..z` part of `P_j` followed by
///    the `z..y` part of `P_i`), shortcut to a simple path.
pub fn repair_menger_system(
    base: &Graph,
    paths: Vec<DirectedPath>,
    x: VertexId,
    y: VertexId,
    stationary: &[VertexId],
) -> Result<MengerSystem, LemmaError> {
    let k = stationary.len() + 1;
    if paths.len() < k {
        return Err(LemmaError::TooFewPaths {
            have: paths.len(),
            need: k,
        });
    }
    check_path_family(&paths, x, y)?;
    let mut stationary = stationary.to_vec();
    stationary.sort_unstable();
    let doubly_adjacent: Vec<_> = stationary
        .iter()
        .copied()
        .filter(|&z| base.has_edge(x, z) && base.has_edge(z, y))
        .collect();

    let mut paths = paths;
    let is_detour = |p: &DirectedPath| p.len() == 2 && doubly_adjacent.contains(&p.vertices()[1]);
    for &z in &doubly_adjacent {
        let detour = DirectedPath::new(base, vec![x, z, y])?;
        // Paths start at x and end at y, so xz can only be a first edge and zy a last one.
        let via_xz = paths.iter().position(|p| p.vertices()[1] == z);
        let via_zy = paths.iter().position(|p| p.vertices()[p.len() - 1] == z);
        match (via_xz, via_zy) {
            (None, None) => {
                let r =
                    paths
                        .iter()
                        .position(|p| !is_detour(p))
                        .ok_or(LemmaError::TooFewPaths {
                            have: paths.len(),
                            need: k,
                        })?;
                paths[r] = detour;
            }
            (Some(r), None) | (None, Some(r)) => paths[r] = detour,
            (Some(i), Some(j)) if i == j => {}
            (Some(i), Some(j)) => {
                let (pi, pj) = (paths[i].vertices(), paths[j].vertices());
                let walk: Vec<_> = pj[..pj.len() - 1].iter().chain(&pi[2..]).copied().collect();
                let rerouted = DirectedPath::new(base, erase_loops(&walk))?;
                paths[i] = detour;
                paths[j] = rerouted;
            }
        }
    }
    check_path_family(&paths, x, y)?;

    let paths = paths
        .into_iter()
        .map(|p| classify(p, x, y, &stationary, &doubly_adjacent))
        .collect();
    let system = MengerSystem {
        x,
        y,
        stationary,
        doubly_adjacent,
        paths,
    };
    system.check()?;
    Ok(system)
}

/// Lifts the detour and token-free paths directly (C2) and the good paths with
/// shifted endpoints (Cg). Bad paths are skipped.
pub fn build_c2_cg(
    base: &Graph,
    system: &MengerSystem,
    from: &TokenConfig,
    to: &TokenConfig,
) -> Result<Vec<FamilyMember>, LemmaError> {
    let (x, y) = (system.x, system.y);
    let mut members = Vec::new();
    for (index, p) in system.paths.iter().enumerate() {
        let member = match p.class {
            PathClass::Bad => continue,
            PathClass::Detour | PathClass::TokenFree => FamilyMember {
                family: Family::C2 { source: index },
                path: lift_path(from, &p.path)?,
            },
            PathClass::Good => {
                let (xr, yr) = (p.first_inner(), p.last_inner());
                if [xr, yr].iter().any(|&v| from.contains(v) || to.contains(v)) {
                    return Err(violation(format!(
                        "good path {index} has an occupied end vertex ({xr} or {yr})"
                    )));
                }
                let inner = &p.path.vertices()[1..p.path.len()];
                let first = lift_path(from, &single_edge(base, x, xr)?)?;
                let middle = lift_path(first.end(), &DirectedPath::new(base, inner.to_vec())?)?;
                let last = lift_path(middle.end(), &single_edge(base, yr, y)?)?;
                FamilyMember {
                    family: Family::Cg { source: index },
                    path: first.concat(middle)?.concat(last)?,
                }
            }
        };
        if member.path.start() != from || member.path.end() != to {
            return Err(violation(format!(
                "lift of path {index} does not join the swapped pair"
            )));
        }
        let internal = member.path.internal();
        let signature_ok = match p.class {
            PathClass::Detour => internal.iter().all(|c| c.contains(x) && c.contains(y)),
            _ => internal.iter().all(|c| !c.contains(x) && !c.contains(y)),
        };
        if !signature_ok {
            return Err(violation(format!(
                "internal configurations of path {index} carry the wrong ends"
            )));
        }
        members.push(member);
    }
    Ok(members)
}

/// Two family members sharing an edge of the token graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeConflict {
    pub edge: (TokenConfig, TokenConfig),
    pub first: usize,
    pub second: usize,
}

/// `None` when no edge of the token graph lies on two of the paths.
pub fn verify_edge_disjoint(family: &[LiftedPath], tokens: &TokenGraph) -> Option<EdgeConflict> {
    let mut owner: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    for (index, path) in family.iter().enumerate() {
        for pair in path.configs().windows(2) {
            let (a, b) = (pair[0].rank(), pair[1].rank());
            if let Some(&first) = owner.get(&(a.min(b), a.max(b))) {
                let edge = (
                    tokens.config(a.min(b)).clone(),
                    tokens.config(a.max(b)).clone(),
                );
                return Some(EdgeConflict {
                    edge,
                    first,
                    second: index,
                });
            }
            owner.insert((a.min(b), a.max(b)), index);
        }
    }
    None
}

/// Checks that `path` is a simple `from -> to` path of the token graph whose
/// recorded moves match its configurations.
pub fn check_lifted_path(
    path: &LiftedPath,
    tokens: &TokenGraph,
    from: &TokenConfig,
    to: &TokenConfig,
) -> Result<(), LemmaError> {
    if path.start() != from || path.end() != to {
        return Err(violation(format!(
            "path runs {} -> {}, expected {from} -> {to}",
            path.start(),
            path.end()
        )));
    }
    if path.configs().len() != path.moves().len() + 1 {
        return Err(violation("move count does not match configuration count"));
    }
    let mut seen = std::collections::HashSet::new();
    for c in path.configs() {
        let id = tokens.id_of(c)?;
        if !seen.insert(id) {
            return Err(violation(format!("configuration {c} repeats")));
        }
    }
    for (pair, &(a, b)) in path.configs().windows(2).zip(path.moves()) {
        let (u, v) = (pair[0].rank(), pair[1].rank());
        if !tokens.graph().has_edge(u, v) || pair[0].single_difference(&pair[1]) != Some((a, b)) {
            return Err(violation(format!(
                "{} -> {} is not the token move {a} -> {b}",
                pair[0], pair[1]
            )));
        }
    }
    Ok(())
}

/// Machine-checkable record of one constructed family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisjointFamilyCertificate {
    pub schema: u32,
    #[serde(rename = "X")]
    pub from: TokenConfig,
    #[serde(rename = "Y")]
    pub to: TokenConfig,
    pub k: usize,
    /// `λ(G)`.
    pub t: usize,
    pub swapped: (VertexId, VertexId),
    pub bound: usize,
    pub achieved: usize,
    /// `m_i` per stationary token, ascending by token.
    pub m: Vec<usize>,
    pub ell: usize,
    pub n0: usize,
    pub nb: usize,
    pub ng: usize,
    pub families: Vec<FamilyMember>,
}

impl DisjointFamilyCertificate {
    pub fn paths(&self) -> Vec<LiftedPath> {
        self.families.iter().map(|m| m.path.clone()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// `k(t - k + 1)`.
pub fn claimed_bound(k: usize, t: usize) -> usize {
    k * (t + 1).saturating_sub(k)
}

/// Builds certificates for many adjacent pairs over one base graph and `k`,
/// sharing `λ(G)` and the materialized token graph.
#[derive(Debug, Clone)]
pub struct FamilyBuilder {
    tokens: TokenGraph,
    lambda: usize,
}

impl FamilyBuilder {
    /// Refuses `k > λ(G)`.
    pub fn new(base: &Graph, k: usize) -> Result<Self, LemmaError> {
        let tokens = TokenGraph::build(base, k)?;
        let lambda = edge_connectivity(base);
        if k > lambda {
            return Err(LemmaError::HypothesisViolated { k, lambda });
        }
        Ok(FamilyBuilder { tokens, lambda })
    }

    pub fn tokens(&self) -> &TokenGraph {
        &self.tokens
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Every ordered adjacent pair `(X, Y)` of the token graph.
    pub fn adjacent_pairs(&self) -> impl Iterator<Item = (&TokenConfig, &TokenConfig)> + '_ {
        self.tokens.graph().edges().iter().flat_map(move |&(a, b)| {
            let (ca, cb) = (self.tokens.config(a), self.tokens.config(b));
            [(ca, cb), (cb, ca)]
        })
    }

    pub fn construct(
        &self,
        from: &TokenConfig,
        to: &TokenConfig,
    ) -> Result<DisjointFamilyCertificate, LemmaError> {
        let base = self.tokens.base();
        let (k, t) = (self.tokens.k(), self.lambda);
        self.tokens.id_of(from)?;
        self.tokens.id_of(to)?;
        let swap = Swap::between(base, from, to)?;

        let mut menger = max_flow_paths(base, swap.x, swap.y)?;
        if menger.len() < t {
            return Err(LemmaError::TooFewPaths {
                have: menger.len(),
                need: t,
            });
        }
        menger.truncate(t);
        let system = repair_menger_system(base, menger, swap.x, swap.y, &swap.stationary)?;

        let detours = build_c1(base, from, to)?;
        let lifted = build_c2_cg(base, &system, from, to)?;
        let families: Vec<_> = detours.members.into_iter().chain(lifted).collect();

        for (i, member) in families.iter().enumerate() {
            check_lifted_path(&member.path, &self.tokens, from, to)
                .map_err(|e| violation(format!("member {i}: {e}")))?;
        }
        let paths: Vec<_> = families.iter().map(|m| m.path.clone()).collect();
        if let Some(conflict) = verify_edge_disjoint(&paths, &self.tokens) {
            return Err(violation(format!(
                "members {} and {} share the edge {} -- {}",
                conflict.first, conflict.second, conflict.edge.0, conflict.edge.1
            )));
        }

        let (ell, n0, nb, ng) = (system.ell(), system.n0(), system.nb(), system.ng());
        for (&z, &m) in swap.stationary.iter().zip(&detours.counts) {
            let floor = if system.doubly_adjacent.contains(&z) {
                t - k
            } else {
                t - k + 1
            };
            if m < floor {
                return Err(violation(format!(
                    "token {z} has {m} outside neighbours, expected >= {floor}"
                )));
            }
        }
        let detour_total: usize = detours.counts.iter().sum();
        if detour_total + ell < (k - 1) * (t - k + 1) {
            return Err(violation(format!(
                "Σm = {detour_total} below (k-1)(t-k+1) - ℓ"
            )));
        }
        let achieved = families.len();
        if achieved != detour_total + ell + n0 + ng {
            return Err(violation(format!(
                "family size {achieved} differs from Σm + ℓ + n0 + ng"
            )));
        }
        let bound = claimed_bound(k, t);
        if achieved < bound {
            return Err(violation(format!(
                "achieved {achieved} below the bound {bound}"
            )));
        }
        Ok(DisjointFamilyCertificate {
            schema: 1,
            from: from.clone(),
            to: to.clone(),
            k,
            t,
            swapped: (swap.x, swap.y),
            bound,
            achieved,
            m: detours.counts,
            ell,
            n0,
            nb,
            ng,
            families,
        })
    }
}

/// One-shot form of [`FamilyBuilder::construct`].
pub fn construct_family(
    base: &Graph,
    k: usize,
    from: &TokenConfig,
    to: &TokenConfig,
) -> Result<DisjointFamilyCertificate, LemmaError> {
    FamilyBuilder::new(base, k)?.construct(from, to)
}
