//! Cross-checks against brute-force oracles that share no code with the
//! flow-based implementations.

use itertools::Itertools;
use proptest::prelude::*;
use tokengraph::connectivity::{
    edge_connectivity, edge_connectivity_over_edges, exhaustive_edge_connectivity,
    local_edge_connectivity, max_flow_paths, min_degree, min_vertex_cut, vertex_connectivity,
};
use tokengraph::graph::{
    bridged_cliques, complete_graph, cycle_graph, matched_cliques, parse_dot, parse_edge_list,
    shared_vertex_cliques, Graph,
};
use tokengraph::lemma::{lift_path, FamilyBuilder};
use tokengraph::token::{
    binomial, complement_is_isomorphism, config_degree, TokenConfig, TokenGraph,
};
use tokengraph::{DirectedPath, VertexId};

/// Minimum number of edges leaving a vertex set `S` with `s ∈ S`, `t ∉ S`,
/// over all such `S`.
fn bipartition_st_cut(g: &Graph, s: VertexId, t: VertexId) -> usize {
    let n = g.order();
    (0u32..1 << n)
        .filter(|mask| mask & (1 << s) != 0 && mask & (1 << t) == 0)
        .map(|mask| {
            g.edges()
                .iter()
                .filter(|&&(u, v)| ((mask >> u) & 1) != ((mask >> v) & 1))
                .count()
        })
        .min()
        .unwrap()
}

fn bipartition_global_cut(g: &Graph) -> usize {
    (1..g.order())
        .map(|t| bipartition_st_cut(g, 0, t))
        .min()
        .unwrap()
}

/// Smallest vertex set whose removal disconnects `g` or leaves one vertex.
fn brute_force_kappa(g: &Graph) -> usize {
    (0..g.order())
        .find(|&size| {
            g.vertices()
                .combinations(size)
                .any(|gone| g.is_separated_by_vertices(&gone))
        })
        .unwrap_or(g.order())
}

/// `F_k(G)` by testing every pair of k-subsets.
fn pairwise_token_edges(g: &Graph, k: usize) -> Vec<(Vec<VertexId>, Vec<VertexId>)> {
    let subsets: Vec<Vec<VertexId>> = g.vertices().combinations(k).collect();
    let mut edges = Vec::new();
    for (i, a) in subsets.iter().enumerate() {
        for b in &subsets[i + 1..] {
            let only_a: Vec<_> = a.iter().filter(|v| !b.contains(v)).collect();
            let only_b: Vec<_> = b.iter().filter(|v| !a.contains(v)).collect();
            if only_a.len() == 1 && g.has_edge(*only_a[0], *only_b[0]) {
                edges.push((a.clone(), b.clone()));
            }
        }
    }
    edges
}

fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all: Vec<_> = (0..n).tuple_combinations::<(_, _)>().collect();
            let edges = all
                .into_iter()
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

fn arb_connected(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(min_n, max_n).prop_filter("connected", |g| g.is_connected())
}

#[test]
fn derived_flow_examples() {
    let k4 = complete_graph(4).unwrap();
    assert_eq!(
        max_flow_paths(&k4, 0, 1).unwrap().len(),
        bipartition_st_cut(&k4, 0, 1)
    );
    assert_eq!(bipartition_st_cut(&k4, 0, 1), 3);
    let b3 = bridged_cliques(3).unwrap();
    assert_eq!(bipartition_st_cut(&b3, 0, 5), 1);
    assert_eq!(max_flow_paths(&b3, 0, 5).unwrap().len(), 1);
    let m3 = matched_cliques(3).unwrap();
    assert_eq!(bipartition_global_cut(&m3), 3);
    assert_eq!(edge_connectivity(&m3), 3);
}

#[test]
fn derived_token_examples() {
    let c5 = cycle_graph(5).unwrap();
    let tg = TokenGraph::build(&c5, 2).unwrap();
    assert_eq!(pairwise_token_edges(&c5, 2).len(), 15);
    assert_eq!(tg.graph().size(), c5.size() * binomial(3, 1));
    // λ(F_2(C_5)) by bipartition enumeration over its 10 vertices.
    assert_eq!(bipartition_global_cut(tg.graph()), 2);
    assert_eq!(edge_connectivity(tg.graph()), 2);
}

#[test]
fn h1_and_h2_shapes() {
    for r in 3..=5 {
        let h1 = shared_vertex_cliques(r).unwrap();
        assert_eq!(vertex_connectivity(&h1), 1);
        assert_eq!(edge_connectivity(&h1), r - 1);
        let h2 = bridged_cliques(r).unwrap();
        assert_eq!(min_degree(&h2), r - 1);
        assert_eq!(edge_connectivity(&h2), 1);
    }
}

#[test]
fn c5_family_against_token_graph_flow() {
    let c5 = cycle_graph(5).unwrap();
    let builder = FamilyBuilder::new(&c5, 2).unwrap();
    let (x, y) = (
        TokenConfig::new(vec![0, 1], 2, 5).unwrap(),
        TokenConfig::new(vec![0, 2], 2, 5).unwrap(),
    );
    let cert = builder.construct(&x, &y).unwrap();
    let flow = local_edge_connectivity(builder.tokens().graph(), x.rank(), y.rank()).unwrap();
    assert!(cert.achieved >= 2 && cert.achieved <= flow);
    assert!(edge_connectivity(builder.tokens().graph()) >= 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_and_dot_round_trip(g in arb_graph(1, 50)) {
        prop_assert_eq!(parse_edge_list(&g.to_edge_list()).unwrap(), g.clone());
        prop_assert_eq!(parse_dot(&g.to_dot()).unwrap(), g);
    }

    #[test]
    fn handshake(g in arb_graph(1, 12)) {
        let degrees: usize = g.vertices().map(|v| g.degree(v)).sum();
        prop_assert_eq!(degrees, 2 * g.size());
    }

    #[test]
    fn flow_paths_are_a_maximum_disjoint_family(g in arb_graph(2, 8), s in 0usize..8, t in 0usize..8) {
        let (s, t) = (s % g.order(), t % g.order());
        prop_assume!(s != t);
        let paths = max_flow_paths(&g, s, t).unwrap();
        let mut used = std::collections::HashSet::new();
        for p in &paths {
            prop_assert_eq!((p.first(), p.last()), (s, t));
            prop_assert!(DirectedPath::new(&g, p.vertices().to_vec()).is_ok());
            for e in p.edges() {
                prop_assert!(used.insert(e));
            }
        }
        prop_assert_eq!(paths.len(), bipartition_st_cut(&g, s, t));
        // Deterministic.
        prop_assert_eq!(max_flow_paths(&g, s, t).unwrap(), paths);
    }

    #[test]
    fn connectivity_chain(g in arb_connected(2, 9)) {
        let (delta, lambda, kappa) = (min_degree(&g), edge_connectivity(&g), vertex_connectivity(&g));
        prop_assert!(delta >= lambda && lambda >= kappa);
        prop_assert_eq!(lambda, edge_connectivity_over_edges(&g));
        prop_assert_eq!(lambda, bipartition_global_cut(&g));
        if g.size() <= 25 {
            prop_assert_eq!(lambda, exhaustive_edge_connectivity(&g));
        }
        prop_assert_eq!(kappa, brute_force_kappa(&g));
        let (_, cut) = min_vertex_cut(&g);
        prop_assert_eq!(cut.len(), kappa);
        prop_assert!(g.is_separated_by_vertices(&cut));
    }

    #[test]
    fn token_graph_matches_pairwise_definition(g in arb_graph(2, 8), k in 1usize..8) {
        let n = g.order();
        prop_assume!(k < n);
        let tg = TokenGraph::build(&g, k).unwrap();
        prop_assert_eq!(tg.graph().order(), binomial(n, k));
        prop_assert_eq!(tg.graph().size(), g.size() * binomial(n - 2, k - 1));
        let expected: std::collections::BTreeSet<_> = pairwise_token_edges(&g, k)
            .into_iter()
            .map(|(a, b)| {
                let (a, b) = (TokenConfig::new(a, k, n).unwrap().rank(), TokenConfig::new(b, k, n).unwrap().rank());
                (a.min(b), a.max(b))
            })
            .collect();
        let built: std::collections::BTreeSet<_> = tg.graph().edges().iter().copied().collect();
        prop_assert_eq!(built, expected);
        for (id, c) in tg.configs().iter().enumerate() {
            prop_assert_eq!(c.rank(), id);
            prop_assert_eq!(config_degree(&g, c), tg.graph().degree(id));
        }
    }

    #[test]
    fn min_degree_bound_on_token_graphs(g in arb_connected(3, 8), k in 2usize..5) {
        let lambda = edge_connectivity(&g);
        prop_assume!(k <= lambda && k < g.order());
        let tg = TokenGraph::build(&g, k).unwrap();
        prop_assert!(min_degree(tg.graph()) >= k * (lambda - k + 1));
    }

    #[test]
    fn complement_is_an_isomorphism(g in arb_graph(2, 7), k in 1usize..7) {
        prop_assume!(k < g.order());
        prop_assert!(complement_is_isomorphism(&g, k).unwrap());
    }

    #[test]
    fn lifting_preserves_length(g in arb_connected(3, 8), k in 1usize..5, seed in any::<u64>()) {
        let n = g.order();
        prop_assume!(k < n);
        let x = TokenConfig::unrank((seed as usize) % binomial(n, k), n, k).unwrap();
        let tg = TokenGraph::build(&g, k).unwrap();
        for &from in x.members() {
            for to in g.vertices().filter(|v| !x.contains(*v)) {
                for p in max_flow_paths(&g, from, to).unwrap() {
                    let lifted = lift_path(&x, &p).unwrap();
                    prop_assert_eq!(lifted.len(), p.len());
                    prop_assert_eq!(lifted.end(), &x.moved(from, to).unwrap());
                    for pair in lifted.configs().windows(2) {
                        prop_assert!(tg.graph().has_edge(pair[0].rank(), pair[1].rank()));
                    }
                }
            }
        }
    }

    #[test]
    fn families_never_exceed_the_token_graph_flow(g in arb_connected(3, 7), k in 1usize..4, pick in any::<u64>()) {
        let lambda = edge_connectivity(&g);
        prop_assume!(k <= lambda && k < g.order());
        let builder = FamilyBuilder::new(&g, k).unwrap();
        let pairs: Vec<_> = builder.adjacent_pairs().collect();
        let (x, y) = pairs[(pick as usize) % pairs.len()];
        let cert = builder.construct(x, y).unwrap();
        let flow = local_edge_connectivity(builder.tokens().graph(), x.rank(), y.rank()).unwrap();
        prop_assert!(cert.achieved >= cert.bound);
        prop_assert!(cert.achieved <= flow);
        prop_assert_eq!(cert.m.iter().sum::<usize>() + cert.ell + cert.n0 + cert.ng, cert.achieved);
        prop_assert!(cert.nb + cert.ell < k);
    }
}
