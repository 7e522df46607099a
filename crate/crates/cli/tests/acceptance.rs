//! Acceptance suite. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p tokengraph-cli --test acceptance -- --nocapture` to see them.

use std::collections::HashSet;

use rayon::prelude::*;
use tokengraph::connectivity::{
    edge_connectivity, edge_connectivity_over_edges, exhaustive_edge_connectivity, min_degree,
};
use tokengraph::graph::{bridged_cliques, complete_graph, cycle_graph, matched_cliques, Graph};
use tokengraph::lemma::{check_lifted_path, lift_path, FamilyBuilder};
use tokengraph::token::{
    binomial, complement_is_isomorphism, config_degree, TokenConfig, TokenGraph,
};
use tokengraph::DirectedPath;
use tokengraph_cli::random_corpus;

const CORPUS_SIZE: usize = 216;
const CORPUS_SEED: u64 = 20_240_601;
const MAX_K: usize = 4;

fn corpus() -> Vec<(String, Graph)> {
    random_corpus(CORPUS_SIZE, CORPUS_SEED)
        .into_iter()
        .map(|spec| (spec.to_string(), spec.build().expect("corpus spec builds")))
        .collect()
}

/// `(label, graph, λ(G), k)` for every corpus graph and `1 <= k <= min(4, λ(G), n - 1)`.
fn bounded_cells() -> Vec<(String, Graph, usize, usize)> {
    corpus()
        .into_iter()
        .flat_map(|(label, g)| {
            let lambda = edge_connectivity(&g);
            let top = MAX_K.min(lambda).min(g.order() - 1);
            (1..=top)
                .map(move |k| (label.clone(), g.clone(), lambda, k))
                .collect::<Vec<_>>()
        })
        .collect()
}

fn bound(k: usize, lambda: usize) -> usize {
    k * (lambda + 1 - k)
}

fn report(id: u32, name: &str, failures: &[String], detail: &str) {
    if failures.is_empty() {
        println!("[criterion {id}] PASS {name}: {detail}");
    } else {
        println!(
            "[criterion {id}] FAIL {name}: {} failures, first: {}",
            failures.len(),
            failures[0]
        );
    }
    assert!(
        failures.is_empty(),
        "criterion {id} failed: {:?}",
        &failures[..failures.len().min(5)]
    );
}

#[test]
fn criterion_1_edge_connectivity_bound_sweep() {
    let graphs = corpus();
    assert!(
        graphs.len() >= 200
            && graphs
                .iter()
                .all(|(_, g)| g.order() <= 9 && g.is_connected())
    );
    let cells = bounded_cells();
    let failures: Vec<String> = cells
        .par_iter()
        .filter_map(|(label, g, lambda, k)| {
            let tokens = TokenGraph::build(g, *k).unwrap();
            let measured = edge_connectivity(tokens.graph());
            (measured < bound(*k, *lambda)).then(|| {
                format!(
                    "{label} k={k}: λ(F_k) = {measured} < {}",
                    bound(*k, *lambda)
                )
            })
        })
        .collect();
    report(
        1,
        "λ(F_k(G)) >= k(λ(G)-k+1)",
        &failures,
        &format!("{} graphs, {} (G,k) cells", graphs.len(), cells.len()),
    );
}

#[test]
fn criterion_2_min_degree_bound_sweep() {
    let cells = bounded_cells();
    let failures: Vec<String> = cells
        .par_iter()
        .flat_map_iter(|(label, g, lambda, k)| {
            let tokens = TokenGraph::build(g, *k).unwrap();
            let b = bound(*k, *lambda);
            tokens
                .configs()
                .iter()
                .enumerate()
                .filter_map(|(id, c)| {
                    let degree = tokens.graph().degree(id);
                    (degree < b || degree != config_degree(g, c))
                        .then(|| format!("{label} k={k} {c}: degree {degree}, bound {b}"))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    report(
        2,
        "δ(F_k(G)) >= k(λ(G)-k+1)",
        &failures,
        &format!("{} cells, every vertex checked", cells.len()),
    );
}

#[test]
fn criterion_3_tightness_families() {
    let mut failures = Vec::new();
    let mut checked = 0;
    let families = (2..=5)
        .map(|t| (format!("K_{}", t + 1), complete_graph(t + 1).unwrap(), t))
        .chain((2..=4).map(|t| (format!("K_{t}≡K_{t}"), matched_cliques(t).unwrap(), t)));
    for (name, g, t) in families {
        if edge_connectivity(&g) != t {
            failures.push(format!("{name}: λ(G) != {t}"));
        }
        for k in 2..=t {
            let tokens = TokenGraph::build(&g, k).unwrap();
            let (lambda, delta) = (
                edge_connectivity(tokens.graph()),
                min_degree(tokens.graph()),
            );
            checked += 1;
            if lambda != bound(k, t) || delta != bound(k, t) {
                failures.push(format!(
                    "{name} k={k}: λ = {lambda}, δ = {delta}, expected {}",
                    bound(k, t)
                ));
            }
        }
    }
    report(
        3,
        "tightness on K_{t+1} and K_t≡K_t",
        &failures,
        &format!("{checked} (G,k) pairs exact"),
    );
}

#[test]
fn criterion_4_f2_of_c5() {
    let tokens = TokenGraph::build(&cycle_graph(5).unwrap(), 2).unwrap();
    let mut failures = Vec::new();
    if (tokens.graph().order(), tokens.graph().size()) != (10, 15) {
        failures.push(format!(
            "|V|,|E| = {},{}",
            tokens.graph().order(),
            tokens.graph().size()
        ));
    }
    // {1,2} and {2,3} of the 1-based picture.
    let (a, b) = (
        TokenConfig::new(vec![0, 1], 2, 5).unwrap(),
        TokenConfig::new(vec![1, 2], 2, 5).unwrap(),
    );
    if tokens.graph().has_edge(a.rank(), b.rank()) {
        failures.push("{1,2} adjacent to {2,3}".into());
    }
    let lambda = edge_connectivity(tokens.graph());
    if lambda != 2 {
        failures.push(format!("λ(F_2(C_5)) = {lambda}"));
    }
    report(
        4,
        "F_2(C_5) golden values",
        &failures,
        "10 vertices, 15 edges, λ = 2",
    );
}

#[test]
fn criterion_5_lifting_worked_example() {
    // 1-based labels of the picture shifted down by one.
    let g = cycle_graph(5).unwrap();
    let q = DirectedPath::new(&g, vec![1, 0, 4, 3, 2]).unwrap();
    let x = TokenConfig::new(vec![1, 3], 2, 5).unwrap();
    let lifted = lift_path(&x, &q).unwrap();
    let got: Vec<Vec<usize>> = lifted
        .configs()
        .iter()
        .map(|c| c.members().iter().map(|v| v + 1).collect())
        .collect();
    let expected = vec![vec![2, 4], vec![2, 3], vec![1, 3], vec![3, 5], vec![3, 4]];
    let failures = if got == expected {
        vec![]
    } else {
        vec![format!("got {got:?}")]
    };
    report(
        5,
        "lift of Q = 2,1,5,4,3 from {2,4}",
        &failures,
        "{2,4},{2,3},{1,3},{5,3},{4,3}",
    );
}

#[test]
fn criterion_6_lemma_construction_on_every_adjacent_pair() {
    let cells: Vec<_> = bounded_cells();
    let results: Vec<(usize, Vec<String>)> = cells
        .par_iter()
        .map(|(label, g, lambda, k)| {
            let builder = FamilyBuilder::new(g, *k).unwrap();
            let tokens = builder.tokens();
            let mut failures = Vec::new();
            let mut count = 0;
            for (x, y) in builder.adjacent_pairs() {
                count += 1;
                let cert = match builder.construct(x, y) {
                    Ok(c) => c,
                    Err(e) => {
                        failures.push(format!("{label} k={k} {x}->{y}: {e}"));
                        continue;
                    }
                };
                let mut problems = Vec::new();
                if cert.achieved < bound(*k, *lambda) || cert.achieved != cert.families.len() {
                    problems.push(format!(
                        "achieved {} vs bound {}",
                        cert.achieved,
                        bound(*k, *lambda)
                    ));
                }
                if cert.t != cert.ell + cert.n0 + cert.nb + cert.ng {
                    problems.push("t != ℓ + n0 + nb + ng".into());
                }
                if cert.nb + cert.ell > k - 1 {
                    problems.push("nb > k - 1 - ℓ".into());
                }
                let mut seen = HashSet::new();
                for member in &cert.families {
                    if let Err(e) = check_lifted_path(&member.path, tokens, x, y) {
                        problems.push(e.to_string());
                    }
                    let edges: HashSet<_> = member
                        .path
                        .configs()
                        .windows(2)
                        .map(|w| (w[0].rank().min(w[1].rank()), w[0].rank().max(w[1].rank())))
                        .collect();
                    if !seen.is_disjoint(&edges) {
                        problems.push("two members share an edge".into());
                    }
                    seen.extend(edges);
                }
                if !problems.is_empty() {
                    failures.push(format!("{label} k={k} {x}->{y}: {problems:?}"));
                }
            }
            (count, failures)
        })
        .collect();
    let pairs: usize = results.iter().map(|(c, _)| c).sum();
    let failures: Vec<String> = results.into_iter().flat_map(|(_, f)| f).collect();
    report(
        6,
        "certified edge-disjoint families",
        &failures,
        &format!("{pairs} ordered adjacent pairs over {} cells", cells.len()),
    );
}

#[test]
fn criterion_7_edge_connectivity_routes_agree() {
    let graphs = corpus();
    let mut exhaustive_checked = 0;
    let mut failures = Vec::new();
    for (label, g) in &graphs {
        let (standard, adjacent) = (edge_connectivity(g), edge_connectivity_over_edges(g));
        if standard != adjacent {
            failures.push(format!(
                "{label}: standard {standard}, adjacent pairs {adjacent}"
            ));
        }
        if g.size() <= 25 {
            exhaustive_checked += 1;
            let exhaustive = exhaustive_edge_connectivity(g);
            if exhaustive != standard {
                failures.push(format!("{label}: exhaustive {exhaustive}, flow {standard}"));
            }
        }
    }
    report(
        7,
        "λ routes agree",
        &failures,
        &format!(
            "{} graphs, {exhaustive_checked} also by exhaustive cut search",
            graphs.len()
        ),
    );
}

#[test]
fn criterion_8_complementation_isomorphism() {
    let small: Vec<_> = corpus()
        .into_iter()
        .filter(|(_, g)| g.order() <= 7)
        .collect();
    let mut checked = 0;
    let mut failures = Vec::new();
    for (label, g) in &small {
        for k in 1..g.order() {
            checked += 1;
            if !complement_is_isomorphism(g, k).unwrap() {
                failures.push(format!("{label} k={k}"));
            }
        }
    }
    report(
        8,
        "A -> V\\A is an isomorphism F_k -> F_{n-k}",
        &failures,
        &format!("{checked} (G,k) pairs over {} graphs", small.len()),
    );
}

#[test]
fn criterion_9_bridge_graph_needs_the_hypothesis() {
    let g = bridged_cliques(4).unwrap();
    let tokens = TokenGraph::build(&g, 2).unwrap();
    let f2 = tokens.graph();
    let measured = [
        ("λ(G)", edge_connectivity(&g), 1),
        ("δ(G)", min_degree(&g), 3),
        ("λ(F_2) standard", edge_connectivity(f2), 3),
        ("λ(F_2) adjacent pairs", edge_connectivity_over_edges(f2), 3),
        ("λ(F_2) exhaustive", exhaustive_edge_connectivity(f2), 3),
        ("δ(F_2)", min_degree(f2), 4),
        ("|V(F_2)|", f2.order(), binomial(8, 2)),
    ];
    let mut failures: Vec<String> = measured
        .iter()
        .filter(|(_, got, want)| got != want)
        .map(|(name, got, want)| format!("{name} = {got}, expected {want}"))
        .collect();
    if FamilyBuilder::new(&g, 2).is_ok() {
        failures.push("construction accepted k > λ(G)".into());
    }
    report(
        9,
        "two K_4 joined by a bridge",
        &failures,
        "λ(G)=1 < k=2, λ(F_2)=3 < δ(F_2)=4",
    );
}
