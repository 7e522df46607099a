//! The `family:param` graph-spec mini-language and seeded random corpora.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tokengraph::graph::{
    bridged_cliques, complete_graph, cycle_graph, matched_cliques, parse_dot, parse_edge_list,
    path_graph, shared_vertex_cliques, Graph, GraphError,
};

use crate::CliError;

/// Attempts before giving up on drawing a connected `G(n, p)` sample.
const MAX_RANDOM_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSpec {
    Cycle(usize),
    Complete(usize),
    Matched(usize),
    Bridged(usize),
    Shared(usize),
    Path(usize),
    Random { n: usize, p: f64, seed: u64 },
    File(PathBuf),
}

impl FromStr for GraphSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let usage = || CliError::Usage(format!("bad graph spec {s:?}"));
        let (family, param) = s.split_once(':').ok_or_else(usage)?;
        let int = |v: &str| v.trim().parse::<usize>().map_err(|_| usage());
        Ok(match family {
            "cycle" => GraphSpec::Cycle(int(param)?),
            "complete" => GraphSpec::Complete(int(param)?),
            "matched" => GraphSpec::Matched(int(param)?),
            "bridged" => GraphSpec::Bridged(int(param)?),
            "shared" => GraphSpec::Shared(int(param)?),
            "path" => GraphSpec::Path(int(param)?),
            "random" => {
                let parts: Vec<_> = param.split(',').collect();
                let [n, p, seed] = parts.as_slice() else {
                    return Err(usage());
                };
                let p: f64 = p.trim().parse().map_err(|_| usage())?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(usage());
                }
                GraphSpec::Random {
                    n: int(n)?,
                    p,
                    seed: seed.trim().parse().map_err(|_| usage())?,
                }
            }
            "file" => GraphSpec::File(PathBuf::from(param)),
            _ => return Err(usage()),
        })
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Cycle(n) => write!(f, "cycle:{n}"),
            GraphSpec::Complete(n) => write!(f, "complete:{n}"),
            GraphSpec::Matched(t) => write!(f, "matched:{t}"),
            GraphSpec::Bridged(r) => write!(f, "bridged:{r}"),
            GraphSpec::Shared(r) => write!(f, "shared:{r}"),
            GraphSpec::Path(n) => write!(f, "path:{n}"),
            GraphSpec::Random { n, p, seed } => write!(f, "random:{n},{p},{seed}"),
            GraphSpec::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph, CliError> {
        Ok(match *self {
            GraphSpec::Cycle(n) => cycle_graph(n)?,
            GraphSpec::Complete(n) => complete_graph(n)?,
            GraphSpec::Matched(t) => matched_cliques(t)?,
            GraphSpec::Bridged(r) => bridged_cliques(r)?,
            GraphSpec::Shared(r) => shared_vertex_cliques(r)?,
            GraphSpec::Path(n) => path_graph(n)?,
            GraphSpec::Random { n, p, seed } => connected_random_graph(n, p, seed)?,
            GraphSpec::File(ref path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                read_graph(&text)?
            }
        })
    }
}

/// DOT when the first meaningful line opens a `graph`, an edge list otherwise.
fn read_graph(text: &str) -> Result<Graph, GraphError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("//"));
    match first {
        Some(l) if l.starts_with("graph") || l.starts_with("strict") => parse_dot(text),
        _ => parse_edge_list(text),
    }
}

/// Samples `G(n, p)` from a ChaCha stream seeded with `seed`, redrawing until
/// the sample is connected.
pub fn connected_random_graph(n: usize, p: f64, seed: u64) -> Result<Graph, CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!(
            "random graphs need n >= 2, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RANDOM_ATTEMPTS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(CliError::Usage(format!(
        "no connected G({n}, {p}) sample within {MAX_RANDOM_ATTEMPTS} draws"
    )))
}

/// Edge probabilities cycled through by [`random_corpus`].
pub const CORPUS_PROBABILITIES: [f64; 3] = [0.3, 0.5, 0.8];

/// `count` random specs with orders cycling through `4..=9` and edge
/// probabilities through [`CORPUS_PROBABILITIES`]; spec `i` uses seed `seed + i`.
pub fn random_corpus(count: usize, seed: u64) -> Vec<GraphSpec> {
    (0..count)
        .map(|i| GraphSpec::Random {
            n: 4 + i % 6,
            p: CORPUS_PROBABILITIES[(i / 6) % 3],
            seed: seed.wrapping_add(i as u64),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_specs() {
        for s in [
            "cycle:5",
            "complete:4",
            "matched:3",
            "bridged:4",
            "shared:4",
            "path:3",
            "random:8,0.5,42",
        ] {
            let spec: GraphSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(
            "file:g.txt".parse::<GraphSpec>().unwrap(),
            GraphSpec::File("g.txt".into())
        );
    }

    #[test]
    fn rejects_bad_specs() {
        for s in [
            "cycle",
            "cycle:x",
            "wheel:5",
            "random:5,0.5",
            "random:5,1.5,1",
            "random:5,0.5,-1",
        ] {
            assert!(
                matches!(s.parse::<GraphSpec>(), Err(CliError::Usage(_))),
                "{s}"
            );
        }
        assert!(matches!(
            "cycle:2".parse::<GraphSpec>().unwrap().build(),
            Err(CliError::Graph(_))
        ));
    }

    #[test]
    fn files_may_be_dot_or_edge_lists() {
        let g = cycle_graph(5).unwrap();
        assert_eq!(read_graph(&g.to_dot()).unwrap(), g);
        assert_eq!(read_graph(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn random_graphs_are_seeded_and_connected() {
        let a = connected_random_graph(9, 0.3, 7).unwrap();
        let b = connected_random_graph(9, 0.3, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.is_connected());
        assert!(connected_random_graph(5, 0.0, 1).is_err());
        assert!(connected_random_graph(1, 0.5, 1).is_err());
    }

    #[test]
    fn corpus_covers_orders_and_probabilities() {
        let corpus = random_corpus(36, 100);
        assert_eq!(corpus.len(), 36);
        for n in 4..=9 {
            for p in CORPUS_PROBABILITIES {
                assert!(corpus.iter().any(
                    |s| matches!(s, GraphSpec::Random { n: m, p: q, .. } if *m == n && *q == p)
                ));
            }
        }
        assert_eq!(
            corpus[3],
            GraphSpec::Random {
                n: 7,
                p: 0.3,
                seed: 103
            }
        );
    }
}
