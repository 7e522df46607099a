//! Library half of the `tokengraph` command-line tool: graph specs, corpus
//! sweeps, certificate construction and the oracle harness.

pub mod commands;
pub mod spec;

use thiserror::Error;
use tokengraph::{GraphError, LemmaError, TokenError};

pub use commands::{
    build_report, construct_certificate, oracle_report, parse_config, parse_k_range, verify_corpus,
    verify_graph, BuildReport, OracleReport, Status, VerificationRecord,
};
pub use spec::{connected_random_graph, random_corpus, GraphSpec};

/// Largest token graph the oracle and sweep commands will materialize.
pub const MAX_TOKEN_VERTICES: usize = 20_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Token(#[from] TokenError),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<LemmaError> for CliError {
    fn from(e: LemmaError) -> Self {
        if e.is_invariant_failure() {
            CliError::Invariant(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl CliError {
    /// 1 for invariant violations, 2 for everything the caller got wrong.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => 1,
            _ => 2,
        }
    }
}
