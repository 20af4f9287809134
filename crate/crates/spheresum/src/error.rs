//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected N={expected}, got N={got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integrand returned NaN at node x={node}")]
    NanAtNode { node: f64 },

    #[error("quadrature budget exceeded: {nodes} nodes requested, limit {limit}")]
    BudgetExceeded { nodes: usize, limit: usize },

    #[error(
        "gamma={gamma} outside the asymptotic validity window |pi/2 - gamma| < (n/(n+1))*pi/2 at n={n}"
    )]
    OutsideValidityWindow { gamma: f64, n: usize },

    #[error("integer overflow computing {0}")]
    Overflow(String),

    #[error("degenerate ladder: need at least {need} entries, got {got}")]
    DegenerateLadder { need: usize, got: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
