//! Graph product structure toolkit.
//!
//! The library turns three families of structural graph results into
//! executable constructions with machine-checkable certificates:
//!
//! * shallow-minor models of graph powers, shortcut systems, clique lifts and
//!   beyond-planar classes (k-planar, string, fan-bundle, cluster drawings)
//!   inside lexicographic products `G ∘ K̄_m`,
//! * a quotient engine that converts an `(H, L)`-partition of a host plus a
//!   normalised tree-decomposition of `H` into a product-structure witness for
//!   any shallow minor of the host, with explicit width and bag-size bounds,
//! * transfer constructions for queue layouts and generalized colouring
//!   orders along shallow-minor models, plus the exhaustive desk-scale oracles
//!   (treewidth, queue number, colouring number) used to certify them.
//!
//! Every construction either returns a witness object that re-verifies from
//! scratch (`verify_*` functions take the plain data, not the construction
//! history) or rejects with the first violated clause. The `cert` module wraps
//! witnesses into versioned JSON certificates; the `prodstruct` binary exposes
//! the same operations as subcommands. Run the programs under `examples/` for
//! guided tours of each capability.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod cert;
pub mod colouring;
pub mod decomp;
pub mod engine;
pub mod gen;
pub mod graph;
pub mod layouts;
pub mod lowerbound;
pub mod minors;
pub mod planar;
pub mod products;

pub use graph::{DistanceTable, Graph};

/// Error type shared by all modules.
///
/// The split mirrors the CLI exit codes: `Input` and `Precondition` are the
/// caller's fault (exit 2), `Reject` means a verifier refused otherwise
/// well-formed data and `Construction` means a builder's own re-check failed
/// (both exit 1), `Resource` means an oracle budget was exceeded (exit 3).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("rejected: {0}")]
    Reject(String),
    #[error("construction check failed: {0}")]
    Construction(String),
    #[error("resource budget exceeded: {0}")]
    Resource(String),
}

impl Error {
    /// Exit code used by the CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Precondition(_) => 2,
            Error::Reject(_) | Error::Construction(_) => 1,
            Error::Resource(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn reject<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Reject(msg.into()))
}
