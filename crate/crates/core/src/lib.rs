//! Propagation and exhaustive enumeration of graceful graphs and trees
//! through their adjacency matrices.
//!
//! A graph on `n` vertices with `n - 1` edges is gracefully labeled exactly
//! when every diagonal `c = 1..n` above the main diagonal of its adjacency
//! matrix holds a single 1. The crate grows such matrices by inserting new
//! diagonals ([`propagation`]), grows trees by attaching and relabeling
//! leaves ([`tree`]), and checks both against independent brute-force
//! constructions ([`oracle`]).
//!
//! ```
//! use graceful::matrix::GracefulMatrix;
//! use graceful::propagation::{enumerate_graceful, propagate_single_all};
//!
//! let children = propagate_single_all(&GracefulMatrix::p2());
//! assert_eq!(children.len(), 2);
//! assert_eq!(enumerate_graceful(5)?.len(), 24);
//! # Ok::<(), graceful::Error>(())
//! ```
//!
//! The `book/` directory at the repository root walks through the ideas
//! chapter by chapter; its code blocks run as doctests of this crate.

pub mod cli;
pub mod error;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod propagation;
pub mod tree;

pub use error::{Error, Result};
pub use matrix::{AdjacencyMatrix, GracefulMatrix, LabeledGraph};
pub use tree::{LabeledTree, TreeCode};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    mod matrices {}
    #[doc = include_str!("../../../book/src/single-vertex.md")]
    mod single_vertex {}
    #[doc = include_str!("../../../book/src/multi-vertex.md")]
    mod multi_vertex {}
    #[doc = include_str!("../../../book/src/trees.md")]
    mod trees {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
