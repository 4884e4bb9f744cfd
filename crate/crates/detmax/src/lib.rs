//! Composable core-sets for determinant (volume) maximization.
//!
//! Picking the `k` most "diverse" points of a set — the subset whose Gram
//! determinant, equivalently squared spanned volume, is largest — is the
//! MAP problem of determinantal point processes. This crate implements
//! the two practical constructors, **greedy** (farthest point) and
//! **local search** (greedy plus volume-improving single-point swaps),
//! both as offline solvers and as *composable core-sets*: summaries whose
//! union still carries a near-optimal subset when a data set is split
//! across machines.
//!
//! The pieces:
//!
//! - [`geometry`]: points, kernel (inner-product-oracle) access,
//!   incremental orthonormal bases, log-domain subset volumes.
//! - [`algorithms`]: greedy, local search, swap gains, and the exhaustive
//!   brute-force oracle used to verify everything else.
//! - [`coreset`]: the partition/compose/aggregate pipeline with seeded,
//!   reproducible reports, plus empirical verifiers for the
//!   directional-height and composability guarantees.
//! - [`data`]: numeric text ingestion and synthetic instance generators.
//!
//! The `detmax` binary (in the companion CLI crate) exposes all of this on
//! the command line; the `book/` directory of the repository walks through
//! the concepts with runnable snippets, which compile as doc-tests of this
//! crate.
//!
//! ```
//! use detmax::algorithms::{greedy, local_search};
//! use detmax::geometry::PointSet;
//!
//! // One long vector and a symmetric pair: greedy takes the long vector,
//! // local search recovers the pair, which spans almost twice the area.
//! let ps = PointSet::from_rows(vec![
//!     vec![1.01, 0.0],
//!     vec![0.9, 0.436],
//!     vec![0.9, -0.436],
//! ])?;
//! let gd = greedy(&ps, 2)?;
//! let ls = local_search(&ps, 2, 1e-5)?;
//! assert_eq!(gd.indices, vec![0, 1]);
//! assert_eq!(ls.indices, vec![1, 2]);
//! assert!(ls.log_volume.value() > gd.log_volume.value());
//! # Ok::<(), detmax::Error>(())
//! ```

pub mod algorithms;
pub mod coreset;
pub mod data;
pub mod error;
pub mod geometry;
pub mod tolerances;

#[cfg(doctest)]
mod book;

pub use error::{Error, Result};

/// Crate version, embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
