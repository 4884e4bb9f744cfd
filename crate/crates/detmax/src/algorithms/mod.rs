//! Core-set constructors for determinant maximization: the greedy
//! farthest-point algorithm, local search by single-point swaps, and the
//! exhaustive brute-force oracle used for verification.

mod brute_force;
mod greedy;
mod local_search;

pub use brute_force::{binomial, brute_force_maxdet, brute_force_maxdet_subset};
pub use greedy::{greedy, greedy_subset};
pub use local_search::{local_search, local_search_subset, swap_log_gain};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{LogVolume, PointSet};

/// Which constructor produced a [`CoreSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Greedy,
    LocalSearch,
    BruteForce,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Algorithm::Greedy => write!(f, "greedy"),
            Algorithm::LocalSearch => write!(f, "local-search"),
            Algorithm::BruteForce => write!(f, "brute-force"),
        }
    }
}

/// A selected subset of a point set, with provenance.
///
/// Greedy core-sets list indices in selection order (first index is the
/// farthest-norm point); local-search core-sets list them in ascending
/// order.
#[derive(Debug, Clone, Serialize)]
pub struct CoreSet {
    pub indices: Vec<usize>,
    pub algorithm: Algorithm,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    pub swap_count: usize,
    pub log_volume: LogVolume,
    /// Set when fewer than `k` points were available or the selection is
    /// rank-deficient (zero volume).
    pub degenerate: bool,
}

/// Validates a candidate index list: non-empty, in range, distinct.
/// Returns the candidates in ascending order.
pub(crate) fn checked_candidates(ps: &PointSet, candidates: &[usize]) -> Result<Vec<usize>> {
    if ps.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if candidates.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut sorted = candidates.to_vec();
    sorted.sort_unstable();
    for pair in sorted.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::DuplicateIndex { index: pair[0] });
        }
    }
    if let Some(&bad) = sorted.last().filter(|&&i| i >= ps.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            len: ps.len(),
        });
    }
    Ok(sorted)
}

/// Log-domain volume gain with pinned zero-volume conventions: both zero
/// gives 0, leaving zero gives `+inf`, entering zero gives `-inf`.
pub(crate) fn log_gain(new: LogVolume, current: LogVolume) -> f64 {
    match (current.is_zero_volume(), new.is_zero_volume()) {
        (true, true) => 0.0,
        (true, false) => f64::INFINITY,
        (false, true) => f64::NEG_INFINITY,
        (false, false) => new.value() - current.value(),
    }
}

/// The subset after swapping `p` out for `q`, in ascending order.
pub(crate) fn swapped_subset(current: &[usize], p: usize, q: usize) -> Vec<usize> {
    let mut out: Vec<usize> = current
        .iter()
        .map(|&i| if i == p { q } else { i })
        .collect();
    out.sort_unstable();
    out
}
