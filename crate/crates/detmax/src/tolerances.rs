//! Numerical tolerances shared across the crate.
//!
//! Every threshold used by the algorithms and verifiers is pinned here so
//! that results are reproducible and the constants are documented in one
//! place rather than scattered as magic numbers.

/// A Gram-Schmidt residual `r` counts as zero (the candidate is linearly
/// dependent on the basis) when `r <= RANK_REL_TOL * max(1, ||p||)`.
/// Scale-aware so that large inputs do not mask genuine rank deficiency.
pub const RANK_REL_TOL: f64 = 1e-9;

/// A Cholesky pivot `d` declares the Gram matrix singular when
/// `d <= CHOL_PIVOT_REL_TOL * trace(G)`.
pub const CHOL_PIVOT_REL_TOL: f64 = 1e-12;

/// Maximum allowed `|<b_i, b_j> - delta_ij|` for a basis to count as
/// orthonormal. One reorthogonalization pass keeps drift well below this.
pub const ORTHO_TOL: f64 = 1e-10;

/// Absolute slack when comparing candidate distances in the greedy argmax.
/// A candidate must beat the incumbent by more than this to replace it, so
/// near-ties resolve to the lowest index on every platform.
pub const GREEDY_CMP_SLACK: f64 = 1e-12;

/// Slack subtracted from `ln(1+eps)` in the local-search accept test.
/// Accepting at `ln(1+eps) - SWAP_ACCEPT_SLACK` makes the termination
/// certificate (no remaining swap with log-gain above that same threshold)
/// checkable by exact recomputation. The threshold is clamped to stay
/// strictly positive for pathologically small `eps`.
pub const SWAP_ACCEPT_SLACK: f64 = 1e-12;

/// Relative tolerance on directional-height ratios when testing the
/// `1/(2k(1+eps))` and `1/(2k*3^k)` floors.
pub const HEIGHT_RATIO_REL_TOL: f64 = 1e-9;

/// A directional-height trial is skipped as degenerate when the full-set
/// height is below this fraction of the largest point norm.
pub const DEGENERATE_HEIGHT_REL_TOL: f64 = 1e-12;

/// Log-domain slack when testing the composability determinant-ratio bound
/// `r <= (2k(1+eps))^(2k)`; equivalent to a 1e-9 relative slack on `r`.
pub const COMPOSE_BOUND_SLACK: f64 = 1e-9;

/// Default cap on the number of subsets brute force will enumerate.
pub const DEFAULT_BRUTE_FORCE_CAP: u64 = 2_000_000;
