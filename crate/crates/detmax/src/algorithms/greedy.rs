//! Greedy farthest-point volume maximization.

use crate::algorithms::{checked_candidates, Algorithm, CoreSet};
use crate::error::Result;
use crate::geometry::{log_volume, OrthoBasis, PointSet};
use crate::tolerances::GREEDY_CMP_SLACK;

/// Greedy core-set of size `min(k, |P|)`: starting from the empty set,
/// repeatedly add the point farthest from the span of the points chosen so
/// far. Ties (within [`GREEDY_CMP_SLACK`]) break to the lowest index, so
/// the result is deterministic across platforms and access modes.
///
/// When fewer than `k` points exist, or the selection is rank-deficient,
/// the result carries the `degenerate` flag.
pub fn greedy(ps: &PointSet, k: usize) -> Result<CoreSet> {
    let all: Vec<usize> = (0..ps.len()).collect();
    greedy_subset(ps, &all, k)
}

/// [`greedy`] restricted to a candidate subset of indices.
pub fn greedy_subset(ps: &PointSet, candidates: &[usize], k: usize) -> Result<CoreSet> {
    if k == 0 {
        return Err(crate::error::Error::InvalidParameter(
            "k must be at least 1".into(),
        ));
    }
    let mut remaining = checked_candidates(ps, candidates)?;
    let target = k.min(remaining.len());
    let mut chosen = Vec::with_capacity(target);
    let mut basis = OrthoBasis::empty_for(ps);
    for _ in 0..target {
        let mut best_pos = 0usize;
        let mut best_dist = f64::NEG_INFINITY;
        for (pos, &c) in remaining.iter().enumerate() {
            let d = basis.distance(ps, c)?;
            if d > best_dist + GREEDY_CMP_SLACK {
                best_dist = d;
                best_pos = pos;
            }
        }
        let pick = remaining.remove(best_pos);
        chosen.push(pick);
        let (next, _residual) = basis.extended(ps, pick)?;
        basis = next;
    }
    let lv = log_volume(ps, &chosen)?;
    let degenerate = chosen.len() < k || lv.is_zero_volume();
    Ok(CoreSet {
        indices: chosen,
        algorithm: Algorithm::Greedy,
        eps: None,
        swap_count: 0,
        log_volume: lv,
        degenerate,
    })
}
