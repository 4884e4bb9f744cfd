//! Exhaustive maximum-determinant search: the exact oracle behind the
//! verification suites.

use crate::algorithms::checked_candidates;
use crate::error::{Error, Result};
use crate::geometry::{log_volume, LogVolume, PointSet};
use crate::tolerances::DEFAULT_BRUTE_FORCE_CAP;

/// `C(n, k)` without overflow (saturates at `u128::MAX`).
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    acc
}

/// Exact maximizer of `det(Gram(S))` over all `k`-subsets, by exhaustive
/// lexicographic enumeration with ties broken to the first (smallest)
/// subset. Refuses to enumerate more than [`DEFAULT_BRUTE_FORCE_CAP`]
/// subsets; use [`brute_force_maxdet_subset`] to override the cap.
pub fn brute_force_maxdet(ps: &PointSet, k: usize) -> Result<(Vec<usize>, LogVolume)> {
    let all: Vec<usize> = (0..ps.len()).collect();
    brute_force_maxdet_subset(ps, &all, k, DEFAULT_BRUTE_FORCE_CAP)
}

/// [`brute_force_maxdet`] over a candidate subset with an explicit cap on
/// the number of enumerated subsets.
pub fn brute_force_maxdet_subset(
    ps: &PointSet,
    candidates: &[usize],
    k: usize,
    cap: u64,
) -> Result<(Vec<usize>, LogVolume)> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let candidates = checked_candidates(ps, candidates)?;
    let n = candidates.len();
    if k > n {
        return Err(Error::InvalidParameter(format!(
            "k = {k} exceeds the {n} available candidates"
        )));
    }
    let subsets = binomial(n, k);
    if subsets > cap as u128 {
        return Err(Error::CombinatorialCapExceeded { subsets, cap });
    }

    let mut positions: Vec<usize> = (0..k).collect();
    let mut best: Option<(Vec<usize>, LogVolume)> = None;
    loop {
        let subset: Vec<usize> = positions.iter().map(|&p| candidates[p]).collect();
        let lv = log_volume(ps, &subset)?;
        let better = match &best {
            None => true,
            // Strict comparison keeps the lexicographically first maximizer.
            Some((_, cur)) => lv.value() > cur.value(),
        };
        if better {
            best = Some((subset, lv));
        }
        if !advance(&mut positions, n) {
            break;
        }
    }
    Ok(best.expect("at least one subset was enumerated"))
}

/// Advances `positions` to the next lexicographic `k`-combination of
/// `0..n`; returns `false` after the last one.
fn advance(positions: &mut [usize], n: usize) -> bool {
    let k = positions.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if positions[i] < n - k + i {
            positions[i] += 1;
            for j in (i + 1)..k {
                positions[j] = positions[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps2(rows: &[[f64; 2]]) -> PointSet {
        PointSet::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn finds_the_best_pair() {
        let ps = ps2(&[[3.0, 0.0], [0.0, 2.0], [1.0, 1.0]]);
        let (subset, lv) = brute_force_maxdet(&ps, 2).unwrap();
        assert_eq!(subset, vec![0, 1]);
        assert!((lv.value() - 6.0_f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn full_subset_when_k_equals_n() {
        let ps = ps2(&[[1.0, 0.0], [0.0, 1.0]]);
        let (subset, lv) = brute_force_maxdet(&ps, 2).unwrap();
        assert_eq!(subset, vec![0, 1]);
        assert_eq!(lv.value(), 0.0);
    }

    #[test]
    fn rank_deficient_instances_report_zero_volume() {
        let ps = ps2(&[[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]]);
        let (subset, lv) = brute_force_maxdet(&ps, 2).unwrap();
        assert!(lv.is_zero_volume());
        assert_eq!(subset, vec![0, 1]); // lexicographically first tie
    }

    #[test]
    fn cap_is_enforced() {
        let rows: Vec<Vec<f64>> = (0..30).map(|i| vec![i as f64, 1.0]).collect();
        let ps = PointSet::from_rows(rows).unwrap();
        let all: Vec<usize> = (0..30).collect();
        let err = brute_force_maxdet_subset(&ps, &all, 4, 1000).unwrap_err();
        assert!(matches!(err, Error::CombinatorialCapExceeded { .. }));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(12, 4), 495);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(2_000, 2), 1_999_000);
    }

    #[test]
    fn enumeration_is_exhaustive() {
        // 4 choose 2 = 6 subsets, every one visited exactly once.
        let mut pos = vec![0usize, 1];
        let mut seen = vec![pos.clone()];
        while advance(&mut pos, 4) {
            seen.push(pos.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.first().unwrap(), &vec![0, 1]);
        assert_eq!(seen.last().unwrap(), &vec![2, 3]);
    }
}
