//! Local search by single-point swaps on top of a greedy start.

use crate::algorithms::{
    checked_candidates, greedy_subset, log_gain, swapped_subset, Algorithm, CoreSet,
};
use crate::error::{Error, Result};
use crate::geometry::{log_volume, PointSet};
use crate::tolerances::SWAP_ACCEPT_SLACK;

/// The accept threshold on the log-domain swap gain. A swap is applied
/// when `log VOL(C+q-p) - log VOL(C) >= ln(1+eps) - SWAP_ACCEPT_SLACK`;
/// the slack makes the post-hoc termination certificate reproducible by
/// exact recomputation. Clamped to stay strictly positive so termination
/// is guaranteed for any `eps > 0`.
pub(crate) fn accept_threshold(eps: f64) -> f64 {
    let base = eps.ln_1p();
    (base - SWAP_ACCEPT_SLACK).max(0.5 * base)
}

/// Local-search core-set: initialize with [`greedy_subset`], then
/// repeatedly apply a swap `(q not in C, p in C)` whenever the swapped
/// volume is at least `(1+eps)` times the current volume, until no such
/// pair exists.
///
/// The scan order is fixed (`q` ascending outer, `p` ascending inner,
/// first improving swap taken, restart after each swap) so the result is
/// deterministic. Indices are returned in ascending order. When the greedy
/// start is rank-deficient the search returns immediately with the
/// `degenerate` flag: there is no volume signal to improve on.
pub fn local_search(ps: &PointSet, k: usize, eps: f64) -> Result<CoreSet> {
    let all: Vec<usize> = (0..ps.len()).collect();
    local_search_subset(ps, &all, k, eps)
}

/// [`local_search`] restricted to a candidate subset of indices.
pub fn local_search_subset(
    ps: &PointSet,
    candidates: &[usize],
    k: usize,
    eps: f64,
) -> Result<CoreSet> {
    if eps <= 0.0 || !eps.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "eps must be a positive finite number, got {eps}"
        )));
    }
    let candidates = checked_candidates(ps, candidates)?;
    let start = greedy_subset(ps, &candidates, k)?;
    let mut members = start.indices.clone();
    members.sort_unstable();
    if start.degenerate || start.log_volume.is_zero_volume() {
        return Ok(CoreSet {
            indices: members,
            algorithm: Algorithm::LocalSearch,
            eps: Some(eps),
            swap_count: 0,
            log_volume: start.log_volume,
            degenerate: true,
        });
    }

    let threshold = accept_threshold(eps);
    let mut current = log_volume(ps, &members)?;
    let mut swap_count = 0usize;
    'improve: loop {
        for &q in &candidates {
            if members.binary_search(&q).is_ok() {
                continue;
            }
            for pos in 0..members.len() {
                let p = members[pos];
                let swapped = swapped_subset(&members, p, q);
                let lv = log_volume(ps, &swapped)?;
                if log_gain(lv, current) >= threshold {
                    members = swapped;
                    current = lv;
                    swap_count += 1;
                    continue 'improve;
                }
            }
        }
        break;
    }

    Ok(CoreSet {
        indices: members,
        algorithm: Algorithm::LocalSearch,
        eps: Some(eps),
        swap_count,
        log_volume: current,
        degenerate: false,
    })
}

/// Exact log-domain gain of swapping `p` out of `current` for `q`:
/// `log VOL(C+q-p) - log VOL(C)`. Zero-volume conventions: `+inf` when the
/// swap turns a zero volume positive, `-inf` for the reverse, and `0` when
/// both volumes are zero. Both volumes are recomputed by full
/// re-factorization of the corresponding Gram matrices.
pub fn swap_log_gain(ps: &PointSet, current: &[usize], p: usize, q: usize) -> Result<f64> {
    if !current.contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "swap-out index {p} is not in the current subset"
        )));
    }
    if current.contains(&q) {
        return Err(Error::InvalidParameter(format!(
            "swap-in index {q} is already in the current subset"
        )));
    }
    let before = log_volume(ps, current)?;
    let after = log_volume(ps, &swapped_subset(current, p, q))?;
    Ok(log_gain(after, before))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::brute_force_maxdet;

    fn ps2(rows: &[[f64; 2]]) -> PointSet {
        PointSet::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// Greedy is fooled on this instance: it picks the long vector first
    /// and one of the symmetric pair second, while the optimal pair is the
    /// two symmetric vectors.
    fn adversarial() -> PointSet {
        ps2(&[[1.01, 0.0], [0.9, 0.436], [0.9, -0.436]])
    }

    #[test]
    fn k1_needs_no_swaps() {
        let ps = ps2(&[[3.0, 0.0], [0.0, 2.0], [1.0, 1.0]]);
        let cs = local_search(&ps, 1, 1e-5).unwrap();
        assert_eq!(cs.indices, vec![0]);
        assert_eq!(cs.swap_count, 0);
    }

    #[test]
    fn escapes_the_greedy_trap() {
        let ps = adversarial();
        let gd = greedy_subset(&ps, &[0, 1, 2], 2).unwrap();
        assert_eq!(gd.indices, vec![0, 1]);
        assert!((gd.log_volume.value().exp() - 0.44036).abs() < 1e-10);

        let ls = local_search(&ps, 2, 1e-5).unwrap();
        assert_eq!(ls.indices, vec![1, 2]);
        assert_eq!(ls.swap_count, 1);
        assert!((ls.log_volume.value().exp() - 0.7848).abs() < 1e-10);

        let (opt, lv) = brute_force_maxdet(&ps, 2).unwrap();
        assert_eq!(opt, ls.indices);
        assert!((lv.value() - ls.log_volume.value()).abs() < 1e-12);
    }

    #[test]
    fn no_swaps_when_greedy_is_already_optimal() {
        let ps = ps2(&[[3.0, 0.0], [0.0, 2.0], [1.0, 1.0]]);
        let gd = greedy_subset(&ps, &[0, 1, 2], 2).unwrap();
        let (opt, _) = brute_force_maxdet(&ps, 2).unwrap();
        let mut sorted = gd.indices.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, opt);
        let ls = local_search(&ps, 2, 1e-5).unwrap();
        assert_eq!(ls.swap_count, 0);
        assert_eq!(ls.indices, opt);
    }

    #[test]
    fn zero_swaps_on_every_instance_where_greedy_hits_the_optimum() {
        use crate::data::{generate, Generator};
        let mut found = 0;
        for seed in 0..40u64 {
            let ps = generate(&Generator::Gaussian { n: 9, d: 4 }, seed).unwrap();
            let gd = crate::algorithms::greedy(&ps, 3).unwrap();
            let (opt, _) = brute_force_maxdet(&ps, 3).unwrap();
            let mut sorted = gd.indices.clone();
            sorted.sort_unstable();
            if sorted != opt {
                continue;
            }
            found += 1;
            let ls = local_search(&ps, 3, 1e-5).unwrap();
            assert_eq!(ls.swap_count, 0, "seed {seed}");
            assert_eq!(ls.indices, opt, "seed {seed}");
        }
        assert!(found >= 5, "only {found} greedy-optimal instances found");
    }

    #[test]
    fn dominates_greedy() {
        let ps = adversarial();
        let gd = greedy_subset(&ps, &[0, 1, 2], 2).unwrap();
        let ls = local_search(&ps, 2, 1e-5).unwrap();
        assert!(ls.log_volume.value() >= gd.log_volume.value() - 1e-12);
    }

    #[test]
    fn degenerate_start_returns_immediately() {
        let ps = ps2(&[[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]]);
        let cs = local_search(&ps, 2, 1e-5).unwrap();
        assert!(cs.degenerate);
        assert_eq!(cs.swap_count, 0);
        assert!(cs.log_volume.is_zero_volume());
    }

    #[test]
    fn termination_certificate_holds() {
        let ps = adversarial();
        let cs = local_search(&ps, 2, 1e-5).unwrap();
        let threshold = accept_threshold(1e-5);
        for q in 0..ps.len() {
            if cs.indices.contains(&q) {
                continue;
            }
            for &p in &cs.indices {
                let gain = swap_log_gain(&ps, &cs.indices, p, q).unwrap();
                assert!(
                    gain < threshold,
                    "swap ({p} -> {q}) still improves: gain {gain}"
                );
            }
        }
    }

    #[test]
    fn swap_gain_examples() {
        // Swapping in a coordinate-identical point changes nothing.
        let ps = ps2(&[[1.0, 0.0], [0.0, 1.0], [0.0, 1.0]]);
        let g = swap_log_gain(&ps, &[0, 1], 1, 2).unwrap();
        assert_eq!(g, 0.0);

        // Swapping (0,1) for (0,2) scales one row by 2: gain = ln 2.
        let ps = ps2(&[[1.0, 0.0], [0.0, 1.0], [0.0, 2.0]]);
        let g = swap_log_gain(&ps, &[0, 1], 1, 2).unwrap();
        assert!((g - 2.0_f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn swap_gain_matches_independent_volume_difference() {
        let ps = PointSet::from_rows(vec![
            vec![1.2, -0.3, 0.8],
            vec![0.1, 2.2, -0.5],
            vec![-0.9, 0.6, 1.4],
            vec![0.7, 0.7, -1.1],
        ])
        .unwrap();
        let current = [0usize, 1, 2];
        let g = swap_log_gain(&ps, &current, 1, 3).unwrap();
        let before = log_volume(&ps, &current).unwrap().value();
        let after = log_volume(&ps, &[0, 2, 3]).unwrap().value();
        assert!((g - (after - before)).abs() < 1e-12);
    }

    #[test]
    fn swap_gain_rejects_index_misuse() {
        let ps = ps2(&[[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]);
        assert!(swap_log_gain(&ps, &[0, 1], 2, 0).is_err());
        assert!(swap_log_gain(&ps, &[0, 1], 0, 1).is_err());
    }

    #[test]
    fn rejects_nonpositive_eps() {
        let ps = ps2(&[[1.0, 0.0], [0.0, 1.0]]);
        assert!(local_search(&ps, 1, 0.0).is_err());
        assert!(local_search(&ps, 1, -0.5).is_err());
    }

    #[test]
    fn threshold_stays_positive_for_tiny_eps() {
        assert!(accept_threshold(1e-30) > 0.0);
        let e = 1e-5_f64;
        assert!((accept_threshold(e) - (e.ln_1p() - 1e-12)).abs() < 1e-18);
    }
}
