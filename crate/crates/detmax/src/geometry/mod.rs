//! Exact small-`k` linear-algebra kernel: volumes, projections, distances
//! to spans, Gram matrices, and kernel-space inner products.
//!
//! All operations are pure functions of their inputs; [`PointSet`] and
//! [`OrthoBasis`] are immutable after construction and safe to share
//! across threads.

mod basis;
mod point_set;
mod subspace;
mod volume;

pub use basis::OrthoBasis;
pub use point_set::{AccessMode, InnerProductOracle, PointSet};
pub use subspace::sample_subspace;
pub use volume::{log_volume, LogVolume};

#[cfg(test)]
pub(crate) use volume::log_det_psd;

#[cfg(test)]
mod prop_tests {
    use super::*;
    use crate::tolerances::CHOL_PIVOT_REL_TOL;
    use proptest::prelude::*;

    fn small_cloud() -> impl Strategy<Value = (usize, Vec<Vec<f64>>)> {
        (2usize..=5, 2usize..=6).prop_flat_map(|(d, n)| {
            let coord = -8.0..8.0_f64;
            let row = proptest::collection::vec(coord, d);
            (Just(d), proptest::collection::vec(row, n))
        })
    }

    /// The subset Gram is comfortably regular: still nonsingular when the
    /// pivot cutoff is inflated to `pivot_rel_tol`. Keeps order/scale
    /// properties away from the singularity threshold, where cancellation
    /// amplifies rounding and classification may flip.
    fn comfortably_regular(ps: &PointSet, subset: &[usize], pivot_rel_tol: f64) -> bool {
        let k = subset.len();
        let mut gram = vec![0.0; k * k];
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate() {
                gram[a * k + b] = ps.inner_product(i, j).unwrap();
            }
        }
        log_det_psd(&gram, k, pivot_rel_tol).is_some()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn volume_is_permutation_invariant((d, rows) in small_cloud()) {
            prop_assume!(rows.len() >= 2);
            let k = d.min(rows.len()).min(4);
            let ps = PointSet::from_rows(rows).unwrap();
            let subset: Vec<usize> = (0..k).collect();
            prop_assume!(comfortably_regular(&ps, &subset, CHOL_PIVOT_REL_TOL * 1e3));
            let base = log_volume(&ps, &subset).unwrap().value();
            let mut rev = subset.clone();
            rev.reverse();
            let mut rot = subset.clone();
            rot.rotate_left(1);
            for other in [rev, rot] {
                let lv = log_volume(&ps, &other).unwrap().value();
                prop_assert!((lv - base).abs() <= 1e-9, "{lv} vs {base}");
            }
        }

        #[test]
        fn scaling_one_point_shifts_log_volume((d, rows) in small_cloud(), c in 0.1..10.0_f64) {
            prop_assume!(rows.len() >= 2);
            let k = d.min(rows.len()).min(4);
            let ps = PointSet::from_rows(rows.clone()).unwrap();
            let subset: Vec<usize> = (0..k).collect();
            // Strong regularity keeps pivot cancellation from eating the
            // tight tolerance below.
            prop_assume!(comfortably_regular(&ps, &subset, 1e-2));
            let before = log_volume(&ps, &subset).unwrap().value();
            let mut scaled = rows;
            for x in &mut scaled[0] {
                *x *= c;
            }
            let ps2 = PointSet::from_rows(scaled).unwrap();
            let after = log_volume(&ps2, &subset).unwrap().value();
            prop_assert!((after - before - c.ln()).abs() <= 1e-11,
                "shift {} vs ln c {}", after - before, c.ln());
        }

        #[test]
        fn pythagoras_and_monotonicity((d, rows) in small_cloud()) {
            prop_assume!(rows.len() >= 3);
            let ps = PointSet::from_rows(rows).unwrap();
            let mut shallow = OrthoBasis::empty_explicit(d);
            let mut deep = OrthoBasis::empty_explicit(d);
            for i in 1..ps.len().min(3) {
                deep = deep.extended(&ps, i).unwrap().0;
                if i == 1 {
                    shallow = deep.clone();
                }
            }
            let p = ps.point(0).unwrap().to_vec();
            let sq_norm: f64 = p.iter().map(|x| x * x).sum();
            let dist = deep.distance(&ps, 0).unwrap();
            // Projection assembled from the public basis vectors.
            let mut proj_sq = 0.0;
            for b in deep.vectors().unwrap() {
                let a: f64 = p.iter().zip(b).map(|(x, y)| x * y).sum();
                proj_sq += a * a;
            }
            let lhs = dist * dist + proj_sq;
            prop_assert!((lhs - sq_norm).abs() <= 1e-9 * sq_norm.max(1.0),
                "pythagoras: {lhs} vs {sq_norm}");
            // Extending a basis can only shrink distances.
            let d_shallow = shallow.distance(&ps, 0).unwrap();
            prop_assert!(d_shallow >= dist - 1e-9 * sq_norm.sqrt().max(1.0));
        }

        #[test]
        fn oracle_mode_agrees_with_explicit((d, rows) in small_cloud()) {
            let ps = PointSet::from_rows(rows).unwrap();
            let oracle = ps.as_linear_oracle().unwrap();
            let k = d.min(ps.len()).min(3);
            let subset: Vec<usize> = (0..k).collect();
            for i in 0..ps.len() {
                for j in 0..ps.len() {
                    prop_assert_eq!(
                        ps.inner_product(i, j).unwrap(),
                        oracle.inner_product(i, j).unwrap()
                    );
                }
            }
            let le = log_volume(&ps, &subset).unwrap();
            let lo = log_volume(&oracle, &subset).unwrap();
            prop_assert_eq!(le.is_zero_volume(), lo.is_zero_volume());
            if !le.is_zero_volume() {
                prop_assert!((le.value() - lo.value()).abs() <= 1e-12);
            }
            let mut be = OrthoBasis::empty_for(&ps);
            let mut bo = OrthoBasis::empty_for(&oracle);
            let members: Vec<usize> = subset.iter().take(k.saturating_sub(1)).cloned().collect();
            for &i in &members {
                be = be.extended(&ps, i).unwrap().0;
                bo = bo.extended(&oracle, i).unwrap().0;
            }
            prop_assume!(be.rank() == bo.rank());
            for p in 0..ps.len() {
                let de = be.distance(&ps, p).unwrap();
                let do_ = bo.distance(&oracle, p).unwrap();
                // Agreement is guaranteed in the squared domain: the dual
                // (Schur complement) route cannot resolve a distance below
                // sqrt(machine epsilon) * ||p||, so points at distance ~0
                // would fail a direct comparison.
                let scale = ps.inner_product(p, p).unwrap().max(1.0);
                prop_assert!(
                    (de * de - do_ * do_).abs() <= 1e-12 * scale,
                    "point {}: {} vs {}", p, de, do_
                );
                if de > 1e-3 * scale.sqrt() {
                    prop_assert!((de - do_).abs() <= 1e-12 * scale.sqrt());
                }
            }
        }
    }

    #[test]
    fn orthonormality_survives_many_extensions() {
        use rand::SeedableRng;
        use rand_distr::StandardNormal;
        let d = 60;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let rows: Vec<Vec<f64>> = (0..50)
            .map(|_| (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
            .collect();
        let ps = PointSet::from_rows(rows).unwrap();
        let mut basis = OrthoBasis::empty_explicit(d);
        for i in 0..50 {
            basis = basis.extended(&ps, i).unwrap().0;
        }
        assert_eq!(basis.rank(), 50);
        assert!(basis.orthonormality_error() <= 1e-10);
    }
}
