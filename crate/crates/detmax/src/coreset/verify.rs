//! Empirical verifiers for the core-set guarantees.
//!
//! The directional-height verifier checks that a core-set preserves the
//! `k`-directional height of its source set: for a `(k-1)`-dimensional
//! subspace `H`, the height `h(P, H)` is the distance of the farthest
//! point of `P` from `H`, and a good core-set `C` keeps
//! `h(C, H) >= h(P, H) / alpha` for every `H`. Local search guarantees
//! `alpha = 2k(1+eps)`; greedy guarantees `alpha = 2k * 3^k`.
//!
//! The composability verifier brute-forces both sides of the composition
//! inequality on small multi-part instances: the optimal determinant over
//! the union of the parts against the optimal determinant over the union
//! of the per-part core-sets, which may be at most `alpha^(2k)` smaller.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::algorithms::{binomial, brute_force_maxdet, CoreSet};
use crate::algorithms::Algorithm;
use crate::coreset::pipeline::{compose, CoresetAlg};
use crate::coreset::seed::derive_seed;
use crate::data::{generate, Generator};
use crate::error::{Error, Result};
use crate::geometry::{sample_subspace, OrthoBasis, PointSet};
use crate::tolerances::{
    COMPOSE_BOUND_SLACK, DEFAULT_BRUTE_FORCE_CAP, DEGENERATE_HEIGHT_REL_TOL,
    HEIGHT_RATIO_REL_TOL,
};

const STREAM_RANDOM_SUBSPACE: u64 = 11;
const STREAM_STRUCTURED_SUBSET: u64 = 12;
const STREAM_STRUCTURED_PAD: u64 = 13;
const STREAM_COMPOSE_INSTANCE: u64 = 21;

/// Result of a directional-height check.
#[derive(Debug, Clone, Serialize)]
pub struct HeightCheckReport {
    pub algorithm: Algorithm,
    pub k: usize,
    pub eps: f64,
    /// Theoretical floor on `h(C,H)/h(P,H)` for the algorithm under test.
    pub floor: f64,
    pub trials_requested: usize,
    pub trials_evaluated: usize,
    pub skipped_degenerate: usize,
    /// Worst observed ratio, `None` when every trial was degenerate.
    pub worst_ratio: Option<f64>,
    pub violations: usize,
    pub violation: bool,
}

fn height_floor(algorithm: Algorithm, k: usize, eps: f64) -> Result<f64> {
    match algorithm {
        Algorithm::LocalSearch => Ok(1.0 / (2.0 * k as f64 * (1.0 + eps))),
        Algorithm::Greedy => Ok(1.0 / (2.0 * k as f64 * 3.0_f64.powi(k as i32))),
        Algorithm::BruteForce => Err(Error::InvalidParameter(
            "directional-height floors apply to greedy and local-search core-sets".into(),
        )),
    }
}

/// Checks the directional-height floor of `coreset` against `ps` over
/// `trials` subspaces in `H_{k-1}`: half uniformly random (via
/// [`sample_subspace`]), half structured as spans of actual `(k-1)`-point
/// subsets drawn from the brute-force optimum, from the core-set itself,
/// and from random point subsets. Structured spans are padded with random
/// directions when their points are dependent, so every tested subspace
/// has dimension exactly `min(k-1, d)`.
///
/// Random subspaces in high dimension rarely stress the bound; the
/// structured half lives near the data's span where adversarial
/// directions are.
///
/// Trials with `h(P, H) = 0` are skipped as degenerate directions.
pub fn verify_directional_height(
    ps: &PointSet,
    coreset: &CoreSet,
    k: usize,
    eps: f64,
    trials: usize,
    seed: u64,
) -> Result<HeightCheckReport> {
    if k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if trials < 1 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if coreset.indices.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&bad) = coreset.indices.iter().find(|&&i| i >= ps.len()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            len: ps.len(),
        });
    }
    let floor = height_floor(coreset.algorithm, k, eps)?;
    let d = ps.dim();
    let t_target = (k - 1).min(d);

    let max_norm = (0..ps.len())
        .map(|i| ps.ip(i, i).max(0.0).sqrt())
        .fold(0.0, f64::max);
    let degenerate_cutoff = DEGENERATE_HEIGHT_REL_TOL * max_norm;

    // Structured pool: leave-one-out spans of the brute-force optimum and
    // of the core-set. Brute force may be infeasible on large instances;
    // the pool then falls back to random point subsets alone.
    let mut pool: Vec<Vec<usize>> = Vec::new();
    if t_target > 0 {
        match brute_force_maxdet(ps, k) {
            Ok((opt, _)) => {
                for skip in 0..opt.len() {
                    let span: Vec<usize> = opt
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    pool.push(span);
                }
            }
            Err(Error::CombinatorialCapExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
        for skip in 0..coreset.indices.len() {
            let span: Vec<usize> = coreset
                .indices
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, &v)| v)
                .collect();
            pool.push(span);
        }
    }

    let n_random = trials.div_ceil(2);
    let ratios: Vec<Option<f64>> = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<Option<f64>> {
            let basis = if trial < n_random {
                sample_subspace(d, t_target, derive_seed(seed, STREAM_RANDOM_SUBSPACE, trial as u64))?
            } else {
                let j = trial - n_random;
                let span = if j < pool.len() {
                    pool[j].clone()
                } else {
                    random_point_subset(
                        ps.len(),
                        k - 1,
                        derive_seed(seed, STREAM_STRUCTURED_SUBSET, j as u64),
                    )
                };
                span_of_points(ps, &span, t_target, derive_seed(seed, STREAM_STRUCTURED_PAD, j as u64))?
            };
            let mut h_all = 0.0_f64;
            let mut dists = Vec::with_capacity(ps.len());
            for i in 0..ps.len() {
                let dist = basis.distance(ps, i)?;
                h_all = h_all.max(dist);
                dists.push(dist);
            }
            if h_all <= degenerate_cutoff {
                return Ok(None);
            }
            let h_core = coreset
                .indices
                .iter()
                .map(|&i| dists[i])
                .fold(0.0, f64::max);
            Ok(Some(h_core / h_all))
        })
        .collect::<Result<_>>()?;

    let mut evaluated = 0usize;
    let mut worst: Option<f64> = None;
    let mut violations = 0usize;
    for ratio in ratios.into_iter().flatten() {
        evaluated += 1;
        worst = Some(worst.map_or(ratio, |w: f64| w.min(ratio)));
        if ratio < floor * (1.0 - HEIGHT_RATIO_REL_TOL) {
            violations += 1;
        }
    }
    Ok(HeightCheckReport {
        algorithm: coreset.algorithm,
        k,
        eps,
        floor,
        trials_requested: trials,
        trials_evaluated: evaluated,
        skipped_degenerate: trials - evaluated,
        worst_ratio: worst,
        violations,
        violation: violations > 0,
    })
}

/// A uniformly random `size`-subset of `0..n` (all of `0..n` when
/// `size >= n`), in draw order.
fn random_point_subset(n: usize, size: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut all: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    all.shuffle(&mut rng);
    all.truncate(size.min(n));
    all
}

/// Explicit basis spanning the given points, padded with seeded Gaussian
/// directions up to dimension `t_target` when the points are dependent.
fn span_of_points(
    ps: &PointSet,
    points: &[usize],
    t_target: usize,
    pad_seed: u64,
) -> Result<OrthoBasis> {
    let mut basis = OrthoBasis::empty_explicit(ps.dim());
    for &idx in points {
        if basis.rank() >= t_target {
            break;
        }
        let (next, _) = basis.extended(ps, idx)?;
        basis = next;
    }
    if basis.rank() < t_target {
        let mut rng = ChaCha8Rng::seed_from_u64(pad_seed);
        let mut attempts = 0usize;
        while basis.rank() < t_target {
            let v: Vec<f64> = (0..ps.dim())
                .map(|_| rng.sample::<f64, _>(StandardNormal))
                .collect();
            let (next, _) = basis.extended_with_vector(&v)?;
            basis = next;
            attempts += 1;
            if attempts > 100 * t_target + 100 {
                return Err(Error::InvalidParameter(
                    "failed to pad a structured subspace to full dimension".into(),
                ));
            }
        }
    }
    Ok(basis)
}

/// Configuration for [`verify_composability`].
#[derive(Debug, Clone, Serialize)]
pub struct ComposabilityConfig {
    pub dim: usize,
    pub n_per_part: usize,
    pub m: usize,
    pub k: usize,
    pub eps: f64,
    pub trials: usize,
    pub seed: u64,
    pub alg: CoresetAlg,
}

/// Result of a composability check. Ratios are determinant ratios
/// (squared volumes), reported in log domain.
#[derive(Debug, Clone, Serialize)]
pub struct ComposabilityReport {
    pub config: ComposabilityConfig,
    /// `2k * ln(alpha)`: the log-domain bound on the determinant ratio.
    pub bound_log_det_ratio: f64,
    pub trials_requested: usize,
    pub trials_evaluated: usize,
    pub skipped_degenerate: usize,
    pub worst_log_det_ratio: Option<f64>,
    pub violations: usize,
    pub violation: bool,
}

/// Generates random multi-part Gaussian instances and brute-forces
/// `r = MAXDET_k(union of parts) / MAXDET_k(union of core-sets)` on each,
/// checking `r <= alpha^(2k)` with `alpha = 2k(1+eps)` for local search
/// and `alpha = 2k * 3^k` for greedy.
pub fn verify_composability(cfg: &ComposabilityConfig) -> Result<ComposabilityReport> {
    if cfg.dim < 1 || cfg.n_per_part < 1 || cfg.m < 1 || cfg.k < 1 || cfg.trials < 1 {
        return Err(Error::InvalidParameter(
            "dim, n_per_part, m, k, and trials must all be at least 1".into(),
        ));
    }
    if cfg.eps <= 0.0 || !cfg.eps.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "eps must be a positive finite number, got {}",
            cfg.eps
        )));
    }
    let n_total = cfg.m * cfg.n_per_part;
    let subsets = binomial(n_total, cfg.k);
    if subsets > DEFAULT_BRUTE_FORCE_CAP as u128 {
        return Err(Error::CombinatorialCapExceeded {
            subsets,
            cap: DEFAULT_BRUTE_FORCE_CAP,
        });
    }
    let alpha = match cfg.alg {
        CoresetAlg::LocalSearch => 2.0 * cfg.k as f64 * (1.0 + cfg.eps),
        CoresetAlg::Greedy => 2.0 * cfg.k as f64 * 3.0_f64.powi(cfg.k as i32),
    };
    let bound = 2.0 * cfg.k as f64 * alpha.ln();

    let log_ratios: Vec<Option<f64>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| -> Result<Option<f64>> {
            let instance_seed = derive_seed(cfg.seed, STREAM_COMPOSE_INSTANCE, trial as u64);
            let ps = generate(
                &Generator::Gaussian {
                    n: n_total,
                    d: cfg.dim,
                },
                instance_seed,
            )?;
            let parts: Vec<Vec<usize>> = (0..cfg.m)
                .map(|p| (p * cfg.n_per_part..(p + 1) * cfg.n_per_part).collect())
                .collect();
            let composed = compose(&ps, &parts, cfg.alg, cfg.k, cfg.eps)?;
            let (_, lv_full) = brute_force_maxdet(&ps, cfg.k)?;
            if lv_full.is_zero_volume() {
                return Ok(None);
            }
            let (_, lv_core) = crate::algorithms::brute_force_maxdet_subset(
                &ps,
                &composed.union,
                cfg.k,
                DEFAULT_BRUTE_FORCE_CAP,
            )?;
            if lv_core.is_zero_volume() {
                // Full optimum positive but the core-set union collapsed:
                // an unbounded ratio, always a violation.
                return Ok(Some(f64::INFINITY));
            }
            Ok(Some(lv_full.log_det() - lv_core.log_det()))
        })
        .collect::<Result<_>>()?;

    let mut evaluated = 0usize;
    let mut worst: Option<f64> = None;
    let mut violations = 0usize;
    for r in log_ratios.into_iter().flatten() {
        evaluated += 1;
        worst = Some(worst.map_or(r, |w: f64| w.max(r)));
        if r > bound + COMPOSE_BOUND_SLACK {
            violations += 1;
        }
    }
    Ok(ComposabilityReport {
        config: cfg.clone(),
        bound_log_det_ratio: bound,
        trials_requested: cfg.trials,
        trials_evaluated: evaluated,
        skipped_degenerate: cfg.trials - evaluated,
        worst_log_det_ratio: worst,
        violations,
        violation: violations > 0,
    })
}
