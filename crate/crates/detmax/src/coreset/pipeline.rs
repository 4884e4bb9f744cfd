//! The composable-core-set pipeline: partition a point set, build one
//! core-set per part, take the union, and aggregate a final subset from
//! it. Mirrors the distributed setting on a single machine.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algorithms::{
    brute_force_maxdet_subset, greedy_subset, local_search_subset, Algorithm, CoreSet,
};
use crate::coreset::seed::derive_seed;
use crate::error::{Error, Result};
use crate::geometry::{log_volume, LogVolume, PointSet};
use crate::tolerances::DEFAULT_BRUTE_FORCE_CAP;

/// Core-set construction algorithm (`ALG_c`): runs on each partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoresetAlg {
    Greedy,
    LocalSearch,
}

/// Aggregation algorithm (`ALG_a`): picks the final `k`-subset from the
/// union of the per-partition core-sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AggregationAlg {
    Greedy,
    LocalSearch,
    BruteForce,
}

/// Optional kernelization applied to the input before anything runs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum KernelSpec {
    Rbf { sigma: f64 },
}

/// Full description of one composed experiment.
#[derive(Debug, Clone, Serialize)]
pub struct PipelineConfig {
    pub k: usize,
    /// Partition count `m`.
    pub m: usize,
    pub eps: f64,
    pub coreset_alg: CoresetAlg,
    pub aggregation_alg: AggregationAlg,
    pub master_seed: u64,
    pub repetitions: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelSpec>,
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if self.m < 1 {
            return Err(Error::InvalidParameter(
                "partition count m must be at least 1".into(),
            ));
        }
        if self.repetitions < 1 {
            return Err(Error::InvalidParameter(
                "repetitions must be at least 1".into(),
            ));
        }
        if self.eps <= 0.0 || !self.eps.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "eps must be a positive finite number, got {}",
                self.eps
            )));
        }
        if let Some(KernelSpec::Rbf { sigma }) = self.kernel {
            if sigma <= 0.0 || !sigma.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "rbf sigma must be a positive finite number, got {sigma}"
                )));
            }
        }
        Ok(())
    }

    /// `"ALG_a/ALG_c"` in the customary order: aggregation over coreset.
    pub fn pair_label(&self) -> String {
        let a = match self.aggregation_alg {
            AggregationAlg::Greedy => "GD",
            AggregationAlg::LocalSearch => "LS",
            AggregationAlg::BruteForce => "BF",
        };
        let c = match self.coreset_alg {
            CoresetAlg::Greedy => "GD",
            CoresetAlg::LocalSearch => "LS",
        };
        format!("{a}/{c}")
    }
}

/// One partition's core-set in a run report (indices are global).
#[derive(Debug, Clone, Serialize)]
pub struct PartReport {
    pub part: usize,
    pub size: usize,
    pub indices: Vec<usize>,
    pub log_volume: LogVolume,
    pub swap_count: usize,
    pub degenerate: bool,
}

/// Wall-clock seconds per pipeline stage. Informational only; stripped
/// when byte-identical reports are required.
#[derive(Debug, Clone, Serialize)]
pub struct StageTimings {
    pub partition_s: f64,
    pub coreset_s: f64,
    pub aggregation_s: f64,
    pub total_s: f64,
}

/// Machine-readable record of one pipeline run.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub run: usize,
    /// Seed used to draw this run's partition, derived from the master seed.
    pub seed: u64,
    pub partition_sizes: Vec<usize>,
    pub empty_parts: usize,
    pub parts: Vec<PartReport>,
    pub union_size: usize,
    pub union: Vec<usize>,
    pub final_indices: Vec<usize>,
    pub final_log_volume: LogVolume,
    pub final_swap_count: usize,
    pub final_degenerate: bool,
    pub timings: Option<StageTimings>,
}

/// Aggregate statistics over the repetitions of one configuration.
/// Log-volume statistics cover non-degenerate runs only.
#[derive(Debug, Clone, Serialize)]
pub struct PipelineSummary {
    pub runs: usize,
    pub degenerate_runs: usize,
    pub mean_log_volume: f64,
    pub stddev_log_volume: f64,
    pub mean_union_size: f64,
    pub mean_final_swap_count: f64,
}

/// All reports plus the summary for one configuration.
#[derive(Debug, Clone, Serialize)]
pub struct PipelineRun {
    pub config: PipelineConfig,
    pub pair: String,
    pub reports: Vec<RunReport>,
    pub summary: PipelineSummary,
}

/// Per-run improvement ratios `exp(logvol_a - logvol_b)` between two
/// pipeline runs that shared a master seed (and therefore partitions).
#[derive(Debug, Clone, Serialize)]
pub struct ImprovementSummary {
    /// The improved configuration (numerator).
    pub pair_a: String,
    /// The baseline configuration (denominator).
    pub pair_b: String,
    pub runs_compared: usize,
    pub mean_ratio: f64,
    pub min_ratio: f64,
    pub max_ratio: f64,
    /// Runs where `a` came out strictly ahead.
    pub runs_improved: usize,
}

/// Assigns every index of `ps` to exactly one of `m` parts uniformly at
/// random. Deterministic given the seed; parts may come out empty when
/// `m > |P|` (callers flag this, it is not fatal).
pub fn partition(ps: &PointSet, m: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if m < 1 {
        return Err(Error::InvalidParameter(
            "partition count m must be at least 1".into(),
        ));
    }
    if ps.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = vec![Vec::new(); m];
    for i in 0..ps.len() {
        let part = rng.random_range(0..m);
        parts[part].push(i);
    }
    Ok(parts)
}

/// The union of the per-part core-sets, in fixed part order, plus the
/// per-part results. Per-part runs are independent and run in parallel;
/// the merge order never depends on scheduling.
pub struct ComposeOutcome {
    pub per_part: Vec<CoreSet>,
    pub union: Vec<usize>,
}

pub fn compose(
    ps: &PointSet,
    parts: &[Vec<usize>],
    alg: CoresetAlg,
    k: usize,
    eps: f64,
) -> Result<ComposeOutcome> {
    let per_part: Vec<CoreSet> = parts
        .par_iter()
        .map(|part| coreset_for_part(ps, part, alg, k, eps))
        .collect::<Result<_>>()?;
    let union: Vec<usize> = per_part.iter().flat_map(|c| c.indices.clone()).collect();
    Ok(ComposeOutcome { per_part, union })
}

fn coreset_for_part(
    ps: &PointSet,
    part: &[usize],
    alg: CoresetAlg,
    k: usize,
    eps: f64,
) -> Result<CoreSet> {
    if part.is_empty() {
        // An empty part contributes an empty core-set; callers warn.
        return Ok(CoreSet {
            indices: Vec::new(),
            algorithm: match alg {
                CoresetAlg::Greedy => Algorithm::Greedy,
                CoresetAlg::LocalSearch => Algorithm::LocalSearch,
            },
            eps: match alg {
                CoresetAlg::Greedy => None,
                CoresetAlg::LocalSearch => Some(eps),
            },
            swap_count: 0,
            log_volume: LogVolume::zero_volume(),
            degenerate: true,
        });
    }
    match alg {
        CoresetAlg::Greedy => greedy_subset(ps, part, k),
        CoresetAlg::LocalSearch => local_search_subset(ps, part, k, eps),
    }
}

/// Runs the aggregation algorithm restricted to `union`. A union of at
/// most `k` indices is returned as-is (there is nothing to choose).
pub fn aggregate(
    ps: &PointSet,
    union: &[usize],
    alg: AggregationAlg,
    k: usize,
    eps: f64,
) -> Result<CoreSet> {
    if union.is_empty() {
        return Err(Error::EmptySubset);
    }
    if union.len() <= k {
        let lv = log_volume(ps, union)?;
        return Ok(CoreSet {
            indices: union.to_vec(),
            algorithm: match alg {
                AggregationAlg::Greedy => Algorithm::Greedy,
                AggregationAlg::LocalSearch => Algorithm::LocalSearch,
                AggregationAlg::BruteForce => Algorithm::BruteForce,
            },
            eps: None,
            swap_count: 0,
            log_volume: lv,
            degenerate: union.len() < k || lv.is_zero_volume(),
        });
    }
    match alg {
        AggregationAlg::Greedy => greedy_subset(ps, union, k),
        AggregationAlg::LocalSearch => local_search_subset(ps, union, k, eps),
        AggregationAlg::BruteForce => {
            let (indices, lv) =
                brute_force_maxdet_subset(ps, union, k, DEFAULT_BRUTE_FORCE_CAP)?;
            Ok(CoreSet {
                indices,
                algorithm: Algorithm::BruteForce,
                eps: None,
                swap_count: 0,
                log_volume: lv,
                degenerate: lv.is_zero_volume(),
            })
        }
    }
}

/// Executes `repetitions` independent runs, with the run-`i` partition
/// drawn from `derive_seed(master_seed, i, 0)`. Reports are a pure
/// function of `(ps, cfg)` except for the wall-clock timings.
pub fn run_pipeline(ps: &PointSet, cfg: &PipelineConfig) -> Result<PipelineRun> {
    cfg.validate()?;
    let kernelized;
    let ps_eff = match cfg.kernel {
        Some(KernelSpec::Rbf { sigma }) => {
            kernelized = ps.rbf_kernelized(sigma)?;
            &kernelized
        }
        None => ps,
    };

    let mut reports = Vec::with_capacity(cfg.repetitions);
    for run in 0..cfg.repetitions {
        let seed = derive_seed(cfg.master_seed, run as u64, 0);
        let t0 = Instant::now();
        let parts = partition(ps_eff, cfg.m, seed)?;
        let partition_s = t0.elapsed().as_secs_f64();

        let t1 = Instant::now();
        let composed = compose(ps_eff, &parts, cfg.coreset_alg, cfg.k, cfg.eps)?;
        let coreset_s = t1.elapsed().as_secs_f64();

        let t2 = Instant::now();
        let final_set = aggregate(
            ps_eff,
            &composed.union,
            cfg.aggregation_alg,
            cfg.k,
            cfg.eps,
        )?;
        let aggregation_s = t2.elapsed().as_secs_f64();

        let partition_sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
        let empty_parts = partition_sizes.iter().filter(|&&s| s == 0).count();
        let part_reports: Vec<PartReport> = composed
            .per_part
            .iter()
            .enumerate()
            .map(|(i, c)| PartReport {
                part: i,
                size: parts[i].len(),
                indices: c.indices.clone(),
                log_volume: c.log_volume,
                swap_count: c.swap_count,
                degenerate: c.degenerate,
            })
            .collect();

        reports.push(RunReport {
            run,
            seed,
            partition_sizes,
            empty_parts,
            parts: part_reports,
            union_size: composed.union.len(),
            union: composed.union,
            final_indices: final_set.indices.clone(),
            final_log_volume: final_set.log_volume,
            final_swap_count: final_set.swap_count,
            final_degenerate: final_set.degenerate,
            timings: Some(StageTimings {
                partition_s,
                coreset_s,
                aggregation_s,
                total_s: t0.elapsed().as_secs_f64(),
            }),
        });
    }

    let summary = summarize(&reports);
    Ok(PipelineRun {
        pair: cfg.pair_label(),
        config: cfg.clone(),
        reports,
        summary,
    })
}

fn summarize(reports: &[RunReport]) -> PipelineSummary {
    let finite: Vec<f64> = reports
        .iter()
        .filter(|r| !r.final_log_volume.is_zero_volume())
        .map(|r| r.final_log_volume.value())
        .collect();
    let degenerate_runs = reports.len() - finite.len();
    let mean = if finite.is_empty() {
        f64::NAN
    } else {
        finite.iter().sum::<f64>() / finite.len() as f64
    };
    let stddev = if finite.len() < 2 {
        0.0
    } else {
        let var = finite.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>()
            / (finite.len() - 1) as f64;
        var.sqrt()
    };
    PipelineSummary {
        runs: reports.len(),
        degenerate_runs,
        mean_log_volume: mean,
        stddev_log_volume: stddev,
        mean_union_size: reports.iter().map(|r| r.union_size as f64).sum::<f64>()
            / reports.len().max(1) as f64,
        mean_final_swap_count: reports
            .iter()
            .map(|r| r.final_swap_count as f64)
            .sum::<f64>()
            / reports.len().max(1) as f64,
    }
}

/// Per-run improvement of `a` over `b`: `exp(logvol_a - logvol_b)`.
/// Runs where both volumes are zero count as ratio 1. Requires both runs
/// to cover the same number of repetitions.
pub fn compare_runs(a: &PipelineRun, b: &PipelineRun) -> Result<ImprovementSummary> {
    if a.reports.len() != b.reports.len() {
        return Err(Error::InvalidParameter(format!(
            "cannot compare {} runs against {} runs",
            a.reports.len(),
            b.reports.len()
        )));
    }
    let mut ratios = Vec::with_capacity(a.reports.len());
    for (ra, rb) in a.reports.iter().zip(&b.reports) {
        let (la, lb) = (ra.final_log_volume, rb.final_log_volume);
        let ratio = match (la.is_zero_volume(), lb.is_zero_volume()) {
            (true, true) => 1.0,
            (false, true) => f64::INFINITY,
            (true, false) => 0.0,
            (false, false) => (la.value() - lb.value()).exp(),
        };
        ratios.push(ratio);
    }
    let runs_improved = ratios.iter().filter(|&&r| r > 1.0).count();
    let mean = ratios.iter().sum::<f64>() / ratios.len().max(1) as f64;
    let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(ImprovementSummary {
        pair_a: a.pair.clone(),
        pair_b: b.pair.clone(),
        runs_compared: ratios.len(),
        mean_ratio: mean,
        min_ratio: min,
        max_ratio: max,
        runs_improved,
    })
}
