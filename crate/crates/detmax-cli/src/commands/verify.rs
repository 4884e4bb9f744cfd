//! `detmax verify`: guarantee tripwires. Exit 5 on any bound violation.

use anyhow::Result;
use serde::Serialize;

use detmax::algorithms::{greedy, local_search, CoreSet};
use detmax::coreset::{
    derive_seed, verify_composability, verify_directional_height, ComposabilityConfig,
    CoresetAlg, HeightCheckReport,
};
use detmax::data::{generate, Generator};
use detmax::geometry::PointSet;

use crate::args::{AlgChoice, ComposeArgs, HeightArgs, OutputFormat, VerifyArgs, VerifyCmd};
use crate::dataset;
use crate::report::{csv_f64, Emitter, SCHEMA};

const STREAM_INSTANCE_PARAMS: u64 = 1001;
const STREAM_INSTANCE_TRIALS: u64 = 1002;

pub fn run(args: &VerifyArgs) -> Result<i32> {
    match &args.check {
        VerifyCmd::Height(h) => run_height(h),
        VerifyCmd::Compose(c) => run_compose(c),
    }
}

fn build_coreset(ps: &PointSet, alg: AlgChoice, k: usize, eps: f64) -> Result<CoreSet> {
    Ok(match alg {
        AlgChoice::Greedy => greedy(ps, k)?,
        AlgChoice::LocalSearch => local_search(ps, k, eps)?,
    })
}

#[derive(Serialize)]
struct HeightInstanceLine {
    instance: usize,
    n: usize,
    d: usize,
    #[serde(flatten)]
    report: HeightCheckReport,
}

#[derive(Serialize)]
struct HeightSummary {
    schema: &'static str,
    command: &'static str,
    version: &'static str,
    algorithm: &'static str,
    eps: f64,
    seed: u64,
    instances: usize,
    trials_requested: usize,
    trials_evaluated: usize,
    skipped_degenerate: usize,
    worst_ratio: Option<f64>,
    violations: usize,
    violation: bool,
    per_instance: Vec<HeightInstanceLine>,
}

fn alg_name(alg: AlgChoice) -> &'static str {
    match alg {
        AlgChoice::Greedy => "greedy",
        AlgChoice::LocalSearch => "local-search",
    }
}

fn run_height(args: &HeightArgs) -> Result<i32> {
    let mut per_instance = Vec::new();

    if let Some(resolved) = dataset::resolve_optional(&args.dataset, args.seed)? {
        // Single-instance mode: verify the core-set built on the given data.
        let k = args.k.unwrap_or(3).min(resolved.points.dim());
        let cs = build_coreset(&resolved.points, args.alg, k, args.eps)?;
        let report =
            verify_directional_height(&resolved.points, &cs, k, args.eps, args.trials, args.seed)?;
        per_instance.push(HeightInstanceLine {
            instance: 0,
            n: resolved.points.len(),
            d: resolved.points.dim(),
            report,
        });
    } else {
        // Suite mode: random Gaussian instances with drawn parameters.
        let instances = args.instances.max(1);
        let base = args.trials / instances;
        let extra = args.trials % instances;
        for i in 0..instances {
            let trials = base + usize::from(i < extra);
            if trials == 0 {
                continue;
            }
            let params = derive_seed(args.seed, STREAM_INSTANCE_PARAMS, i as u64);
            let d = 2 + (params % 7) as usize; // 2..=8
            let k = match args.k {
                Some(k) => k.max(1).min(d),
                None => 1 + ((params >> 8) % 4.min(d as u64)) as usize, // 1..=min(4,d)
            };
            let n = 10 + ((params >> 16) % 31) as usize; // 10..=40
            let ps = generate(
                &Generator::Gaussian { n, d },
                derive_seed(args.seed, STREAM_INSTANCE_TRIALS, i as u64),
            )?;
            let cs = build_coreset(&ps, args.alg, k, args.eps)?;
            let report = verify_directional_height(
                &ps,
                &cs,
                k,
                args.eps,
                trials,
                derive_seed(args.seed, STREAM_INSTANCE_TRIALS, i as u64),
            )?;
            per_instance.push(HeightInstanceLine {
                instance: i,
                n,
                d,
                report,
            });
        }
    }

    let trials_evaluated: usize = per_instance.iter().map(|r| r.report.trials_evaluated).sum();
    let skipped: usize = per_instance.iter().map(|r| r.report.skipped_degenerate).sum();
    let violations: usize = per_instance.iter().map(|r| r.report.violations).sum();
    let worst = per_instance
        .iter()
        .filter_map(|r| r.report.worst_ratio)
        .fold(None, |acc: Option<f64>, r| {
            Some(acc.map_or(r, |a| a.min(r)))
        });

    let summary = HeightSummary {
        schema: SCHEMA,
        command: "verify-height",
        version: detmax::VERSION,
        algorithm: alg_name(args.alg),
        eps: args.eps,
        seed: args.seed,
        instances: per_instance.len(),
        trials_requested: args.trials,
        trials_evaluated,
        skipped_degenerate: skipped,
        worst_ratio: worst,
        violations,
        violation: violations > 0,
        per_instance,
    };

    let mut emitter = Emitter::new(&args.output);
    match emitter.format() {
        OutputFormat::Json => emitter.json(&summary)?,
        OutputFormat::Csv => {
            emitter.csv_line(
                "schema,command,version,algorithm,eps,seed,instances,trials_evaluated,worst_ratio,violations"
                    .to_string(),
            );
            emitter.csv_line(format!(
                "{},verify-height,{},{},{},{},{},{},{},{}",
                SCHEMA,
                detmax::VERSION,
                summary.algorithm,
                csv_f64(summary.eps),
                summary.seed,
                summary.instances,
                summary.trials_evaluated,
                summary.worst_ratio.map_or_else(String::new, csv_f64),
                summary.violations,
            ));
        }
    }
    emitter.note(&format!(
        "verify height [{}]: {} trials on {} instances, worst ratio {:?}, {} violation(s)",
        summary.algorithm,
        summary.trials_evaluated,
        summary.instances,
        summary.worst_ratio,
        summary.violations,
    ));
    emitter.flush(&args.output)?;
    Ok(if violations > 0 { 5 } else { 0 })
}

#[derive(Serialize)]
struct ComposeSummary<'a> {
    schema: &'static str,
    command: &'static str,
    version: &'static str,
    #[serde(flatten)]
    report: &'a detmax::coreset::ComposabilityReport,
    worst_det_ratio: Option<f64>,
}

fn run_compose(args: &ComposeArgs) -> Result<i32> {
    let cfg = ComposabilityConfig {
        dim: args.d,
        n_per_part: args.n_per_part,
        m: args.m,
        k: args.k,
        eps: args.eps,
        trials: args.trials,
        seed: args.seed,
        alg: match args.alg {
            AlgChoice::Greedy => CoresetAlg::Greedy,
            AlgChoice::LocalSearch => CoresetAlg::LocalSearch,
        },
    };
    let report = verify_composability(&cfg)?;
    let summary = ComposeSummary {
        schema: SCHEMA,
        command: "verify-compose",
        version: detmax::VERSION,
        report: &report,
        worst_det_ratio: report.worst_log_det_ratio.map(f64::exp),
    };

    let mut emitter = Emitter::new(&args.output);
    match emitter.format() {
        OutputFormat::Json => emitter.json(&summary)?,
        OutputFormat::Csv => {
            emitter.csv_line(
                "schema,command,version,d,k,m,n_per_part,trials_evaluated,worst_log_det_ratio,bound_log_det_ratio,violations"
                    .to_string(),
            );
            emitter.csv_line(format!(
                "{},verify-compose,{},{},{},{},{},{},{},{},{}",
                SCHEMA,
                detmax::VERSION,
                args.d,
                args.k,
                args.m,
                args.n_per_part,
                report.trials_evaluated,
                report.worst_log_det_ratio.map_or_else(String::new, csv_f64),
                csv_f64(report.bound_log_det_ratio),
                report.violations,
            ));
        }
    }
    emitter.note(&format!(
        "verify compose: {} trials, worst log det ratio {:?} against bound {:.6}, {} violation(s)",
        report.trials_evaluated,
        report.worst_log_det_ratio,
        report.bound_log_det_ratio,
        report.violations,
    ));
    emitter.flush(&args.output)?;
    Ok(if report.violation { 5 } else { 0 })
}
