//! `detmax pipeline`: the composed-experiment simulator, streaming JSONL.

use anyhow::Result;
use serde::Serialize;

use detmax::coreset::{
    compare_runs, run_pipeline, AggregationAlg, CoresetAlg, ImprovementSummary, PipelineConfig,
    PipelineRun, PipelineSummary, RunReport,
};

use crate::args::{AggChoice, AlgChoice, OutputFormat, PipelineArgs};
use crate::dataset::{self, DatasetDescription};
use crate::report::{csv_f64, csv_indices, Emitter, SCHEMA};
use crate::UsageError;

#[derive(Serialize)]
struct PipelineCliConfig {
    dataset: DatasetDescription,
    #[serde(flatten)]
    pipeline: PipelineConfig,
}

#[derive(Serialize)]
struct RunLine<'a> {
    schema: &'static str,
    command: &'static str,
    version: &'static str,
    pair: &'a str,
    config: &'a PipelineCliConfig,
    #[serde(flatten)]
    report: &'a RunReport,
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    schema: &'static str,
    command: &'static str,
    version: &'static str,
    pair: &'a str,
    config: &'a PipelineCliConfig,
    summary: &'a PipelineSummary,
}

#[derive(Serialize)]
struct ComparisonLine<'a> {
    schema: &'static str,
    command: &'static str,
    version: &'static str,
    comparison: &'a ImprovementSummary,
}

fn parse_pair(spec: &str) -> Result<(AggregationAlg, CoresetAlg)> {
    let (a, c) = spec
        .split_once('/')
        .ok_or_else(|| UsageError(format!("pair {spec:?} must look like ALG_a/ALG_c")))?;
    let agg = match a.to_ascii_uppercase().as_str() {
        "GD" => AggregationAlg::Greedy,
        "LS" => AggregationAlg::LocalSearch,
        "BF" => AggregationAlg::BruteForce,
        other => {
            return Err(
                UsageError(format!("unknown aggregation algorithm {other:?} (GD, LS, BF)")).into(),
            )
        }
    };
    let core = match c.to_ascii_uppercase().as_str() {
        "GD" => CoresetAlg::Greedy,
        "LS" => CoresetAlg::LocalSearch,
        other => {
            return Err(
                UsageError(format!("unknown core-set algorithm {other:?} (GD, LS)")).into(),
            )
        }
    };
    Ok((agg, core))
}

pub fn run(args: &PipelineArgs) -> Result<i32> {
    let resolved = dataset::resolve(&args.dataset, args.seed)?;

    let pairs: Vec<(AggregationAlg, CoresetAlg)> = if args.compare.is_empty() {
        let agg = match args.agg_alg {
            AggChoice::Greedy => AggregationAlg::Greedy,
            AggChoice::LocalSearch => AggregationAlg::LocalSearch,
            AggChoice::BruteForce => AggregationAlg::BruteForce,
        };
        let core = match args.alg {
            AlgChoice::Greedy => CoresetAlg::Greedy,
            AlgChoice::LocalSearch => CoresetAlg::LocalSearch,
        };
        vec![(agg, core)]
    } else {
        args.compare
            .iter()
            .map(|s| parse_pair(s))
            .collect::<Result<_>>()?
    };

    let mut emitter = Emitter::new(&args.output);
    if emitter.format() == OutputFormat::Csv {
        emitter.csv_line(
            "schema,command,version,pair,run,seed,union_size,final_log_volume,final_log_det,final_swap_count,final_degenerate,final_indices"
                .to_string(),
        );
    }

    let mut completed: Vec<(PipelineRun, PipelineCliConfig)> = Vec::new();
    for &(agg, core) in &pairs {
        let cfg = PipelineConfig {
            k: args.k,
            m: args.m,
            eps: args.eps,
            coreset_alg: core,
            aggregation_alg: agg,
            master_seed: args.seed,
            repetitions: args.reps,
            kernel: resolved.kernel,
        };
        let mut run = run_pipeline(&resolved.points, &cfg)?;
        if args.output.no_timings {
            for report in &mut run.reports {
                report.timings = None;
            }
        }
        let cli_config = PipelineCliConfig {
            dataset: resolved.description.clone(),
            pipeline: cfg,
        };

        let empty_parts: usize = run.reports.iter().map(|r| r.empty_parts).sum();
        if empty_parts > 0 {
            emitter.note(&format!(
                "warning: {empty_parts} empty partition part(s) across runs (m > |P|?)"
            ));
        }
        match emitter.format() {
            OutputFormat::Json => {
                for report in &run.reports {
                    emitter.json(&RunLine {
                        schema: SCHEMA,
                        command: "pipeline-run",
                        version: detmax::VERSION,
                        pair: &run.pair,
                        config: &cli_config,
                        report,
                    })?;
                }
                emitter.json(&SummaryLine {
                    schema: SCHEMA,
                    command: "pipeline-summary",
                    version: detmax::VERSION,
                    pair: &run.pair,
                    config: &cli_config,
                    summary: &run.summary,
                })?;
            }
            OutputFormat::Csv => {
                for r in &run.reports {
                    emitter.csv_line(format!(
                        "{schema},pipeline-run,{version},{pair},{run},{seed},{us},{lv},{ld},{sw},{deg},{idx}",
                        schema = SCHEMA,
                        version = detmax::VERSION,
                        pair = run.pair,
                        run = r.run,
                        seed = r.seed,
                        us = r.union_size,
                        lv = csv_f64(r.final_log_volume.value()),
                        ld = csv_f64(r.final_log_volume.log_det()),
                        sw = r.final_swap_count,
                        deg = r.final_degenerate,
                        idx = csv_indices(&r.final_indices),
                    ));
                }
            }
        }
        emitter.note(&format!(
            "pipeline {}: {} runs, mean log_volume {:.6}, mean union {:.1}",
            run.pair, run.summary.runs, run.summary.mean_log_volume, run.summary.mean_union_size,
        ));
        completed.push((run, cli_config));
    }

    // Later pairs compare against each earlier one (later over earlier),
    // so `--compare GD/GD --compare LS/LS` reports LS/LS over GD/GD.
    for j in 1..completed.len() {
        for i in 0..j {
            let cmp = compare_runs(&completed[j].0, &completed[i].0)?;
            if emitter.format() == OutputFormat::Json {
                emitter.json(&ComparisonLine {
                    schema: SCHEMA,
                    command: "pipeline-comparison",
                    version: detmax::VERSION,
                    comparison: &cmp,
                })?;
            }
            emitter.note(&format!(
                "improvement {} over {}: mean ratio {:.6} ({} of {} runs improved)",
                cmp.pair_a, cmp.pair_b, cmp.mean_ratio, cmp.runs_improved, cmp.runs_compared,
            ));
        }
    }

    emitter.flush(&args.output)?;
    Ok(0)
}
