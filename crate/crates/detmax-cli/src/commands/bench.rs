//! `detmax bench`: offline quality/time comparison of the two
//! constructors on one data set. Timings are reported, never asserted.

use std::time::Instant;

use anyhow::Result;
use serde::Serialize;

use detmax::algorithms::{greedy, local_search};
use detmax::geometry::LogVolume;

use crate::args::{BenchArgs, OutputFormat};
use crate::dataset::{self, DatasetDescription};
use crate::report::{csv_f64, Emitter, SCHEMA};

#[derive(Serialize)]
struct AlgResult {
    indices: Vec<usize>,
    log_volume: LogVolume,
    swap_count: usize,
    degenerate: bool,
    time_s: Option<f64>,
}

#[derive(Serialize)]
struct BenchReport {
    schema: &'static str,
    command: &'static str,
    version: &'static str,
    config: BenchConfig,
    greedy: AlgResult,
    local_search: AlgResult,
    /// exp(logvol_LS - logvol_GD): volume improvement of local search.
    improvement_ratio: f64,
    /// LS wall time over greedy wall time.
    time_ratio: Option<f64>,
}

#[derive(Serialize)]
struct BenchConfig {
    dataset: DatasetDescription,
    k: usize,
    eps: f64,
    seed: u64,
}

pub fn run(args: &BenchArgs) -> Result<i32> {
    let resolved = dataset::resolve(&args.dataset, args.seed)?;
    let ps = dataset::kernelized(&resolved.points, &resolved.kernel)?;

    let t0 = Instant::now();
    let gd = greedy(&ps, args.k)?;
    let gd_s = t0.elapsed().as_secs_f64();

    let t1 = Instant::now();
    let ls = local_search(&ps, args.k, args.eps)?;
    let ls_s = t1.elapsed().as_secs_f64();

    let improvement = if gd.log_volume.is_zero_volume() && ls.log_volume.is_zero_volume() {
        1.0
    } else {
        (ls.log_volume.value() - gd.log_volume.value()).exp()
    };
    let with_timings = !args.output.no_timings;
    let report = BenchReport {
        schema: SCHEMA,
        command: "bench",
        version: detmax::VERSION,
        config: BenchConfig {
            dataset: resolved.description,
            k: args.k,
            eps: args.eps,
            seed: args.seed,
        },
        greedy: AlgResult {
            indices: gd.indices,
            log_volume: gd.log_volume,
            swap_count: gd.swap_count,
            degenerate: gd.degenerate,
            time_s: with_timings.then_some(gd_s),
        },
        local_search: AlgResult {
            indices: ls.indices,
            log_volume: ls.log_volume,
            swap_count: ls.swap_count,
            degenerate: ls.degenerate,
            time_s: with_timings.then_some(ls_s),
        },
        improvement_ratio: improvement,
        time_ratio: with_timings.then_some(ls_s / gd_s.max(1e-12)),
    };

    let mut emitter = Emitter::new(&args.output);
    match emitter.format() {
        OutputFormat::Json => emitter.json(&report)?,
        OutputFormat::Csv => {
            emitter.csv_line(
                "schema,command,version,k,seed,gd_log_volume,ls_log_volume,ls_swap_count,improvement_ratio,gd_time_s,ls_time_s"
                    .to_string(),
            );
            emitter.csv_line(format!(
                "{},bench,{},{},{},{},{},{},{},{},{}",
                SCHEMA,
                detmax::VERSION,
                args.k,
                args.seed,
                csv_f64(report.greedy.log_volume.value()),
                csv_f64(report.local_search.log_volume.value()),
                report.local_search.swap_count,
                csv_f64(report.improvement_ratio),
                report.greedy.time_s.map_or_else(String::new, csv_f64),
                report.local_search.time_s.map_or_else(String::new, csv_f64),
            ));
        }
    }
    emitter.note(&format!(
        "bench k={}: improvement ratio {:.6}, {} swaps, times {:.3}s (GD) / {:.3}s (LS)",
        args.k, report.improvement_ratio, report.local_search.swap_count, gd_s, ls_s,
    ));
    emitter.flush(&args.output)?;
    Ok(0)
}
