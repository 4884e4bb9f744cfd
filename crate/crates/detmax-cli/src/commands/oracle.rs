//! `detmax oracle`: exact optimum by exhaustive enumeration.

use std::time::Instant;

use anyhow::Result;
use serde::Serialize;

use detmax::algorithms::brute_force_maxdet_subset;
use detmax::geometry::LogVolume;

use crate::args::{OracleArgs, OutputFormat};
use crate::dataset::{self, DatasetDescription};
use crate::report::{csv_f64, csv_indices, Emitter, SCHEMA};

#[derive(Serialize)]
struct OracleReport {
    schema: &'static str,
    command: &'static str,
    version: &'static str,
    config: OracleConfig,
    indices: Vec<usize>,
    log_volume: LogVolume,
    log_det: f64,
    degenerate: bool,
    timings: Option<Timings>,
}

#[derive(Serialize)]
struct OracleConfig {
    dataset: DatasetDescription,
    k: usize,
    cap: u64,
    seed: u64,
}

#[derive(Serialize)]
struct Timings {
    total_s: f64,
}

pub fn run(args: &OracleArgs) -> Result<i32> {
    let resolved = dataset::resolve(&args.dataset, args.seed)?;
    let ps = dataset::kernelized(&resolved.points, &resolved.kernel)?;
    let all: Vec<usize> = (0..ps.len()).collect();
    let t0 = Instant::now();
    let (indices, lv) = brute_force_maxdet_subset(&ps, &all, args.k, args.cap)?;
    let total_s = t0.elapsed().as_secs_f64();

    let report = OracleReport {
        schema: SCHEMA,
        command: "oracle",
        version: detmax::VERSION,
        config: OracleConfig {
            dataset: resolved.description,
            k: args.k,
            cap: args.cap,
            seed: args.seed,
        },
        indices: indices.clone(),
        log_volume: lv,
        log_det: lv.log_det(),
        degenerate: lv.is_zero_volume(),
        timings: (!args.output.no_timings).then_some(Timings { total_s }),
    };

    let mut emitter = Emitter::new(&args.output);
    match emitter.format() {
        OutputFormat::Json => emitter.json(&report)?,
        OutputFormat::Csv => {
            emitter.csv_line(
                "schema,command,version,k,seed,n,d,indices,log_volume,log_det,degenerate,total_s"
                    .to_string(),
            );
            emitter.csv_line(format!(
                "{},oracle,{},{},{},{},{},{},{},{},{},{}",
                SCHEMA,
                detmax::VERSION,
                args.k,
                args.seed,
                report.config.dataset.n,
                report.config.dataset.d,
                csv_indices(&indices),
                csv_f64(lv.value()),
                csv_f64(lv.log_det()),
                report.degenerate,
                report
                    .timings
                    .as_ref()
                    .map_or_else(String::new, |t| csv_f64(t.total_s)),
            ));
        }
    }
    emitter.note(&format!(
        "oracle k={}: optimum log_volume={} at {:?} ({:.3}s)",
        args.k, lv, indices, total_s,
    ));
    emitter.flush(&args.output)?;
    Ok(if report.degenerate { 4 } else { 0 })
}
