//! Resolving dataset flags into a point set plus a serializable
//! description of where it came from.

use anyhow::Result;
use serde::Serialize;

use detmax::coreset::KernelSpec;
use detmax::data::{DatasetSpec, FileFormat, Generator};
use detmax::geometry::PointSet;

use crate::args::{DataFormat, DatasetArgs, OptionalDatasetArgs};
use crate::UsageError;

/// Fully resolved dataset provenance, embedded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct DatasetDescription {
    pub spec: DatasetSpec,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub kernel: Option<KernelDescription>,
}

/// The kernel convention is spelled out in full so report consumers never
/// have to guess which normalization produced the numbers.
#[derive(Debug, Clone, Serialize)]
pub struct KernelDescription {
    pub r#type: &'static str,
    pub sigma: f64,
    pub formula: &'static str,
}

impl KernelDescription {
    pub fn rbf(sigma: f64) -> Self {
        Self {
            r#type: "rbf",
            sigma,
            formula: "exp(-||x-y||^2/(2*sigma^2))",
        }
    }
}

pub fn parse_synthetic(spec: &str) -> Result<Generator> {
    let (name, rest) = spec
        .split_once(':')
        .ok_or_else(|| UsageError(format!("synthetic spec {spec:?} needs NAME:PARAMS")))?;
    let nums: Vec<&str> = rest.split(',').collect();
    let usize_at = |i: usize| -> Result<usize> {
        nums.get(i)
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| UsageError(format!("bad integer in synthetic spec {spec:?}")).into())
    };
    match name {
        "gaussian" => {
            if nums.len() != 2 {
                return Err(UsageError(format!("gaussian:N,D expected, got {spec:?}")).into());
            }
            Ok(Generator::Gaussian {
                n: usize_at(0)?,
                d: usize_at(1)?,
            })
        }
        "clustered" => {
            if nums.len() != 4 {
                return Err(
                    UsageError(format!("clustered:N,D,CLUSTERS,SPREAD expected, got {spec:?}"))
                        .into(),
                );
            }
            let spread: f64 = nums[3].trim().parse().map_err(|_| {
                UsageError(format!("bad spread in synthetic spec {spec:?}"))
            })?;
            Ok(Generator::Clustered {
                n: usize_at(0)?,
                d: usize_at(1)?,
                clusters: usize_at(2)?,
                spread,
            })
        }
        "adversarial" | "adversarial-greedy" => {
            if nums.len() != 2 {
                return Err(UsageError(format!("adversarial:N,D expected, got {spec:?}")).into());
            }
            Ok(Generator::AdversarialGreedy {
                n: usize_at(0)?,
                d: usize_at(1)?,
            })
        }
        other => Err(UsageError(format!("unknown synthetic generator {other:?}")).into()),
    }
}

pub fn parse_kernel(spec: &str) -> Result<KernelSpec> {
    let (name, rest) = spec
        .split_once(':')
        .ok_or_else(|| UsageError(format!("kernel spec {spec:?} needs NAME:PARAMS")))?;
    match name {
        "rbf" => {
            let sigma: f64 = rest
                .trim()
                .parse()
                .map_err(|_| UsageError(format!("bad sigma in kernel spec {spec:?}")))?;
            Ok(KernelSpec::Rbf { sigma })
        }
        other => Err(UsageError(format!("unknown kernel {other:?} (supported: rbf)")).into()),
    }
}

fn file_format(f: DataFormat) -> FileFormat {
    match f {
        DataFormat::Csv => FileFormat::Csv,
        DataFormat::Whitespace => FileFormat::Whitespace,
    }
}

fn build_spec(
    data: &Option<std::path::PathBuf>,
    format: DataFormat,
    header: bool,
    synthetic: &Option<String>,
    unit_norm: bool,
) -> Result<DatasetSpec> {
    let spec = match (data, synthetic) {
        (Some(path), None) => DatasetSpec::file(path, file_format(format), header),
        (None, Some(spec)) => DatasetSpec::synthetic(parse_synthetic(spec)?),
        (None, None) => {
            return Err(UsageError("one of --data or --synthetic is required".into()).into())
        }
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    Ok(spec.with_unit_norm(unit_norm))
}

/// The base (pre-kernel) point set, its provenance, and the parsed kernel
/// spec. Callers that run everything through one algorithm kernelize
/// immediately; the pipeline carries the kernel in its own config.
pub struct ResolvedDataset {
    pub points: PointSet,
    pub description: DatasetDescription,
    pub kernel: Option<KernelSpec>,
}

pub fn resolve(args: &DatasetArgs, seed: u64) -> Result<ResolvedDataset> {
    let spec = build_spec(
        &args.data,
        args.data_format,
        args.header,
        &args.synthetic,
        args.unit_norm,
    )?;
    let points = spec.realize(seed)?;
    let kernel = args.kernel.as_deref().map(parse_kernel).transpose()?;
    let description = DatasetDescription {
        n: points.len(),
        d: points.dim(),
        seed,
        kernel: kernel.map(|KernelSpec::Rbf { sigma }| KernelDescription::rbf(sigma)),
        spec,
    };
    Ok(ResolvedDataset {
        points,
        description,
        kernel,
    })
}

pub fn resolve_optional(args: &OptionalDatasetArgs, seed: u64) -> Result<Option<ResolvedDataset>> {
    if args.data.is_none() && args.synthetic.is_none() {
        return Ok(None);
    }
    let spec = build_spec(
        &args.data,
        args.data_format,
        args.header,
        &args.synthetic,
        args.unit_norm,
    )?;
    let points = spec.realize(seed)?;
    let description = DatasetDescription {
        n: points.len(),
        d: points.dim(),
        seed,
        kernel: None,
        spec,
    };
    Ok(Some(ResolvedDataset {
        points,
        description,
        kernel: None,
    }))
}

/// Applies the kernel to the base points for commands that run a single
/// algorithm directly.
pub fn kernelized(points: &PointSet, kernel: &Option<KernelSpec>) -> Result<PointSet> {
    match kernel {
        Some(KernelSpec::Rbf { sigma }) => Ok(points.rbf_kernelized(*sigma)?),
        None => Ok(points.clone()),
    }
}
