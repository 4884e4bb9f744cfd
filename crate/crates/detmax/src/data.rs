//! Dataset ingestion and synthetic instance generation.
//!
//! External point sets load from plain numeric text (CSV or
//! whitespace-separated, one point per row, no header unless asked).
//! Synthetic generators cover Gaussian clouds, well-separated clusters,
//! and instances deliberately built so that greedy is suboptimal.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::algorithms::{brute_force_maxdet, greedy};
use crate::error::{Error, Result};
use crate::geometry::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FileFormat {
    Csv,
    Whitespace,
}

/// Synthetic instance generators.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "generator", rename_all = "kebab-case")]
pub enum Generator {
    /// `n` standard-Gaussian points in `R^d`.
    Gaussian { n: usize, d: usize },
    /// `n` points around `clusters` centers kept at pairwise distance at
    /// least `spread * sqrt(d)`, with unit Gaussian noise. Points are
    /// assigned to centers round-robin so every center is used.
    Clustered {
        n: usize,
        d: usize,
        clusters: usize,
        spread: f64,
    },
    /// Instances where the brute-force optimum strictly beats greedy for
    /// `k = 2`: one slightly-long vector plus a symmetric near-collinear
    /// pair, padded with low-norm noise points. Self-checked against the
    /// brute-force oracle at generation time on small `n`.
    AdversarialGreedy { n: usize, d: usize },
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum Source {
    File {
        path: PathBuf,
        format: FileFormat,
        header: bool,
    },
    Synthetic(Generator),
}

/// Where the points come from and how to normalize them.
#[derive(Debug, Clone, Serialize)]
pub struct DatasetSpec {
    #[serde(flatten)]
    pub source: Source,
    /// Scale every row to unit norm after loading or generation.
    pub unit_norm: bool,
}

impl DatasetSpec {
    pub fn file(path: impl Into<PathBuf>, format: FileFormat, header: bool) -> Self {
        Self {
            source: Source::File {
                path: path.into(),
                format,
                header,
            },
            unit_norm: false,
        }
    }

    pub fn synthetic(generator: Generator) -> Self {
        Self {
            source: Source::Synthetic(generator),
            unit_norm: false,
        }
    }

    pub fn with_unit_norm(mut self, unit_norm: bool) -> Self {
        self.unit_norm = unit_norm;
        self
    }

    /// Loads or generates the point set this spec describes.
    pub fn realize(&self, seed: u64) -> Result<PointSet> {
        match &self.source {
            Source::File { .. } => load_points(self),
            Source::Synthetic(_) => generate_spec(self, seed),
        }
    }
}

/// Reads an explicit-mode point set from a file source. Row order is
/// preserved; rows must agree in arity; non-finite values are rejected
/// with the offending line number.
pub fn load_points(spec: &DatasetSpec) -> Result<PointSet> {
    let Source::File {
        path,
        format,
        header,
    } = &spec.source
    else {
        return Err(Error::InvalidParameter(
            "load_points needs a file source; use generate for synthetic specs".into(),
        ));
    };
    let text = fs::read_to_string(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut expected_arity: Option<usize> = None;
    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        if *header && line_no == 1 {
            continue;
        }
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = match format {
            FileFormat::Csv => line.split(',').map(str::trim).collect(),
            FileFormat::Whitespace => line.split_whitespace().collect(),
        };
        let mut row = Vec::with_capacity(fields.len());
        for field in &fields {
            let value: f64 = field.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("cannot parse {field:?} as a number"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("non-finite value {field:?}"),
                });
            }
            row.push(value);
        }
        match expected_arity {
            None => expected_arity = Some(row.len()),
            Some(expected) if expected != row.len() => {
                return Err(Error::ArityMismatch {
                    line: line_no,
                    expected,
                    found: row.len(),
                });
            }
            Some(_) => {}
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    let ps = PointSet::from_rows(rows)?;
    if spec.unit_norm {
        unit_normalize(&ps)
    } else {
        Ok(ps)
    }
}

/// Generates the synthetic point set a spec describes. A pure function of
/// `(spec, seed)`.
pub fn generate_spec(spec: &DatasetSpec, seed: u64) -> Result<PointSet> {
    let Source::Synthetic(generator) = &spec.source else {
        return Err(Error::InvalidParameter(
            "generate needs a synthetic source; use load_points for files".into(),
        ));
    };
    let ps = generate(generator, seed)?;
    if spec.unit_norm {
        unit_normalize(&ps)
    } else {
        Ok(ps)
    }
}

/// Generates a synthetic point set. A pure function of
/// `(generator, seed)`.
pub fn generate(generator: &Generator, seed: u64) -> Result<PointSet> {
    match *generator {
        Generator::Gaussian { n, d } => {
            check_nd(n, d)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rows = (0..n)
                .map(|_| (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
                .collect();
            PointSet::from_rows(rows)
        }
        Generator::Clustered {
            n,
            d,
            clusters,
            spread,
        } => {
            check_nd(n, d)?;
            if clusters < 1 {
                return Err(Error::InvalidParameter(
                    "clusters must be at least 1".into(),
                ));
            }
            if spread <= 0.0 || !spread.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "spread must be a positive finite number, got {spread}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let min_dist = spread * (d as f64).sqrt();
            let mut centers: Vec<Vec<f64>> = Vec::with_capacity(clusters);
            let mut scale = min_dist.max(1.0);
            let mut rejects = 0usize;
            while centers.len() < clusters {
                let cand: Vec<f64> = (0..d)
                    .map(|_| scale * rng.sample::<f64, _>(StandardNormal))
                    .collect();
                let ok = centers.iter().all(|c| sq_dist(c, &cand) >= min_dist * min_dist);
                if ok {
                    centers.push(cand);
                    rejects = 0;
                } else {
                    rejects += 1;
                    if rejects >= 100 {
                        scale *= 1.5;
                        rejects = 0;
                    }
                }
            }
            let rows = (0..n)
                .map(|i| {
                    let center = &centers[i % clusters];
                    center
                        .iter()
                        .map(|&c| c + rng.sample::<f64, _>(StandardNormal))
                        .collect()
                })
                .collect();
            PointSet::from_rows(rows)
        }
        Generator::AdversarialGreedy { n, d } => {
            if n < 3 || d < 2 {
                return Err(Error::InvalidParameter(
                    "adversarial-greedy needs n >= 3 and d >= 2".into(),
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
            // The trap: greedy grabs the long vector first and pairs it
            // with one of the symmetric twins; the twins together span
            // much more area.
            let (long, twin_x, twin_y) = (1.01, 0.9, 0.436);
            rows.push(embed(&[long, 0.0], d));
            rows.push(embed(&[twin_x, twin_y], d));
            rows.push(embed(&[twin_x, -twin_y], d));
            let noise_scale = 0.05 / (d as f64).sqrt();
            for _ in 3..n {
                rows.push(
                    (0..d)
                        .map(|_| noise_scale * rng.sample::<f64, _>(StandardNormal))
                        .collect(),
                );
            }
            let ps = PointSet::from_rows(rows)?;
            if n <= 128 {
                let gd = greedy(&ps, 2)?;
                let (_, opt) = brute_force_maxdet(&ps, 2)?;
                if opt.value() <= gd.log_volume.value() + 1e-9 {
                    return Err(Error::InvalidParameter(
                        "adversarial-greedy self-check failed: greedy is already optimal"
                            .into(),
                    ));
                }
            }
            Ok(ps)
        }
    }
}

fn check_nd(n: usize, d: usize) -> Result<()> {
    if n < 1 || d < 1 {
        return Err(Error::InvalidParameter(
            "n and d must both be at least 1".into(),
        ));
    }
    Ok(())
}

fn embed(prefix: &[f64], d: usize) -> Vec<f64> {
    let mut v = vec![0.0; d];
    v[..prefix.len()].copy_from_slice(prefix);
    v
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn unit_normalize(ps: &PointSet) -> Result<PointSet> {
    let mut rows = Vec::with_capacity(ps.len());
    for i in 0..ps.len() {
        let row = ps.point(i)?;
        let norm: f64 = row.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidParameter(format!(
                "cannot unit-normalize the zero point at index {i}"
            )));
        }
        rows.push(row.iter().map(|x| x / norm).collect());
    }
    PointSet::from_rows(rows)
}

/// Writes an explicit point set one row per line using shortest
/// round-trip decimal formatting, so `load_points(write_points(ps))`
/// reproduces the exact same doubles.
pub fn write_points(ps: &PointSet, mut w: impl Write, format: FileFormat) -> Result<()> {
    let sep = match format {
        FileFormat::Csv => ',',
        FileFormat::Whitespace => ' ',
    };
    let mut line = String::new();
    for i in 0..ps.len() {
        line.clear();
        for (j, x) in ps.point(i)?.iter().enumerate() {
            if j > 0 {
                line.push(sep);
            }
            let _ = write!(line, "{x}");
        }
        line.push('\n');
        w.write_all(line.as_bytes())?;
    }
    Ok(())
}
