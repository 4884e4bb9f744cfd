//! Log-domain subset volumes via Cholesky factorization of Gram matrices.
//!
//! For a subset `S` of `k` points, `det(Gram(S)) = VOL^2(S)`: the squared
//! `k`-dimensional volume of the parallelepiped the points span. Volumes
//! are kept in log domain throughout because raw determinants underflow
//! double precision for `k` beyond roughly 20 on normalized kernels.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::point_set::PointSet;
use crate::tolerances::CHOL_PIVOT_REL_TOL;

/// The log of a `k`-dimensional volume, with `-inf` as the sentinel for
/// zero volume (a linearly dependent generating set at working tolerance).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct LogVolume(f64);

impl LogVolume {
    pub const ZERO_VOLUME: LogVolume = LogVolume(f64::NEG_INFINITY);

    pub fn new(value: f64) -> Self {
        debug_assert!(!value.is_nan());
        LogVolume(value)
    }

    pub fn zero_volume() -> Self {
        Self::ZERO_VOLUME
    }

    /// `log VOL(S)`, `-inf` for zero volume.
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_zero_volume(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// `log det(Gram(S)) = 2 log VOL(S)`.
    pub fn log_det(self) -> f64 {
        2.0 * self.0
    }

    /// `VOL(S)`; may underflow to 0 or overflow to `inf` for extreme logs.
    pub fn volume(self) -> f64 {
        self.0.exp()
    }
}

impl std::fmt::Display for LogVolume {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero_volume() {
            write!(f, "-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// `(1/2) log det(Gram(S))` for the subset `S` of `ps`, or the zero-volume
/// sentinel when the Gram matrix is singular at working tolerance.
///
/// ```
/// use detmax::geometry::{log_volume, PointSet};
///
/// let ps = PointSet::from_rows(vec![vec![2.0, 0.0], vec![0.0, 3.0]]).unwrap();
/// let lv = log_volume(&ps, &[0, 1]).unwrap();
/// assert!((lv.value() - 6.0_f64.ln()).abs() < 1e-12);
/// ```
pub fn log_volume(ps: &PointSet, subset: &[usize]) -> Result<LogVolume> {
    validate_subset(ps, subset)?;
    let k = subset.len();
    let mut gram = vec![0.0; k * k];
    for (a, &i) in subset.iter().enumerate() {
        for (b, &j) in subset.iter().enumerate().skip(a) {
            let v = ps.ip(i, j);
            gram[a * k + b] = v;
            gram[b * k + a] = v;
        }
    }
    Ok(match log_det_psd(&gram, k, CHOL_PIVOT_REL_TOL) {
        Some(log_det) => LogVolume::new(0.5 * log_det),
        None => LogVolume::zero_volume(),
    })
}

pub(crate) fn validate_subset(ps: &PointSet, subset: &[usize]) -> Result<()> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let n = ps.len();
    let mut seen = subset.to_vec();
    seen.sort_unstable();
    for pair in seen.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::DuplicateIndex { index: pair[0] });
        }
    }
    if let Some(&bad) = subset.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange { index: bad, len: n });
    }
    Ok(())
}

/// Cholesky log-determinant of a symmetric PSD matrix, declaring
/// singularity when any pivot falls to `rel_tol * trace` or below.
pub(crate) fn log_det_psd(gram: &[f64], k: usize, rel_tol: f64) -> Option<f64> {
    debug_assert_eq!(gram.len(), k * k);
    let trace: f64 = (0..k).map(|i| gram[i * k + i]).sum();
    let cutoff = rel_tol * trace;
    let mut l = vec![0.0; k * k];
    let mut log_det = 0.0;
    for i in 0..k {
        let mut d = gram[i * k + i];
        for t in 0..i {
            d -= l[i * k + t] * l[i * k + t];
        }
        if d <= cutoff {
            return None;
        }
        log_det += d.ln();
        let root = d.sqrt();
        l[i * k + i] = root;
        for j in (i + 1)..k {
            let mut s = gram[j * k + i];
            for t in 0..i {
                s -= l[j * k + t] * l[i * k + t];
            }
            l[j * k + i] = s / root;
        }
    }
    Some(log_det)
}
