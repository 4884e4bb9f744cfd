//! Point sets with explicit-coordinate or inner-product-oracle access.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// How the points of a [`PointSet`] are accessed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AccessMode {
    /// Points are stored as coordinate vectors in `R^d`.
    ExplicitCoordinates,
    /// Points are known only through pairwise inner products (kernel access).
    InnerProductOracle,
}

/// Kernel access to a point set: everything the algorithms need is the
/// pairwise inner product. Implementations must be symmetric and induce a
/// positive semidefinite Gram matrix; this is spot-checked at construction,
/// not globally enforced.
pub trait InnerProductOracle: Send + Sync {
    fn len(&self) -> usize;
    fn inner_product(&self, i: usize, j: usize) -> f64;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    /// Short human-readable kernel description for reports.
    fn describe(&self) -> String {
        "custom".to_string()
    }
}

#[derive(Clone)]
enum Access {
    Explicit { coords: Vec<f64> },
    Oracle { oracle: Arc<dyn InnerProductOracle> },
}

/// A finite ordered collection of `d`-dimensional points. Indices are
/// stable: the `i`-th point never changes identity. Immutable after
/// construction and safe to share across threads.
#[derive(Clone)]
pub struct PointSet {
    dim: usize,
    len: usize,
    access: Access,
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PointSet")
            .field("dim", &self.dim)
            .field("len", &self.len)
            .field("mode", &self.access_mode())
            .finish()
    }
}

impl PointSet {
    /// Builds an explicit-coordinate point set from row vectors. All rows
    /// must share one dimension and contain only finite values.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let dim = rows[0].len();
        if dim == 0 {
            return Err(Error::InvalidParameter("points must have dimension >= 1".into()));
        }
        let mut coords = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFiniteCoordinate { index: i });
            }
            coords.extend_from_slice(row);
        }
        Ok(Self {
            dim,
            len: rows.len(),
            access: Access::Explicit { coords },
        })
    }

    /// Builds a point set from a flat row-major coordinate buffer.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("points must have dimension >= 1".into()));
        }
        if coords.is_empty() || !coords.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: coords.len() % dim,
            });
        }
        if let Some(bad) = coords.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFiniteCoordinate { index: bad / dim });
        }
        Ok(Self {
            dim,
            len: coords.len() / dim,
            access: Access::Explicit { coords },
        })
    }

    /// Wraps an inner-product oracle as a point set. `dim` records the
    /// dimension of the underlying input space (informational in oracle
    /// mode). The oracle is spot-checked for symmetry and positive
    /// semidefiniteness on a few deterministic index probes.
    pub fn from_oracle(dim: usize, oracle: Arc<dyn InnerProductOracle>) -> Result<Self> {
        let len = oracle.len();
        if len == 0 {
            return Err(Error::EmptyPointSet);
        }
        spot_check_oracle(oracle.as_ref())?;
        Ok(Self {
            dim,
            len,
            access: Access::Oracle { oracle },
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn access_mode(&self) -> AccessMode {
        match self.access {
            Access::Explicit { .. } => AccessMode::ExplicitCoordinates,
            Access::Oracle { .. } => AccessMode::InnerProductOracle,
        }
    }

    /// Kernel description for reports; `None` in explicit mode.
    pub fn kernel_description(&self) -> Option<String> {
        match &self.access {
            Access::Explicit { .. } => None,
            Access::Oracle { oracle } => Some(oracle.describe()),
        }
    }

    /// Coordinates of point `i`. Errors in oracle mode.
    pub fn point(&self, i: usize) -> Result<&[f64]> {
        if i >= self.len {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.len,
            });
        }
        match &self.access {
            Access::Explicit { coords } => Ok(&coords[i * self.dim..(i + 1) * self.dim]),
            Access::Oracle { .. } => Err(Error::ModeMismatch(
                "coordinates are not available in oracle mode",
            )),
        }
    }

    /// `<p_i, p_j>`, computed from coordinates in explicit mode and
    /// delegated to the oracle otherwise. Symmetric in `(i, j)`.
    pub fn inner_product(&self, i: usize, j: usize) -> Result<f64> {
        let n = self.len;
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, len: n });
        }
        Ok(self.ip(i, j))
    }

    /// Unchecked inner product for validated indices (hot path).
    pub(crate) fn ip(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.len && j < self.len);
        match &self.access {
            Access::Explicit { coords } => {
                let d = self.dim;
                dot(&coords[i * d..(i + 1) * d], &coords[j * d..(j + 1) * d])
            }
            Access::Oracle { oracle } => oracle.inner_product(i, j),
        }
    }

    /// `||p_i||`.
    pub fn norm(&self, i: usize) -> Result<f64> {
        Ok(self.inner_product(i, i)?.max(0.0).sqrt())
    }

    /// Wraps this explicit point set behind a linear-kernel oracle: the
    /// same points, accessible only through inner products. Useful for
    /// checking that both access modes agree.
    pub fn as_linear_oracle(&self) -> Result<PointSet> {
        match &self.access {
            Access::Explicit { coords } => {
                let oracle = Arc::new(LinearKernel {
                    dim: self.dim,
                    coords: coords.clone(),
                });
                PointSet::from_oracle(self.dim, oracle)
            }
            Access::Oracle { .. } => Err(Error::ModeMismatch(
                "point set is already in oracle mode",
            )),
        }
    }

    /// Kernelizes an explicit point set with the RBF kernel
    /// `K(x, y) = exp(-||x - y||^2 / (2 sigma^2))`, returning an
    /// oracle-mode point set. Every point has `K(x, x) = 1`.
    pub fn rbf_kernelized(&self, sigma: f64) -> Result<PointSet> {
        if sigma <= 0.0 || !sigma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "rbf sigma must be a positive finite number, got {sigma}"
            )));
        }
        match &self.access {
            Access::Explicit { coords } => {
                let oracle = Arc::new(RbfKernel {
                    dim: self.dim,
                    coords: coords.clone(),
                    sigma,
                });
                PointSet::from_oracle(self.dim, oracle)
            }
            Access::Oracle { .. } => Err(Error::ModeMismatch(
                "rbf kernelization requires explicit coordinates",
            )),
        }
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Explicit points exposed through their plain dot products.
struct LinearKernel {
    dim: usize,
    coords: Vec<f64>,
}

impl InnerProductOracle for LinearKernel {
    fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    fn inner_product(&self, i: usize, j: usize) -> f64 {
        let d = self.dim;
        dot(
            &self.coords[i * d..(i + 1) * d],
            &self.coords[j * d..(j + 1) * d],
        )
    }

    fn describe(&self) -> String {
        "linear".to_string()
    }
}

/// RBF (Gaussian) kernel over explicit base coordinates.
struct RbfKernel {
    dim: usize,
    coords: Vec<f64>,
    sigma: f64,
}

impl InnerProductOracle for RbfKernel {
    fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    fn inner_product(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 1.0;
        }
        let d = self.dim;
        let a = &self.coords[i * d..(i + 1) * d];
        let b = &self.coords[j * d..(j + 1) * d];
        let sq: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
        (-sq / (2.0 * self.sigma * self.sigma)).exp()
    }

    fn describe(&self) -> String {
        format!("rbf(sigma={}, K(x,y)=exp(-||x-y||^2/(2*sigma^2)))", self.sigma)
    }
}

/// Deterministic probe indices spread across the set.
fn probe_indices(n: usize, want: usize) -> Vec<usize> {
    let m = want.min(n);
    let mut out: Vec<usize> = (0..m)
        .map(|t| t * n.saturating_sub(1) / m.saturating_sub(1).max(1))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Symmetry and PSD spot-check on a small deterministic principal minor.
fn spot_check_oracle(oracle: &dyn InnerProductOracle) -> Result<()> {
    let n = oracle.len();
    let idx = probe_indices(n, 6);
    let m = idx.len();
    let mut gram = vec![0.0; m * m];
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            gram[a * m + b] = oracle.inner_product(i, j);
        }
    }
    let scale = (0..m).map(|a| gram[a * m + a].abs()).fold(1.0, f64::max);
    for a in 0..m {
        if gram[a * m + a] < -1e-10 * scale {
            return Err(Error::OracleInconsistent(format!(
                "negative diagonal K({0},{0}) = {1}",
                idx[a],
                gram[a * m + a]
            )));
        }
        for b in (a + 1)..m {
            let diff = (gram[a * m + b] - gram[b * m + a]).abs();
            if diff > 1e-10 * scale {
                return Err(Error::OracleInconsistent(format!(
                    "K({i},{j}) != K({j},{i}) (difference {diff})",
                    i = idx[a],
                    j = idx[b]
                )));
            }
        }
    }
    // Semidefinite Cholesky: pivots may vanish but must not go negative
    // beyond rounding.
    let mut l = vec![0.0; m * m];
    let trace: f64 = (0..m).map(|a| gram[a * m + a]).sum();
    let tol = 1e-8 * trace.max(1.0);
    for a in 0..m {
        let mut d = gram[a * m + a];
        for t in 0..a {
            d -= l[a * m + t] * l[a * m + t];
        }
        if d < -tol {
            return Err(Error::OracleInconsistent(format!(
                "Gram minor is not positive semidefinite (pivot {d})"
            )));
        }
        if d <= tol {
            continue; // dependent direction: leave the row zero
        }
        let root = d.sqrt();
        l[a * m + a] = root;
        for b in (a + 1)..m {
            let mut s = gram[b * m + a];
            for t in 0..a {
                s -= l[b * m + t] * l[a * m + t];
            }
            l[b * m + a] = s / root;
        }
    }
    Ok(())
}
