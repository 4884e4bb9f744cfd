//! Incremental orthonormal bases with distance-to-span queries.
//!
//! Two representations back the same interface:
//!
//! - **Explicit**: orthonormal coordinate vectors in `R^d`. Built by
//!   classical Gram-Schmidt with one full reorthogonalization pass.
//! - **Dual**: each basis vector is stored as a coefficient vector over a
//!   growing support of selected points, so that every query reduces to
//!   inner products. This is the kernel-access (oracle-mode) form: the
//!   coefficient rows are exactly the inverse Cholesky factor of the
//!   support Gram matrix, maintained incrementally once per basis state.
//!   `dist(p, <C>)^2 = K(p,p) - k_C(p)^T K_CC^{-1} k_C(p)` falls out of the
//!   same representation.

use crate::error::{Error, Result};
use crate::geometry::point_set::{dot, AccessMode, PointSet};
use crate::tolerances::RANK_REL_TOL;

#[derive(Debug, Clone)]
enum Repr {
    Explicit {
        vectors: Vec<Vec<f64>>,
    },
    Dual {
        support: Vec<usize>,
        coeffs: Vec<Vec<f64>>,
        /// Cached support Gram `K(s_a, s_b)`, row-major.
        gram: Vec<f64>,
    },
}

/// An orthonormal basis of a linear subspace, supporting incremental
/// extension and distance queries. Immutable: extension returns a new
/// basis.
#[derive(Debug, Clone)]
pub struct OrthoBasis {
    dim: usize,
    repr: Repr,
}

impl OrthoBasis {
    /// Empty basis over `R^dim` in explicit form.
    pub fn empty_explicit(dim: usize) -> Self {
        Self {
            dim,
            repr: Repr::Explicit { vectors: Vec::new() },
        }
    }

    /// Empty basis in dual (coefficients-over-points) form. Only
    /// meaningful together with the point set it is later extended from.
    pub fn empty_dual(dim: usize) -> Self {
        Self {
            dim,
            repr: Repr::Dual {
                support: Vec::new(),
                coeffs: Vec::new(),
                gram: Vec::new(),
            },
        }
    }

    /// Empty basis in the representation matching the point set's access
    /// mode.
    pub fn empty_for(ps: &PointSet) -> Self {
        match ps.access_mode() {
            AccessMode::ExplicitCoordinates => Self::empty_explicit(ps.dim()),
            AccessMode::InnerProductOracle => Self::empty_dual(ps.dim()),
        }
    }

    /// Number of basis vectors.
    pub fn rank(&self) -> usize {
        match &self.repr {
            Repr::Explicit { vectors } => vectors.len(),
            Repr::Dual { coeffs, .. } => coeffs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.rank() == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Explicit basis vectors, if this basis is in explicit form.
    pub fn vectors(&self) -> Option<&[Vec<f64>]> {
        match &self.repr {
            Repr::Explicit { vectors } => Some(vectors),
            Repr::Dual { .. } => None,
        }
    }

    /// Support indices of a dual basis.
    pub fn support(&self) -> Option<&[usize]> {
        match &self.repr {
            Repr::Dual { support, .. } => Some(support),
            Repr::Explicit { .. } => None,
        }
    }

    /// `max |<b_i, b_j> - delta_ij>|` over all basis pairs.
    pub fn orthonormality_error(&self) -> f64 {
        let t = self.rank();
        let mut worst = 0.0_f64;
        for i in 0..t {
            for j in i..t {
                let g = self.basis_inner(i, j);
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }

    fn basis_inner(&self, i: usize, j: usize) -> f64 {
        match &self.repr {
            Repr::Explicit { vectors } => dot(&vectors[i], &vectors[j]),
            Repr::Dual { coeffs, gram, support } => {
                let m = support.len();
                let (ci, cj) = (&coeffs[i], &coeffs[j]);
                let mut acc = 0.0;
                for (a, &wa) in ci.iter().enumerate() {
                    let mut row = 0.0;
                    for (b, &wb) in cj.iter().enumerate() {
                        row += wb * gram[a * m + b];
                    }
                    acc += wa * row;
                }
                acc
            }
        }
    }

    /// Euclidean distance of point `p` of `ps` from the span of this
    /// basis; `||p||` for the empty basis. The residual is computed under
    /// the same inner product as `ps`.
    pub fn distance(&self, ps: &PointSet, p: usize) -> Result<f64> {
        if p >= ps.len() {
            return Err(Error::IndexOutOfRange {
                index: p,
                len: ps.len(),
            });
        }
        match &self.repr {
            Repr::Explicit { vectors } => {
                let point = ps.point(p)?;
                if point.len() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: point.len(),
                    });
                }
                let mut v = point.to_vec();
                for b in vectors {
                    let a = dot(&v, b);
                    axpy(&mut v, -a, b);
                }
                Ok(dot(&v, &v).max(0.0).sqrt())
            }
            Repr::Dual { support, coeffs, .. } => {
                let kq: Vec<f64> = support.iter().map(|&s| ps.ip(s, p)).collect();
                let mut sq = ps.ip(p, p);
                for c in coeffs {
                    let alpha: f64 = c.iter().zip(&kq).map(|(w, k)| w * k).sum();
                    sq -= alpha * alpha;
                }
                Ok(sq.max(0.0).sqrt())
            }
        }
    }

    /// Distance of a raw coordinate vector (not necessarily a member of
    /// any point set) from the span. Explicit bases only.
    pub fn distance_to_vector(&self, v: &[f64]) -> Result<f64> {
        match &self.repr {
            Repr::Explicit { vectors } => {
                if v.len() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: v.len(),
                    });
                }
                let mut r = v.to_vec();
                for b in vectors {
                    let a = dot(&r, b);
                    axpy(&mut r, -a, b);
                }
                Ok(dot(&r, &r).max(0.0).sqrt())
            }
            Repr::Dual { .. } => Err(Error::ModeMismatch(
                "raw-vector queries need an explicit basis",
            )),
        }
    }

    /// One Gram-Schmidt step: orthogonalizes point `p` of `ps` against the
    /// basis (classical pass plus one full reorthogonalization pass) and
    /// returns the extended basis together with the residual norm. When
    /// the residual is below the rank tolerance the basis is returned
    /// unchanged and the candidate counts as linearly dependent.
    pub fn extended(&self, ps: &PointSet, p: usize) -> Result<(OrthoBasis, f64)> {
        if p >= ps.len() {
            return Err(Error::IndexOutOfRange {
                index: p,
                len: ps.len(),
            });
        }
        match &self.repr {
            Repr::Explicit { vectors } => {
                let point = ps.point(p)?;
                if point.len() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: point.len(),
                    });
                }
                let norm = dot(point, point).max(0.0).sqrt();
                let (v, r) = orthogonalize_explicit(vectors, point);
                if r <= RANK_REL_TOL * norm.max(1.0) {
                    return Ok((self.clone(), r));
                }
                let mut vectors = vectors.clone();
                let unit: Vec<f64> = v.iter().map(|x| x / r).collect();
                vectors.push(unit);
                Ok((
                    OrthoBasis {
                        dim: self.dim,
                        repr: Repr::Explicit { vectors },
                    },
                    r,
                ))
            }
            Repr::Dual { support, coeffs, gram } => {
                let m = support.len();
                let kqq = ps.ip(p, p);
                let kq: Vec<f64> = support.iter().map(|&s| ps.ip(s, p)).collect();

                // Extended support Gram with p appended.
                let me = m + 1;
                let mut gext = vec![0.0; me * me];
                for a in 0..m {
                    for b in 0..m {
                        gext[a * me + b] = gram[a * m + b];
                    }
                    gext[a * me + m] = kq[a];
                    gext[m * me + a] = kq[a];
                }
                gext[m * me + m] = kqq;

                // Classical step in coefficient space: w = e_p - sum alpha_t b_t.
                let mut w = vec![0.0; me];
                w[m] = 1.0;
                for c in coeffs {
                    let alpha: f64 = c.iter().zip(&kq).map(|(x, k)| x * k).sum();
                    for (i, &ci) in c.iter().enumerate() {
                        w[i] -= alpha * ci;
                    }
                }
                // Reorthogonalization pass.
                for c in coeffs {
                    let mut beta = 0.0;
                    for (a, &wa) in w.iter().enumerate() {
                        let mut row = 0.0;
                        for (b, &cb) in c.iter().enumerate() {
                            row += cb * gext[a * me + b];
                        }
                        beta += wa * row;
                    }
                    for (i, &ci) in c.iter().enumerate() {
                        w[i] -= beta * ci;
                    }
                }
                let mut sq = 0.0;
                for a in 0..me {
                    let mut row = 0.0;
                    for b in 0..me {
                        row += w[b] * gext[a * me + b];
                    }
                    sq += w[a] * row;
                }
                let r = sq.max(0.0).sqrt();
                if r <= RANK_REL_TOL * kqq.max(0.0).sqrt().max(1.0) {
                    return Ok((self.clone(), r));
                }
                for x in &mut w {
                    *x /= r;
                }
                let mut support = support.clone();
                support.push(p);
                let mut coeffs = coeffs.clone();
                coeffs.push(w);
                Ok((
                    OrthoBasis {
                        dim: self.dim,
                        repr: Repr::Dual {
                            support,
                            coeffs,
                            gram: gext,
                        },
                    },
                    r,
                ))
            }
        }
    }

    /// Extends an explicit basis with a raw coordinate vector. Same
    /// Gram-Schmidt and rank-tolerance behavior as [`OrthoBasis::extended`].
    pub fn extended_with_vector(&self, v: &[f64]) -> Result<(OrthoBasis, f64)> {
        match &self.repr {
            Repr::Explicit { vectors } => {
                if v.len() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: v.len(),
                    });
                }
                let norm = dot(v, v).max(0.0).sqrt();
                let (res, r) = orthogonalize_explicit(vectors, v);
                if r <= RANK_REL_TOL * norm.max(1.0) {
                    return Ok((self.clone(), r));
                }
                let mut vectors = vectors.clone();
                vectors.push(res.iter().map(|x| x / r).collect());
                Ok((
                    OrthoBasis {
                        dim: self.dim,
                        repr: Repr::Explicit { vectors },
                    },
                    r,
                ))
            }
            Repr::Dual { .. } => Err(Error::ModeMismatch(
                "raw-vector extension needs an explicit basis",
            )),
        }
    }
}

fn axpy(v: &mut [f64], a: f64, b: &[f64]) {
    for (x, y) in v.iter_mut().zip(b) {
        *x += a * y;
    }
}

/// Classical Gram-Schmidt plus one full reorthogonalization pass; returns
/// the residual vector and its norm.
fn orthogonalize_explicit(basis: &[Vec<f64>], p: &[f64]) -> (Vec<f64>, f64) {
    let mut v = p.to_vec();
    for b in basis {
        let a = dot(p, b);
        axpy(&mut v, -a, b);
    }
    for b in basis {
        let a = dot(&v, b);
        axpy(&mut v, -a, b);
    }
    let r = dot(&v, &v).max(0.0).sqrt();
    (v, r)
}
