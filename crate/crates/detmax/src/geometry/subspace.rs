//! Uniformly random linear subspaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::geometry::basis::OrthoBasis;

/// Orthonormal basis of a uniformly random `t`-dimensional linear subspace
/// of `R^d`: the orthonormalization of `t` independent standard-Gaussian
/// vectors. Deterministic given the seed.
pub fn sample_subspace(d: usize, t: usize, seed: u64) -> Result<OrthoBasis> {
    if t > d {
        return Err(Error::InvalidParameter(format!(
            "subspace dimension {t} exceeds ambient dimension {d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis = OrthoBasis::empty_explicit(d);
    let mut attempts = 0usize;
    while basis.rank() < t {
        let v: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let (next, _) = basis.extended_with_vector(&v)?;
        basis = next;
        attempts += 1;
        if attempts > 100 * t + 100 {
            return Err(Error::InvalidParameter(
                "failed to sample an independent Gaussian basis".into(),
            ));
        }
    }
    Ok(basis)
}
