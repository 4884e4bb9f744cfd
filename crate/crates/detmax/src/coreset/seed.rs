//! Splittable seed derivation.
//!
//! Every random choice in the pipeline and the verifiers draws its seed
//! through [`derive_seed`], so parallel scheduling can never change
//! results: each unit of work is a pure function of (immutable input,
//! derived seed).

/// SplitMix64 finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from a master seed and two stream coordinates,
/// e.g. `(master_seed, run_index, part_index)` in the pipeline or
/// `(seed, stream_tag, trial_index)` in the verifiers.
pub fn derive_seed(master: u64, a: u64, b: u64) -> u64 {
    let x = splitmix64(master ^ 0x517C_C1B7_2722_0A95);
    let y = splitmix64(x ^ a);
    splitmix64(y ^ b)
}
