//! Deterministic sub-seed derivation.

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives an independent seed from a base seed and a path of labels.
///
/// Stable across platforms and toolchains, unlike `std::hash`.
pub fn derive_seed(base: u64, labels: &[u64]) -> u64 {
    labels
        .iter()
        .fold(mix64(base), |acc, &label| mix64(acc ^ mix64(label)))
}

/// Role tags used with [`derive_seed`].
pub(crate) mod role {
    pub const INDUCED_BLOCK: u64 = 1;
    pub const CROSSING_BLOCK: u64 = 2;
    pub const MATCHINGS: u64 = 3;
    pub const RESTART: u64 = 4;
    pub const ATTEMPT: u64 = 5;
}
