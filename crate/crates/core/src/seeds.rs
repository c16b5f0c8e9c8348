//! Seed derivation. Every random stream in a run is a pure function of a
//! master seed and a stream index, so parallel execution cannot change
//! results.

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent child seed for `stream` under `master`.
pub fn derive(master: u64, stream: u64) -> u64 {
    mix64(mix64(master) ^ stream.wrapping_mul(0xd1b5_4a32_d192_ed03))
}
