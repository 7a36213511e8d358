//! Deterministic seed derivation. Every randomized stage of the pipeline
//! (generation, training runs, matrix search, validation, evaluation) draws
//! its seed from the master seed plus a stream tag and position indices, so
//! parallel and sequential execution see identical randomness.

/// Stream tags keep unrelated pipeline stages on disjoint seed sequences.
pub const STREAM_GEN: u64 = 1;
pub const STREAM_TRAIN_RUN: u64 = 2;
pub const STREAM_MATRIX: u64 = 3;
pub const STREAM_VALIDATE: u64 = 4;
pub const STREAM_EVAL: u64 = 5;
pub const STREAM_BASELINE: u64 = 6;

/// SplitMix64 finalizer; full-avalanche mix of one word.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds the parts into one 64-bit seed. Order-sensitive: `derive(&[a, b])`
/// and `derive(&[b, a])` differ.
pub fn derive(parts: &[u64]) -> u64 {
    let mut acc = 0x243f_6a88_85a3_08d3; // pi fraction, arbitrary non-zero start
    for (idx, &p) in parts.iter().enumerate() {
        acc = mix(acc ^ mix(p ^ (idx as u64).rotate_left(17)));
    }
    acc
}
