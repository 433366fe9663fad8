//! Fixtures shared by the benchmarks.

use stampbase_core::Basis;

/// Bases of assorted sizes used as range-computation inputs.
pub fn sample_bases() -> Vec<Basis> {
    [
        &[1, 3, 4, 6, 11][..],
        &[1, 3, 4, 5, 8, 14, 20, 26, 32, 35, 36, 37, 39, 40],
        &[1, 2, 5, 8, 10, 12, 19, 22, 23, 25, 30, 31, 36, 43, 45],
    ]
    .iter()
    .map(|xs| Basis::from_slice(xs).expect("valid fixture"))
    .collect()
}
