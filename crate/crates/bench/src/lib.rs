//! Shared fixtures for the benchmarks.

use hardy_core::verify::random_test_sequence;
use hardy_core::{CompactSequence, VerificationConfig};

/// A seeded test sequence with the given support bound.
pub fn fixture_sequence(max_support: u64) -> CompactSequence {
    random_test_sequence(0x5eed, max_support, 1.0)
}

/// A reduced battery that finishes in tens of milliseconds.
pub fn quick_config() -> VerificationConfig {
    VerificationConfig {
        gap_trials: 500,
        identity_trials: 100,
        increment_trials: 100,
        max_support: 500,
        cutoff_lengths: vec![10, 100],
        residual_n: 10_000,
        eigen_sizes: vec![1, 10, 100],
        ..VerificationConfig::default()
    }
}
