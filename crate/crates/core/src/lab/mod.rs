//! Empirical checks: squarefree frequencies, the fair-coin walk model, the
//! Mertens walk at geometric checkpoints and randomness tests on ±1
//! sequences.

mod frequency;
mod mertens_walk;
mod normal;
mod randomness;
mod rng;
mod walk;

pub use frequency::{empirical_frequencies, sign_sequence_squarefree, FrequencyReport, SignCounts};
pub use mertens_walk::{
    geometric_checkpoints, geometric_grid, mertens_walk_stats, MertensCheckpoint, MertensWalkStats,
    MIN_WALK_LIMIT,
};
pub use normal::normal_cdf;
pub use randomness::{
    calibrate, chi_square_balance, lag_autocorrelation, runs_test, Calibration, TestKind, TestReport,
    MIN_TEST_LENGTH,
};
pub use rng::SplitMix64;
pub use walk::{coin_sequence, coin_walk_simulate, WalkSummary};
