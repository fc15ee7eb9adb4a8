//! Möbius and Mertens functions at scale, the delta-sum identity for μ(n),
//! exact outcome probabilities for μ over the general, odd and even integers,
//! and the statistical machinery used to check the asymptotic claims built
//! on them.
//!
//! Module map:
//!
//! - [`moebius`]: segmented sieve for μ, trial-division oracle, Mertens
//!   prefix sums and the binary cache.
//! - [`identity`]: evaluation of μ(n) through the delta-sum identity, with
//!   odd and coprime restrictions and a bootstrap reconstruction.
//! - [`probability`]: exact-rational harmonic μ series, outcome probability
//!   triples, interval brackets and the squarefree density constants.
//! - [`lab`]: empirical frequencies, the fair-coin walk simulator, the
//!   normal CDF, Mertens walk statistics and randomness tests.

pub mod error;
pub mod identity;
pub mod lab;
pub mod moebius;
pub mod probability;

pub use error::{Error, Result};
pub use identity::{
    bootstrap_identity, delta_divides, first_identity_mismatch, identity_terms, moebius_via_identity,
    moebius_via_identity_coprime, moebius_via_identity_odd, IdentityTerm, IdentityTermSet,
};
pub use lab::{
    calibrate, chi_square_balance, coin_sequence, coin_walk_simulate, empirical_frequencies,
    geometric_checkpoints, geometric_grid, lag_autocorrelation, mertens_walk_stats, normal_cdf, runs_test,
    sign_sequence_squarefree, Calibration, FrequencyReport, MertensCheckpoint, MertensWalkStats, SignCounts,
    SplitMix64, TestKind, TestReport, WalkSummary, MIN_TEST_LENGTH, MIN_WALK_LIMIT,
};
pub use moebius::{
    load_table, mertens_series, moebius_at, save_table, sieve_moebius, sieve_moebius_with, MertensSeries,
    MoebiusTable, SieveConfig,
};
pub use probability::{
    delta_from_series, delta_prob, density_limits, harmonic_series, harmonic_series_f64, interval_of,
    prob_triple_even, prob_triple_general, prob_triple_odd, DensityConstant, DensityLimits,
    HarmonicAccumulator, HarmonicMuSeries, IntervalBracket, ProbabilityTriple, Rational,
};

/// Which integers a computation ranges over. `All` is the general class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    All,
    Odd,
    Even,
}

impl Parity {
    pub fn admits(self, n: u64) -> bool {
        match self {
            Parity::All => true,
            Parity::Odd => n % 2 == 1,
            Parity::Even => n % 2 == 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::All => "all",
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" | "general" => Ok(Parity::All),
            "odd" => Ok(Parity::Odd),
            "even" => Ok(Parity::Even),
            other => Err(Error::InvalidArgument(format!(
                "parity must be all, odd or even, got {other:?}"
            ))),
        }
    }
}

/// Integer square root, `⌊√n⌋`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).map_or(true, |sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}
