use rayon::prelude::*;
use serde::Serialize;

use super::normal::normal_cdf;
use super::rng::SplitMix64;
use crate::error::{Error, Result};

const SAMPLE_LEN: usize = 16;

/// Terminal statistics of simulated fair ±1 walks S_n.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalkSummary {
    pub steps: u64,
    pub trials: u64,
    pub seed: u64,
    pub c: f64,
    pub epsilon: f64,
    /// Fraction of trials with |S_n| ≤ c√n.
    pub fraction_within_c_sqrt: f64,
    /// Φ(c) − Φ(−c), the large-n value of the fraction above.
    pub normal_limit: f64,
    /// Fraction of trials with |S_n| < n^(1/2 + ε).
    pub fraction_within_power: f64,
    pub mean: f64,
    pub variance: f64,
    /// S_n of the first trials, in trial order.
    pub sample: Vec<i64>,
}

/// Simulates `trials` independent fair-coin walks of `steps` steps.
///
/// Trial t draws from stream t of `seed`; 64 steps are taken per generator
/// output. Results are identical for any thread count.
pub fn coin_walk_simulate(steps: u64, trials: u64, seed: u64, c: f64, epsilon: f64) -> Result<WalkSummary> {
    if steps == 0 || trials == 0 {
        return Err(Error::invalid("steps and trials must both be at least 1"));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::invalid(format!("c must be positive and finite, got {c}")));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::invalid(format!(
            "epsilon must be positive and finite, got {epsilon}"
        )));
    }
    let terminal: Vec<i64> = (0..trials)
        .into_par_iter()
        .map(|t| walk_endpoint(steps, &mut SplitMix64::stream(seed, t)))
        .collect();

    let n = steps as f64;
    let c_bound = c * n.sqrt();
    let power_bound = n.powf(0.5 + epsilon);
    let within_c = terminal.iter().filter(|s| (s.abs() as f64) <= c_bound).count();
    let within_power = terminal.iter().filter(|s| (s.abs() as f64) < power_bound).count();
    let sum: i128 = terminal.iter().map(|&s| s as i128).sum();
    let sum_sq: i128 = terminal.iter().map(|&s| (s as i128) * (s as i128)).sum();
    let count = trials as f64;
    let mean = sum as f64 / count;
    let variance = if trials > 1 {
        (sum_sq as f64 - sum as f64 * mean) / (count - 1.0)
    } else {
        0.0
    };

    Ok(WalkSummary {
        steps,
        trials,
        seed,
        c,
        epsilon,
        fraction_within_c_sqrt: within_c as f64 / count,
        normal_limit: normal_cdf(c) - normal_cdf(-c),
        fraction_within_power: within_power as f64 / count,
        mean,
        variance,
        sample: terminal.iter().take(SAMPLE_LEN).copied().collect(),
    })
}

fn walk_endpoint(steps: u64, rng: &mut SplitMix64) -> i64 {
    let mut ups = 0u64;
    let mut left = steps;
    while left >= 64 {
        ups += rng.next_u64().count_ones() as u64;
        left -= 64;
    }
    if left > 0 {
        ups += (rng.next_u64() & ((1u64 << left) - 1)).count_ones() as u64;
    }
    2 * ups as i64 - steps as i64
}

/// `len` independent ±1 draws with Pr(+1) = `p_plus`, from stream 0 of `seed`.
pub fn coin_sequence(len: usize, p_plus: f64, seed: u64) -> Result<Vec<i8>> {
    if !(0.0..=1.0).contains(&p_plus) {
        return Err(Error::invalid(format!("p_plus must lie in [0, 1], got {p_plus}")));
    }
    let mut rng = SplitMix64::stream(seed, 0);
    Ok((0..len)
        .map(|_| if rng.next_f64() < p_plus { 1 } else { -1 })
        .collect())
}
