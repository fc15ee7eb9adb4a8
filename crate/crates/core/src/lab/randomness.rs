//! Balance, runs and serial-correlation tests for ±1 sequences.
//!
//! All three turn a statistic into an approximately standard normal z and
//! report the two-sided p-value erfc(|z|/√2). For the balance test this is
//! the upper tail of χ² with one degree of freedom.

use std::f64::consts::SQRT_2;
use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use super::walk::coin_sequence;
use crate::error::{Error, Result};

/// Shortest sequence the asymptotic p-values are trusted for.
pub const MIN_TEST_LENGTH: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TestKind {
    ChiSquareBalance,
    RunsTest,
    LagAutocorrelation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestReport {
    pub test: TestKind,
    pub length: usize,
    /// χ² for balance, the run count for runs, r_k for autocorrelation.
    pub statistic: f64,
    /// None when the statistic is degenerate (a one-symbol sequence).
    pub z_score: Option<f64>,
    pub p_value: f64,
    pub lag: Option<usize>,
}

impl TestReport {
    pub fn rejects(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }
}

fn two_sided(z: f64) -> f64 {
    libm::erfc(z.abs() / SQRT_2).clamp(0.0, 1.0)
}

fn check(seq: &[i8]) -> Result<()> {
    if seq.len() < MIN_TEST_LENGTH {
        return Err(Error::invalid(format!(
            "sequence of length {} is below the minimum length {MIN_TEST_LENGTH}",
            seq.len()
        )));
    }
    if let Some(pos) = seq.iter().position(|&x| x != 1 && x != -1) {
        return Err(Error::invalid(format!("entry {pos} is {}, not ±1", seq[pos])));
    }
    Ok(())
}

/// χ² of the +1/−1 counts against an even split.
pub fn chi_square_balance(seq: &[i8]) -> Result<TestReport> {
    check(seq)?;
    let n = seq.len() as f64;
    let sum: i64 = seq.iter().map(|&x| x as i64).sum();
    let z = sum as f64 / n.sqrt();
    Ok(TestReport {
        test: TestKind::ChiSquareBalance,
        length: seq.len(),
        statistic: z * z,
        z_score: Some(z),
        p_value: two_sided(z),
        lag: None,
    })
}

/// Wald–Wolfowitz runs test, conditional on the observed +1/−1 counts.
pub fn runs_test(seq: &[i8]) -> Result<TestReport> {
    check(seq)?;
    let n = seq.len() as f64;
    let plus = seq.iter().filter(|&&x| x == 1).count() as f64;
    let minus = n - plus;
    let runs = 1 + seq.windows(2).filter(|w| w[0] != w[1]).count();
    let (z_score, p_value) = if plus == 0.0 || minus == 0.0 {
        (None, 0.0)
    } else {
        let prod = 2.0 * plus * minus;
        let mean = prod / n + 1.0;
        let var = prod * (prod - n) / (n * n * (n - 1.0));
        let z = (runs as f64 - mean) / var.sqrt();
        (Some(z), two_sided(z))
    };
    Ok(TestReport {
        test: TestKind::RunsTest,
        length: seq.len(),
        statistic: runs as f64,
        z_score,
        p_value,
        lag: None,
    })
}

/// Sample autocorrelation r_k at lag k, with z = r_k √n.
pub fn lag_autocorrelation(seq: &[i8], lag: usize) -> Result<TestReport> {
    check(seq)?;
    if lag == 0 || lag >= seq.len() {
        return Err(Error::invalid(format!(
            "lag must lie in [1, {}), got {lag}",
            seq.len()
        )));
    }
    let n = seq.len() as f64;
    let mean = seq.iter().map(|&x| x as f64).sum::<f64>() / n;
    let dev: Vec<f64> = seq.iter().map(|&x| x as f64 - mean).collect();
    let denom: f64 = dev.iter().map(|d| d * d).sum();
    let (statistic, z_score, p_value) = if denom == 0.0 {
        (1.0, None, 0.0)
    } else {
        let num: f64 = dev.iter().zip(&dev[lag..]).map(|(a, b)| a * b).sum();
        let r = num / denom;
        let z = r * n.sqrt();
        (r, Some(z), two_sided(z))
    };
    Ok(TestReport {
        test: TestKind::LagAutocorrelation,
        length: seq.len(),
        statistic,
        z_score,
        p_value,
        lag: Some(lag),
    })
}

/// Rejection rates at level `alpha` over synthetic coin sequences, one per
/// seed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Calibration {
    pub length: usize,
    pub p_plus: f64,
    pub alpha: f64,
    pub seeds: u64,
    pub lag: usize,
    pub chi_square_balance: f64,
    pub runs_test: f64,
    pub lag_autocorrelation: f64,
    /// Fraction of sequences rejected by at least one test.
    pub any: f64,
}

pub fn calibrate(
    length: usize,
    p_plus: f64,
    alpha: f64,
    seeds: Range<u64>,
    lag: usize,
) -> Result<Calibration> {
    if seeds.is_empty() {
        return Err(Error::invalid("calibration needs at least one seed"));
    }
    let verdicts: Vec<[bool; 3]> = seeds
        .clone()
        .into_par_iter()
        .map(|seed| -> Result<[bool; 3]> {
            let seq = coin_sequence(length, p_plus, seed)?;
            Ok([
                chi_square_balance(&seq)?.rejects(alpha),
                runs_test(&seq)?.rejects(alpha),
                lag_autocorrelation(&seq, lag)?.rejects(alpha),
            ])
        })
        .collect::<Result<_>>()?;
    let count = verdicts.len() as f64;
    let rate = |f: &dyn Fn(&[bool; 3]) -> bool| verdicts.iter().filter(|v| f(v)).count() as f64 / count;
    Ok(Calibration {
        length,
        p_plus,
        alpha,
        seeds: seeds.end - seeds.start,
        lag,
        chi_square_balance: rate(&|v| v[0]),
        runs_test: rate(&|v| v[1]),
        lag_autocorrelation: rate(&|v| v[2]),
        any: rate(&|v| v.iter().any(|&b| b)),
    })
}
