use serde::Serialize;

use crate::error::{Error, Result};
use crate::isqrt;
use crate::moebius::MertensSeries;
use crate::probability::HarmonicAccumulator;

/// Smallest limit with enough checkpoints for the exponent fit.
pub const MIN_WALK_LIMIT: u64 = 1000;

/// Checkpoints per decade.
const PER_DECADE: u32 = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MertensCheckpoint {
    pub n: u64,
    pub mertens: i64,
    pub sqrt_n: f64,
    /// |M(n)| / √n.
    pub ratio: f64,
    /// max_{k≤n} |M(k)|.
    pub running_max: u64,
    /// n · m²_{⌊√n⌋}.
    pub shift_term: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MertensWalkStats {
    pub limit: u64,
    pub checkpoints: Vec<MertensCheckpoint>,
    /// Least-squares slope of ln(running max |M|) against ln n.
    pub exponent: f64,
    pub intercept: f64,
    /// Root-mean-square residual of that fit.
    pub fit_residual: f64,
}

/// ⌊10^(k/8)⌋ for every k with 10³ ≤ ⌊10^(k/8)⌋ ≤ `limit`.
pub fn geometric_checkpoints(limit: u64) -> Vec<u64> {
    geometric_grid(MIN_WALK_LIMIT, limit)
}

/// Distinct values ⌊10^(k/8)⌋, k = 0, 1, …, lying in [min, limit].
pub fn geometric_grid(min: u64, limit: u64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for k in 0.. {
        let whole = match 10u64.checked_pow(k / PER_DECADE) {
            Some(w) => w,
            None => break,
        };
        let frac = 10f64.powf((k % PER_DECADE) as f64 / PER_DECADE as f64);
        let n = (whole as f64 * frac).floor() as u64;
        if n > limit {
            break;
        }
        if n >= min && out.last().map_or(true, |&last| n > last) {
            out.push(n);
        }
    }
    out
}

/// M(n), |M(n)|/√n, running max and shift term at geometric checkpoints up
/// to `limit`, with a log–log fit of the running maximum.
pub fn mertens_walk_stats(limit: u64, mertens: &MertensSeries<'_>) -> Result<MertensWalkStats> {
    if limit < MIN_WALK_LIMIT {
        return Err(Error::invalid(format!(
            "walk statistics need limit ≥ {MIN_WALK_LIMIT}, got {limit}"
        )));
    }
    if limit > mertens.limit() {
        return Err(Error::invalid(format!(
            "walk to {limit} needs Mertens values to {limit}, have {}",
            mertens.limit()
        )));
    }
    let marks = geometric_checkpoints(limit);
    let table = mertens.table();
    let mut harmonic = HarmonicAccumulator::new();
    let mut checkpoints = Vec::with_capacity(marks.len());
    let mut next = marks.iter().peekable();
    let mut running_max = 0u64;
    for (idx, m) in mertens.iter().take(limit as usize).enumerate() {
        let n = idx as u64 + 1;
        running_max = running_max.max(m.unsigned_abs());
        if next.peek() != Some(&&n) {
            continue;
        }
        next.next();
        harmonic.advance_to(isqrt(n), table)?;
        let sqrt_n = (n as f64).sqrt();
        let mk = harmonic.m_f64();
        checkpoints.push(MertensCheckpoint {
            n,
            mertens: m,
            sqrt_n,
            ratio: m.unsigned_abs() as f64 / sqrt_n,
            running_max,
            shift_term: n as f64 * mk * mk,
        });
    }

    let xs: Vec<f64> = checkpoints.iter().map(|c| (c.n as f64).ln()).collect();
    let ys: Vec<f64> = checkpoints.iter().map(|c| (c.running_max as f64).ln()).collect();
    let (exponent, intercept, fit_residual) = least_squares(&xs, &ys);
    Ok(MertensWalkStats {
        limit,
        checkpoints,
        exponent,
        intercept,
        fit_residual,
    })
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    (slope, intercept, (rss / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::{mertens_series, sieve_moebius};
    use crate::probability::harmonic_series;
    use num_traits::ToPrimitive;

    #[test]
    fn checkpoint_grid() {
        let c = geometric_checkpoints(10_000);
        assert_eq!(c.first(), Some(&1000));
        assert_eq!(c.last(), Some(&10_000));
        assert_eq!(c.len(), 9);
        assert_eq!(c[1], 1333); // 10^(25/8) = 1333.52…
        assert_eq!(geometric_checkpoints(10_000_000).len(), 33);
        assert!(geometric_checkpoints(999).is_empty());
        assert_eq!(geometric_grid(10, 40), vec![10, 13, 17, 23, 31]);
        assert_eq!(geometric_grid(1, 3), vec![1, 2, 3]);
    }

    #[test]
    fn fit_recovers_power_law() {
        let xs: Vec<f64> = (1..20).map(|i| (i as f64).ln()).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 0.5 * x + 2.0).collect();
        let (s, b, r) = least_squares(&xs, &ys);
        assert!((s - 0.5).abs() < 1e-12 && (b - 2.0).abs() < 1e-12 && r < 1e-12);
    }

    #[test]
    fn small_walk() {
        let t = sieve_moebius(100_000).unwrap();
        let m = mertens_series(&t);
        let w = mertens_walk_stats(100_000, &m).unwrap();
        assert_eq!(w.checkpoints.len(), 17);
        for c in &w.checkpoints {
            assert_eq!(c.mertens, m.at(c.n));
            assert!(c.ratio < 1.0);
            let brute = (1..=c.n).map(|k| m.at(k).unsigned_abs()).max().unwrap();
            assert_eq!(c.running_max, brute);
            let mk = harmonic_series(isqrt(c.n), &t).unwrap().m().to_f64().unwrap();
            assert!((c.shift_term - c.n as f64 * mk * mk).abs() <= 1e-9 * c.shift_term.max(1.0));
        }
        assert!(w.checkpoints.windows(2).all(|p| p[0].n < p[1].n));
        assert!(mertens_walk_stats(999, &m).is_err());
        assert!(mertens_walk_stats(100_001, &m).is_err());
    }
}
