//! Exact outcome probabilities for μ(n).
//!
//! With K = ⌊√n⌋ and the harmonic μ sums
//!
//! ```text
//! m_K = Σ_{i≤K} μ(i)/i        s2_K = Σ_{i≤K} μ(i)/i²
//! ```
//!
//! (and their odd-index restrictions `m_odd`, `s2_odd`), the general class has
//! Pr(μ = −1) = (m² + s2)/2, Pr(μ = +1) = (s2 − m²)/2 and Pr(μ = 0) = 1 − s2.
//! The odd class uses the odd sums in the same formulas; the even class is
//! twice the general class minus the odd class.
//!
//! These are model probabilities from truncated inclusion–exclusion, not
//! frequencies over a finite interval. On [9, 25) the model gives
//! Pr(μ = 0) = 13/36 while multiples of 4 or 9 have density 12/36.
//!
//! All values are exact. Sums share the primorial of the cutoff as common
//! denominator while they are accumulated and are reduced only on snapshot.

use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::isqrt;
use crate::moebius::MoebiusTable;
use crate::Parity;

/// Reduced fraction with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

/// m, m_odd, s2 and s2_odd at a fixed cutoff K.
///
/// Held as numerators over D (for m) and D² (for s2), where D is the product
/// of the primes ≤ K. Reduced fractions are produced on first access.
#[derive(Debug, Clone)]
pub struct HarmonicMuSeries {
    cutoff: u64,
    den: BigInt,
    den_sq: BigInt,
    m: BigInt,
    m_odd: BigInt,
    s2: BigInt,
    s2_odd: BigInt,
    reduced: OnceLock<[Rational; 4]>,
}

impl PartialEq for HarmonicMuSeries {
    fn eq(&self, other: &Self) -> bool {
        // D is fixed by the cutoff, so numerators compare directly.
        self.cutoff == other.cutoff
            && self.m == other.m
            && self.m_odd == other.m_odd
            && self.s2 == other.s2
            && self.s2_odd == other.s2_odd
    }
}

impl Eq for HarmonicMuSeries {}

impl HarmonicMuSeries {
    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    fn reduced(&self) -> &[Rational; 4] {
        self.reduced.get_or_init(|| {
            [
                Rational::new(self.m.clone(), self.den.clone()),
                Rational::new(self.m_odd.clone(), self.den.clone()),
                Rational::new(self.s2.clone(), self.den_sq.clone()),
                Rational::new(self.s2_odd.clone(), self.den_sq.clone()),
            ]
        })
    }

    /// Σ_{i≤K} μ(i)/i.
    pub fn m(&self) -> &Rational {
        &self.reduced()[0]
    }

    /// Σ_{i≤K, i odd} μ(i)/i.
    pub fn m_odd(&self) -> &Rational {
        &self.reduced()[1]
    }

    /// Σ_{i≤K} μ(i)/i².
    pub fn s2(&self) -> &Rational {
        &self.reduced()[2]
    }

    /// Σ_{i≤K, i odd} μ(i)/i².
    pub fn s2_odd(&self) -> &Rational {
        &self.reduced()[3]
    }

    /// Numerators over D² of (sign gap, squarefree mass, zero mass) for the
    /// class: gap = Pr(−1) − Pr(+1), squarefree = Pr(−1) + Pr(+1).
    fn class_numerators(&self, parity: Parity) -> (BigInt, BigInt, BigInt) {
        let m_sq = &self.m * &self.m;
        let m_odd_sq = &self.m_odd * &self.m_odd;
        match parity {
            Parity::All => (m_sq, self.s2.clone(), &self.den_sq - &self.s2),
            Parity::Odd => (m_odd_sq, self.s2_odd.clone(), &self.den_sq - &self.s2_odd),
            Parity::Even => (
                m_sq * 2u32 - m_odd_sq,
                &self.s2 * 2u32 - &self.s2_odd,
                // −(2(s2 − 1) − (s2_odd − 1)), over D²
                {
                    let twice: BigInt = (&self.s2 - &self.den_sq) * 2u32;
                    -(twice - (&self.s2_odd - &self.den_sq))
                },
            ),
        }
    }
}

/// Builds [`HarmonicMuSeries`] one index at a time.
#[derive(Debug, Clone)]
pub struct HarmonicAccumulator {
    cutoff: u64,
    // product of the primes ≤ cutoff; every squarefree i ≤ cutoff divides it
    den: BigInt,
    den_sq: BigInt,
    m: BigInt,
    m_odd: BigInt,
    s2: BigInt,
    s2_odd: BigInt,
}

impl Default for HarmonicAccumulator {
    fn default() -> Self {
        Self::new()
    }
}

impl HarmonicAccumulator {
    /// Empty sums at cutoff 0.
    pub fn new() -> Self {
        Self {
            cutoff: 0,
            den: BigInt::one(),
            den_sq: BigInt::one(),
            m: BigInt::zero(),
            m_odd: BigInt::zero(),
            s2: BigInt::zero(),
            s2_odd: BigInt::zero(),
        }
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    /// Adds index `cutoff + 1` with value μ.
    pub fn push(&mut self, mu: i8) {
        let i = self.cutoff + 1;
        self.cutoff = i;
        if mu == 0 {
            return;
        }
        // A squarefree i that does not divide the primorial is a new prime.
        if !(&self.den % i).is_zero() {
            let sq = BigInt::from(i) * i;
            self.den *= i;
            self.m *= i;
            self.m_odd *= i;
            self.den_sq *= &sq;
            self.s2 *= &sq;
            self.s2_odd *= &sq;
        }
        let q = &self.den / i;
        let q2 = &self.den_sq / (i as u128 * i as u128);
        let odd = i % 2 == 1;
        if mu > 0 {
            if odd {
                self.m_odd += &q;
                self.s2_odd += &q2;
            }
            self.m += q;
            self.s2 += q2;
        } else {
            if odd {
                self.m_odd -= &q;
                self.s2_odd -= &q2;
            }
            self.m -= q;
            self.s2 -= q2;
        }
    }

    /// Pushes μ(cutoff + 1), …, μ(target) from `table`.
    pub fn advance_to(&mut self, target: u64, table: &MoebiusTable) -> Result<()> {
        if target > table.limit() {
            return Err(Error::invalid(format!(
                "harmonic sums to {target} need a table of limit {target}, have {}",
                table.limit()
            )));
        }
        while self.cutoff < target {
            let mu = table.get(self.cutoff + 1);
            self.push(mu);
        }
        Ok(())
    }

    /// m_K as a float, without reducing the fraction.
    pub fn m_f64(&self) -> f64 {
        BigRational::new_raw(self.m.clone(), self.den.clone())
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// The sums at the current cutoff. Panics at cutoff 0.
    pub fn snapshot(&self) -> HarmonicMuSeries {
        assert!(self.cutoff >= 1, "harmonic sums need cutoff ≥ 1");
        HarmonicMuSeries {
            cutoff: self.cutoff,
            den: self.den.clone(),
            den_sq: self.den_sq.clone(),
            m: self.m.clone(),
            m_odd: self.m_odd.clone(),
            s2: self.s2.clone(),
            s2_odd: self.s2_odd.clone(),
            reduced: OnceLock::new(),
        }
    }
}

/// Exact m, m_odd, s2, s2_odd at cutoff `k`.
pub fn harmonic_series(k: u64, table: &MoebiusTable) -> Result<HarmonicMuSeries> {
    if k == 0 {
        return Err(Error::invalid("harmonic sums need cutoff K ≥ 1"));
    }
    let mut acc = HarmonicAccumulator::new();
    acc.advance_to(k, table)?;
    Ok(acc.snapshot())
}

/// Float harmonic sums with Neumaier compensation, for cutoffs where exact
/// fractions get too large. Returns `[m, m_odd, s2, s2_odd]`.
pub fn harmonic_series_f64(k: u64, table: &MoebiusTable) -> Result<[f64; 4]> {
    if k == 0 || k > table.limit() {
        return Err(Error::invalid(format!(
            "float harmonic sums need 1 ≤ K ≤ {}, got {k}",
            table.limit()
        )));
    }
    let mut sums = [Neumaier::default(); 4];
    for (idx, &mu) in table.values()[..k as usize].iter().enumerate() {
        if mu == 0 {
            continue;
        }
        let i = (idx + 1) as f64;
        let t1 = mu as f64 / i;
        let t2 = t1 / i;
        sums[0].add(t1);
        sums[2].add(t2);
        if idx % 2 == 0 {
            sums[1].add(t1);
            sums[3].add(t2);
        }
    }
    Ok(sums.map(|s| s.total()))
}

#[derive(Debug, Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(self) -> f64 {
        self.sum + self.comp
    }
}

/// (Pr(μ = −1), Pr(μ = +1), Pr(μ = 0)) for one query integer and class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityTriple {
    pub n: u64,
    pub parity: Parity,
    pub p_minus: Rational,
    pub p_plus: Rational,
    pub p_zero: Rational,
}

impl ProbabilityTriple {
    /// Evaluates the class formulas on precomputed sums. Does not check that
    /// `n` belongs to `parity` or that the cutoff is ⌊√n⌋.
    pub fn from_series(n: u64, parity: Parity, s: &HarmonicMuSeries) -> Self {
        let (gap, squarefree, zero) = s.class_numerators(parity);
        let half_den: BigInt = &s.den_sq * 2u32;
        Self {
            n,
            parity,
            p_minus: Rational::new(&squarefree + &gap, half_den.clone()),
            p_plus: Rational::new(squarefree - gap, half_den),
            p_zero: Rational::new(zero, s.den_sq.clone()),
        }
    }

    pub fn total(&self) -> Rational {
        &self.p_minus + &self.p_plus + &self.p_zero
    }

    /// Pr(μ = −1) − Pr(μ = +1).
    pub fn gap(&self) -> Rational {
        &self.p_minus - &self.p_plus
    }

    /// Pr(|μ| = 1).
    pub fn squarefree(&self) -> Rational {
        &self.p_minus + &self.p_plus
    }

    pub fn components(&self) -> [&Rational; 3] {
        [&self.p_minus, &self.p_plus, &self.p_zero]
    }
}

fn check_class(n: u64, parity: Parity) -> Result<()> {
    match parity {
        Parity::All if n < 2 => Err(Error::invalid(format!("probabilities need n ≥ 2, got {n}"))),
        Parity::Odd if n % 2 == 0 || n < 3 => {
            Err(Error::invalid(format!("odd class needs odd n ≥ 3, got {n}")))
        }
        Parity::Even if n % 2 == 1 || n < 2 => {
            Err(Error::invalid(format!("even class needs even n ≥ 2, got {n}")))
        }
        _ => Ok(()),
    }
}

fn triple(n: u64, parity: Parity, table: &MoebiusTable) -> Result<ProbabilityTriple> {
    check_class(n, parity)?;
    let series = harmonic_series(isqrt(n), table)?;
    Ok(ProbabilityTriple::from_series(n, parity, &series))
}

pub fn prob_triple_general(n: u64, table: &MoebiusTable) -> Result<ProbabilityTriple> {
    triple(n, Parity::All, table)
}

pub fn prob_triple_odd(n: u64, table: &MoebiusTable) -> Result<ProbabilityTriple> {
    triple(n, Parity::Odd, table)
}

pub fn prob_triple_even(n: u64, table: &MoebiusTable) -> Result<ProbabilityTriple> {
    triple(n, Parity::Even, table)
}

/// Closed-form Pr(μ = −1) − Pr(μ = +1): m² (all), m_odd² (odd),
/// 2m² − m_odd² (even). The even gap can be negative at small cutoffs.
pub fn delta_from_series(parity: Parity, s: &HarmonicMuSeries) -> Rational {
    let (gap, _, _) = s.class_numerators(parity);
    Rational::new(gap, s.den_sq.clone())
}

pub fn delta_prob(n: u64, parity: Parity, table: &MoebiusTable) -> Result<Rational> {
    check_class(n, parity)?;
    let series = harmonic_series(isqrt(n), table)?;
    Ok(delta_from_series(parity, &series))
}

/// [a², b²) for consecutive squarefree a < b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntervalBracket {
    pub a: u64,
    pub b: u64,
    pub lower: u64,
    pub upper: u64,
}

impl IntervalBracket {
    pub fn contains(&self, n: u64) -> bool {
        self.lower <= n && n < self.upper
    }
}

impl fmt::Display for IntervalBracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lower, self.upper)
    }
}

/// The bracket on which the probability formulas are constant around `n`.
/// Needs μ up to the first squarefree integer above ⌊√n⌋.
pub fn interval_of(n: u64, table: &MoebiusTable) -> Result<IntervalBracket> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "interval brackets start at n = 2, got {n}"
        )));
    }
    let k = isqrt(n);
    if !table.covers(k) {
        return Err(Error::invalid(format!(
            "bracket for n = {n} needs μ up to {k}, table covers {}",
            table.limit()
        )));
    }
    let a = (1..=k).rev().find(|&i| table.get(i) != 0).expect("μ(1) = 1");
    let b = (k + 1..=table.limit())
        .find(|&i| table.get(i) != 0)
        .ok_or_else(|| {
            Error::invalid(format!(
                "no squarefree integer in ({k}, {}]; extend the table to bracket n = {n}",
                table.limit()
            ))
        })?;
    Ok(IntervalBracket {
        a,
        b,
        lower: a * a,
        upper: b * b,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityConstant {
    pub expression: &'static str,
    pub value: f64,
}

/// Asymptotic squarefree densities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityLimits {
    pub odd: DensityConstant,
    pub even: DensityConstant,
    pub all: DensityConstant,
}

impl DensityLimits {
    pub fn for_parity(&self, parity: Parity) -> DensityConstant {
        match parity {
            Parity::All => self.all,
            Parity::Odd => self.odd,
            Parity::Even => self.even,
        }
    }
}

pub fn density_limits() -> DensityLimits {
    let pi2 = PI * PI;
    DensityLimits {
        odd: DensityConstant {
            expression: "8/pi^2",
            value: 8.0 / pi2,
        },
        even: DensityConstant {
            expression: "4/pi^2",
            value: 4.0 / pi2,
        },
        all: DensityConstant {
            expression: "6/pi^2",
            value: 6.0 / pi2,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::sieve_moebius;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn tr_gap(t: &ProbabilityTriple) -> Rational {
        &t.p_minus - &t.p_plus
    }

    fn triple_of(t: &ProbabilityTriple) -> (Rational, Rational, Rational) {
        (t.p_minus.clone(), t.p_plus.clone(), t.p_zero.clone())
    }

    // Direct fraction sums, independent of the accumulator.
    fn oracle_series(k: u64, table: &MoebiusTable) -> [Rational; 4] {
        let mut out = [q(0, 1), q(0, 1), q(0, 1), q(0, 1)];
        for i in 1..=k as i64 {
            let mu = table.get(i as u64) as i64;
            out[0] += q(mu, i);
            out[2] += q(mu, i * i);
            if i % 2 == 1 {
                out[1] += q(mu, i);
                out[3] += q(mu, i * i);
            }
        }
        out
    }

    #[test]
    fn harmonic_examples() {
        let t = sieve_moebius(100).unwrap();
        let s1 = harmonic_series(1, &t).unwrap();
        assert_eq!(
            [
                s1.m().clone(),
                s1.m_odd().clone(),
                s1.s2().clone(),
                s1.s2_odd().clone()
            ],
            [q(1, 1), q(1, 1), q(1, 1), q(1, 1)]
        );
        let s2 = harmonic_series(2, &t).unwrap();
        assert_eq!((s2.m(), s2.s2()), (&q(1, 2), &q(3, 4)));
        let s3 = harmonic_series(3, &t).unwrap();
        assert_eq!(
            [
                s3.m().clone(),
                s3.m_odd().clone(),
                s3.s2().clone(),
                s3.s2_odd().clone()
            ],
            [q(1, 6), q(2, 3), q(23, 36), q(8, 9)]
        );
        assert!(harmonic_series(0, &t).is_err());
        assert!(harmonic_series(101, &t).is_err());
    }

    #[test]
    fn accumulator_matches_direct_sums() {
        let t = sieve_moebius(400).unwrap();
        let mut acc = HarmonicAccumulator::new();
        for k in 1..=400 {
            acc.push(t.get(k));
            let s = acc.snapshot();
            let o = oracle_series(k, &t);
            assert_eq!(
                [
                    s.m().clone(),
                    s.m_odd().clone(),
                    s.s2().clone(),
                    s.s2_odd().clone()
                ],
                o,
                "K = {k}"
            );
            assert_eq!(s, harmonic_series(k, &t).unwrap());
        }
    }

    #[test]
    fn float_sums_track_exact_sums() {
        let t = sieve_moebius(10_000).unwrap();
        for k in [1u64, 10, 1000, 10_000] {
            let exact = harmonic_series(k, &t).unwrap();
            let approx = harmonic_series_f64(k, &t).unwrap();
            let exact = [exact.m(), exact.m_odd(), exact.s2(), exact.s2_odd()].map(|r| r.to_f64().unwrap());
            for (e, a) in exact.iter().zip(approx) {
                assert!((e - a).abs() <= 1e-12, "K = {k}: {e} vs {a}");
            }
        }
    }

    #[test]
    fn general_interval_fixtures() {
        let t = sieve_moebius(100).unwrap();
        for n in 2..4 {
            assert_eq!(
                triple_of(&prob_triple_general(n, &t).unwrap()),
                (q(1, 1), q(0, 1), q(0, 1))
            );
        }
        for n in 4..9 {
            assert_eq!(
                triple_of(&prob_triple_general(n, &t).unwrap()),
                (q(1, 2), q(1, 4), q(1, 4))
            );
        }
        for n in 9..25 {
            assert_eq!(
                triple_of(&prob_triple_general(n, &t).unwrap()),
                (q(1, 3), q(11, 36), q(13, 36))
            );
        }
        assert!(prob_triple_general(1, &t).is_err());
    }

    #[test]
    fn odd_examples() {
        let t = sieve_moebius(100).unwrap();
        let one = (q(1, 1), q(0, 1), q(0, 1));
        assert_eq!(triple_of(&prob_triple_odd(3, &t).unwrap()), one);
        assert_eq!(triple_of(&prob_triple_odd(5, &t).unwrap()), one);
        assert_eq!(triple_of(&prob_triple_odd(7, &t).unwrap()), one);
        for n in (9..25).step_by(2) {
            assert_eq!(
                triple_of(&prob_triple_odd(n, &t).unwrap()),
                (q(2, 3), q(2, 9), q(1, 9))
            );
        }
        assert!(prob_triple_odd(10, &t).is_err());
        assert!(prob_triple_odd(1, &t).is_err());
    }

    #[test]
    fn even_examples() {
        let t = sieve_moebius(100).unwrap();
        assert_eq!(
            triple_of(&prob_triple_even(2, &t).unwrap()),
            (q(1, 1), q(0, 1), q(0, 1))
        );
        for n in [4, 6, 8] {
            assert_eq!(
                triple_of(&prob_triple_even(n, &t).unwrap()),
                (q(0, 1), q(1, 2), q(1, 2))
            );
        }
        for n in (10..25).step_by(2) {
            assert_eq!(
                triple_of(&prob_triple_even(n, &t).unwrap()),
                (q(0, 1), q(7, 18), q(11, 18))
            );
        }
        assert!(prob_triple_even(11, &t).is_err());
    }

    #[test]
    fn gap_examples() {
        let t = sieve_moebius(100).unwrap();
        assert_eq!(delta_prob(10, Parity::All, &t).unwrap(), q(1, 36));
        assert_eq!(delta_prob(11, Parity::Odd, &t).unwrap(), q(4, 9));
        assert_eq!(delta_prob(12, Parity::Even, &t).unwrap(), q(-7, 18));
        assert!(delta_prob(12, Parity::Odd, &t).is_err());
        assert!(delta_prob(13, Parity::Even, &t).is_err());
    }

    #[test]
    fn interval_examples() {
        let t = sieve_moebius(100).unwrap();
        let br = |n| interval_of(n, &t).unwrap();
        assert_eq!((br(5).lower, br(5).upper), (4, 9));
        assert_eq!((br(30).lower, br(30).upper), (25, 36));
        assert_eq!((br(70).lower, br(70).upper), (49, 100));
        assert_eq!((br(2).lower, br(2).upper), (1, 4));
        assert_eq!(br(70).to_string(), "[49, 100)");
        let small = sieve_moebius(8).unwrap();
        assert!(interval_of(70, &small).is_err());
        assert!(interval_of(1, &t).is_err());
    }

    #[test]
    fn exhaustive_identities_to_ten_thousand() {
        let t = sieve_moebius(200).unwrap();
        let mut acc = HarmonicAccumulator::new();
        let one = Rational::one();
        let zero = Rational::zero();
        for k in 1..=100u64 {
            acc.push(t.get(k));
            let s = acc.snapshot();
            for n in (k * k).max(2)..(k + 1) * (k + 1) {
                let general = ProbabilityTriple::from_series(n, Parity::All, &s);
                let odd = ProbabilityTriple::from_series(n, Parity::Odd, &s);
                let even = ProbabilityTriple::from_series(n, Parity::Even, &s);
                for (cls, tr) in [
                    (Parity::All, &general),
                    (Parity::Odd, &odd),
                    (Parity::Even, &even),
                ] {
                    assert_eq!(tr.total(), one, "n = {n} {cls:?}");
                    assert_eq!(tr.gap(), delta_from_series(cls, &s));
                    for c in tr.components() {
                        assert!(*c >= zero && *c <= one, "n = {n} {cls:?} component {c}");
                    }
                }
                assert_eq!(&general.squarefree(), s.s2());
                assert_eq!(&odd.squarefree(), s.s2_odd());
                let two = Rational::from_integer(2.into());
                assert_eq!(even.squarefree(), &two * s.s2() - s.s2_odd());
                // closed forms on reduced values, independent of the numerator path
                assert_eq!(tr_gap(&general), s.m() * s.m());
                assert_eq!(tr_gap(&odd), s.m_odd() * s.m_odd());
                assert_eq!(tr_gap(&even), &two * s.m() * s.m() - s.m_odd() * s.m_odd());
                assert_eq!(general.p_zero, Rational::one() - s.s2());
                assert_eq!(even.p_minus, &two * &general.p_minus - &odd.p_minus);
                assert_eq!(even.p_plus, &two * &general.p_plus - &odd.p_plus);
                assert_eq!(even.p_zero, &two * &general.p_zero - &odd.p_zero);
            }
        }
    }

    #[test]
    fn triples_change_only_at_squarefree_squares() {
        let t = sieve_moebius(200).unwrap();
        let mut prev = prob_triple_general(2, &t).unwrap();
        for n in 3..=10_000u64 {
            let cur = prob_triple_general(n, &t).unwrap();
            let br = interval_of(n, &t).unwrap();
            assert!(br.contains(n));
            let changed = triple_of(&cur) != triple_of(&prev);
            let at_boundary = n == br.lower;
            assert_eq!(changed, at_boundary, "n = {n}");
            prev = cur;
        }
    }

    #[test]
    fn density_constants() {
        let d = density_limits();
        assert!((d.odd.value - 0.810_569_469_139).abs() < 1e-12);
        assert!((d.even.value - 0.405_284_734_569).abs() < 1e-12);
        assert!((d.all.value - 0.607_927_101_854).abs() < 1e-12);
        assert_eq!(d.odd.value, 2.0 * d.even.value);
        assert!(((d.odd.value + d.even.value) / 2.0 - d.all.value).abs() < 1e-15);
        assert_eq!(d.for_parity(Parity::Odd), d.odd);
    }

    #[test]
    fn tails_and_vanishing_m() {
        let t = sieve_moebius(10_000).unwrap();
        let d = density_limits();
        let mut acc = HarmonicAccumulator::new();
        for k in [100u64, 1000, 10_000] {
            acc.advance_to(k, &t).unwrap();
            let s = acc.snapshot();
            let s2 = s.s2().to_f64().unwrap();
            let s2_odd = s.s2_odd().to_f64().unwrap();
            assert!((s2 - d.all.value).abs() <= 1.0 / k as f64);
            assert!((s2_odd - d.odd.value).abs() <= 1.0 / k as f64);
            if k >= 1000 {
                assert!(s.m().to_f64().unwrap().powi(2) <= 1e-2);
            }
            assert!((acc.m_f64() - s.m().to_f64().unwrap()).abs() < 1e-15);
        }
    }
}
