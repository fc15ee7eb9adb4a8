//! μ(n) through the delta-sum identity
//!
//! ```text
//! μ(n) = −Σ_{i,j ≤ ⌊√n⌋} μ(i) μ(j) δ(n / (i·j)),   n ≥ 2
//! ```
//!
//! where δ fires when i·j divides n. Restricting i and j to integers coprime
//! to a set of primes that do not divide n leaves the value unchanged; the
//! odd form is the restriction to {2}.
//!
//! Evaluation enumerates only squarefree i ≤ ⌊√n⌋ dividing n, then pairs
//! them, instead of walking all ⌊√n⌋² pairs.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::isqrt;
use crate::moebius::MoebiusTable;

/// δ(n/d): 1 when `d` divides `n`, else 0.
pub fn delta_divides(n: u64, d: u64) -> Result<u8> {
    if n == 0 {
        return Err(Error::invalid("delta_divides needs n ≥ 1"));
    }
    if d == 0 {
        return Err(Error::invalid("delta_divides needs a divisor d ≥ 1"));
    }
    Ok((n % d == 0) as u8)
}

/// One (i, j) pair of the identity with nonzero coefficient μ(i)·μ(j).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityTerm {
    pub i: u64,
    pub j: u64,
    pub coefficient: i8,
    /// i·j divides n.
    pub fired: bool,
}

/// Every nonzero term of the identity at `n`, fired or not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityTermSet {
    pub n: u64,
    pub cutoff: u64,
    pub terms: Vec<IdentityTerm>,
}

impl IdentityTermSet {
    /// −Σ coefficient over fired terms.
    pub fn value(&self) -> i64 {
        -self
            .terms
            .iter()
            .filter(|t| t.fired)
            .map(|t| t.coefficient as i64)
            .sum::<i64>()
    }

    pub fn fired(&self) -> impl Iterator<Item = &IdentityTerm> {
        self.terms.iter().filter(|t| t.fired)
    }
}

/// Lists all ⌊√n⌋² candidate pairs with μ(i)μ(j) ≠ 0, restricted to indices
/// coprime to `excluded_primes`. Quadratic in ⌊√n⌋; meant for inspection of
/// small n, not for sweeps.
pub fn identity_terms(n: u64, excluded_primes: &[u64], table: &MoebiusTable) -> Result<IdentityTermSet> {
    let cutoff = check_prefix(n, table)?;
    check_excluded(n, excluded_primes)?;
    let admitted: Vec<(u64, i8)> = (1..=cutoff)
        .filter(|&i| excluded_primes.iter().all(|p| i % p != 0))
        .map(|i| (i, table.get(i)))
        .filter(|&(_, m)| m != 0)
        .collect();
    let mut terms = Vec::with_capacity(admitted.len() * admitted.len());
    for &(i, mi) in &admitted {
        for &(j, mj) in &admitted {
            terms.push(IdentityTerm {
                i,
                j,
                coefficient: mi * mj,
                fired: n % (i * j) == 0,
            });
        }
    }
    Ok(IdentityTermSet { n, cutoff, terms })
}

/// μ(n) from the full identity over all i, j ≤ ⌊√n⌋.
pub fn moebius_via_identity(n: u64, table: &MoebiusTable) -> Result<i8> {
    check_prefix(n, table)?;
    to_moebius(n, identity_sum(n, table.raw(), |_| true))
}

/// μ(n) for odd n from the identity summed over odd i, j only.
pub fn moebius_via_identity_odd(n: u64, table: &MoebiusTable) -> Result<i8> {
    if n % 2 == 0 {
        return Err(Error::invalid(format!(
            "odd-restricted identity needs odd n, got {n}"
        )));
    }
    check_prefix(n, table)?;
    to_moebius(n, identity_sum(n, table.raw(), |i| i % 2 == 1))
}

/// μ(n) from the identity summed over i, j coprime to every prime in
/// `excluded_primes`. `n` itself must be coprime to all of them.
pub fn moebius_via_identity_coprime(n: u64, excluded_primes: &[u64], table: &MoebiusTable) -> Result<i8> {
    check_prefix(n, table)?;
    check_excluded(n, excluded_primes)?;
    to_moebius(
        n,
        identity_sum(n, table.raw(), |i| excluded_primes.iter().all(|p| i % p != 0)),
    )
}

/// Rebuilds μ(1..=limit) from μ(1) = 1 and the identity alone, in increasing
/// n so that every μ(i), i ≤ ⌊√n⌋, is already known.
pub fn bootstrap_identity(limit: u64) -> Result<MoebiusTable> {
    if limit < 2 {
        return Err(Error::invalid(format!("bootstrap needs limit ≥ 2, got {limit}")));
    }
    let len = usize::try_from(limit)
        .ok()
        .and_then(|l| l.checked_add(1))
        .ok_or_else(|| Error::invalid(format!("limit {limit} is not addressable")))?;
    let mut values = Vec::with_capacity(len);
    values.extend_from_slice(&[0i8, 1]);
    for n in 2..=limit {
        let v = to_moebius(n, identity_sum(n, &values, |_| true))?;
        values.push(v);
    }
    Ok(MoebiusTable::from_raw(values))
}

/// First n in `[2, max]` (odd n only when `odd_only`) where the identity
/// disagrees with `table`, as `(n, identity value, table value)`.
pub fn first_identity_mismatch(
    table: &MoebiusTable,
    max: u64,
    odd_only: bool,
) -> Result<Option<(u64, i64, i8)>> {
    if max < 2 {
        return Err(Error::invalid(format!("sweep needs max ≥ 2, got {max}")));
    }
    if !table.covers(max) {
        return Err(Error::invalid(format!(
            "sweep to {max} needs a table of limit {max}, have {}",
            table.limit()
        )));
    }
    let raw = table.raw();
    let start = if odd_only { 3 } else { 2 };
    let step = if odd_only { 2 } else { 1 };
    let found = (start..=max)
        .into_par_iter()
        .filter(|n| n % step == start % step)
        .map(|n| {
            let v = if odd_only {
                identity_sum(n, raw, |i| i % 2 == 1)
            } else {
                identity_sum(n, raw, |_| true)
            };
            (n, v, raw[n as usize])
        })
        .find_first(|&(_, v, expected)| v != expected as i64);
    Ok(found)
}

fn identity_sum(n: u64, mu: &[i8], admit: impl Fn(u64) -> bool) -> i64 {
    let cutoff = isqrt(n);
    let divisors: Vec<(u64, i64)> = (1..=cutoff)
        .filter(|&i| n % i == 0)
        .filter_map(|i| {
            let m = mu[i as usize];
            (m != 0 && admit(i)).then_some((i, m as i64))
        })
        .collect();
    let mut sum = 0i64;
    for &(i, mi) in &divisors {
        let rest = n / i;
        for &(j, mj) in &divisors {
            if rest % j == 0 {
                sum += mi * mj;
            }
        }
    }
    -sum
}

fn to_moebius(n: u64, v: i64) -> Result<i8> {
    match v {
        -1..=1 => Ok(v as i8),
        _ => Err(Error::invalid(format!(
            "identity at n = {n} evaluated to {v}; the prefix table is not a Möbius table"
        ))),
    }
}

fn check_prefix(n: u64, table: &MoebiusTable) -> Result<u64> {
    if n < 2 {
        return Err(Error::invalid(format!("the identity holds for n ≥ 2, got {n}")));
    }
    let cutoff = isqrt(n);
    if table.limit() < cutoff {
        return Err(Error::invalid(format!(
            "evaluating n = {n} needs μ up to cutoff {cutoff}, table covers {}",
            table.limit()
        )));
    }
    Ok(cutoff)
}

fn check_excluded(n: u64, excluded_primes: &[u64]) -> Result<()> {
    for &p in excluded_primes {
        if !is_prime(p) {
            return Err(Error::invalid(format!("excluded index {p} is not prime")));
        }
        if n % p == 0 {
            return Err(Error::invalid(format!(
                "n = {n} is divisible by excluded prime {p}"
            )));
        }
    }
    Ok(())
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::sieve_moebius;

    fn table() -> MoebiusTable {
        sieve_moebius(1000).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_divides(6, 3).unwrap(), 1);
        assert_eq!(delta_divides(6, 4).unwrap(), 0);
        assert_eq!(delta_divides(36, 36).unwrap(), 1);
        assert!(delta_divides(6, 0).is_err());
        assert!(delta_divides(0, 1).is_err());
    }

    #[test]
    fn full_identity_examples() {
        let t = table();
        assert_eq!(moebius_via_identity(2, &t).unwrap(), -1);
        assert_eq!(moebius_via_identity(4, &t).unwrap(), 0);
        assert_eq!(moebius_via_identity(9, &t).unwrap(), 0);
        assert!(moebius_via_identity(1, &t).is_err());
    }

    #[test]
    fn term_sets_match_hand_enumeration() {
        let t = table();
        // n = 4: pairs over {1,2}², all fire: 1 − 1 − 1 + 1
        let four = identity_terms(4, &[], &t).unwrap();
        assert_eq!(four.cutoff, 2);
        let coeffs: Vec<i8> = four.fired().map(|x| x.coefficient).collect();
        assert_eq!(coeffs, vec![1, -1, -1, 1]);
        assert_eq!(four.value(), 0);
        // n = 9: (1,1), (1,3), (3,1), (3,3) fire; (1,2), (2,*) do not
        let nine = identity_terms(9, &[], &t).unwrap();
        let fired: Vec<(u64, u64)> = nine.fired().map(|x| (x.i, x.j)).collect();
        assert_eq!(fired, vec![(1, 1), (1, 3), (3, 1), (3, 3)]);
        assert_eq!(nine.value(), 0);
        assert!(nine.terms.iter().all(|x| x.fired == (9 % (x.i * x.j) == 0)));
    }

    #[test]
    fn odd_examples() {
        let t = table();
        assert_eq!(moebius_via_identity_odd(3, &t).unwrap(), -1);
        assert_eq!(moebius_via_identity_odd(9, &t).unwrap(), 0);
        assert_eq!(moebius_via_identity_odd(15, &t).unwrap(), 1);
        let fifteen = identity_terms(15, &[2], &t).unwrap();
        let fired: Vec<(u64, u64)> = fifteen.fired().map(|x| (x.i, x.j)).collect();
        assert_eq!(fired, vec![(1, 1), (1, 3), (3, 1)]);
        assert!(moebius_via_identity_odd(10, &t).is_err());
    }

    #[test]
    fn coprime_examples() {
        let t = table();
        assert_eq!(moebius_via_identity_coprime(7, &[2, 3, 5], &t).unwrap(), -1);
        assert_eq!(moebius_via_identity_coprime(25, &[2, 3], &t).unwrap(), 0);
        assert_eq!(moebius_via_identity_coprime(35, &[2, 3], &t).unwrap(), 1);
        assert!(moebius_via_identity_coprime(35, &[5], &t).is_err());
        assert!(moebius_via_identity_coprime(35, &[4], &t).is_err());
        assert!(moebius_via_identity_coprime(35, &[1], &t).is_err());
    }

    #[test]
    fn prime_with_all_smaller_primes_excluded_is_single_term() {
        let t = table();
        for p in [11u64, 101, 997] {
            let excluded: Vec<u64> = (2..p).filter(|&q| is_prime(q)).collect();
            let set = identity_terms(p, &excluded, &t).unwrap();
            assert_eq!(set.terms.len(), 1);
            assert_eq!((set.terms[0].i, set.terms[0].j), (1, 1));
            assert_eq!(moebius_via_identity_coprime(p, &excluded, &t).unwrap(), -1);
        }
    }

    #[test]
    fn insufficient_prefix() {
        let t = sieve_moebius(9).unwrap();
        let err = moebius_via_identity(100, &t).unwrap_err();
        assert!(err.to_string().contains("cutoff 10"), "{err}");
        assert!(moebius_via_identity(99, &t).is_ok());
    }

    #[test]
    fn bootstrap_examples() {
        assert_eq!(bootstrap_identity(4).unwrap().values(), &[1, -1, -1, 0]);
        assert_eq!(bootstrap_identity(10).unwrap().get(10), 1);
        assert!(bootstrap_identity(1).is_err());
    }

    #[test]
    fn fast_path_matches_term_set() {
        let t = table();
        for n in 2..2000 {
            let full = identity_terms(n, &[], &t).unwrap().value();
            assert_eq!(moebius_via_identity(n, &t).unwrap() as i64, full, "n = {n}");
            if n % 2 == 1 {
                let odd = identity_terms(n, &[2], &t).unwrap().value();
                assert_eq!(moebius_via_identity_odd(n, &t).unwrap() as i64, odd);
            }
        }
    }

    #[test]
    fn coprime_restriction_is_conservative() {
        let t = sieve_moebius(10_000).unwrap();
        for excluded in [&[2u64][..], &[2, 3], &[2, 3, 5]] {
            for n in (2..=10_000u64).filter(|n| excluded.iter().all(|p| n % p != 0)) {
                assert_eq!(
                    moebius_via_identity_coprime(n, excluded, &t).unwrap(),
                    t.get(n),
                    "n = {n}, excluded {excluded:?}"
                );
            }
        }
    }

    #[test]
    fn corrupted_prefix_is_reported() {
        let mut v = sieve_moebius(100).unwrap().values().to_vec();
        v[1] = 1; // claim μ(2) = +1
        let bad = MoebiusTable::from_values(&v).unwrap();
        assert!(moebius_via_identity(16, &bad).is_err());
    }

    #[test]
    fn sweep_finds_first_mismatch() {
        let good = sieve_moebius(5000).unwrap();
        assert_eq!(first_identity_mismatch(&good, 5000, false).unwrap(), None);
        assert_eq!(first_identity_mismatch(&good, 5000, true).unwrap(), None);
        let mut v = good.values().to_vec();
        v[3000] = -v[3000]; // μ(3001), a prime
        let bad = MoebiusTable::from_values(&v).unwrap();
        let hit = first_identity_mismatch(&bad, 5000, false).unwrap().unwrap();
        assert_eq!(hit.0, 3001);
        assert!(first_identity_mismatch(&good, 1, false).is_err());
        assert!(first_identity_mismatch(&good, 6000, false).is_err());
    }
}
