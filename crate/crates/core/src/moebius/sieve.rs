use rayon::prelude::*;

use super::MoebiusTable;
use crate::error::{Error, Result};
use crate::isqrt;

/// Tuning for [`sieve_moebius_with`]. Output never depends on these values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveConfig {
    /// Integers per segment; 0 sieves the whole range as one segment.
    pub segment_len: usize,
    /// Upper bound on table plus per-worker scratch, in bytes.
    pub memory_budget: u64,
    /// Process segments on the rayon pool.
    pub parallel: bool,
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self {
            segment_len: 1 << 18,
            memory_budget: 4 << 30,
            parallel: true,
        }
    }
}

/// μ(1..=limit) with the default configuration.
pub fn sieve_moebius(limit: u64) -> Result<MoebiusTable> {
    sieve_moebius_with(limit, &SieveConfig::default())
}

/// Segmented sieve for μ.
///
/// Each segment flips the sign of every multiple of a prime p ≤ √limit,
/// zeroes multiples of p² and keeps the product of the small primes seen.
/// An integer whose product falls short of itself carries exactly one prime
/// factor above √limit, which costs one more sign flip.
pub fn sieve_moebius_with(limit: u64, config: &SieveConfig) -> Result<MoebiusTable> {
    if limit == 0 {
        return Err(Error::invalid("sieve limit must be at least 1"));
    }
    let len = usize::try_from(limit)
        .ok()
        .and_then(|l| l.checked_add(1))
        .ok_or_else(|| Error::invalid(format!("limit {limit} is not addressable")))?;
    let seg = if config.segment_len == 0 || config.segment_len as u64 >= limit {
        limit as usize
    } else {
        config.segment_len
    };
    let workers = if config.parallel {
        rayon::current_num_threads().max(1)
    } else {
        1
    };
    // table bytes + a sign byte already counted + u64 product per slot per worker
    let requested = len as u64 + (workers as u64) * (seg as u64) * 8;
    if requested > config.memory_budget {
        return Err(Error::ResourceLimit {
            what: "moebius sieve",
            requested,
            budget: config.memory_budget,
        });
    }

    let primes = small_primes(isqrt(limit));
    let mut values = vec![0i8; len];
    let body = &mut values[1..];

    let sieve_segment = |prod: &mut Vec<u64>, (idx, chunk): (usize, &mut [i8])| {
        let lo = 1 + (idx * seg) as u64;
        sieve_segment(lo, chunk, prod, &primes);
    };
    if config.parallel {
        body.par_chunks_mut(seg)
            .enumerate()
            .for_each_init(Vec::new, sieve_segment);
    } else {
        let mut prod = Vec::new();
        body.chunks_mut(seg)
            .enumerate()
            .for_each(|item| sieve_segment(&mut prod, item));
    }
    Ok(MoebiusTable::from_raw(values))
}

fn sieve_segment(lo: u64, chunk: &mut [i8], prod: &mut Vec<u64>, primes: &[u64]) {
    let hi = lo + chunk.len() as u64;
    chunk.fill(1);
    prod.clear();
    prod.resize(chunk.len(), 1);
    for &p in primes {
        let mut m = lo.div_ceil(p) * p;
        while m < hi {
            let k = (m - lo) as usize;
            chunk[k] = -chunk[k];
            prod[k] *= p;
            m += p;
        }
        let sq = p * p;
        if sq < hi {
            let mut m = lo.div_ceil(sq) * sq;
            while m < hi {
                chunk[(m - lo) as usize] = 0;
                m += sq;
            }
        }
    }
    for (k, (v, &pr)) in chunk.iter_mut().zip(prod.iter()).enumerate() {
        if *v != 0 && pr != lo + k as u64 {
            *v = -*v;
        }
    }
}

/// Primes ≤ `bound`, ascending.
pub fn small_primes(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// μ(n) by trial division, stopping at the first repeated prime factor.
///
/// Shares no code with the sieve, so it doubles as a spot-check oracle.
pub fn moebius_at(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::invalid("μ(0) is undefined"));
    }
    let mut rest = n;
    let mut sign = 1i8;
    let mut d = 2u64;
    while d <= rest / d {
        if rest % d == 0 {
            rest /= d;
            if rest % d == 0 {
                return Ok(0);
            }
            sign = -sign;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        sign = -sign;
    }
    Ok(sign)
}
