//! Ground-truth μ(n) and M(n): the segmented sieve, a trial-division oracle,
//! Mertens prefix sums and the on-disk table cache.

mod cache;
mod mertens;
mod sieve;

use std::fmt;

pub use cache::{load_table, save_table, CACHE_MAGIC, CACHE_VERSION};
pub use mertens::{mertens_series, MertensSeries};
pub use sieve::{moebius_at, sieve_moebius, sieve_moebius_with, small_primes, SieveConfig};

use crate::error::{Error, Result};

/// μ(1..=N) stored as one signed byte per integer.
///
/// Immutable once built; share it freely between readers.
#[derive(Clone, PartialEq, Eq)]
pub struct MoebiusTable {
    // values[0] is a zero sentinel so that values[n] = μ(n).
    values: Vec<i8>,
}

impl MoebiusTable {
    /// Builds a table from μ(1..=N). Rejects empty input, entries outside
    /// {−1, 0, +1} and a first entry other than μ(1) = 1.
    pub fn from_values(values: &[i8]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("table must cover at least n = 1"));
        }
        if values[0] != 1 {
            return Err(Error::invalid(format!("μ(1) must be 1, got {}", values[0])));
        }
        if let Some(pos) = values.iter().position(|v| !(-1..=1).contains(v)) {
            return Err(Error::invalid(format!(
                "μ({}) = {} is outside {{-1, 0, 1}}",
                pos + 1,
                values[pos]
            )));
        }
        let mut raw = Vec::with_capacity(values.len() + 1);
        raw.push(0);
        raw.extend_from_slice(values);
        Ok(Self { values: raw })
    }

    /// Wraps an already validated buffer whose index 0 is the sentinel.
    pub(crate) fn from_raw(values: Vec<i8>) -> Self {
        debug_assert!(values.len() >= 2 && values[0] == 0 && values[1] == 1);
        Self { values }
    }

    /// Largest n covered.
    pub fn limit(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    pub fn covers(&self, n: u64) -> bool {
        n >= 1 && n <= self.limit()
    }

    /// μ(n). Panics when `n` is 0 or beyond [`limit`](Self::limit).
    #[inline]
    pub fn get(&self, n: u64) -> i8 {
        assert!(
            self.covers(n),
            "μ({n}) requested from a table of limit {}",
            self.limit()
        );
        self.values[n as usize]
    }

    pub fn try_get(&self, n: u64) -> Option<i8> {
        self.covers(n).then(|| self.values[n as usize])
    }

    /// μ(1..=N) in order.
    pub fn values(&self) -> &[i8] {
        &self.values[1..]
    }

    /// Index-aligned view: `raw()[n] = μ(n)`, `raw()[0] = 0`.
    pub(crate) fn raw(&self) -> &[i8] {
        &self.values
    }

    /// The prefix μ(1..=limit) as a new table.
    pub fn truncated(&self, limit: u64) -> Result<Self> {
        if !self.covers(limit) {
            return Err(Error::invalid(format!(
                "cannot truncate a table of limit {} to {limit}",
                self.limit()
            )));
        }
        Ok(Self::from_raw(self.values[..=limit as usize].to_vec()))
    }

    /// Number of squarefree n ≤ N.
    pub fn squarefree_count(&self) -> u64 {
        self.values().iter().filter(|&&v| v != 0).count() as u64
    }
}

impl fmt::Debug for MoebiusTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<i8> = self.values().iter().take(16).copied().collect();
        f.debug_struct("MoebiusTable")
            .field("limit", &self.limit())
            .field("head", &head)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_values_validates() {
        assert!(MoebiusTable::from_values(&[]).is_err());
        assert!(MoebiusTable::from_values(&[0]).is_err());
        assert!(MoebiusTable::from_values(&[1, 2]).is_err());
        let t = MoebiusTable::from_values(&[1, -1, -1, 0]).unwrap();
        assert_eq!(t.limit(), 4);
        assert_eq!(t.get(4), 0);
        assert_eq!(t.try_get(5), None);
        assert_eq!(t.try_get(0), None);
    }

    #[test]
    fn truncation() {
        let t = sieve_moebius(100).unwrap();
        let s = t.truncated(10).unwrap();
        assert_eq!(s.values(), &t.values()[..10]);
        assert!(t.truncated(101).is_err());
        assert!(t.truncated(0).is_err());
    }
}
