use serde::Serialize;

use crate::error::{Error, Result};
use crate::moebius::MoebiusTable;
use crate::probability::{density_limits, DensityConstant};
use crate::Parity;

/// Tallies of μ = −1, +1, 0.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SignCounts {
    pub minus: u64,
    pub plus: u64,
    pub zero: u64,
}

impl SignCounts {
    #[inline]
    pub fn add(&mut self, mu: i8) {
        match mu {
            -1 => self.minus += 1,
            1 => self.plus += 1,
            _ => self.zero += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.minus + self.plus + self.zero
    }

    pub fn squarefree(&self) -> u64 {
        self.minus + self.plus
    }

    /// (freq −1, freq +1, freq 0); zeros when nothing was counted.
    pub fn frequencies(&self) -> [f64; 3] {
        let t = self.total();
        if t == 0 {
            return [0.0; 3];
        }
        let t = t as f64;
        [self.minus as f64 / t, self.plus as f64 / t, self.zero as f64 / t]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencyReport {
    pub start: u64,
    pub end: u64,
    pub parity: Parity,
    pub counts: SignCounts,
    pub freq_minus: f64,
    pub freq_plus: f64,
    pub freq_zero: f64,
    pub freq_squarefree: f64,
    pub limit: DensityConstant,
}

impl FrequencyReport {
    /// |#(−1) − #(+1)| / #squarefree.
    pub fn sign_imbalance(&self) -> f64 {
        let sf = self.counts.squarefree();
        if sf == 0 {
            return 0.0;
        }
        self.counts.minus.abs_diff(self.counts.plus) as f64 / sf as f64
    }
}

fn check_range(start: u64, end: u64, table: &MoebiusTable) -> Result<()> {
    if start == 0 {
        return Err(Error::invalid("ranges start at n = 1"));
    }
    if start > end {
        return Err(Error::invalid(format!("range [{start}, {end}) is reversed")));
    }
    if end > table.limit() + 1 {
        return Err(Error::invalid(format!(
            "range [{start}, {end}) runs past the table limit {}",
            table.limit()
        )));
    }
    Ok(())
}

fn admitted(
    start: u64,
    end: u64,
    parity: Parity,
    table: &MoebiusTable,
) -> impl Iterator<Item = (u64, i8)> + '_ {
    table.values()[(start - 1) as usize..(end - 1) as usize]
        .iter()
        .enumerate()
        .map(move |(k, &v)| (start + k as u64, v))
        .filter(move |&(n, _)| parity.admits(n))
}

/// Counts of μ values over the integers of [start, end) in the parity class.
pub fn empirical_frequencies(
    start: u64,
    end: u64,
    parity: Parity,
    table: &MoebiusTable,
) -> Result<FrequencyReport> {
    check_range(start, end, table)?;
    let mut counts = SignCounts::default();
    for (_, v) in admitted(start, end, parity, table) {
        counts.add(v);
    }
    if counts.total() == 0 {
        return Err(Error::invalid(format!(
            "range [{start}, {end}) has no {parity} integers"
        )));
    }
    let [freq_minus, freq_plus, freq_zero] = counts.frequencies();
    Ok(FrequencyReport {
        start,
        end,
        parity,
        counts,
        freq_minus,
        freq_plus,
        freq_zero,
        freq_squarefree: counts.squarefree() as f64 / counts.total() as f64,
        limit: density_limits().for_parity(parity),
    })
}

/// μ over the squarefree integers of [start, end) in the parity class, zeros
/// dropped. An empty result is not an error.
pub fn sign_sequence_squarefree(
    start: u64,
    end: u64,
    parity: Parity,
    table: &MoebiusTable,
) -> Result<Vec<i8>> {
    check_range(start, end, table)?;
    Ok(admitted(start, end, parity, table)
        .filter(|&(_, v)| v != 0)
        .map(|(_, v)| v)
        .collect())
}
