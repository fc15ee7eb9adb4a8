use super::MoebiusTable;

const STRIDE: usize = 1024;

/// M(n) = Σ_{k≤n} μ(k) over a borrowed table.
///
/// Stores M at every multiple of a fixed stride and fills the remainder from
/// the table on demand, so memory stays at a few bytes per thousand entries.
#[derive(Debug, Clone)]
pub struct MertensSeries<'a> {
    table: &'a MoebiusTable,
    // checkpoints[b] = M(b * STRIDE - 1), the sum of raw[..b * STRIDE]
    checkpoints: Vec<i64>,
}

pub fn mertens_series(table: &MoebiusTable) -> MertensSeries<'_> {
    let raw = table.raw();
    let mut checkpoints = Vec::with_capacity(raw.len() / STRIDE + 1);
    let mut acc = 0i64;
    checkpoints.push(0);
    for block in raw.chunks(STRIDE) {
        acc += block.iter().map(|&v| v as i64).sum::<i64>();
        if block.len() == STRIDE {
            checkpoints.push(acc);
        }
    }
    MertensSeries { table, checkpoints }
}

impl<'a> MertensSeries<'a> {
    pub fn limit(&self) -> u64 {
        self.table.limit()
    }

    pub fn table(&self) -> &'a MoebiusTable {
        self.table
    }

    /// M(n), with M(0) = 0. Panics beyond the table limit.
    pub fn at(&self, n: u64) -> i64 {
        assert!(n <= self.limit(), "M({n}) beyond limit {}", self.limit());
        let n = n as usize;
        let block = n / STRIDE;
        let tail: i64 = self.table.raw()[block * STRIDE..=n]
            .iter()
            .map(|&v| v as i64)
            .sum();
        self.checkpoints[block] + tail
    }

    /// M(1), M(2), …, M(N).
    pub fn iter(&self) -> impl Iterator<Item = i64> + 'a {
        self.table.values().iter().scan(0i64, |acc, &v| {
            *acc += v as i64;
            Some(*acc)
        })
    }
}
