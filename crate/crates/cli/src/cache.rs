use std::fs;
use std::path::{Path, PathBuf};

use moebius_core::{load_table, save_table, sieve_moebius, MoebiusTable};

use crate::error::CliError;

/// Directory of `mobius-<limit>.mobs` files.
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn path_for(&self, limit: u64) -> PathBuf {
        self.dir.join(format!("mobius-{limit}.mobs"))
    }

    /// Smallest cached limit ≥ `limit`.
    fn covering(&self, limit: u64) -> Option<(u64, PathBuf)> {
        let entries = fs::read_dir(&self.dir).ok()?;
        entries
            .filter_map(|e| e.ok())
            .filter_map(|e| {
                let name = e.file_name();
                let cached: u64 = name
                    .to_str()?
                    .strip_prefix("mobius-")?
                    .strip_suffix(".mobs")?
                    .parse()
                    .ok()?;
                (cached >= limit).then(|| (cached, e.path()))
            })
            .min_by_key(|(cached, _)| *cached)
    }

    /// μ(1..=limit), from the cache when a file covers it, otherwise sieved
    /// and written back.
    pub fn table(&self, limit: u64) -> Result<(MoebiusTable, PathBuf), CliError> {
        if limit == 0 {
            return Err(CliError::usage("limit must be at least 1"));
        }
        if let Some((cached, path)) = self.covering(limit) {
            let table = load_table(&path)?;
            if table.limit() != cached {
                return Err(CliError::CorruptCache(format!(
                    "{} holds limit {}, name says {cached}",
                    path.display(),
                    table.limit()
                )));
            }
            let table = if cached == limit {
                table
            } else {
                table.truncated(limit)?
            };
            return Ok((table, path));
        }
        eprintln!("note: no cached table covers {limit}; sieving");
        let table = sieve_moebius(limit)?;
        let path = self.path_for(limit);
        self.store(&table, &path)?;
        eprintln!("note: cached {}", path.display());
        Ok((table, path))
    }

    fn store(&self, table: &MoebiusTable, path: &Path) -> Result<(), CliError> {
        fs::create_dir_all(&self.dir).map_err(|e| {
            CliError::usage(format!(
                "cannot create cache directory {}: {e}",
                self.dir.display()
            ))
        })?;
        save_table(table, path)
            .map_err(|e| CliError::usage(format!("cannot write cache file {}: {e}", path.display())))
    }
}
