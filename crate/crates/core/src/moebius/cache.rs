//! Binary table cache.
//!
//! Layout, little-endian: `"MOBS"`, `u32` version (1), `u64` limit N, then
//! N signed bytes μ(1), …, μ(N). Nothing may follow the payload.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use super::MoebiusTable;
use crate::error::{Error, Result};

pub const CACHE_MAGIC: [u8; 4] = *b"MOBS";
pub const CACHE_VERSION: u32 = 1;
const HEADER_LEN: usize = 16;

pub fn save_table(table: &MoebiusTable, path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    out.write_all(&CACHE_MAGIC)?;
    out.write_all(&CACHE_VERSION.to_le_bytes())?;
    out.write_all(&table.limit().to_le_bytes())?;
    let bytes: Vec<u8> = table.values().iter().map(|&v| v as u8).collect();
    out.write_all(&bytes)?;
    out.into_inner().map_err(|e| e.into_error())?.sync_all()?;
    Ok(())
}

pub fn load_table(path: impl AsRef<Path>) -> Result<MoebiusTable> {
    let bytes = fs::read(path)?;
    decode(&bytes)
}

fn decode(bytes: &[u8]) -> Result<MoebiusTable> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::CorruptCache(format!(
            "file is {} bytes, shorter than the {HEADER_LEN}-byte header",
            bytes.len()
        )));
    }
    if bytes[..4] != CACHE_MAGIC {
        return Err(Error::CorruptCache(format!("bad magic {:02x?}", &bytes[..4])));
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != CACHE_VERSION {
        return Err(Error::CorruptCache(format!(
            "unsupported version {version}, expected {CACHE_VERSION}"
        )));
    }
    let limit = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
    let payload = &bytes[HEADER_LEN..];
    if limit == 0 || payload.len() as u64 != limit {
        return Err(Error::CorruptCache(format!(
            "declared limit {limit} but payload holds {} bytes",
            payload.len()
        )));
    }
    let mut values = Vec::with_capacity(payload.len() + 1);
    values.push(0i8);
    for (i, &b) in payload.iter().enumerate() {
        let v = b as i8;
        if !(-1..=1).contains(&v) {
            return Err(Error::CorruptCache(format!("μ({}) encoded as {b:#04x}", i + 1)));
        }
        values.push(v);
    }
    if values[1] != 1 {
        return Err(Error::CorruptCache("μ(1) is not 1".into()));
    }
    Ok(MoebiusTable::from_raw(values))
}
