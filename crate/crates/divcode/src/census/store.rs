//! On-disk cache of census cells: one text file per key, a header line
//! followed by the representatives in matrix text format separated by blank
//! lines. Writes go through a temporary file and a rename.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::{CensusKey, CensusRecord};
use crate::codes::GeneratorMatrix;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("cache i/o on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("corrupt cache file {path}: {msg}")]
    Corrupt { path: PathBuf, msg: String },
}

fn file_name(key: &CensusKey) -> String {
    let cap = key.gamma_cap.map_or_else(|| "all".to_string(), |c| c.to_string());
    format!("q{}-d{}-n{}-k{}-c{}.txt", key.q, key.delta, key.n, key.k, cap)
}

fn header_prefix(key: &CensusKey) -> String {
    let cap = key.gamma_cap.map_or_else(|| "all".to_string(), |c| c.to_string());
    format!("census q={} delta={} n={} k={} cap={} count=", key.q, key.delta, key.n, key.k, cap)
}

/// Writes a complete record. Partial records are refused.
pub fn store(dir: &Path, rec: &CensusRecord) -> Result<(), StoreError> {
    assert!(!rec.partial, "partial census records are not cached");
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| StoreError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let key = rec.key.normalized();
    let path = dir.join(file_name(&key));
    let mut text = format!("{}{}", header_prefix(&key), rec.reps.len());
    text.push('\n');
    for g in &rec.reps {
        text.push('\n');
        text.push_str(&g.to_text());
    }
    let tmp = dir.join(format!(".{}.{}.tmp", file_name(&key), std::process::id()));
    let write = || -> io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, &path)
    };
    write().map_err(|e| {
        let _ = fs::remove_file(&tmp);
        StoreError::Io { path: path.clone(), source: e }
    })
}

/// Reads the record for `key`, or `None` if it is not cached.
pub fn load(dir: &Path, key: &CensusKey) -> Result<Option<CensusRecord>, StoreError> {
    let key = key.normalized();
    let path = dir.join(file_name(&key));
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(source) => return Err(StoreError::Io { path, source }),
    };
    let corrupt = |msg: String| StoreError::Corrupt { path: path.clone(), msg };
    let mut blocks = text.split("\n\n");
    let head = blocks.next().unwrap_or("").trim();
    let count = head
        .strip_prefix(header_prefix(&key).as_str())
        .and_then(|c| c.parse::<usize>().ok())
        .ok_or_else(|| corrupt(format!("bad header {head:?}")))?;
    let mut reps = Vec::with_capacity(count);
    for block in blocks.filter(|b| !b.trim().is_empty()) {
        let g = GeneratorMatrix::parse_text(block).map_err(|e| corrupt(e.to_string()))?;
        if g.q() != key.q || g.k() != key.k as usize || g.n() != key.n as usize {
            return Err(corrupt(format!("matrix with parameters q={} k={} n={}", g.q(), g.k(), g.n())));
        }
        reps.push(g);
    }
    if reps.len() != count {
        return Err(corrupt(format!("header says {count} representatives, found {}", reps.len())));
    }
    Ok(Some(CensusRecord { key, count, reps, partial: false }))
}
