//! Content-addressed store for per-index (G) verdicts.
//!
//! One JSON file per key. Writes go to a temporary file in the cache
//! directory and are renamed into place, so readers never see partial files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use equigen_core::groebner::{IndexDetail, Verdict};
use equigen_core::{LocalModel, MPoly, MonomialOrder, ENGINE_VERSION};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub engine: String,
    pub a: u32,
    pub b: u32,
    pub i: u32,
    pub order: String,
    pub verdict: Verdict,
    pub forms: [Verdict; 2],
    pub elapsed_ms: u64,
    /// SHA-256 of the text of each generator and of the tested polynomial, per presentation.
    pub poly_hashes: Vec<String>,
}

impl CacheEntry {
    pub fn detail(&self) -> IndexDetail {
        IndexDetail { verdict: self.verdict, elapsed_ms: self.elapsed_ms, forms: self.forms }
    }
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn poly_hashes(presentations: &[(Vec<MPoly>, MPoly); 2]) -> Vec<String> {
    presentations
        .iter()
        .map(|(gens, p)| {
            let mut text: Vec<String> = gens.iter().map(MPoly::to_text).collect();
            text.push(p.to_text());
            sha256_hex(&text.join("\n"))
        })
        .collect()
}

pub fn key(model: &LocalModel, i: u32, order: MonomialOrder) -> String {
    sha256_hex(&format!("{ENGINE_VERSION}\n{}\n{}\n{i}\n{}", model.a, model.b, order.name()))
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    /// `--cache-dir` / `EQUIGEN_CACHE_DIR`, then `$XDG_CACHE_HOME/equigen`, then `$HOME/.cache/equigen`.
    pub fn default_dir() -> Option<PathBuf> {
        if let Some(x) = std::env::var_os("XDG_CACHE_HOME").filter(|x| !x.is_empty()) {
            return Some(PathBuf::from(x).join("equigen"));
        }
        std::env::var_os("HOME").filter(|x| !x.is_empty()).map(|h| PathBuf::from(h).join(".cache").join("equigen"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Unreadable or mismatching files count as misses.
    pub fn get(&self, key: &str) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.key == key && entry.engine == ENGINE_VERSION).then_some(entry)
    }

    /// Timeouts depend on the budget and are never stored.
    pub fn put(&self, entry: &CacheEntry) -> Result<()> {
        if entry.verdict == Verdict::Timeout {
            return Ok(());
        }
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string_pretty(entry)?.as_bytes())?;
        tmp.flush()?;
        tmp.persist(self.path(&entry.key)).map_err(|e| e.error)?;
        Ok(())
    }

    pub fn purge(&self) -> Result<usize> {
        let mut n = 0;
        for e in fs::read_dir(&self.dir)? {
            let p = e?.path();
            if p.extension().is_some_and(|x| x == "json") {
                fs::remove_file(p)?;
                n += 1;
            }
        }
        Ok(n)
    }
}
