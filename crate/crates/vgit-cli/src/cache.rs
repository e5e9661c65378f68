//! On-disk cache of JSON payloads keyed by a SHA-256 digest of the input.
//!
//! Entries are only an optimisation: a missing, unreadable or mismatched entry is treated
//! as a miss and the payload is recomputed.

use std::fs;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Directory holding cache entries; caching is off when unset.
pub const CACHE_DIR_ENV: &str = "VGIT_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    /// `walls`, `roots`, ...
    pub kind: String,
    pub version: String,
    pub created_unix: u64,
    pub payload: Value,
}

#[derive(Debug, Clone, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    pub fn from_env() -> Self {
        Cache {
            dir: std::env::var_os(CACHE_DIR_ENV).filter(|d| !d.is_empty()).map(PathBuf::from),
        }
    }

    pub fn is_enabled(&self) -> bool {
        self.dir.is_some()
    }

    /// Hex digest of the crate version, the payload kind and the canonical input.
    pub fn key(kind: &str, input: &str) -> String {
        let mut h = Sha256::new();
        for part in [env!("CARGO_PKG_VERSION"), kind, input] {
            h.update(part.as_bytes());
            h.update([0u8]);
        }
        hex::encode(h.finalize())
    }

    fn path(&self, kind: &str, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{kind}-{key}.json")))
    }

    pub fn get(&self, kind: &str, input: &str) -> Option<Value> {
        let key = Self::key(kind, input);
        let text = fs::read_to_string(self.path(kind, &key)?).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.key == key && entry.kind == kind).then_some(entry.payload)
    }

    /// Best effort; failures to write leave the cache unchanged.
    pub fn put(&self, kind: &str, input: &str, payload: &Value) {
        let key = Self::key(kind, input);
        let Some(path) = self.path(kind, &key) else {
            return;
        };
        let entry = CacheEntry {
            key,
            kind: kind.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            created_unix: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            payload: payload.clone(),
        };
        let Ok(text) = serde_json::to_string(&entry) else {
            return;
        };
        if fs::create_dir_all(path.parent().expect("joined path")).is_err() {
            return;
        }
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if fs::write(&tmp, text).is_ok() && fs::rename(&tmp, &path).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }

    pub fn get_or_compute<E>(
        &self,
        kind: &str,
        input: &str,
        compute: impl FnOnce() -> Result<Value, E>,
    ) -> Result<Value, E> {
        if let Some(v) = self.get(kind, input) {
            return Ok(v);
        }
        let v = compute()?;
        self.put(kind, input, &v);
        Ok(v)
    }
}
