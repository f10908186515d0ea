//! Content-addressed store of per-member results.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Bumped whenever a cached payload changes shape.
const CACHE_FORMAT: u32 = 1;

#[derive(Debug, Clone, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

#[derive(Serialize)]
struct Entry<'a, K, T> {
    format: u32,
    kind: &'a str,
    key: &'a K,
    value: &'a T,
}

#[derive(Deserialize)]
struct Stored<T> {
    format: u32,
    kind: String,
    value: T,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Result<Self, CliError> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).map_err(|e| CliError::Io(format!("{}: {e}", d.display())))?;
        }
        Ok(Cache { dir })
    }

    /// Returns the stored value for `(kind, key)`, computing and storing it
    /// on a miss. Without a directory it always computes.
    pub fn get_or_compute<K, T>(
        &self,
        kind: &str,
        key: &K,
        compute: impl FnOnce() -> figraph::Result<T>,
    ) -> Result<T, CliError>
    where
        K: Serialize,
        T: Serialize + DeserializeOwned,
    {
        let Some(dir) = &self.dir else {
            return Ok(compute()?);
        };
        let address = address(kind, key)?;
        let path = dir.join(format!("{address}.json"));
        if let Ok(bytes) = fs::read(&path) {
            if let Ok(stored) = serde_json::from_slice::<Stored<T>>(&bytes) {
                if stored.format == CACHE_FORMAT && stored.kind == kind {
                    return Ok(stored.value);
                }
            }
        }
        let value = compute()?;
        let entry = Entry { format: CACHE_FORMAT, kind, key, value: &value };
        write_atomic(&path, &serde_json::to_vec(&entry)?)?;
        Ok(value)
    }
}

fn address<K: Serialize>(kind: &str, key: &K) -> Result<String, CliError> {
    let canonical = serde_json::to_vec(&(CACHE_FORMAT, figraph::SCHEMA_VERSION, kind, key))?;
    Ok(hex::encode(Sha256::digest(&canonical)))
}

/// Writes to a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    static COUNTER: AtomicU64 = AtomicU64::new(0);
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("artifact");
    let tmp = path.with_file_name(format!(
        ".{name}.{}.{}.tmp",
        std::process::id(),
        COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    fs::write(&tmp, bytes).map_err(io)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io(e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hit_skips_compute() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf())).unwrap();
        let v: u64 = cache.get_or_compute("square", &7u64, || Ok(49)).unwrap();
        assert_eq!(v, 49);
        let v: u64 = cache.get_or_compute("square", &7u64, || panic!("recomputed")).unwrap();
        assert_eq!(v, 49);
        let v: u64 = cache.get_or_compute("cube", &7u64, || Ok(343)).unwrap();
        assert_eq!(v, 343);
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
    }

    #[test]
    fn corrupt_entry_is_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf())).unwrap();
        let _: u64 = cache.get_or_compute("k", &1u8, || Ok(1)).unwrap();
        let file = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
        fs::write(&file, b"{").unwrap();
        let v: u64 = cache.get_or_compute("k", &1u8, || Ok(2)).unwrap();
        assert_eq!(v, 2);
    }
}
