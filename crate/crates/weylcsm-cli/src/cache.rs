//! Content-addressed result cache for table generation.
//!
//! Each record lives in its own file named by the hash of
//! (Cartan matrix, basis, canonical element words, parabolic set), so the
//! same group reached through a type label and through a raw matrix shares
//! entries exactly when the matrices agree. Files carry a checksum of the
//! record bytes; a mismatch is reported rather than silently recomputed.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use weylcsm::jsonio::ConstantRecord;

pub fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// The cache key for one constant: hash of the Cartan matrix plus the
/// canonical words and basis. Independent of how the system was named.
pub fn cache_key(
    cartan: &[Vec<i64>],
    basis: &str,
    u: &str,
    v: &str,
    w: &str,
    parabolic: &[usize],
) -> String {
    let key = json!({
        "cartan": cartan,
        "basis": basis,
        "u": u,
        "v": v,
        "w": w,
        "parabolic": parabolic,
    });
    hex_digest(key.to_string().as_bytes())
}

pub struct ResultCache {
    dir: PathBuf,
}

impl ResultCache {
    pub fn open(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("cannot create cache directory {}", dir.display()))?;
        Ok(ResultCache {
            dir: dir.to_path_buf(),
        })
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Returns the cached record, failing loudly on checksum mismatch.
    pub fn get(&self, key: &str) -> Result<Option<ConstantRecord>> {
        let path = self.path_for(key);
        let text = match std::fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e).with_context(|| format!("reading {}", path.display())),
        };
        let value: Value = serde_json::from_str(&text)
            .with_context(|| format!("parsing cache file {}", path.display()))?;
        let record_value = value
            .get("record")
            .with_context(|| format!("cache file {} lacks a record", path.display()))?;
        let stored = value
            .get("checksum")
            .and_then(Value::as_str)
            .with_context(|| format!("cache file {} lacks a checksum", path.display()))?;
        let actual = hex_digest(record_value.to_string().as_bytes());
        if stored != actual {
            bail!(
                "cache corruption detected in {} (checksum mismatch); remove the file to recompute",
                path.display()
            );
        }
        Ok(Some(ConstantRecord::from_value(record_value)?))
    }

    pub fn put(&self, key: &str, record: &ConstantRecord) -> Result<()> {
        let record_value = record.to_value();
        let wrapped = json!({
            "checksum": hex_digest(record_value.to_string().as_bytes()),
            "record": record_value,
        });
        let path = self.path_for(key);
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, wrapped.to_string())
            .with_context(|| format!("writing {}", tmp.display()))?;
        std::fs::rename(&tmp, &path)
            .with_context(|| format!("committing {}", path.display()))?;
        Ok(())
    }
}
