//! On-disk Gröbner basis cache. One JSON file per key; writes go through a
//! temporary file and a rename so readers never see partial files.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::groebner::GroebnerBasis;
use crate::jacobi::GroebnerStore;
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Scalar;

pub const CACHE_DIR_ENV: &str = "LGTFT_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    order: String,
    nvars: usize,
    generators: Vec<Vec<(Vec<u32>, Scalar)>>,
}

#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
}

/// `$LGTFT_CACHE_DIR`, else `$XDG_CACHE_HOME/lgtft`, else `~/.cache/lgtft`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(d) = std::env::var_os(CACHE_DIR_ENV) {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(d).join("lgtft");
    }
    match std::env::var_os("HOME") {
        Some(h) => PathBuf::from(h).join(".cache").join("lgtft"),
        None => std::env::temp_dir().join("lgtft-cache"),
    }
}

fn is_entry_name(name: &str) -> bool {
    name.strip_suffix(".json").is_some_and(|k| k.len() == 64 && k.bytes().all(|b| b.is_ascii_hexdigit()))
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Remove every cache entry; other files in the directory are left alone.
    pub fn clean(&self) -> Result<usize> {
        let mut removed = 0;
        let entries = match std::fs::read_dir(&self.dir) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e.into()),
        };
        for entry in entries {
            let entry = entry?;
            if entry.file_name().to_str().is_some_and(is_entry_name) {
                std::fs::remove_file(entry.path())?;
                removed += 1;
            }
        }
        Ok(removed)
    }

    fn write(&self, key: &str, basis: &GroebnerBasis) -> Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let entry = Entry {
            key: key.to_string(),
            order: basis.order().to_string(),
            nvars: basis.nvars(),
            generators: basis
                .generators()
                .iter()
                .map(|g| g.terms().map(|(m, c)| (m.exponents().to_vec(), c.clone())).collect())
                .collect(),
        };
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        std::fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        std::fs::rename(&tmp, self.path(key))?;
        Ok(())
    }
}

impl GroebnerStore for DiskCache {
    fn load(&self, key: &str) -> Option<Vec<Polynomial>> {
        let bytes = std::fs::read(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_slice(&bytes).ok()?;
        if entry.key != key || entry.order != crate::groebner::MONOMIAL_ORDER {
            return None;
        }
        entry
            .generators
            .into_iter()
            .map(|terms| {
                if terms.iter().any(|(e, _)| e.len() != entry.nvars) {
                    return None;
                }
                Some(Polynomial::from_terms(entry.nvars, terms.into_iter().map(|(e, c)| (Monomial::new(e), c))))
            })
            .collect()
    }

    fn store(&self, key: &str, basis: &GroebnerBasis) {
        // a failed write only costs a recomputation next time
        let _ = self.write(key, basis);
    }
}
