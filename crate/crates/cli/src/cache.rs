//! Append-only JSON-lines store of solver certificates.

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use turan_core::solver::TOOLKIT_VERSION;
use turan_core::Certificate;

pub const CACHE_ENV: &str = "TURAN_CACHE";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub value: Certificate,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
    pub toolkit_version: String,
}

/// Versions agree on major and minor number.
pub fn compatible(version: &str) -> bool {
    fn major_minor(v: &str) -> Vec<&str> {
        v.split('.').take(2).collect()
    }
    major_minor(version) == major_minor(TOOLKIT_VERSION)
}

#[derive(Clone, Debug)]
pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Cache { path: path.into() }
    }

    /// The cache named by `TURAN_CACHE`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|p| !p.is_empty()).map(Cache::new)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Every readable entry in file order. Lines that fail to parse are
    /// skipped with a warning.
    pub fn entries(&self) -> io::Result<Vec<CacheEntry>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e),
        };
        let mut out = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CacheEntry>(&line) {
                Ok(entry) => out.push(entry),
                Err(e) => log::warn!("{}:{}: skipping corrupt cache line: {e}", self.path.display(), i + 1),
            }
        }
        Ok(out)
    }

    /// The latest compatible certificate for `key`. Budget-limited
    /// certificates are only returned when `require_optimal` is false.
    pub fn lookup(&self, key: &str, require_optimal: bool) -> io::Result<Option<Certificate>> {
        Ok(self
            .entries()?
            .into_iter()
            .rev()
            .filter(|e| e.key == key && compatible(&e.toolkit_version))
            .find(|e| e.value.optimal || !require_optimal)
            .map(|e| e.value))
    }

    /// Appends `cert` unless an equally good entry exists. A proven optimum
    /// supersedes an earlier budget-limited entry; lookups take the latest.
    pub fn store(&self, cert: &Certificate) -> io::Result<bool> {
        let key = cert.spec.key();
        if let Some(old) = self.lookup(&key, false)? {
            if old.optimal || !cert.optimal {
                return Ok(false);
            }
        }
        let entry = CacheEntry {
            key,
            value: cert.clone(),
            created_at: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            toolkit_version: TOOLKIT_VERSION.to_string(),
        };
        let mut line = serde_json::to_string(&entry).map_err(io::Error::other)?;
        line.push('\n');
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        file.lock()?;
        file.write_all(line.as_bytes())?;
        file.flush()?;
        file.unlock()?;
        Ok(true)
    }
}
