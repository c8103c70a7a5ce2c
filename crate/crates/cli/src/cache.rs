//! On-disk store for enumerated triple sets: one JSON-lines file per
//! `(n, r, variant)`, led by a header line carrying the schema version.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::thread;
use std::time::{Duration, SystemTime};

use anyhow::{Context, Result};
use hornlab::horn::{HornTriple, SetKey, TripleRecord, TripleStore};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "hornlab-triples";
pub const SCHEMA_VERSION: u32 = 1;

const LOCK_WAIT: Duration = Duration::from_millis(25);
const LOCK_ATTEMPTS: usize = 400;
/// Lock files older than this are assumed abandoned.
const STALE_LOCK: Duration = Duration::from_secs(60);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Header {
    schema: String,
    version: u32,
    n: usize,
    r: usize,
    variant: hornlab::horn::Variant,
    count: usize,
}

/// `HORNLAB_CACHE_DIR`, else `hornlab/` under the platform cache root.
pub fn default_cache_dir() -> Option<PathBuf> {
    match std::env::var_os("HORNLAB_CACHE_DIR") {
        Some(dir) if !dir.is_empty() => Some(PathBuf::from(dir)),
        _ => dirs::cache_dir().map(|d| d.join("hornlab")),
    }
}

#[derive(Debug, Clone)]
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: SetKey) -> PathBuf {
        self.dir.join(format!("{}-n{}-r{}.jsonl", key.variant, key.n, key.r))
    }

    /// `None` for a missing, foreign, outdated or malformed file.
    pub fn read(&self, key: SetKey) -> Option<Vec<HornTriple>> {
        let file = File::open(self.path_for(key)).ok()?;
        let mut lines = BufReader::new(file).lines();
        let header: Header = serde_json::from_str(&lines.next()?.ok()?).ok()?;
        if header.schema != SCHEMA
            || header.version != SCHEMA_VERSION
            || (header.n, header.r, header.variant) != (key.n, key.r, key.variant)
        {
            return None;
        }
        let mut triples = Vec::with_capacity(header.count);
        for line in lines {
            let record: TripleRecord = serde_json::from_str(&line.ok()?).ok()?;
            if record.variant != key.variant {
                return None;
            }
            triples.push(record.to_triple().ok()?);
        }
        (triples.len() == header.count).then_some(triples)
    }

    /// Writes through a temporary file and a rename while holding
    /// `<file>.lock`, so readers never see a partial file.
    pub fn write(&self, key: SetKey, triples: &[HornTriple]) -> Result<()> {
        fs::create_dir_all(&self.dir).with_context(|| format!("creating {}", self.dir.display()))?;
        let target = self.path_for(key);
        let _lock = LockFile::acquire(target.with_extension("jsonl.lock"))?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        {
            let out = tmp.as_file_mut();
            let header = Header {
                schema: SCHEMA.into(),
                version: SCHEMA_VERSION,
                n: key.n,
                r: key.r,
                variant: key.variant,
                count: triples.len(),
            };
            writeln!(out, "{}", serde_json::to_string(&header)?)?;
            for t in triples {
                writeln!(out, "{}", serde_json::to_string(&t.to_record(key.variant))?)?;
            }
            out.sync_all()?;
        }
        tmp.persist(&target)
            .with_context(|| format!("renaming into {}", target.display()))?;
        Ok(())
    }
}

impl TripleStore for DiskCache {
    fn load(&self, key: SetKey) -> Option<Vec<HornTriple>> {
        self.read(key)
    }

    fn save(&self, key: SetKey, triples: &[HornTriple]) {
        if let Err(e) = self.write(key, triples) {
            eprintln!("warning: cache not written: {e:#}");
        }
    }
}

/// Exclusive lock held for the lifetime of the value.
struct LockFile(PathBuf);

impl LockFile {
    fn acquire(path: PathBuf) -> Result<Self> {
        for _ in 0..LOCK_ATTEMPTS {
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(_) => return Ok(LockFile(path)),
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                    if is_stale(&path) {
                        let _ = fs::remove_file(&path);
                        continue;
                    }
                    thread::sleep(LOCK_WAIT);
                }
                Err(e) => return Err(e).with_context(|| format!("creating lock {}", path.display())),
            }
        }
        anyhow::bail!("timed out waiting for {}", path.display())
    }
}

fn is_stale(path: &Path) -> bool {
    fs::metadata(path)
        .and_then(|m| m.modified())
        .ok()
        .and_then(|t| SystemTime::now().duration_since(t).ok())
        .is_some_and(|age| age > STALE_LOCK)
}

impl Drop for LockFile {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}
