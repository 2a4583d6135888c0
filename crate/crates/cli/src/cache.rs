//! Append-only JSON-lines cache of [`CountRecord`]s.
//!
//! Each line is one [`CacheEntry`]. Entries written by another tool version
//! are ignored on load, as are lines that fail to parse.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use motivic_core::enumerate::{CountMethod, CountRecord};
use serde::{Deserialize, Serialize};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub space: String,
    pub q: u32,
    pub method: CountMethod,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: String,
    pub key: CacheKey,
    pub record: CountRecord,
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    entries: HashMap<CacheKey, CountRecord>,
    /// Lines skipped on load because of a version mismatch.
    pub stale: usize,
}

impl Cache {
    /// Loads `path`; a missing file is an empty cache.
    pub fn open(path: &Path) -> io::Result<Cache> {
        let mut cache = Cache { path: path.to_path_buf(), entries: HashMap::new(), stale: 0 };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e),
        };
        for line in BufReader::new(file).lines() {
            let Ok(entry) = serde_json::from_str::<CacheEntry>(&line?) else { continue };
            if entry.version != TOOL_VERSION {
                cache.stale += 1;
                continue;
            }
            cache.entries.insert(entry.key, entry.record);
        }
        Ok(cache)
    }

    pub fn get(&self, space: &str, q: u32, method: CountMethod) -> Option<&CountRecord> {
        self.entries.get(&CacheKey { space: space.to_string(), q, method })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Appends one line. The line is written with a single `write_all`.
    pub fn insert(&mut self, record: CountRecord) -> io::Result<()> {
        let key = CacheKey { space: record.space.clone(), q: record.q, method: record.method };
        let entry = CacheEntry { version: TOOL_VERSION.to_string(), key: key.clone(), record: record.clone() };
        let mut line = serde_json::to_string(&entry).map_err(io::Error::other)?;
        line.push('\n');
        OpenOptions::new().create(true).append(true).open(&self.path)?.write_all(line.as_bytes())?;
        self.entries.insert(key, record);
        Ok(())
    }
}
