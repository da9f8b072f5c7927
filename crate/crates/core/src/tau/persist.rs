//! Append-only persistence for the tau cache.
//!
//! One entry per line: `genus|d1,d2,...|value|checksum`, where the checksum is
//! the first 16 hex digits of SHA-256 over the preceding fields. A file with any
//! malformed line is discarded as a whole.

use std::collections::HashSet;
use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use sha2::{Digest, Sha256};

use super::{cache_seed, cache_snapshot, TauKey};
use crate::exact::{parse_rational, Rational};

const FILE_NAME: &str = "tau-cache.v1";

struct Attached {
    path: PathBuf,
    persisted: HashSet<TauKey>,
}

static ATTACHED: Mutex<Option<Attached>> = Mutex::new(None);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheLoad {
    Fresh,
    Loaded(usize),
    Discarded,
}

fn checksum(body: &str) -> String {
    let digest = Sha256::digest(body.as_bytes());
    hex::encode(&digest[..8])
}

fn render(key: &TauKey, value: &Rational) -> String {
    let idx: Vec<String> = key.indices.iter().map(|d| d.to_string()).collect();
    let body = format!("{}|{}|{}", key.genus, idx.join(","), value);
    let sum = checksum(&body);
    format!("{body}|{sum}")
}

fn parse_line(line: &str) -> Option<(TauKey, Rational)> {
    let (body, sum) = line.rsplit_once('|')?;
    if checksum(body) != sum {
        return None;
    }
    let mut parts = body.split('|');
    let genus: i64 = parts.next()?.parse().ok()?;
    let idx = parts.next()?;
    let value = parse_rational(parts.next()?)?;
    if parts.next().is_some() {
        return None;
    }
    let indices = if idx.is_empty() {
        vec![]
    } else {
        idx.split(',')
            .map(|d| d.parse().ok())
            .collect::<Option<Vec<i64>>>()?
    };
    Some((TauKey::new(genus, indices), value))
}

/// Loads `dir/tau-cache.v1` into the in-memory cache and remembers the file
/// for [`flush_cache`]. A corrupt file is removed and nothing is loaded.
pub fn attach_cache_dir(dir: &Path) -> io::Result<CacheLoad> {
    fs::create_dir_all(dir)?;
    let path = dir.join(FILE_NAME);
    let mut persisted = HashSet::new();
    let status = match fs::read_to_string(&path) {
        Ok(text) => {
            let parsed: Option<Vec<_>> = text.lines().map(parse_line).collect();
            match parsed {
                Some(entries) => {
                    let count = entries.len();
                    persisted.extend(entries.iter().map(|(k, _)| k.clone()));
                    cache_seed(entries);
                    CacheLoad::Loaded(count)
                }
                None => {
                    fs::remove_file(&path)?;
                    CacheLoad::Discarded
                }
            }
        }
        Err(e) if e.kind() == io::ErrorKind::NotFound => CacheLoad::Fresh,
        Err(e) => return Err(e),
    };
    *ATTACHED.lock().expect("cache attachment") = Some(Attached { path, persisted });
    Ok(status)
}

/// Appends every cache entry not yet on disk. Returns the number written.
pub fn flush_cache() -> io::Result<usize> {
    let mut guard = ATTACHED.lock().expect("cache attachment");
    let Some(att) = guard.as_mut() else {
        return Ok(0);
    };
    let mut out = String::new();
    let mut written = 0;
    for (k, v) in cache_snapshot() {
        if att.persisted.insert(k.clone()) {
            out.push_str(&render(&k, &v));
            out.push('\n');
            written += 1;
        }
    }
    if written > 0 {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&att.path)?;
        f.write_all(out.as_bytes())?;
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn line_round_trip() {
        let key = TauKey::new(2, vec![3, 2]);
        let line = render(&key, &rat(29, 5760));
        assert_eq!(parse_line(&line), Some((key, rat(29, 5760))));
        let tampered = line.replacen("29", "28", 1);
        assert_eq!(parse_line(&tampered), None);
    }
}
