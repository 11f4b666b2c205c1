//! Optional on-disk cache of rendered command output.
//!
//! Entries are keyed by a SHA-256 of the command line and configuration.
//! Writers take `<key>.lock` with `create_new`, so concurrent processes never
//! interleave writes; readers only see entries renamed into place whole.

use std::fs::{self, OpenOptions};
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::thread;
use std::time::Duration;

use sha2::{Digest, Sha256};

pub struct Cache {
    dir: PathBuf,
}

/// A cached run: whether every row passed, and the rendered output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub pass: bool,
    pub output: String,
}

struct Lock(PathBuf);

impl Drop for Lock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

const LOCK_ATTEMPTS: usize = 600;

impl Cache {
    pub fn open(dir: &Path) -> std::io::Result<Cache> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    pub fn key(parts: &[&str]) -> String {
        let mut h = Sha256::new();
        for p in parts {
            h.update((p.len() as u64).to_le_bytes());
            h.update(p.as_bytes());
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.out"))
    }

    pub fn get(&self, key: &str) -> Option<Entry> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let (head, output) = text.split_once('\n')?;
        let pass = match head {
            "pass" => true,
            "fail" => false,
            _ => return None,
        };
        Some(Entry { pass, output: output.to_string() })
    }

    fn lock(&self, key: &str) -> std::io::Result<Lock> {
        let path = self.dir.join(format!("{key}.lock"));
        for _ in 0..LOCK_ATTEMPTS {
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(_) => return Ok(Lock(path)),
                Err(e) if e.kind() == ErrorKind::AlreadyExists => thread::sleep(Duration::from_millis(100)),
                Err(e) => return Err(e),
            }
        }
        Err(std::io::Error::new(ErrorKind::TimedOut, format!("cache lock {} held too long", path.display())))
    }

    pub fn put(&self, key: &str, entry: &Entry) -> std::io::Result<()> {
        let _lock = self.lock(key)?;
        let tmp = self.dir.join(format!("{key}.tmp"));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(if entry.pass { b"pass\n" } else { b"fail\n" })?;
        f.write_all(entry.output.as_bytes())?;
        f.sync_all()?;
        fs::rename(tmp, self.path(key))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_lock() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = Cache::key(&["rr", "[]"]);
        assert_ne!(key, Cache::key(&["rr[", "]"]));
        assert!(cache.get(&key).is_none());
        let e = Entry { pass: false, output: "x\ny\n".into() };
        cache.put(&key, &e).unwrap();
        assert_eq!(cache.get(&key), Some(e));
        assert!(!dir.path().join(format!("{key}.lock")).exists());
        let held = cache.lock(&key).unwrap();
        assert!(OpenOptions::new().write(true).create_new(true).open(dir.path().join(format!("{key}.lock"))).is_err());
        drop(held);
        assert!(!dir.path().join(format!("{key}.lock")).exists());
    }
}
