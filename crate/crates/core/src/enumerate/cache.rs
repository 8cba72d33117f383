//! On-disk cache of norm censuses keyed by a hash of the Gram matrix.
//!
//! Each record carries a checksum over its own content; a record whose
//! checksum does not verify, or whose key does not match the request, is
//! treated as absent and the census is recomputed.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::exact::IntMatrix;

pub const CACHE_DIR_ENV: &str = "LATGENUS_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusCache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct Record {
    gram_hash: String,
    bound: i64,
    modulo_negation: bool,
    /// (norm, count) with counts as decimal strings
    counts: Vec<(i64, String)>,
    checksum: String,
}

pub fn gram_hash(gram: &IntMatrix) -> String {
    let mut h = Sha256::new();
    h.update(format!("{}x{};", gram.rows(), gram.cols()));
    for i in 0..gram.rows() {
        for x in gram.row(i) {
            h.update(x.to_string());
            h.update(",");
        }
    }
    hex::encode(h.finalize())
}

fn checksum(gram_hash: &str, bound: i64, modneg: bool, counts: &[(i64, String)]) -> String {
    let mut h = Sha256::new();
    h.update(format!("{gram_hash}|{bound}|{modneg}|"));
    for (k, c) in counts {
        h.update(format!("{k}:{c};"));
    }
    hex::encode(h.finalize())
}

impl CensusCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// Cache rooted at `$LATGENUS_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, hash: &str, bound: i64, modneg: bool) -> PathBuf {
        let tag = if modneg { "half" } else { "full" };
        self.dir.join(format!("{}-{bound}-{tag}.json", &hash[..32]))
    }

    pub fn load(&self, gram: &IntMatrix, bound: i64, modneg: bool) -> Option<BTreeMap<i64, u64>> {
        let hash = gram_hash(gram);
        let text = std::fs::read_to_string(self.path(&hash, bound, modneg)).ok()?;
        let rec: Record = serde_json::from_str(&text).ok()?;
        if rec.gram_hash != hash || rec.bound != bound || rec.modulo_negation != modneg {
            return None;
        }
        if checksum(&rec.gram_hash, rec.bound, rec.modulo_negation, &rec.counts) != rec.checksum {
            return None;
        }
        rec.counts
            .iter()
            .map(|(k, c)| c.parse::<u64>().ok().map(|c| (*k, c)))
            .collect()
    }

    /// Best-effort write; I/O failures only cost a recomputation later.
    pub fn store(&self, gram: &IntMatrix, bound: i64, modneg: bool, counts: &BTreeMap<i64, u64>) {
        let hash = gram_hash(gram);
        let counts: Vec<(i64, String)> = counts.iter().map(|(k, c)| (*k, c.to_string())).collect();
        let rec = Record {
            checksum: checksum(&hash, bound, modneg, &counts),
            gram_hash: hash.clone(),
            bound,
            modulo_negation: modneg,
            counts,
        };
        if std::fs::create_dir_all(&self.dir).is_err() {
            return;
        }
        let path = self.path(&hash, bound, modneg);
        let tmp = path.with_extension("tmp");
        if let Ok(text) = serde_json::to_string_pretty(&rec) {
            if std::fs::write(&tmp, text).is_ok() {
                let _ = std::fs::rename(&tmp, &path);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tempdir(tag: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("latgenus-cache-{tag}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&d);
        d
    }

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempdir("rt");
        let c = CensusCache::new(&dir);
        let g = IntMatrix::from_i64(&[vec![2, -1], vec![-1, 2]]);
        let counts: BTreeMap<i64, u64> = [(1, 0), (2, 3)].into_iter().collect();
        assert!(c.load(&g, 2, true).is_none());
        c.store(&g, 2, true, &counts);
        assert_eq!(c.load(&g, 2, true), Some(counts));
        // tamper with a count
        let path = c.path(&gram_hash(&g), 2, true);
        let text = std::fs::read_to_string(&path).unwrap().replace("\"3\"", "\"4\"");
        std::fs::write(&path, text).unwrap();
        assert!(c.load(&g, 2, true).is_none());
        let _ = std::fs::remove_dir_all(&dir);
    }
}
