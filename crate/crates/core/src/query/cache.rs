//! On-disk cache of symmetric-group character tables, one JSON file per `k`.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{self, factorial, Partition};
use crate::symgroup::{self, CharacterTable};

pub const CACHE_FORMAT: u32 = 1;

#[derive(Serialize, Deserialize)]
struct TableFile {
    format: u32,
    k: usize,
    labels: Vec<Partition>,
    classes: Vec<Partition>,
    values: Vec<Vec<String>>,
}

/// How a table request was served.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CacheStatus {
    Memory,
    Hit,
    Built,
    /// The file existed but was unreadable or failed validation.
    Rebuilt,
}

#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, k: usize) -> PathBuf {
        self.dir.join(format!("chartable-{k}.json"))
    }

    /// The table for `S_k`, from memory, disk, or freshly built (and stored).
    pub fn get(&self, k: usize) -> Result<(Arc<CharacterTable>, CacheStatus)> {
        if symgroup::table_is_loaded(k) {
            return Ok((symgroup::table(k)?, CacheStatus::Memory));
        }
        let path = self.path(k);
        let existed = path.exists();
        if let Some(t) = self.load(k) {
            return Ok((symgroup::install_table(t), CacheStatus::Hit));
        }
        let t = symgroup::table(k)?;
        self.store(&t)?;
        Ok((t, if existed { CacheStatus::Rebuilt } else { CacheStatus::Built }))
    }

    /// Read and validate the file for `k`; `None` if missing or corrupt.
    pub fn load(&self, k: usize) -> Option<CharacterTable> {
        let text = fs::read_to_string(self.path(k)).ok()?;
        let file: TableFile = serde_json::from_str(&text).ok()?;
        if file.format != CACHE_FORMAT || file.k != k {
            return None;
        }
        let expected = partition::enumerate(k).ok()?;
        if file.labels != expected || file.classes != expected || file.values.len() != expected.len() {
            return None;
        }
        let mut values = Vec::with_capacity(file.values.len());
        for row in &file.values {
            if row.len() != expected.len() {
                return None;
            }
            values.push(row.iter().map(|v| v.parse::<BigInt>().ok()).collect::<Option<Vec<_>>>()?);
        }
        let t = CharacterTable::from_parts(k, file.labels, file.classes, values);
        plausible(&t).then_some(t)
    }

    pub fn store(&self, t: &CharacterTable) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let file = TableFile {
            format: CACHE_FORMAT,
            k: t.k,
            labels: t.labels.clone(),
            classes: t.classes.clone(),
            values: t.values.iter().map(|r| r.iter().map(BigInt::to_string).collect()).collect(),
        };
        let text = serde_json::to_string(&file).map_err(|e| Error::Io(e.to_string()))?;
        let tmp = self.dir.join(format!(".chartable-{}.json.{}", t.k, std::process::id()));
        fs::write(&tmp, text)?;
        fs::rename(&tmp, self.path(t.k))?;
        Ok(())
    }
}

/// Cheap checks: the trivial character is 1 everywhere and
/// `Σ_λ χ_λ(1)² = k!`.
fn plausible(t: &CharacterTable) -> bool {
    let trivial = Partition::rectangle(t.k as u32, usize::from(t.k > 0));
    let identity = Partition::rectangle(1, t.k);
    let Some(row) = t.labels.iter().position(|l| *l == trivial) else {
        return false;
    };
    if !t.values[row].iter().all(BigInt::is_one) {
        return false;
    }
    let Some(col) = t.classes.iter().position(|c| *c == identity) else {
        return false;
    };
    let sum: BigInt = t.values.iter().map(|r| &r[col] * &r[col]).sum();
    sum == BigInt::from(factorial(t.k))
}
