//! Registry of built datasets, optionally mirrored to a directory.

use std::collections::HashMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tdm_core::hypergraph::build_tdm;
use tdm_core::model_json::TdmDocument;
use tdm_core::{Dataset, IngestError, Tdm};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("persisting dataset: {0}")]
    Io(#[from] io::Error),
    #[error("stored dataset {path}: {reason}")]
    Corrupt { path: PathBuf, reason: String },
}

/// A built model and where it came from. Never modified after insertion.
#[derive(Debug)]
pub struct DatasetEntry {
    pub id: String,
    pub sqa_digest: String,
    pub qt_digest: String,
    pub tdm: Tdm,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
}

impl DatasetEntry {
    /// Strong validator for every representation of this dataset.
    pub fn etag(&self) -> String {
        format!("\"{}\"", self.id)
    }
}

#[derive(Serialize, Deserialize)]
struct StoredEntry {
    id: String,
    sqa_digest: String,
    qt_digest: String,
    created_at: u64,
    model: TdmDocument,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Id derived from both sources; lengths are mixed in so the split point counts.
pub fn dataset_id(sqa: &[u8], qt: &[u8]) -> String {
    let mut h = Sha256::new();
    for part in [sqa, qt] {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part);
    }
    hex::encode(h.finalize())[..32].to_string()
}

#[derive(Debug, Default)]
pub struct Store {
    entries: RwLock<HashMap<String, Arc<DatasetEntry>>>,
    data_dir: Option<PathBuf>,
}

impl Store {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Directory-backed store, loading every `*.json` already present.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        let mut entries = HashMap::new();
        let mut paths: Vec<PathBuf> = fs::read_dir(&dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for path in paths {
            let entry = load_entry(&path)?;
            entries.insert(entry.id.clone(), Arc::new(entry));
        }
        Ok(Self {
            entries: RwLock::new(entries),
            data_dir: Some(dir),
        })
    }

    pub fn get(&self, id: &str) -> Option<Arc<DatasetEntry>> {
        self.entries.read().expect("store lock").get(id).cloned()
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("store lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Builds and registers a dataset. The flag is `true` when it was new.
    pub fn insert(&self, sqa: &[u8], qt: &[u8]) -> Result<(Arc<DatasetEntry>, bool), StoreError> {
        let id = dataset_id(sqa, qt);
        if let Some(existing) = self.get(&id) {
            return Ok((existing, false));
        }
        // Build outside the lock; models are small but parsing is the slow part.
        let dataset = Dataset::from_csv(sqa, qt)?;
        let tdm = build_tdm(&dataset.matrices, &dataset.maps);
        let created_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let entry = DatasetEntry {
            id: id.clone(),
            sqa_digest: sha256_hex(sqa),
            qt_digest: sha256_hex(qt),
            tdm,
            created_at,
        };
        let mut map = self.entries.write().expect("store lock");
        if let Some(existing) = map.get(&id) {
            return Ok((existing.clone(), false));
        }
        if let Some(dir) = &self.data_dir {
            save_entry(dir, &entry)?;
        }
        let entry = Arc::new(entry);
        map.insert(id, entry.clone());
        Ok((entry, true))
    }
}

fn save_entry(dir: &Path, entry: &DatasetEntry) -> Result<(), StoreError> {
    let stored = StoredEntry {
        id: entry.id.clone(),
        sqa_digest: entry.sqa_digest.clone(),
        qt_digest: entry.qt_digest.clone(),
        created_at: entry.created_at,
        model: TdmDocument::from(&entry.tdm),
    };
    let text = serde_json::to_string_pretty(&stored).map_err(io::Error::other)?;
    let path = dir.join(format!("{}.json", entry.id));
    let tmp = dir.join(format!(".{}.json.tmp", entry.id));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, &path)?;
    Ok(())
}

fn load_entry(path: &Path) -> Result<DatasetEntry, StoreError> {
    let corrupt = |reason: String| StoreError::Corrupt {
        path: path.to_path_buf(),
        reason,
    };
    let text = fs::read_to_string(path)?;
    let stored: StoredEntry = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
    let tdm = Tdm::try_from(stored.model).map_err(|e| corrupt(e.to_string()))?;
    Ok(DatasetEntry {
        id: stored.id,
        sqa_digest: stored.sqa_digest,
        qt_digest: stored.qt_digest,
        tdm,
        created_at: stored.created_at,
    })
}
