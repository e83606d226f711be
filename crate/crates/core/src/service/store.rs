//! File-based persistence.
//!
//! ```text
//! <root>/<material_id>/material.json
//! <root>/<material_id>/audio.wav
//! <root>/<material_id>/attempts/<attempt_id>.json
//! <root>/<material_id>/attempts/<attempt_id>.wav
//! <root>/<material_id>/attempts/<attempt_id>.tsv   (only when an alignment was uploaded)
//! ```
//!
//! Every file is written to a temporary sibling and renamed into place.
//! Writes to one material are serialized by a per-material lock.

use std::collections::HashMap;
use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

use super::Attempt;
use crate::ingest::Material;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("store I/O: {0}")]
    Io(#[from] io::Error),
    #[error("store JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub fn new_id() -> String {
    uuid::Uuid::now_v7().simple().to_string()
}

/// IDs are used as path components, so only `[A-Za-z0-9_-]` is accepted.
pub fn is_valid_id(id: &str) -> bool {
    !id.is_empty()
        && id.len() <= 64
        && id.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_')
}

/// Writes `data` to `path` via a uniquely named temporary file and rename.
pub fn atomic_write(path: &Path, data: &[u8]) -> io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("file");
    let tmp = dir.join(format!(".{name}.{}.tmp", new_id()));
    let result = (|| {
        let mut file = File::create(&tmp)?;
        file.write_all(data)?;
        file.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<Option<T>, StoreError> {
    match fs::read(path) {
        Ok(bytes) => Ok(Some(serde_json::from_slice(&bytes)?)),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), StoreError> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(atomic_write(path, &bytes)?)
}

/// Stored WAV bytes and alignment file of an attempt.
pub type AttemptInputs = (Vec<u8>, Option<String>);

#[derive(Debug)]
pub struct Store {
    root: PathBuf,
    locks: Mutex<HashMap<String, Arc<Mutex<()>>>>,
}

impl Store {
    pub fn open(root: impl Into<PathBuf>) -> io::Result<Self> {
        let root = root.into();
        fs::create_dir_all(&root)?;
        Ok(Self {
            root,
            locks: Mutex::new(HashMap::new()),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn lock_for(&self, material_id: &str) -> Arc<Mutex<()>> {
        let mut locks = self.locks.lock().unwrap_or_else(|e| e.into_inner());
        locks.entry(material_id.to_string()).or_default().clone()
    }

    fn material_dir(&self, id: &str) -> PathBuf {
        self.root.join(id)
    }

    pub fn insert_material(&self, material: &Material, wav: &[u8]) -> Result<(), StoreError> {
        let lock = self.lock_for(&material.material_id);
        let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());
        let dir = self.material_dir(&material.material_id);
        fs::create_dir_all(dir.join("attempts"))?;
        atomic_write(&dir.join("audio.wav"), wav)?;
        // material.json last: its presence marks a complete material
        write_json(&dir.join("material.json"), material)
    }

    pub fn material(&self, id: &str) -> Result<Option<Material>, StoreError> {
        if !is_valid_id(id) {
            return Ok(None);
        }
        read_json(&self.material_dir(id).join("material.json"))
    }

    pub fn material_audio(&self, id: &str) -> Result<Option<Vec<u8>>, StoreError> {
        if !is_valid_id(id) {
            return Ok(None);
        }
        read_optional(&self.material_dir(id).join("audio.wav"))
    }

    /// All materials in creation order.
    pub fn materials(&self) -> Result<Vec<Material>, StoreError> {
        let mut out = Vec::new();
        for entry in fs::read_dir(&self.root)? {
            let entry = entry?;
            let Some(name) = entry.file_name().to_str().map(str::to_string) else {
                continue;
            };
            if is_valid_id(&name) {
                if let Some(m) = self.material(&name)? {
                    out.push(m);
                }
            }
        }
        out.sort_by(|a: &Material, b: &Material| {
            a.created_at
                .cmp(&b.created_at)
                .then_with(|| a.material_id.cmp(&b.material_id))
        });
        Ok(out)
    }

    pub fn insert_attempt(&self, attempt: &Attempt, wav: &[u8], alignment: Option<&str>) -> Result<(), StoreError> {
        let lock = self.lock_for(&attempt.material_id);
        let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());
        let dir = self.material_dir(&attempt.material_id).join("attempts");
        fs::create_dir_all(&dir)?;
        atomic_write(&dir.join(format!("{}.wav", attempt.attempt_id)), wav)?;
        if let Some(text) = alignment {
            atomic_write(&dir.join(format!("{}.tsv", attempt.attempt_id)), text.as_bytes())?;
        }
        write_json(&dir.join(format!("{}.json", attempt.attempt_id)), attempt)
    }

    fn find_attempt_dir(&self, id: &str) -> Result<Option<PathBuf>, StoreError> {
        if !is_valid_id(id) {
            return Ok(None);
        }
        for entry in fs::read_dir(&self.root)? {
            let dir = entry?.path().join("attempts");
            if dir.join(format!("{id}.json")).is_file() {
                return Ok(Some(dir));
            }
        }
        Ok(None)
    }

    pub fn attempt(&self, id: &str) -> Result<Option<Attempt>, StoreError> {
        match self.find_attempt_dir(id)? {
            Some(dir) => read_json(&dir.join(format!("{id}.json"))),
            None => Ok(None),
        }
    }

    /// Stored WAV and optional alignment of an attempt.
    pub fn attempt_inputs(&self, id: &str) -> Result<Option<AttemptInputs>, StoreError> {
        let Some(dir) = self.find_attempt_dir(id)? else {
            return Ok(None);
        };
        let Some(wav) = read_optional(&dir.join(format!("{id}.wav")))? else {
            return Ok(None);
        };
        let alignment = read_optional(&dir.join(format!("{id}.tsv")))?
            .map(|b| String::from_utf8_lossy(&b).into_owned());
        Ok(Some((wav, alignment)))
    }
}

fn read_optional(path: &Path) -> Result<Option<Vec<u8>>, StoreError> {
    match fs::read(path) {
        Ok(b) => Ok(Some(b)),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}
