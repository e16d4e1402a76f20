use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{StoreError, UserRecord};
use crate::document::Document;
use crate::index::{build_index, CorpusIndex};

pub const SCHEMA_VERSION: u64 = 1;

/// Everything persisted for one corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub schema_version: u64,
    pub index: CorpusIndex,
    pub documents: Vec<Document>,
    pub users: Vec<UserRecord>,
}

/// Serialized bytes: pretty JSON with object keys in sorted order.
fn render(snapshot: &Snapshot) -> Vec<u8> {
    // serde_json::Value keeps object keys in a BTreeMap, which sorts them
    let value = serde_json::to_value(snapshot).expect("snapshot is always serializable");
    let mut bytes = serde_json::to_vec_pretty(&value).expect("value is always serializable");
    bytes.push(b'\n');
    bytes
}

/// Write a snapshot atomically (temp file in the same directory, then rename).
pub fn save_snapshot(index: &CorpusIndex, docs: &[Document], users: &[UserRecord], path: impl AsRef<Path>) -> Result<(), StoreError> {
    let path = path.as_ref();
    let snapshot = Snapshot { schema_version: SCHEMA_VERSION, index: index.clone(), documents: docs.to_vec(), users: users.to_vec() };
    let bytes = render(&snapshot);
    let file_name = path.file_name().ok_or_else(|| StoreError::Unwritable {
        path: path.to_path_buf(),
        source: std::io::Error::new(std::io::ErrorKind::InvalidInput, "not a file path"),
    })?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(format!(".tmp-{}", std::process::id()));
    let tmp: PathBuf = path.with_file_name(tmp_name);
    let unwritable = |source| StoreError::Unwritable { path: path.to_path_buf(), source };
    let write = || -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    };
    write().map_err(|e| {
        let _ = fs::remove_file(&tmp);
        unwritable(e)
    })
}

/// Load and fully verify a snapshot; any inconsistency fails the whole load.
pub fn load_snapshot(path: impl AsRef<Path>) -> Result<Snapshot, StoreError> {
    let path = path.as_ref();
    let corrupt = |reason: String| StoreError::CorruptSnapshot { path: path.to_path_buf(), reason };
    let bytes = fs::read(path).map_err(|e| StoreError::io(path, e))?;
    let value: serde_json::Value = serde_json::from_slice(&bytes).map_err(|e| corrupt(format!("not JSON: {e}")))?;
    let version =
        value.get("schema_version").and_then(serde_json::Value::as_u64).ok_or_else(|| corrupt("missing schema_version".into()))?;
    if version != SCHEMA_VERSION {
        return Err(StoreError::SchemaMismatch { found: version, expected: SCHEMA_VERSION });
    }
    let snapshot: Snapshot = serde_json::from_value(value).map_err(|e| corrupt(e.to_string()))?;
    snapshot.index.check_invariants().map_err(corrupt)?;
    let rebuilt = build_index(&snapshot.documents).map_err(|e| corrupt(e.to_string()))?;
    if rebuilt != snapshot.index {
        return Err(corrupt("index does not match documents".into()));
    }
    if super::users_of(&snapshot.documents) != snapshot.users {
        return Err(corrupt("user records do not match documents".into()));
    }
    Ok(snapshot)
}
