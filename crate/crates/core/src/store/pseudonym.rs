use std::env;
use std::fmt;
use std::fs;
use std::path::Path;

use hmac::{Hmac, KeyInit, Mac};
use sha2::Sha256;

use super::StoreError;

/// Environment variable holding the pseudonymization key.
pub const KEY_ENV_VAR: &str = "CORPUSCLE_KEY";

pub const MIN_KEY_LEN: usize = 16;

/// Secret key for [`pseudonymize`]. Never serialized; `Debug` is redacted.
#[derive(Clone, PartialEq, Eq)]
pub struct PseudonymKey(Vec<u8>);

impl PseudonymKey {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Result<Self, StoreError> {
        let bytes = bytes.into();
        if bytes.len() < MIN_KEY_LEN {
            return Err(StoreError::WeakKey(bytes.len()));
        }
        Ok(PseudonymKey(bytes))
    }

    /// Read the key from `CORPUSCLE_KEY`; `Ok(None)` when unset.
    pub fn from_env() -> Result<Option<Self>, StoreError> {
        match env::var_os(KEY_ENV_VAR) {
            None => Ok(None),
            Some(v) => PseudonymKey::new(v.into_encoded_bytes()).map(Some),
        }
    }

    /// Key file contents with one trailing newline stripped.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, StoreError> {
        let path = path.as_ref();
        let mut bytes = fs::read(path).map_err(|e| StoreError::io(path, e))?;
        if bytes.last() == Some(&b'\n') {
            bytes.pop();
            if bytes.last() == Some(&b'\r') {
                bytes.pop();
            }
        }
        PseudonymKey::new(bytes)
    }
}

impl fmt::Debug for PseudonymKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PseudonymKey(<{} bytes>)", self.0.len())
    }
}

fn tag(handle: &str, key: &PseudonymKey, round: u8) -> String {
    let mut mac = <Hmac<Sha256> as KeyInit>::new_from_slice(&key.0).expect("hmac accepts any key length");
    mac.update(handle.as_bytes());
    if round > 0 {
        mac.update(&[0, round]);
    }
    hex::encode(&mac.finalize().into_bytes()[..8])
}

/// Keyed one-way pseudonym: `"u:"` followed by 16 hex chars of
/// HMAC-SHA256(key, handle). If the hex digits happen to contain the handle
/// itself, the MAC is re-derived with a round counter until they don't.
pub fn pseudonymize(handle: &str, key: &PseudonymKey) -> Result<String, StoreError> {
    if handle.is_empty() {
        return Err(StoreError::EmptyHandle);
    }
    let lower = handle.to_ascii_lowercase();
    let mut round = 0u8;
    let mut hexed = tag(handle, key, round);
    while hexed.contains(&lower) && round < u8::MAX {
        round += 1;
        hexed = tag(handle, key, round);
    }
    Ok(format!("u:{hexed}"))
}
