use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const MANIFEST_SCHEMA: &str = "pseudotour.manifest/1";

/// Writes `text` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), String> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    tmp.write_all(text.as_bytes())
        .map_err(|e| format!("{}: {e}", path.display()))?;
    tmp.persist(path)
        .map_err(|e| format!("{}: {}", path.display(), e.error))?;
    Ok(())
}

/// Sends `text` to `path` when given, stdout otherwise.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => write_atomic(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Reads an input file and records its digest.
pub struct Inputs {
    digests: BTreeMap<String, String>,
}

impl Inputs {
    pub fn new() -> Inputs {
        Inputs {
            digests: BTreeMap::new(),
        }
    }

    pub fn read(&mut self, path: &Path) -> Result<String, String> {
        let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let hex: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
        self.digests.insert(path.display().to_string(), hex);
        String::from_utf8(bytes).map_err(|_| format!("{}: not UTF-8", path.display()))
    }
}

#[derive(Serialize)]
pub struct RunManifest {
    pub schema: &'static str,
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: String,
    pub argv: Vec<String>,
    pub params: Value,
    pub seed: Option<u64>,
    pub inputs: BTreeMap<String, String>,
    pub exit_code: u8,
    pub outcome: Value,
}

impl RunManifest {
    pub fn new(subcommand: &str, argv: Vec<String>, params: Value, seed: Option<u64>, inputs: Inputs) -> RunManifest {
        RunManifest {
            schema: MANIFEST_SCHEMA,
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            subcommand: subcommand.to_string(),
            argv,
            params,
            seed,
            inputs: inputs.digests,
            exit_code: 0,
            outcome: Value::Null,
        }
    }

    pub fn write(&self, path: &Path) -> Result<(), String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| e.to_string())?;
        s.push('\n');
        write_atomic(path, &s)
    }
}
