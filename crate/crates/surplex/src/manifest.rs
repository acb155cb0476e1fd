//! Run manifests and atomic output writes.
//!
//! Every command that writes results also writes a manifest recording
//! the tool version, the exact options, and a SHA-256 digest of every
//! input and output file. Manifests contain no timestamps or absolute
//! environment details beyond the paths given, so the same inputs and
//! options produce a byte-identical manifest.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Lowercase hex SHA-256 of a file's bytes.
pub fn sha256_file(path: &Path) -> io::Result<String> {
    let mut file = File::open(path)?;
    let mut hasher = Sha256::new();
    let mut buffer = [0u8; 64 * 1024];
    loop {
        let n = file.read(&mut buffer)?;
        if n == 0 {
            break;
        }
        hasher.update(&buffer[..n]);
    }
    Ok(format!("{:x}", hasher.finalize()))
}

/// Write `bytes` to `path` atomically: stage in a temporary file in
/// the same directory, then rename over the target, so readers never
/// observe a half-written file. Missing parent directories are created.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(parent)?;
    let mut temp = tempfile::NamedTempFile::new_in(parent)?;
    temp.write_all(bytes)?;
    temp.flush()?;
    temp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Name and digest of one manifest file entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

/// What a command ran on and what it produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Echo of the effective options, shaped per command.
    pub options: serde_json::Value,
    /// Role -> input file digest (e.g. "lexicon", "norms.humor").
    pub inputs: BTreeMap<String, FileDigest>,
    /// Role -> output file digest.
    pub outputs: BTreeMap<String, FileDigest>,
}

impl Manifest {
    pub fn new(command: &str, options: serde_json::Value) -> Manifest {
        Manifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            options,
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
        }
    }

    pub fn add_input(&mut self, role: &str, path: &Path) -> io::Result<()> {
        let digest = sha256_file(path)?;
        self.inputs.insert(
            role.to_string(),
            FileDigest {
                path: path.display().to_string(),
                sha256: digest,
            },
        );
        Ok(())
    }

    /// Digest an already-written output file.
    pub fn add_output(&mut self, role: &str, path: &Path) -> io::Result<()> {
        let digest = sha256_file(path)?;
        self.outputs.insert(
            role.to_string(),
            FileDigest {
                path: path.display().to_string(),
                sha256: digest,
            },
        );
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        text
    }

    /// Write the manifest atomically to `path`.
    pub fn write(&self, path: &Path) -> io::Result<()> {
        write_atomic(path, self.to_json().as_bytes())
    }
}

/// Manifest path for a single-file output: a `.manifest.json` sibling.
pub fn sibling_manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    out.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_matches_known_vector() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x");
        std::fs::write(&path, b"abc").unwrap();
        assert_eq!(
            sha256_file(&path).unwrap(),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn atomic_write_replaces_contents() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.txt");
        write_atomic(&path, b"first").unwrap();
        write_atomic(&path, b"second").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"second");
        // No stray temp files left behind.
        let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(entries.len(), 1);
    }

    #[test]
    fn manifest_is_deterministic_and_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("in.csv");
        std::fs::write(&input, b"data").unwrap();

        let build = || {
            let mut m = Manifest::new("suite", serde_json::json!({"suite": "all"}));
            m.add_input("lexicon", &input).unwrap();
            m
        };
        let a = build();
        let b = build();
        assert_eq!(a.to_json(), b.to_json(), "no timestamps, no randomness");
        assert!(!a.to_json().to_lowercase().contains("time"));

        let back: Manifest = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn sibling_path_appends_suffix() {
        assert_eq!(
            sibling_manifest_path(Path::new("out/lexicon.tsv")),
            PathBuf::from("out/lexicon.tsv.manifest.json")
        );
    }
}
