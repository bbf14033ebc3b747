//! Collects output files into one directory with a checksummed manifest.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

pub const MANIFEST_NAME: &str = "MANIFEST.tsv";
const HEADER: &str = "# name\tparameters\tbytes\tsha256\n";

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("missing input `{0}`")]
    Missing(PathBuf),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleItem {
    pub path: PathBuf,
    /// Free-form description of how the file was produced.
    pub params: String,
}

impl BundleItem {
    pub fn new(path: impl Into<PathBuf>, params: impl Into<String>) -> Self {
        BundleItem {
            path: path.into(),
            params: params.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub name: String,
    pub params: String,
    pub bytes: usize,
    pub sha256: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn serialize(&self) -> String {
        let mut out = HEADER.to_string();
        for e in &self.entries {
            let params = e.params.replace(['\t', '\n'], " ");
            out.push_str(&format!("{}\t{}\t{}\t{}\n", e.name, params, e.bytes, e.sha256));
        }
        out
    }
}

pub fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> BundleError + '_ {
    move |source| BundleError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Copies every item into `dir` and writes `MANIFEST.tsv` there. All inputs
/// are checked before anything is written. Clashing file names get a
/// numeric prefix.
pub fn bundle(dir: &Path, items: &[BundleItem]) -> Result<Manifest, BundleError> {
    if let Some(missing) = items.iter().find(|i| !i.path.is_file()) {
        return Err(BundleError::Missing(missing.path.clone()));
    }
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut manifest = Manifest::default();
    for (i, item) in items.iter().enumerate() {
        let data = fs::read(&item.path).map_err(io_err(&item.path))?;
        let base = item
            .path
            .file_name()
            .map_or_else(|| format!("item{i}"), |n| n.to_string_lossy().into_owned());
        let name = if base == MANIFEST_NAME || manifest.entries.iter().any(|e| e.name == base) {
            format!("{i}-{base}")
        } else {
            base
        };
        let target = dir.join(&name);
        fs::write(&target, &data).map_err(io_err(&target))?;
        manifest.entries.push(ManifestEntry {
            name,
            params: item.params.clone(),
            bytes: data.len(),
            sha256: sha256_hex(&data),
        });
    }
    let path = dir.join(MANIFEST_NAME);
    fs::write(&path, manifest.serialize()).map_err(io_err(&path))?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
