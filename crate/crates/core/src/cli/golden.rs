//! Bundled relation matrices of the eight catalogue schemes, checked against a SHA-256 manifest.

use sha2::{Digest, Sha256};

use super::schemefile::{parse_scheme_file, SchemeFile};
use crate::scheme::{verify_scheme, Scheme};

pub struct GoldenFile {
    pub id: &'static str,
    pub file_name: &'static str,
    pub text: &'static str,
}

macro_rules! golden {
    ($id:literal, $file:literal) => {
        GoldenFile { id: $id, file_name: $file, text: include_str!(concat!("../../data/", $file)) }
    };
}

pub const GOLDEN: &[GoldenFile] = &[
    golden!("AS05[1]", "AS05_1.txt"),
    golden!("AS06[3]", "AS06_3.txt"),
    golden!("AS08[2]", "AS08_2.txt"),
    golden!("AS09[3]", "AS09_3.txt"),
    golden!("AS10[3]", "AS10_3.txt"),
    golden!("AS10[6]", "AS10_6.txt"),
    golden!("AS16[30]", "AS16_30.txt"),
    golden!("AS24[43]", "AS24_43.txt"),
];

pub const MANIFEST: &str = include_str!("../../data/SHA256SUMS");

pub fn golden_file(id: &str) -> Option<&'static GoldenFile> {
    GOLDEN.iter().find(|g| g.id == id)
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Hash recorded for `file_name` in the manifest.
pub fn manifest_hash(file_name: &str) -> Option<&'static str> {
    MANIFEST.lines().find_map(|l| {
        let (hash, name) = l.split_once("  ")?;
        (name.trim() == file_name).then_some(hash)
    })
}

#[derive(Debug, thiserror::Error)]
pub enum GoldenError {
    #[error("unknown scheme id {0}")]
    Unknown(String),
    #[error("{0}: hash mismatch")]
    Hash(String),
    #[error("{0}: {1}")]
    Parse(String, super::schemefile::ParseError),
    #[error("{0}: {1}")]
    Refuted(String, crate::scheme::Refutation),
}

impl GoldenFile {
    pub fn hash_ok(&self) -> bool {
        manifest_hash(self.file_name) == Some(sha256_hex(self.text).as_str())
    }

    pub fn parse(&self) -> Result<SchemeFile, GoldenError> {
        parse_scheme_file(self.text).map_err(|e| GoldenError::Parse(self.id.into(), e))
    }

    /// Parsed, hash-checked and verified scheme.
    pub fn scheme(&self) -> Result<Scheme, GoldenError> {
        if !self.hash_ok() {
            return Err(GoldenError::Hash(self.id.into()));
        }
        let f = self.parse()?;
        verify_scheme(&f.relations).map_err(|e| GoldenError::Refuted(self.id.into(), e))
    }
}

pub fn golden_scheme(id: &str) -> Result<Scheme, GoldenError> {
    golden_file(id).ok_or_else(|| GoldenError::Unknown(id.into()))?.scheme()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::CATALOGUE;

    #[test]
    fn bundle_matches_construction() {
        assert_eq!(GOLDEN.len(), CATALOGUE.len());
        for e in CATALOGUE {
            let g = golden_file(e.id).unwrap();
            assert!(g.hash_ok(), "{}", e.id);
            let f = g.parse().unwrap();
            assert_eq!(f.id.as_deref(), Some(e.id));
            assert_eq!(f.relations, e.scheme().relations());
            assert!(golden_scheme(e.id).is_ok());
        }
    }
}
