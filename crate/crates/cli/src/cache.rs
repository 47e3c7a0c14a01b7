//! On-disk memo of counting sequences.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use dyck_core::{dp, RestrictionSpec, Sequence};
use sha2::{Digest, Sha256};

/// Sequences keyed by canonical spec and `N`, one decimal term per line.
#[derive(Clone, Debug)]
pub struct SequenceCache {
    dir: PathBuf,
}

impl SequenceCache {
    pub fn new(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(SequenceCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(spec: &RestrictionSpec, n: usize) -> String {
        let text = format!(
            "A={};B={};C={};D={};N={n}",
            spec.peaks, spec.valleys, spec.up_runs, spec.down_runs
        );
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    pub fn path(&self, spec: &RestrictionSpec, n: usize) -> PathBuf {
        self.dir.join(format!("{}.txt", Self::key(spec, n)))
    }

    pub fn encode(seq: &Sequence) -> String {
        seq.terms.iter().map(|t| format!("{t}\n")).collect()
    }

    pub fn decode(text: &str) -> Option<Sequence> {
        text.lines().map(|l| l.parse().ok()).collect::<Option<Vec<_>>>().map(Sequence::new)
    }

    pub fn load(&self, spec: &RestrictionSpec, n: usize) -> Option<Sequence> {
        let text = fs::read_to_string(self.path(spec, n)).ok()?;
        Self::decode(&text).filter(|s| s.len() == n + 1)
    }

    pub fn store(&self, spec: &RestrictionSpec, n: usize, seq: &Sequence) -> std::io::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(Self::encode(seq).as_bytes())?;
        tmp.persist(self.path(spec, n)).map_err(|e| e.error)?;
        Ok(())
    }

    /// `a(0..=n)`, from the cache when present. With `verify`, a hit is
    /// recomputed and must match byte for byte.
    pub fn sequence(&self, spec: &RestrictionSpec, n: usize, verify: bool) -> Result<Sequence, String> {
        if let Some(hit) = self.load(spec, n) {
            if verify {
                let fresh = dp::sequence(spec, n).map_err(|e| e.to_string())?;
                let on_disk = fs::read(self.path(spec, n)).map_err(|e| e.to_string())?;
                if on_disk != Self::encode(&fresh).into_bytes() {
                    return Err(format!("cache entry {} differs from recomputation", self.path(spec, n).display()));
                }
            }
            return Ok(hit);
        }
        let seq = dp::sequence(spec, n).map_err(|e| e.to_string())?;
        self.store(spec, n, &seq).map_err(|e| format!("cache write failed: {e}"))?;
        Ok(seq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hit_equals_recomputation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SequenceCache::new(dir.path()).unwrap();
        let spec = RestrictionSpec::peaks_valleys("2r+3".parse().unwrap(), "-".parse().unwrap());
        let first = cache.sequence(&spec, 20, false).unwrap();
        assert!(cache.path(&spec, 20).exists());
        let second = cache.sequence(&spec, 20, true).unwrap();
        assert_eq!(first, second);
        assert_eq!(first, dp::sequence(&spec, 20).unwrap());
    }

    #[test]
    fn verify_mode_catches_tampering() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SequenceCache::new(dir.path()).unwrap();
        let spec = RestrictionSpec::unrestricted();
        cache.sequence(&spec, 5, false).unwrap();
        fs::write(cache.path(&spec, 5), "1\n1\n2\n5\n14\n43\n").unwrap();
        assert!(cache.sequence(&spec, 5, true).is_err());
        assert_eq!(cache.sequence(&spec, 5, false).unwrap().terms[5], 43.into());
    }

    #[test]
    fn keys_separate_specs_and_lengths() {
        let a = RestrictionSpec::unrestricted();
        let b = RestrictionSpec::runs("1".parse().unwrap(), "-".parse().unwrap());
        assert_ne!(SequenceCache::key(&a, 10), SequenceCache::key(&a, 11));
        assert_ne!(SequenceCache::key(&a, 10), SequenceCache::key(&b, 10));
    }
}
