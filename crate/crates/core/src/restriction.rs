use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::intset::IntSet;

/// Forbidden peak heights, valley heights, up-run lengths and down-run lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RestrictionSpec {
    pub peaks: IntSet,
    pub valleys: IntSet,
    pub up_runs: IntSet,
    pub down_runs: IntSet,
}

impl RestrictionSpec {
    pub fn new(peaks: IntSet, valleys: IntSet, up_runs: IntSet, down_runs: IntSet) -> Self {
        RestrictionSpec {
            peaks,
            valleys,
            up_runs,
            down_runs,
        }
    }

    pub fn unrestricted() -> Self {
        Self::default()
    }

    pub fn peaks_valleys(peaks: IntSet, valleys: IntSet) -> Self {
        Self::new(peaks, valleys, IntSet::empty(), IntSet::empty())
    }

    pub fn runs(up_runs: IntSet, down_runs: IntSet) -> Self {
        Self::new(IntSet::empty(), IntSet::empty(), up_runs, down_runs)
    }

    /// Swap the up-run and down-run restrictions (path reversal).
    pub fn reversed(&self) -> Self {
        Self::new(
            self.peaks.clone(),
            self.valleys.clone(),
            self.down_runs.clone(),
            self.up_runs.clone(),
        )
    }

    /// Reject any set containing 0.
    pub fn validate(&self) -> Result<()> {
        for (name, s) in self.named_sets() {
            if s.contains(0) {
                return Err(Error::NonPositiveSet { name });
            }
        }
        Ok(())
    }

    pub fn named_sets(&self) -> [(&'static str, &IntSet); 4] {
        [
            ("A", &self.peaks),
            ("B", &self.valleys),
            ("C", &self.up_runs),
            ("D", &self.down_runs),
        ]
    }
}

impl fmt::Display for RestrictionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A={{{}}} B={{{}}} C={{{}}} D={{{}}}",
            self.peaks, self.valleys, self.up_runs, self.down_runs
        )
    }
}

/// Counting sequence `a(0), a(1), ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Sequence {
    pub terms: Vec<BigInt>,
}

impl Sequence {
    pub fn new(terms: Vec<BigInt>) -> Self {
        Sequence { terms }
    }

    pub fn from_u64s(terms: &[u64]) -> Self {
        Sequence::new(terms.iter().map(|&t| BigInt::from(t)).collect())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn prefix(&self, len: usize) -> Sequence {
        Sequence::new(self.terms[..len.min(self.terms.len())].to_vec())
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        f.write_str(&parts.join(", "))
    }
}
