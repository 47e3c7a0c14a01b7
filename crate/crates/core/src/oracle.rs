//! Brute-force enumeration of Dyck paths.
//!
//! Deliberately naive: it is the ground truth the dynamic programs are
//! checked against.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::restriction::RestrictionSpec;

/// Largest semi-length [`enumerate_paths`] accepts (Catalan(14) = 2674440).
pub const MAX_ENUMERATION: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    D,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    /// Returns `None` unless the word is a valid Dyck path.
    pub fn new(steps: Vec<Step>) -> Option<Self> {
        let mut h: i64 = 0;
        for s in &steps {
            h += if *s == Step::U { 1 } else { -1 };
            if h < 0 {
                return None;
            }
        }
        (h == 0).then_some(DyckPath { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn semi_length(&self) -> usize {
        self.steps.len() / 2
    }

    /// Reverse the word and swap U with D.
    pub fn reversed(&self) -> DyckPath {
        DyckPath {
            steps: self
                .steps
                .iter()
                .rev()
                .map(|s| match s {
                    Step::U => Step::D,
                    Step::D => Step::U,
                })
                .collect(),
        }
    }

    pub fn statistics(&self) -> PathStats {
        let mut stats = PathStats::default();
        let mut h: u32 = 0;
        let mut i = 0;
        while i < self.steps.len() {
            let step = self.steps[i];
            let mut len = 0;
            while i < self.steps.len() && self.steps[i] == step {
                len += 1;
                i += 1;
            }
            match step {
                Step::U => {
                    h += len;
                    stats.up_run_lengths.push(len);
                    stats.peak_heights.push(h);
                }
                Step::D => {
                    h -= len;
                    stats.down_run_lengths.push(len);
                    if i < self.steps.len() {
                        stats.valley_heights.push(h);
                    }
                }
            }
        }
        stats
    }
}

impl std::str::FromStr for DyckPath {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let steps = s
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(Step::U),
                'D' | 'd' => Ok(Step::D),
                other => Err(format!("unexpected step {other:?}")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        DyckPath::new(steps).ok_or_else(|| format!("{s:?} is not a Dyck path"))
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(if *s == Step::U { "U" } else { "D" })?;
        }
        Ok(())
    }
}

/// Multisets of path statistics, in the order they occur along the path.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PathStats {
    pub peak_heights: Vec<u32>,
    /// Heights at the end of every down-run but the last; may include 0.
    pub valley_heights: Vec<u32>,
    pub up_run_lengths: Vec<u32>,
    pub down_run_lengths: Vec<u32>,
}

impl PathStats {
    pub fn avoids(&self, spec: &RestrictionSpec) -> bool {
        !self.peak_heights.iter().any(|&h| spec.peaks.contains(h))
            && !self.valley_heights.iter().any(|&h| spec.valleys.contains(h))
            && !self.up_run_lengths.iter().any(|&l| spec.up_runs.contains(l))
            && !self.down_run_lengths.iter().any(|&l| spec.down_runs.contains(l))
    }
}

/// All Dyck paths of semi-length `n`, lexicographic with `U < D`.
pub fn enumerate_paths(n: usize) -> Result<Vec<DyckPath>> {
    let mut out = Vec::new();
    for_each_path(n, |steps| {
        out.push(DyckPath {
            steps: steps.to_vec(),
        })
    })?;
    Ok(out)
}

/// Explicit-stack depth-first walk over all Dyck words of semi-length `n`.
fn for_each_path(n: usize, mut visit: impl FnMut(&[Step])) -> Result<()> {
    if n > MAX_ENUMERATION {
        return Err(Error::EnumerationTooLarge {
            n,
            max: MAX_ENUMERATION,
        });
    }
    let len = 2 * n;
    let mut word: Vec<Step> = Vec::with_capacity(len);
    // Each frame: whether the D branch at this depth is still pending.
    let mut pending_d: Vec<bool> = Vec::with_capacity(len);
    let mut ups = 0usize;
    let mut downs = 0usize;
    loop {
        if word.len() == len {
            visit(&word);
            // backtrack to the most recent frame with an untried D
            loop {
                let Some(last) = word.pop() else {
                    return Ok(());
                };
                let try_d = pending_d.pop().unwrap();
                match last {
                    Step::U => ups -= 1,
                    Step::D => downs -= 1,
                }
                if try_d {
                    word.push(Step::D);
                    pending_d.push(false);
                    downs += 1;
                    break;
                }
            }
            continue;
        }
        let can_up = ups < n;
        let can_down = downs < ups;
        if can_up {
            word.push(Step::U);
            pending_d.push(can_down);
            ups += 1;
        } else {
            word.push(Step::D);
            pending_d.push(false);
            downs += 1;
        }
    }
}

pub fn statistics(p: &DyckPath) -> PathStats {
    p.statistics()
}

/// Number of paths of semi-length `n` avoiding every restriction in `spec`.
pub fn count_restricted(spec: &RestrictionSpec, n: usize) -> Result<BigInt> {
    let mut count: u64 = 0;
    for_each_path(n, |steps| {
        if (DyckPath {
            steps: steps.to_vec(),
        })
        .statistics()
        .avoids(spec)
        {
            count += 1;
        }
    })?;
    Ok(BigInt::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intset::IntSet;

    fn set(s: &str) -> IntSet {
        s.parse().unwrap()
    }

    #[test]
    fn five_paths_of_semi_length_three() {
        let paths: Vec<String> = enumerate_paths(3)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(paths, ["UUUDDD", "UUDUDD", "UUDDUD", "UDUUDD", "UDUDUD"]);
    }

    #[test]
    fn empty_path_and_small_counts() {
        let zero = enumerate_paths(0).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].steps().len(), 0);
        assert_eq!(enumerate_paths(5).unwrap().len(), 42);
    }

    #[test]
    fn guard_is_enforced() {
        assert_eq!(
            enumerate_paths(15),
            Err(Error::EnumerationTooLarge { n: 15, max: 14 })
        );
    }

    #[test]
    fn statistics_examples() {
        let s = "UUDUDD".parse::<DyckPath>().unwrap().statistics();
        assert_eq!(s.peak_heights, vec![2, 2]);
        assert_eq!(s.valley_heights, vec![1]);
        assert_eq!(s.up_run_lengths, vec![2, 1]);
        assert_eq!(s.down_run_lengths, vec![1, 2]);

        let s = "UUUDDD".parse::<DyckPath>().unwrap().statistics();
        assert_eq!(s.peak_heights, vec![3]);
        assert!(s.valley_heights.is_empty());
        assert_eq!(s.up_run_lengths, vec![3]);
        assert_eq!(s.down_run_lengths, vec![3]);

        assert_eq!("".parse::<DyckPath>().unwrap().statistics(), PathStats::default());
    }

    #[test]
    fn restricted_counts() {
        let none = RestrictionSpec::unrestricted();
        assert_eq!(count_restricted(&none, 4).unwrap(), BigInt::from(14));
        let motzkin = RestrictionSpec::peaks_valleys(set("2r+3"), IntSet::empty());
        assert_eq!(count_restricted(&motzkin, 4).unwrap(), BigInt::from(9));
        let sample = RestrictionSpec::new(set("1"), IntSet::empty(), set("2"), set("1"));
        assert_eq!(count_restricted(&sample, 3).unwrap(), BigInt::from(1));
    }

    #[test]
    fn reversal_swaps_run_statistics() {
        for p in enumerate_paths(6).unwrap() {
            let (a, b) = (p.statistics(), p.reversed().statistics());
            assert_eq!(
                a.peak_heights.len(),
                a.valley_heights.len() + 1,
                "peaks = valleys + 1 on {p}"
            );
            let sorted = |mut v: Vec<u32>| {
                v.sort();
                v
            };
            assert_eq!(sorted(a.peak_heights), sorted(b.peak_heights));
            assert_eq!(sorted(a.valley_heights), sorted(b.valley_heights));
            assert_eq!(sorted(a.up_run_lengths), sorted(b.down_run_lengths));
        }
    }
}
