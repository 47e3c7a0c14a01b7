//! Sets of non-negative integers: finitely many elements plus arithmetic
//! progressions `{a*r + b : r >= 0}`.
//!
//! Every constructor returns the canonical form, so structural equality,
//! ordering and hashing all agree with equality of the underlying sets.
//! The canonical form has no excludes; every eventually-periodic residue
//! class becomes one progression whose offset is as small as possible and
//! whatever is left over goes into the finite part.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::ParseSetError;

/// The progression `{modulus * r + offset : r >= 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Progression {
    pub modulus: u32,
    pub offset: u32,
}

impl Progression {
    pub fn new(modulus: u32, offset: u32) -> Self {
        assert!(modulus > 0, "progression modulus must be positive");
        Progression { modulus, offset }
    }

    pub fn contains(&self, x: u32) -> bool {
        x >= self.offset && (x - self.offset).is_multiple_of(self.modulus)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntSet {
    aps: Vec<Progression>,
    includes: BTreeSet<u32>,
    excludes: BTreeSet<u32>,
}

impl IntSet {
    pub fn empty() -> Self {
        IntSet::default()
    }

    pub fn finite<I: IntoIterator<Item = u32>>(elems: I) -> Self {
        IntSet {
            aps: Vec::new(),
            includes: elems.into_iter().collect(),
            excludes: BTreeSet::new(),
        }
    }

    pub fn progression(modulus: u32, offset: u32) -> Self {
        Self::from_parts(vec![Progression::new(modulus, offset)], [], [])
    }

    /// Build from raw parts and canonicalize.
    pub fn from_parts<I, E>(aps: Vec<Progression>, includes: I, excludes: E) -> Self
    where
        I: IntoIterator<Item = u32>,
        E: IntoIterator<Item = u32>,
    {
        IntSet {
            aps,
            includes: includes.into_iter().collect(),
            excludes: excludes.into_iter().collect(),
        }
        .canonicalize()
    }

    pub fn progressions(&self) -> &[Progression] {
        &self.aps
    }

    pub fn includes(&self) -> &BTreeSet<u32> {
        &self.includes
    }

    pub fn excludes(&self) -> &BTreeSet<u32> {
        &self.excludes
    }

    pub fn is_empty(&self) -> bool {
        self.aps.is_empty() && self.includes.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.aps.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.includes.contains(&x)
            || (!self.excludes.contains(&x) && self.aps.iter().any(|p| p.contains(x)))
    }

    /// Largest finite element, exclude or offset; zero for the empty set.
    pub fn max_anchor(&self) -> u32 {
        let a = self.includes.iter().next_back().copied().unwrap_or(0);
        let e = self.excludes.iter().next_back().copied().unwrap_or(0);
        let o = self.aps.iter().map(|p| p.offset).max().unwrap_or(0);
        a.max(e).max(o)
    }

    /// Least common multiple of the moduli (1 when there are none).
    pub fn period(&self) -> u32 {
        self.aps.iter().fold(1, |acc, p| acc.lcm(&p.modulus))
    }

    /// Membership mask for `0..len`.
    pub fn mask(&self, len: usize) -> Vec<bool> {
        (0..len).map(|x| self.contains(x as u32)).collect()
    }

    /// Unique representative of the membership predicate.
    pub fn canonicalize(&self) -> IntSet {
        if self.aps.is_empty() {
            let includes: BTreeSet<u32> = self
                .includes
                .difference(&self.excludes)
                .copied()
                .collect();
            return IntSet::finite(includes);
        }
        let period = self.period();
        // Membership is periodic with `period` from `tail` onwards.
        let tail = self.max_anchor() + 1;
        let pattern: Vec<bool> = (0..period).map(|i| self.contains(tail + i)).collect();
        let min_period = (1..=period)
            .filter(|d| period.is_multiple_of(*d))
            .find(|&d| (0..period as usize).all(|i| pattern[i] == pattern[i % d as usize]))
            .unwrap_or(period);

        let mut aps = Vec::new();
        for i in 0..min_period {
            let start = tail + i;
            if !self.contains(start) {
                continue;
            }
            let mut offset = start;
            while offset >= min_period && self.contains(offset - min_period) {
                offset -= min_period;
            }
            aps.push(Progression::new(min_period, offset));
        }
        aps.sort();
        let includes = (0..tail)
            .filter(|&x| self.contains(x) && !aps.iter().any(|p| p.contains(x)))
            .collect();
        IntSet {
            aps,
            includes,
            excludes: BTreeSet::new(),
        }
    }

    /// `{x - 1 : x in self, x >= 1}`.
    pub fn shift_down(&self) -> IntSet {
        let aps = self
            .aps
            .iter()
            .map(|p| {
                if p.offset >= 1 {
                    Progression::new(p.modulus, p.offset - 1)
                } else {
                    Progression::new(p.modulus, p.modulus - 1)
                }
            })
            .collect();
        let dec = |s: &BTreeSet<u32>| -> Vec<u32> {
            s.iter().filter(|&&x| x >= 1).map(|&x| x - 1).collect()
        };
        IntSet::from_parts(aps, dec(&self.includes), dec(&self.excludes))
    }

    pub fn remove(&self, x: u32) -> IntSet {
        if !self.contains(x) {
            return self.clone();
        }
        let mut includes = self.includes.clone();
        includes.remove(&x);
        let mut excludes = self.excludes.clone();
        excludes.insert(x);
        IntSet::from_parts(self.aps.clone(), includes, excludes)
    }

    /// Number of distinct sets reachable by repeated `shift_down`.
    pub fn shift_orbit_len(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut cur = self.clone();
        while seen.insert(cur.clone()) {
            cur = cur.shift_down();
        }
        seen.len()
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        let atoms: Vec<String> = self
            .includes
            .iter()
            .map(|x| x.to_string())
            .chain(self.aps.iter().map(|p| format!("{}r+{}", p.modulus, p.offset)))
            .collect();
        f.write_str(&atoms.join(","))
    }
}

impl FromStr for IntSet {
    type Err = ParseSetError;

    /// Comma-separated atoms, each a literal `n` or a progression `<a>r+<b>`;
    /// `-` or the empty string is the empty set.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "-" {
            return Ok(IntSet::empty());
        }
        let mut aps = Vec::new();
        let mut includes = Vec::new();
        let mut pos = text.len() - text.trim_start().len();
        for atom in trimmed.split(',') {
            let lead = atom.len() - atom.trim_start().len();
            let body: String = atom.chars().filter(|c| !c.is_whitespace()).collect();
            let at = pos + lead;
            let err = |reason: &str| ParseSetError {
                position: at,
                atom: atom.trim().to_string(),
                reason: reason.to_string(),
            };
            if body.is_empty() {
                return Err(err("empty atom"));
            }
            if let Some((a, b)) = body.split_once("r+") {
                let modulus: u32 = a.parse().map_err(|_| err("bad modulus"))?;
                let offset: u32 = b.parse().map_err(|_| err("bad offset"))?;
                if modulus == 0 {
                    return Err(err("modulus must be positive"));
                }
                aps.push(Progression::new(modulus, offset));
            } else {
                includes.push(body.parse().map_err(|_| err("expected integer or <a>r+<b>"))?);
            }
            pos += atom.len() + 1;
        }
        Ok(IntSet::from_parts(aps, includes, []))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> IntSet {
        s.parse().unwrap()
    }

    #[test]
    fn membership() {
        assert!(set("2r+3").contains(7));
        assert!(!set("2r+3").contains(1));
        assert!(set("2,5").contains(5));
        assert!(!set("2,5").contains(3));
    }

    #[test]
    fn shift_down_examples() {
        assert_eq!(set("2r+3").shift_down(), set("2r+2"));
        assert_eq!(IntSet::progression(2, 0).shift_down(), set("2r+1"));
        assert_eq!(set("2,5").shift_down(), set("1,4"));
        assert_eq!(set("0").shift_down(), IntSet::empty());
    }

    #[test]
    fn remove_examples() {
        assert_eq!(set("2,5").remove(2), set("5"));
        assert_eq!(set("2r+1").remove(1), set("2r+3"));
        assert_eq!(set("2r+1").remove(2), set("2r+1"));
        let holed = set("2r+1").remove(5);
        assert!(holed.contains(3) && !holed.contains(5) && holed.contains(7));
    }

    #[test]
    fn canonicalize_examples() {
        let a = IntSet::from_parts(vec![Progression::new(2, 1)], [3], []);
        assert_eq!(a.to_string(), "2r+1");
        let b = IntSet::from_parts(vec![Progression::new(2, 1)], [], [1, 3]);
        assert_eq!(b, set("2r+5"));
        assert_eq!(IntSet::empty().canonicalize(), IntSet::empty());
        // {1,2,3,...} written two ways
        let c = IntSet::from_parts(vec![Progression::new(2, 1), Progression::new(2, 2)], [], []);
        assert_eq!(c, set("1r+1"));
    }

    #[test]
    fn parse_print() {
        assert_eq!(set("1,4").to_string(), "1,4");
        assert_eq!(set("-").to_string(), "-");
        assert_eq!(set("").to_string(), "-");
        assert_eq!(set(" 4 , 1 ").to_string(), "1,4");
        assert_eq!(set("2r+5,1").to_string(), "1,2r+5");
        assert_eq!(set("2r+3,1").to_string(), "2r+1");
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = "1,x".parse::<IntSet>().unwrap_err();
        assert_eq!(e.position, 2);
        assert!("0r+1".parse::<IntSet>().is_err());
        assert!("1,,2".parse::<IntSet>().is_err());
        assert!("2r+".parse::<IntSet>().is_err());
    }
}
