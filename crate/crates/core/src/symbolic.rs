//! Expansion of restriction states into a closed system of polynomial
//! equations, one per state.
//!
//! Peak/valley states `f[A,B]` count paths avoiding peak heights in `A` and
//! valley heights in `B`. Run-length states come in two kinds: `h[C,C1,D,D1]`
//! counts paths whose first ascent avoids `C1`, last descent avoids `D1` and
//! every other run avoids `C`/`D`; `H[...]` is the same for paths that only
//! touch the axis at their endpoints.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::intset::IntSet;
use crate::mpoly::MPoly;
use crate::restriction::RestrictionSpec;
use crate::series::Series;

/// Default bound on the number of distinct states in one system.
pub const STATE_GUARD: usize = 10_000;

/// Order used by the power-series fixpoint check.
pub const FIXPOINT_ORDER: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateLabel {
    Ab { a: IntSet, b: IntSet },
    CdH { c: IntSet, c1: IntSet, d: IntSet, d1: IntSet },
    CdIrr { c: IntSet, c1: IntSet, d: IntSet, d1: IntSet },
}

impl StateLabel {
    pub fn kind(&self) -> &'static str {
        match self {
            StateLabel::Ab { .. } => "AB",
            StateLabel::CdH { .. } => "CD_h",
            StateLabel::CdIrr { .. } => "CD_H",
        }
    }

    fn prefix(&self) -> &'static str {
        match self {
            StateLabel::Ab { .. } => "f",
            StateLabel::CdH { .. } => "h",
            StateLabel::CdIrr { .. } => "H",
        }
    }

    /// Name derived from a stable (FNV-1a) hash of the canonical description.
    pub fn var_name(&self) -> String {
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self.to_string().bytes() {
            hash ^= u64::from(b);
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        format!("{}_{:08x}", self.prefix(), hash >> 32)
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateLabel::Ab { a, b } => write!(f, "f[A={a}; B={b}]"),
            StateLabel::CdH { c, c1, d, d1 } => write!(f, "h[C={c}; C1={c1}; D={d}; D1={d1}]"),
            StateLabel::CdIrr { c, c1, d, d1 } => write!(f, "H[C={c}; C1={c1}; D={d}; D1={d1}]"),
        }
    }
}

/// `coeff * x^x_pow * prod(unknowns)`, with unknowns as state labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleTerm {
    pub coeff: i64,
    pub x_pow: u32,
    pub factors: Vec<StateLabel>,
}

impl RuleTerm {
    fn constant(coeff: i64) -> Self {
        RuleTerm { coeff, x_pow: 0, factors: Vec::new() }
    }

    fn new(coeff: i64, x_pow: u32, factors: Vec<StateLabel>) -> Self {
        RuleTerm { coeff, x_pow, factors }
    }
}

/// Right-hand side of `state = sum of terms`.
pub type Rule = Vec<RuleTerm>;

fn successors(rule: &Rule) -> Vec<StateLabel> {
    let mut out: Vec<StateLabel> = Vec::new();
    for t in rule {
        for s in &t.factors {
            if !out.contains(s) {
                out.push(s.clone());
            }
        }
    }
    out
}

/// One step of the peak/valley rules.
pub fn expand_ab_state(a: &IntSet, b: &IntSet) -> (Rule, Vec<StateLabel>) {
    let me = StateLabel::Ab { a: a.clone(), b: b.clone() };
    let rule = if a.contains(0) {
        let next = StateLabel::Ab { a: a.remove(0), b: b.clone() };
        vec![RuleTerm::new(1, 0, vec![next]), RuleTerm::constant(-1)]
    } else {
        let next = StateLabel::Ab { a: a.shift_down(), b: b.shift_down() };
        if b.contains(0) {
            vec![RuleTerm::constant(1), RuleTerm::new(1, 1, vec![next])]
        } else {
            vec![RuleTerm::constant(1), RuleTerm::new(1, 1, vec![next, me])]
        }
    };
    let succ = successors(&rule);
    (rule, succ)
}

/// One step of the run-length rules.
pub fn expand_cd_state(label: &StateLabel) -> (Rule, Vec<StateLabel>) {
    let rule = match label {
        StateLabel::CdH { c, c1, d, d1 } => {
            let irr = |c1: &IntSet, d1: &IntSet| StateLabel::CdIrr {
                c: c.clone(),
                c1: c1.clone(),
                d: d.clone(),
                d1: d1.clone(),
            };
            let whole = StateLabel::CdH { c: c.clone(), c1: c.clone(), d: d.clone(), d1: d.clone() };
            vec![
                RuleTerm::constant(1),
                RuleTerm::new(1, 0, vec![irr(c1, d1)]),
                RuleTerm::new(1, 0, vec![irr(c1, d), whole, irr(c, d1)]),
            ]
        }
        StateLabel::CdIrr { c, c1, d, d1 } => {
            if c1.contains(1) || d1.contains(1) {
                let next = StateLabel::CdIrr { c: c.clone(), c1: c1.remove(1), d: d.clone(), d1: d1.remove(1) };
                vec![RuleTerm::new(1, 0, vec![next]), RuleTerm::new(-1, 1, Vec::new())]
            } else {
                let next = StateLabel::CdH {
                    c: c.clone(),
                    c1: c1.shift_down(),
                    d: d.clone(),
                    d1: d1.shift_down(),
                };
                vec![RuleTerm::new(1, 1, vec![next])]
            }
        }
        StateLabel::Ab { a, b } => return expand_ab_state(a, b),
    };
    let succ = successors(&rule);
    (rule, succ)
}

fn expand(label: &StateLabel) -> (Rule, Vec<StateLabel>) {
    match label {
        StateLabel::Ab { a, b } => expand_ab_state(a, b),
        _ => expand_cd_state(label),
    }
}

/// Closed system `u_i = rhs_i`. Polynomials use variable 0 for `x` and
/// variable `i + 1` for unknown `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquationSystem {
    unknowns: Vec<StateLabel>,
    rhs: Vec<MPoly>,
}

impl EquationSystem {
    /// Breadth-first closure from `root` (which becomes unknown 0).
    pub fn close(root: StateLabel, guard: usize) -> Result<Self> {
        let mut index: BTreeMap<StateLabel, usize> = BTreeMap::new();
        let mut unknowns = vec![root.clone()];
        let mut rules: Vec<Rule> = Vec::new();
        index.insert(root, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let (rule, succ) = expand(&unknowns[i]);
            for s in succ {
                if !index.contains_key(&s) {
                    if unknowns.len() >= guard {
                        return Err(Error::Divergence { limit: guard });
                    }
                    index.insert(s.clone(), unknowns.len());
                    queue.push_back(unknowns.len());
                    unknowns.push(s);
                }
            }
            if rules.len() <= i {
                rules.resize(i + 1, Vec::new());
            }
            rules[i] = rule;
        }
        let nvars = unknowns.len() + 1;
        let rhs = rules
            .iter()
            .map(|rule| {
                let mut p = MPoly::zero(nvars);
                for t in rule {
                    let mut e = vec![0; nvars];
                    e[0] = t.x_pow;
                    for s in &t.factors {
                        e[index[s] + 1] += 1;
                    }
                    p = p.add(&MPoly::monomial(nvars, e, BigInt::from(t.coeff)));
                }
                p
            })
            .collect();
        Ok(EquationSystem { unknowns, rhs })
    }

    pub fn unknowns(&self) -> &[StateLabel] {
        &self.unknowns
    }

    pub fn root(&self) -> &StateLabel {
        &self.unknowns[0]
    }

    pub fn len(&self) -> usize {
        self.unknowns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unknowns.is_empty()
    }

    /// Number of polynomial variables (`x` plus the unknowns).
    pub fn nvars(&self) -> usize {
        self.unknowns.len() + 1
    }

    pub fn rhs(&self, i: usize) -> &MPoly {
        &self.rhs[i]
    }

    /// `u_i - rhs_i`.
    pub fn equation(&self, i: usize) -> MPoly {
        MPoly::var(self.nvars(), i + 1).sub(&self.rhs[i])
    }

    pub fn equations(&self) -> Vec<MPoly> {
        (0..self.len()).map(|i| self.equation(i)).collect()
    }

    /// `x` followed by the unknowns' generated names.
    pub fn var_names(&self) -> Vec<String> {
        std::iter::once("x".to_string())
            .chain(self.unknowns.iter().map(|u| u.var_name()))
            .collect()
    }

    /// `(name, description)` for each unknown.
    pub fn aliases(&self) -> Vec<(String, String)> {
        self.unknowns.iter().map(|u| (u.var_name(), u.to_string())).collect()
    }

    /// Iterate `u_i <- rhs_i` from `u_i = 1` until the first `order`
    /// coefficients stop changing. The result is indexed by variable, so
    /// entry 0 (standing for `x`) is the series `x` itself.
    pub fn fixpoint_series(&self, order: usize) -> Result<Vec<Series<BigInt>>> {
        let mut values: Vec<Series<BigInt>> = vec![Series::one(order); self.nvars()];
        values[0] = Series::monomial(1, order);
        // every rule either gains a power of x or steps along a finite chain
        let limit = (order + 2) * (self.len() + 2);
        for _ in 0..limit {
            let next: Vec<Series<BigInt>> = (0..self.len())
                .map(|i| self.rhs[i].eval_series(&values, order))
                .collect();
            let changed = next.iter().enumerate().any(|(i, s)| *s != values[i + 1]);
            for (i, s) in next.into_iter().enumerate() {
                values[i + 1] = s;
            }
            if !changed {
                return Ok(values);
            }
        }
        Err(Error::Internal("power-series iteration did not converge".into()))
    }

    /// Render as `name = rhs` lines.
    pub fn render(&self) -> String {
        let names = self.var_names();
        let mut out = String::new();
        for (i, u) in self.unknowns.iter().enumerate() {
            out.push_str(&format!("{} = {}\n", u.var_name(), self.rhs[i].display_with(&names)));
        }
        out
    }
}

pub fn build_peak_valley_system(a: &IntSet, b: &IntSet) -> Result<EquationSystem> {
    RestrictionSpec::peaks_valleys(a.clone(), b.clone()).validate()?;
    EquationSystem::close(StateLabel::Ab { a: a.clone(), b: b.clone() }, STATE_GUARD)
}

pub fn build_run_length_system(c: &IntSet, d: &IntSet) -> Result<EquationSystem> {
    RestrictionSpec::runs(c.clone(), d.clone()).validate()?;
    let root = StateLabel::CdH { c: c.clone(), c1: c.clone(), d: d.clone(), d1: d.clone() };
    EquationSystem::close(root, STATE_GUARD)
}

/// Root series of the fixpoint iteration compared with the given terms.
pub fn fixpoint_matches(sys: &EquationSystem, terms: &[BigInt], order: usize) -> Result<bool> {
    let values = sys.fixpoint_series(order)?;
    let root = values[1].coeffs();
    Ok(terms.len() >= order && root.iter().zip(terms).all(|(a, b)| a == b))
}

/// True when every unknown's fixpoint series is non-zero, i.e. no unknown
/// can be cancelled as a monomial factor.
pub fn nonzero_unknowns(values: &[Series<BigInt>]) -> Vec<bool> {
    values.iter().map(|s| !s.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp;

    fn set(s: &str) -> IntSet {
        s.parse().unwrap()
    }

    fn ab(a: &str, b: &str) -> StateLabel {
        StateLabel::Ab { a: set(a), b: set(b) }
    }

    #[test]
    fn ab_rules() {
        let (rule, succ) = expand_ab_state(&IntSet::empty(), &IntSet::empty());
        assert_eq!(succ, vec![ab("-", "-")]);
        assert_eq!(rule[1], RuleTerm::new(1, 1, vec![ab("-", "-"), ab("-", "-")]));

        let (rule, succ) = expand_ab_state(&set("0,1"), &IntSet::empty());
        assert_eq!(succ, vec![ab("1", "-")]);
        assert_eq!(rule, vec![RuleTerm::new(1, 0, vec![ab("1", "-")]), RuleTerm::constant(-1)]);

        let (_, succ) = expand_ab_state(&set("2r+3"), &IntSet::empty());
        assert_eq!(succ, vec![ab("2r+2", "-"), ab("2r+3", "-")]);

        let (rule, _) = expand_ab_state(&set("3"), &set("0,2"));
        assert_eq!(rule, vec![RuleTerm::constant(1), RuleTerm::new(1, 1, vec![ab("2", "1")])]);
    }

    #[test]
    fn cd_rules() {
        let e = IntSet::empty;
        let irr = |c1: &str| StateLabel::CdIrr { c: e(), c1: set(c1), d: e(), d1: e() };
        let (rule, succ) = expand_cd_state(&irr("1"));
        assert_eq!(succ, vec![irr("-")]);
        assert_eq!(rule[1], RuleTerm::new(-1, 1, vec![]));
        let (rule, _) = expand_cd_state(&irr("-"));
        let h = StateLabel::CdH { c: e(), c1: e(), d: e(), d1: e() };
        assert_eq!(rule, vec![RuleTerm::new(1, 1, vec![h.clone()])]);
        let (_, succ) = expand_cd_state(&h);
        assert_eq!(succ, vec![irr("-"), h]);
    }

    #[test]
    fn unrestricted_system_is_one_equation() {
        let sys = build_peak_valley_system(&IntSet::empty(), &IntSet::empty()).unwrap();
        assert_eq!(sys.len(), 1);
        assert_eq!(sys.render(), format!("{0} = x*{0}^2 + 1\n", sys.root().var_name()));
    }

    #[test]
    fn fixpoint_matches_dp() {
        let cases = [("2,5", "1,4", "-", "-"), ("2r+3", "-", "-", "-"), ("5r+1", "5r+1", "-", "-")];
        for (a, b, _, _) in cases {
            let sys = build_peak_valley_system(&set(a), &set(b)).unwrap();
            let spec = RestrictionSpec::peaks_valleys(set(a), set(b));
            let seq = dp::sequence(&spec, FIXPOINT_ORDER).unwrap();
            assert!(fixpoint_matches(&sys, &seq.terms, FIXPOINT_ORDER).unwrap(), "{a} {b}");
        }
        for (c, d) in [("2", "3"), ("2r+3", "-"), ("2r+2", "2r+1"), ("1", "-"), ("1", "1")] {
            let sys = build_run_length_system(&set(c), &set(d)).unwrap();
            let spec = RestrictionSpec::runs(set(c), set(d));
            let seq = dp::sequence(&spec, FIXPOINT_ORDER).unwrap();
            assert!(fixpoint_matches(&sys, &seq.terms, FIXPOINT_ORDER).unwrap(), "{c} {d}");
        }
    }

    #[test]
    fn deterministic_naming() {
        let s1 = build_run_length_system(&set("2"), &set("3")).unwrap();
        let s2 = build_run_length_system(&set("2"), &set("3")).unwrap();
        assert_eq!(s1.render(), s2.render());
        assert_eq!(ab("-", "-").var_name(), ab("-", "-").var_name());
        assert_ne!(ab("1", "-").var_name(), ab("-", "1").var_name());
    }

    #[test]
    fn rejects_zero() {
        assert!(build_peak_valley_system(&set("0"), &IntSet::empty()).is_err());
    }
}
