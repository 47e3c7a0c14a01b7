//! Reduction of an equation system to one polynomial `P(x, y)` for the root
//! unknown.
//!
//! Peak/valley systems are chains of linear-fractional maps, so they are
//! solved by composing 2x2 matrices over `Z[x]` and closing the final cycle.
//! Everything else goes through repeated resultants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bipoly::BivariatePoly;
use crate::dp;
use crate::error::{Error, Result};
use crate::guess::verify_equation;
use crate::intset::IntSet;
use crate::linalg::{integer_nullspace, nullspace, rref};
use crate::mpoly::{resultant, MPoly};
use crate::restriction::{RestrictionSpec, Sequence};
use crate::scalar::Fp;
use crate::series::Series;
use crate::symbolic::{self, EquationSystem, FIXPOINT_ORDER};
use crate::upoly::UPoly;

type IntPoly = UPoly<BigInt>;

#[derive(Clone, Debug, PartialEq)]
pub struct EliminationResult {
    pub poly: BivariatePoly,
    /// `poly` annihilates the root series through `x^certificate`.
    pub certificate: usize,
    pub eliminated_count: usize,
}

/// Same contract as [`verify_equation`], which it calls.
pub fn series_root_check(p: &BivariatePoly, seq: &Sequence) -> bool {
    verify_equation(p, seq)
}

/// `y = (a*t + b) / (c*t + d)`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Mobius {
    pub a: IntPoly,
    pub b: IntPoly,
    pub c: IntPoly,
    pub d: IntPoly,
}

impl Mobius {
    pub fn identity() -> Self {
        Mobius { a: IntPoly::one(), b: IntPoly::zero(), c: IntPoly::zero(), d: IntPoly::one() }
    }

    /// `self(other(t))`.
    pub fn compose(&self, o: &Mobius) -> Mobius {
        Mobius {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
        }
    }
}

fn ymul(p: &[IntPoly], q: &[IntPoly]) -> Vec<IntPoly> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![IntPoly::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] = &out[i + j] + &(a * b);
        }
    }
    out
}

fn yadd(p: &[IntPoly], q: &[IntPoly]) -> Vec<IntPoly> {
    let mut out = vec![IntPoly::zero(); p.len().max(q.len())];
    for (i, a) in p.iter().enumerate() {
        out[i] = &out[i] + a;
    }
    for (i, b) in q.iter().enumerate() {
        out[i] = &out[i] + b;
    }
    out
}

fn ypow(p: &[IntPoly], k: usize) -> Vec<IntPoly> {
    (0..k).fold(vec![IntPoly::one()], |acc, _| ymul(&acc, p))
}

/// Coefficients of an MPoly in two unknown variables `s`, `t` as polynomials
/// in `x`; `None` if any other unknown occurs.
fn split_two(p: &MPoly, s: usize, t: Option<usize>) -> Option<BTreeMap<(u32, u32), IntPoly>> {
    let mut out: BTreeMap<(u32, u32), Vec<BigInt>> = BTreeMap::new();
    for (e, c) in p.terms() {
        for (v, &k) in e.iter().enumerate() {
            if k > 0 && v != 0 && v != s && Some(v) != t {
                return None;
            }
        }
        let key = (e[s], t.map_or(0, |t| e[t]));
        let v = out.entry(key).or_default();
        let i = e[0] as usize;
        if v.len() <= i {
            v.resize(i + 1, BigInt::zero());
        }
        v[i] += c;
    }
    Some(out.into_iter().map(|(k, v)| (k, IntPoly::new(v))).collect())
}

/// Solve a system where every equation links its unknown to at most one
/// other unknown, linearly in each. Returns `None` if the structure does not fit.
fn solve_chain(sys: &EquationSystem) -> Option<BivariatePoly> {
    let eqs = sys.equations();
    let mut path: Vec<usize> = Vec::new();
    let mut maps: Vec<Mobius> = Vec::new();
    let mut pos: BTreeMap<usize, usize> = BTreeMap::new();
    let mut s = 1usize;
    let closing: Vec<IntPoly>;
    loop {
        if let Some(&j) = pos.get(&s) {
            // fixed point of the cycle s_j -> ... -> s_j
            let q = maps[j..].iter().fold(Mobius::identity(), |acc, m| acc.compose(m));
            closing = vec![-&q.b, &q.d - &q.a, q.c.clone()];
            maps.truncate(j);
            break;
        }
        pos.insert(s, path.len());
        path.push(s);
        let eq = &eqs[s - 1];
        let others: Vec<usize> = eq.vars().into_iter().filter(|&v| v != 0 && v != s).collect();
        match others.as_slice() {
            [] => {
                let parts = split_two(eq, s, None)?;
                let deg = parts.keys().map(|k| k.0).max()? as usize;
                let mut c = vec![IntPoly::zero(); deg + 1];
                for ((i, _), p) in parts {
                    c[i as usize] = p;
                }
                closing = c;
                break;
            }
            [t] => {
                let parts = split_two(eq, s, Some(*t))?;
                if parts.keys().any(|&(i, j)| i > 1 || j > 1) {
                    return None;
                }
                let g = |k: (u32, u32)| parts.get(&k).cloned().unwrap_or_else(IntPoly::zero);
                // a*s*t + b*s + c*t + d = 0  =>  s = -(c*t + d)/(a*t + b)
                maps.push(Mobius { a: -g((0, 1)), b: -g((0, 0)), c: g((1, 1)), d: g((1, 0)) });
                s = *t;
            }
            _ => return None,
        }
    }
    // root = P(f) with f the closing unknown; invert P and substitute.
    let p = maps.iter().fold(Mobius::identity(), |acc, m| acc.compose(m));
    let num = vec![-&p.b, p.d.clone()];
    let den = vec![p.a.clone(), -&p.c];
    let deg = closing.len() - 1;
    let mut out: Vec<IntPoly> = Vec::new();
    for (i, e) in closing.iter().enumerate() {
        let term = ymul(&ymul(&ypow(&num, i), &ypow(&den, deg - i)), std::slice::from_ref(e));
        out = yadd(&out, &term);
    }
    Some(BivariatePoly::from_y_coeffs(&out))
}

/// Eliminate every non-root unknown by repeated resultants. `removable[v]`
/// marks variables that may be cancelled as monomial factors; `on_step` sees
/// the system after each elimination.
pub fn eliminate_general(
    equations: Vec<MPoly>,
    root: usize,
    removable: &[bool],
    mut on_step: impl FnMut(&[MPoly]),
) -> Result<(MPoly, usize)> {
    let mut eqs: Vec<MPoly> = equations
        .into_iter()
        .map(|e| e.reduce_content(removable))
        .filter(|e| !e.is_zero())
        .collect();
    let nvars = eqs.first().map_or(0, |e| e.nvars());
    let mut eliminated = 0;
    loop {
        let mut best: Option<((usize, u32, bool, usize, usize), usize, usize)> = None;
        for v in 1..nvars {
            if v == root {
                continue;
            }
            let containing: Vec<usize> = (0..eqs.len()).filter(|&i| eqs[i].contains_var(v)).collect();
            if containing.is_empty() {
                continue;
            }
            for &i in &containing {
                let deg = eqs[i].degree_in(v);
                let lc = &eqs[i].coeffs_in(v)[deg as usize];
                let lc_const = lc.vars().is_empty();
                let key = (containing.len(), deg, !lc_const, eqs[i].num_terms(), v);
                if best.as_ref().is_none_or(|b| key < b.0) {
                    best = Some((key, v, i));
                }
            }
        }
        let Some((_, v, pivot_idx)) = best else { break };
        let pivot = eqs.remove(pivot_idx);
        let mut next = Vec::with_capacity(eqs.len());
        for e in eqs {
            if e.contains_var(v) {
                let r = resultant(&pivot, &e, v).reduce_content(removable);
                if !r.is_zero() {
                    next.push(r);
                }
            } else {
                next.push(e);
            }
        }
        eqs = next;
        eliminated += 1;
        on_step(&eqs);
    }
    eqs.into_iter()
        .filter(|e| e.contains_var(root))
        .min_by_key(|e| (e.degree_in(root), e.num_terms()))
        .map(|e| (e, eliminated))
        .ok_or_else(|| Error::Internal("elimination lost the root unknown".into()))
}

/// Fully eliminated polynomial for the root, before factor selection. Also returns the number of unknowns removed.
pub fn eliminate_raw(sys: &EquationSystem) -> Result<(BivariatePoly, usize)> {
    if let Some(p) = solve_chain(sys) {
        return Ok((p.squarefree(), sys.len() - 1));
    }
    // Square-free reduction of the full resultant is costly; the factor
    // search after elimination yields an irreducible polynomial anyway.
    let values = sys.fixpoint_series(FIXPOINT_ORDER)?;
    let removable: Vec<bool> = values.iter().map(|s| !s.is_zero()).collect();
    let (p, eliminated) = eliminate_general(sys.equations(), 1, &removable, |_| {})?;
    let bp = p
        .to_bivariate(1)
        .ok_or_else(|| Error::Internal("unknowns left after elimination".into()))?;
    Ok((bp.strip_trivial_factors(), eliminated))
}

/// Terms needed for the certificate `V >= deg_x + deg_y + 10`.
pub fn certificate_terms(p: &BivariatePoly) -> usize {
    (p.x_degree() + p.y_degree()) as usize + 11
}

enum FactorSearch {
    Found(BivariatePoly),
    NeedTerms(usize),
}

/// Rows `n < nrows` of the fit `sum c_ij x^i f^j`, columns ordered by `j` then `i`.
fn fit_rows<T: Clone + num_traits::Zero>(powers: &[Vec<T>], dx: usize, k: usize, nrows: usize) -> Vec<Vec<T>> {
    (0..nrows)
        .map(|n| {
            (0..=k)
                .flat_map(|j| (0..=dx).map(move |i| (i, j)))
                .map(|(i, j)| if n >= i { powers[j][n - i].clone() } else { T::zero() })
                .collect()
        })
        .collect()
}

fn to_poly(v: Vec<BigInt>, dx: usize) -> BivariatePoly {
    BivariatePoly::from_terms(
        v.into_iter()
            .enumerate()
            .map(|(c, a)| (((c % (dx + 1)) as u32, (c / (dx + 1)) as u32), a)),
    )
    .strip_trivial_factors()
}

/// The unique fit of shape `(dx, k)`: modular solve with rational
/// reconstruction, falling back to exact arithmetic.
fn recover_fit(fp_powers: &[Vec<Fp>], seq: &Sequence, dx: usize, k: usize) -> Option<BivariatePoly> {
    let ncols = (dx + 1) * (k + 1);
    let nrows = (ncols + 30).min(seq.len());
    let basis = nullspace(&fit_rows(fp_powers, dx, k, nrows), ncols);
    if let [v] = basis.as_slice() {
        let pivot = v.iter().find(|c| !c.is_zero())?.inverse()?;
        let fracs: Option<Vec<(i64, i64)>> = v.iter().map(|&c| (c * pivot).rational_reconstruction()).collect();
        if let Some(fracs) = fracs {
            let l = fracs.iter().fold(BigInt::one(), |acc, &(_, d)| acc.lcm(&BigInt::from(d)));
            let ints: Vec<BigInt> = fracs.iter().map(|&(n, d)| BigInt::from(n) * (&l / BigInt::from(d))).collect();
            let q = to_poly(ints, dx);
            if series_root_check(&q, seq) {
                return Some(q);
            }
        }
    }
    let f = Series::new(seq.terms.clone());
    let powers: Vec<Vec<BigInt>> = f.powers(k).into_iter().map(|s| s.into_coeffs()).collect();
    let exact = integer_nullspace(&fit_rows(&powers, dx, k, nrows), ncols);
    exact.into_iter().next().map(|v| to_poly(v, dx))
}

fn search_factor(p: &BivariatePoly, seq: &Sequence) -> Result<FactorSearch> {
    if !series_root_check(p, seq) {
        return Err(Error::Internal(format!("eliminated polynomial {p} does not annihilate the series")));
    }
    let dxp = p.x_degree() as usize;
    let dyp = p.y_degree() as usize;
    if dyp <= 1 {
        return Ok(FactorSearch::Found(p.clone()));
    }
    let f: Series<Fp> = Series::new(seq.terms.iter().map(Fp::from_bigint).collect());
    let powers: Vec<Vec<Fp>> = f.powers(dyp - 1).into_iter().map(|s| s.into_coeffs()).collect();
    let deficient = |dx: usize, k: usize| {
        let ncols = (dx + 1) * (k + 1);
        let mut m = fit_rows(&powers, dx, k, (ncols + 30).min(seq.len()));
        rref(&mut m, ncols).len() < ncols
    };
    for k in 1..dyp {
        let need = (dxp + 1) * (k + 1) + 10;
        if need > seq.len() {
            return Ok(FactorSearch::NeedTerms(need));
        }
        if !deficient(dxp, k) {
            continue;
        }
        // a fit at x-degree d persists at every larger degree
        let (mut lo, mut hi) = (0, dxp);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if deficient(mid, k) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        if let Some(q) = recover_fit(&powers, seq, lo, k) {
            if q.y_degree() >= 1 && p.div_exact(&q).is_some() && series_root_check(&q, seq) {
                return Ok(FactorSearch::Found(q));
            }
        }
    }
    Ok(FactorSearch::Found(p.clone()))
}

/// The factor of `p` that annihilates the series: its minimal polynomial
/// when a proper divisor fits, otherwise `p` itself.
pub fn select_factor(p: &BivariatePoly, seq: &Sequence) -> Result<BivariatePoly> {
    match search_factor(p, seq)? {
        FactorSearch::Found(q) => Ok(q),
        FactorSearch::NeedTerms(needed) => Err(Error::InsufficientTerms { needed, available: seq.len() }),
    }
}

/// Eliminate and keep the factor that annihilates `series`.
pub fn eliminate_to_root(sys: &EquationSystem, series: &Sequence) -> Result<EliminationResult> {
    let (raw, eliminated_count) = eliminate_raw(sys)?;
    let poly = select_factor(&raw, series)?;
    if series.len() < certificate_terms(&poly) {
        return Err(Error::InsufficientTerms { needed: certificate_terms(&poly), available: series.len() });
    }
    Ok(EliminationResult {
        certificate: series.len() - 1,
        poly,
        eliminated_count,
    })
}

fn eliminate_spec(sys: &EquationSystem, spec: &RestrictionSpec, min_terms: usize) -> Result<EliminationResult> {
    let (raw, eliminated_count) = eliminate_raw(sys)?;
    let mut n = min_terms.max(certificate_terms(&raw));
    loop {
        let seq = dp::sequence(spec, n - 1)?;
        match search_factor(&raw, &seq)? {
            FactorSearch::NeedTerms(needed) => n = needed,
            FactorSearch::Found(poly) => {
                return Ok(EliminationResult {
                    certificate: seq.len() - 1,
                    poly,
                    eliminated_count,
                })
            }
        }
    }
}

/// Build and eliminate the peak/valley system, checking against `min_terms` DP terms (at least).
pub fn eliminate_peak_valley(a: &IntSet, b: &IntSet, min_terms: usize) -> Result<EliminationResult> {
    let sys = symbolic::build_peak_valley_system(a, b)?;
    eliminate_spec(&sys, &RestrictionSpec::peaks_valleys(a.clone(), b.clone()), min_terms)
}

/// Build and eliminate the run-length system.
pub fn eliminate_run_length(c: &IntSet, d: &IntSet, min_terms: usize) -> Result<EliminationResult> {
    let sys = symbolic::build_run_length_system(c, d)?;
    eliminate_spec(&sys, &RestrictionSpec::runs(c.clone(), d.clone()), min_terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> IntSet {
        s.parse().unwrap()
    }

    #[test]
    fn catalan() {
        let r = eliminate_peak_valley(&IntSet::empty(), &IntSet::empty(), 30).unwrap();
        assert_eq!(r.poly, BivariatePoly::from_i64_terms(&[(1, 2, 1), (0, 1, -1), (0, 0, 1)]));
        assert_eq!(r.eliminated_count, 0);
    }

    #[test]
    fn motzkin_from_peaks() {
        let r = eliminate_peak_valley(&set("2r+3"), &IntSet::empty(), 30).unwrap();
        let m = BivariatePoly::from_i64_terms(&[(2, 2, 1), (1, 1, 1), (0, 1, -1), (0, 0, 1)]);
        assert_eq!(r.poly, m);
    }

    #[test]
    fn general_route_agrees_with_chain() {
        let sys = symbolic::build_peak_valley_system(&set("2,5"), &set("1,4")).unwrap();
        let chain = solve_chain(&sys).unwrap().squarefree();
        let (p, _) = eliminate_general(sys.equations(), 1, &vec![true; sys.nvars()], |_| {}).unwrap();
        let general = p.to_bivariate(1).unwrap().squarefree();
        assert_eq!(chain, general);
    }

    #[test]
    fn run_lengths_small() {
        // no ascent of length 1: f = 1 + x^2 f^2 ... checked against the series only
        let r = eliminate_run_length(&set("1"), &IntSet::empty(), 40).unwrap();
        let seq = dp::sequence(&RestrictionSpec::runs(set("1"), IntSet::empty()), 40).unwrap();
        assert!(series_root_check(&r.poly, &seq));
    }
}
