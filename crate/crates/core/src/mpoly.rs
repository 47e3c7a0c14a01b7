//! Sparse multivariate integer polynomials, with the handful of operations
//! elimination by resultants needs.
//!
//! Variable 0 is always `x`; the others are unknowns of an equation system.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::series::Series;
use crate::upoly::UPoly;

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        Self::monomial(nvars, e, BigInt::one())
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] > 0)
    }

    pub fn vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.contains_var(v)).collect()
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Coefficients of `v^0 ..= v^deg`.
    pub fn coeffs_in(&self, v: usize) -> Vec<MPoly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut e2 = e.clone();
            e2[v] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    /// `sum_k coeffs[k] * v^k`.
    pub fn from_coeffs_in(nvars: usize, v: usize, coeffs: &[MPoly]) -> Self {
        let mut out = Self::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut e2 = e.clone();
                e2[v] += k as u32;
                out.add_term(e2, a.clone());
            }
        }
        out
    }

    /// Replace variable `v` by `value`.
    pub fn substitute(&self, v: usize, value: &MPoly) -> Self {
        let coeffs = self.coeffs_in(v);
        let mut acc = Self::zero(self.nvars);
        for c in coeffs.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    pub fn integer_content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn leading(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (de, dc) = d.leading()?;
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(de).any(|(a, b)| a < b) {
                return None;
            }
            let (qc, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            let qe: Exponents = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let t = Self::monomial(self.nvars, qe.clone(), qc.clone());
            rem = rem.sub(&t.mul(d));
            q.add_term(qe, qc);
        }
        Some(q)
    }

    /// Divide out integer content, monomial factors in the variables marked
    /// `removable`, and the polynomial-in-x content of the coefficients with
    /// respect to the other variables; make the leading coefficient positive.
    pub fn reduce_content(&self, removable: &[bool]) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut min = vec![u32::MAX; self.nvars];
        for e in self.terms.keys() {
            for (m, &k) in min.iter_mut().zip(e) {
                *m = (*m).min(k);
            }
        }
        for (v, m) in min.iter_mut().enumerate() {
            if !removable.get(v).copied().unwrap_or(false) {
                *m = 0;
            }
        }
        let mut p = MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(&min).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        };
        // content in Z[x] of the coefficients of the non-x monomials
        let mut groups: BTreeMap<Exponents, Vec<(u32, BigInt)>> = BTreeMap::new();
        for (e, c) in &p.terms {
            let mut rest = e.clone();
            rest[0] = 0;
            groups.entry(rest).or_default().push((e[0], c.clone()));
        }
        let mut cont: UPoly<BigInt> = UPoly::zero();
        for g in groups.values() {
            let deg = g.iter().map(|t| t.0).max().unwrap() as usize;
            let mut v = vec![BigInt::zero(); deg + 1];
            for (k, c) in g {
                v[*k as usize] = c.clone();
            }
            cont = cont.gcd(&UPoly::new(v));
            if cont.degree() == Some(0) && cont.coeff(0).is_one() {
                break;
            }
        }
        if cont.degree().unwrap_or(0) > 0 {
            let c = MPoly::from_upoly(self.nvars, 0, &cont);
            p = p.div_exact(&c).expect("x-content divides");
        } else {
            let g = p.integer_content();
            if !g.is_one() {
                p = p.div_int(&g);
            }
        }
        if p.leading().is_some_and(|(_, c)| c.is_negative()) {
            p = p.neg();
        }
        p
    }

    fn div_int(&self, k: &BigInt) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c / k)).collect(),
        }
    }

    /// Embed a univariate polynomial in variable `v`.
    pub fn from_upoly(nvars: usize, v: usize, p: &UPoly<BigInt>) -> Self {
        let mut out = Self::zero(nvars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[v] = k as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    /// Evaluate with `x` as the series variable and each unknown replaced by
    /// the given series (index 0 of `values` is ignored).
    pub fn eval_series(&self, values: &[Series<BigInt>], order: usize) -> Series<BigInt> {
        let mut acc = Series::zero(order);
        for (e, c) in &self.terms {
            let mut t = Series::constant(c.clone(), order).shift(e[0] as usize);
            for v in 1..self.nvars {
                for _ in 0..e[v] {
                    t = &t * &values[v];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Project onto variables `x` and `y = v`; every other variable must be absent.
    pub fn to_bivariate(&self, v: usize) -> Option<crate::bipoly::BivariatePoly> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(k, &d)| d > 0 && k != 0 && k != v) {
                return None;
            }
            out.push(((e[0], e[v]), c.clone()));
        }
        Some(crate::bipoly::BivariatePoly::from_terms(out))
    }
}

/// Resultant of `f` and `g` with respect to variable `v`.
pub fn resultant(f: &MPoly, g: &MPoly, v: usize) -> MPoly {
    let n = f.nvars();
    let fc = f.coeffs_in(v);
    let gc = g.coeffs_in(v);
    let (m, k) = (fc.len() - 1, gc.len() - 1);
    if m == 0 && k == 0 {
        return MPoly::one(n);
    }
    if m == 0 {
        return fc[0].pow(k as u32);
    }
    if k == 0 {
        return gc[0].pow(m as u32);
    }
    if m == 1 || k == 1 {
        // a*v + b: res = sum_j c_j (-b)^j a^(deg - j)
        let (lin, other) = if m == 1 { (&fc, &gc) } else { (&gc, &fc) };
        let (b, a) = (&lin[0], &lin[1]);
        let nb = b.neg();
        let deg = other.len() - 1;
        let mut apow = vec![MPoly::one(n)];
        let mut bpow = vec![MPoly::one(n)];
        for j in 1..=deg {
            apow.push(apow[j - 1].mul(a));
            bpow.push(bpow[j - 1].mul(&nb));
        }
        let mut acc = MPoly::zero(n);
        for (j, c) in other.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&bpow[j]).mul(&apow[deg - j]));
            }
        }
        return acc;
    }
    // Sylvester matrix, fraction-free (Bareiss) determinant.
    let size = m + k;
    let mut mat = vec![vec![MPoly::zero(n); size]; size];
    for r in 0..k {
        for (j, c) in fc.iter().rev().enumerate() {
            mat[r][r + j] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in gc.iter().rev().enumerate() {
            mat[k + r][r + j] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut mat: Vec<Vec<MPoly>>) -> MPoly {
    let size = mat.len();
    let nvars = mat[0][0].nvars();
    let mut sign = false;
    let mut prev = MPoly::one(nvars);
    for i in 0..size {
        if mat[i][i].is_zero() {
            let Some(p) = (i + 1..size).find(|&r| !mat[r][i].is_zero()) else {
                return MPoly::zero(nvars);
            };
            mat.swap(i, p);
            sign = !sign;
        }
        for r in i + 1..size {
            for c in i + 1..size {
                let num = mat[r][c].mul(&mat[i][i]).sub(&mat[r][i].mul(&mat[i][c]));
                mat[r][c] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            mat[r][i] = MPoly::zero(nvars);
        }
        prev = mat[i][i].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl MPoly {
    /// Human-readable form; `names[v]` names variable `v` (defaults `x`, `v1`, ...).
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let name = |v: usize| -> String {
            names.get(v).cloned().unwrap_or_else(|| if v == 0 { "x".into() } else { format!("v{v}") })
        };
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(name(v)),
                    _ => factors.push(format!("{}^{k}", name(v))),
                }
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&factors.join("*"));
            } else {
                out.push_str(&format!("{abs}*{}", factors.join("*")));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize) -> MPoly {
        MPoly::var(n, 0)
    }

    #[test]
    fn resultant_of_linear_and_quadratic() {
        // f = y - (1 + x), g = y^2 - 2: res = (1+x)^2 - 2
        let n = 2;
        let y = MPoly::var(n, 1);
        let one = MPoly::one(n);
        let f = y.sub(&one.add(&x(n)));
        let g = y.mul(&y).sub(&one.scale(&BigInt::from(2)));
        let r = resultant(&f, &g, 1);
        let expected = one.add(&x(n)).pow(2).sub(&one.scale(&BigInt::from(2)));
        assert_eq!(r, expected);
    }

    #[test]
    fn sylvester_resultant_vanishes_on_common_root() {
        // (y - x)(y + 1) and (y - x)(y - 2) share y = x
        let n = 2;
        let y = MPoly::var(n, 1);
        let one = MPoly::one(n);
        let f = y.sub(&x(n)).mul(&y.add(&one));
        let g = y.sub(&x(n)).mul(&y.sub(&one.scale(&BigInt::from(2))));
        assert!(resultant(&f, &g, 1).is_zero());
        // y^2 - x and y^2 - 1: res = (x - 1)^2
        let f = y.mul(&y).sub(&x(n));
        let g = y.mul(&y).sub(&one);
        let r = resultant(&f, &g, 1);
        assert_eq!(r, x(n).sub(&one).pow(2));
    }

    #[test]
    fn exact_division_and_content() {
        let n = 3;
        let a = x(n).add(&MPoly::var(n, 1));
        let b = MPoly::var(n, 2).sub(&MPoly::one(n));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(a.div_exact(&b), None);
        // (x^2 - 1) * x * v1 * (v2 + 2) reduces to v2 + 2
        let messy = x(n)
            .mul(&x(n))
            .sub(&MPoly::one(n))
            .mul(&x(n))
            .mul(&MPoly::var(n, 1))
            .mul(&MPoly::var(n, 2).add(&MPoly::constant(n, 2.into())))
            .scale(&BigInt::from(-6));
        assert_eq!(
            messy.reduce_content(&[true; 3]),
            MPoly::var(n, 2).add(&MPoly::constant(n, 2.into()))
        );
    }

    #[test]
    fn substitution() {
        let n = 2;
        let y = MPoly::var(n, 1);
        let p = y.mul(&y).add(&x(n));
        let s = p.substitute(1, &x(n));
        assert_eq!(s, x(n).mul(&x(n)).add(&x(n)));
    }
}
