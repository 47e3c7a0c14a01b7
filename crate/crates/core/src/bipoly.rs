//! Integer polynomials `P(x, y)`, used for algebraic equations `P(x, f(x)) = 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::restriction::Sequence;
use crate::series::Series;
use crate::upoly::{format_upoly, UPoly};

/// Sparse map `(x-degree, y-degree) -> coefficient` without zero entries.
///
/// [`BivariatePoly::canonical`] normalizes to content 1 with the coefficient of
/// the largest `(y-degree, x-degree)` monomial positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), BigInt)>>(terms: I) -> Self {
        let mut map: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (k, c) in terms {
            *map.entry(k).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        BivariatePoly { terms: map }
    }

    /// Convenience for fixtures: `(i, j, c)` means `c * x^i * y^j`.
    pub fn from_i64_terms(terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(i, j, c)| ((i, j), BigInt::from(c))))
    }

    /// Build from coefficients of `y^0, y^1, ...`, each a polynomial in x.
    pub fn from_y_coeffs(coeffs: &[UPoly<BigInt>]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().flat_map(|(j, p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .map(move |(i, c)| ((i as u32, j as u32), c.clone()))
        }))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn y_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Coefficients of `y^0 ..= y^{deg}` as polynomials in x.
    pub fn y_coeffs(&self) -> Vec<UPoly<BigInt>> {
        if self.is_zero() {
            return Vec::new();
        }
        let dy = self.y_degree() as usize;
        let dx = self.x_degree() as usize;
        let mut raw = vec![vec![BigInt::zero(); dx + 1]; dy + 1];
        for (&(i, j), c) in &self.terms {
            raw[j as usize][i as usize] = c.clone();
        }
        raw.into_iter().map(UPoly::new).collect()
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Coefficient of the largest monomial, ordered by y-degree then x-degree.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms
            .iter()
            .max_by_key(|(&(i, j), _)| (j, i))
            .map(|(_, c)| c)
    }

    pub fn canonical(&self) -> Self {
        let Some(lc) = self.leading_coeff() else {
            return self.clone();
        };
        let mut g = self.content();
        if lc.is_negative() {
            g = -g;
        }
        BivariatePoly {
            terms: self.terms.iter().map(|(k, c)| (*k, c / &g)).collect(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    pub fn neg(&self) -> Self {
        BivariatePoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                *out.entry((i + k, j + l)).or_insert_with(BigInt::zero) += a * b;
            }
        }
        out.retain(|_, c| !c.is_zero());
        BivariatePoly { terms: out }
    }

    pub fn derivative_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.1 > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * BigInt::from(j))),
        )
    }

    /// `P(x, f(x))` truncated to the order of `f`.
    pub fn eval_series(&self, f: &Series<BigInt>) -> Series<BigInt> {
        let coeffs: Vec<Series<BigInt>> = self
            .y_coeffs()
            .iter()
            .map(|p| {
                let mut c = p.coeffs().to_vec();
                c.resize(f.order().max(c.len()), BigInt::zero());
                Series::new(c).truncate(f.order())
            })
            .collect();
        Series::compose_poly(&coeffs, f)
    }

    /// True iff `P(x, f) = 0 mod x^{N+1}` for the series with the given terms.
    pub fn annihilates(&self, seq: &Sequence) -> bool {
        if self.is_zero() {
            return true;
        }
        let f = Series::new(seq.terms.clone());
        self.eval_series(&f).is_zero()
    }

    /// Largest `k` with `P(x, f) = 0 mod x^k`.
    pub fn annihilation_order(&self, seq: &Sequence) -> usize {
        let f = Series::new(seq.terms.clone());
        self.eval_series(&f).valuation().unwrap_or(f.order())
    }

    /// Divide out the `Z[x]`-content of the y-coefficients and any power of y.
    pub fn strip_trivial_factors(&self) -> Self {
        let coeffs = self.y_coeffs();
        let Some(first) = coeffs.iter().position(|c| !c.is_zero()) else {
            return self.clone();
        };
        let cont = coeffs[first..]
            .iter()
            .fold(UPoly::zero(), |g, c| g.gcd(c));
        let reduced: Vec<UPoly<BigInt>> = coeffs[first..]
            .iter()
            .map(|c| c.div_exact(&cont).expect("content divides"))
            .collect();
        Self::from_y_coeffs(&reduced).canonical()
    }

    /// Squarefree part over `Q(x)`, via the gcd with the y-derivative.
    pub fn squarefree(&self) -> Self {
        let p = self.strip_trivial_factors();
        if p.y_degree() <= 1 {
            return p;
        }
        let g = ypoly_gcd(&p.y_coeffs(), &p.derivative_y().y_coeffs());
        if g.len() <= 1 {
            return p;
        }
        let q = ypoly_div_exact(&p.y_coeffs(), &g).expect("gcd divides");
        Self::from_y_coeffs(&q).strip_trivial_factors()
    }

    /// Exact quotient in `Z[x][y]`, if `d` divides `self` over `Q(x)` with
    /// an integral quotient.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        ypoly_div_exact(&self.y_coeffs(), &d.y_coeffs()).map(|q| Self::from_y_coeffs(&q))
    }
}

/// Trim trailing zero y-coefficients.
fn ytrim(mut v: Vec<UPoly<BigInt>>) -> Vec<UPoly<BigInt>> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn ycontent(v: &[UPoly<BigInt>]) -> UPoly<BigInt> {
    v.iter().fold(UPoly::zero(), |g, c| g.gcd(c))
}

fn yprimitive(v: &[UPoly<BigInt>]) -> Vec<UPoly<BigInt>> {
    let c = ycontent(v);
    if c.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|p| p.div_exact(&c).expect("content divides")).collect()
}

/// Pseudo-remainder in y over `Z[x]`.
fn ypseudo_rem(a: &[UPoly<BigInt>], b: &[UPoly<BigInt>]) -> Vec<UPoly<BigInt>> {
    let mut r = ytrim(a.to_vec());
    let b = ytrim(b.to_vec());
    let db = b.len() - 1;
    let lc = b[db].clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let t = r[dr].clone();
        let shift = dr - db;
        r = r.iter().map(|c| c * &lc).collect();
        for (j, bc) in b.iter().enumerate() {
            r[j + shift] = &r[j + shift] - &(&t * bc);
        }
        r = ytrim(r);
    }
    r
}

/// Primitive gcd in `Z[x][y]`.
fn ypoly_gcd(a: &[UPoly<BigInt>], b: &[UPoly<BigInt>]) -> Vec<UPoly<BigInt>> {
    let mut a = yprimitive(&ytrim(a.to_vec()));
    let mut b = yprimitive(&ytrim(b.to_vec()));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = ypseudo_rem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { yprimitive(&r) };
    }
    a
}

fn ypoly_div_exact(a: &[UPoly<BigInt>], d: &[UPoly<BigInt>]) -> Option<Vec<UPoly<BigInt>>> {
    let mut r = ytrim(a.to_vec());
    let d = ytrim(d.to_vec());
    let dd = d.len().checked_sub(1)?;
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() <= dd {
        return None;
    }
    let mut q = vec![UPoly::zero(); r.len() - dd];
    while r.len() > dd {
        let dr = r.len() - 1;
        let t = r[dr].div_exact(&d[dd])?;
        let shift = dr - dd;
        for (j, dc) in d.iter().enumerate() {
            r[j + shift] = &r[j + shift] - &(&t * dc);
        }
        q[shift] = t;
        r = ytrim(r);
    }
    r.is_empty().then_some(q)
}

impl fmt::Display for BivariatePoly {
    /// Grouped by powers of y, highest first, e.g. `x*y^2 - y + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("y"))
    }
}

impl BivariatePoly {
    /// Like `Display`, with `y` renamed.
    pub fn format_with(&self, y: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let coeffs = self.y_coeffs();
        let mut out = String::new();
        for (j, c) in coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let ypart = match j {
                0 => String::new(),
                1 => y.to_string(),
                _ => format!("{y}^{j}"),
            };
            let single = c.coeffs().iter().filter(|v| !v.is_zero()).count() == 1;
            let body = format_upoly(c, "x");
            let (neg, body) = match body.strip_prefix('-') {
                Some(rest) if single => (true, rest.to_string()),
                _ => (false, body),
            };
            let term = if ypart.is_empty() {
                body
            } else if single && body == "1" {
                ypart
            } else if single {
                format!("{body}*{ypart}")
            } else {
                format!("({body})*{ypart}")
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

impl One for BivariatePoly {
    fn one() -> Self {
        Self::from_i64_terms(&[(0, 0, 1)])
    }
}

impl std::ops::Mul for BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: Self) -> Self {
        BivariatePoly::mul(&self, &rhs)
    }
}
