//! Dense univariate polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Ring;

/// Coefficients low to high; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> UPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        UPoly::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// `c * x^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        UPoly::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        UPoly::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![T::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UPoly::new(v)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| {
                    let mut k = T::zero();
                    for _ in 0..i {
                        k = k + c.clone();
                    }
                    k
                })
                .collect(),
        )
    }

    /// Map coefficients into another ring.
    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> UPoly<U> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl UPoly<BigInt> {
    pub fn from_i64s(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Gcd of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn div_scalar(&self, k: &BigInt) -> Self {
        UPoly::new(self.coeffs.iter().map(|c| c / k).collect())
    }

    /// Content removed, leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        self.div_scalar(&g)
    }

    /// Exact quotient when `d` divides `self` over the integers.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.pseudo_div_rem(d);
        if !r.is_zero() {
            return None;
        }
        // q was computed for lc(d)^k * self; undo the scaling.
        let k = self.degree().map_or(0, |a| a + 1).saturating_sub(d.degree()?);
        let lc = d.leading()?.clone();
        let scale = num_traits::pow(lc, k);
        let mut out = Vec::with_capacity(q.coeffs.len());
        for c in q.coeffs {
            let (qq, rr) = c.div_rem(&scale);
            if !rr.is_zero() {
                return None;
            }
            out.push(qq);
        }
        Some(UPoly::new(out))
    }

    /// `lc(d)^(deg self - deg d + 1) * self = q * d + r`.
    pub fn pseudo_div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("pseudo-division by zero polynomial");
        let Some(ds) = self.degree() else {
            return (UPoly::zero(), UPoly::zero());
        };
        if ds < dd {
            return (UPoly::zero(), self.clone());
        }
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); ds - dd + 1];
        for i in (0..=ds - dd).rev() {
            let t = r[i + dd].clone();
            for c in q.iter_mut() {
                *c *= &lc;
            }
            q[i] += &t;
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= &t * dc;
            }
        }
        (UPoly::new(q), UPoly::new(r))
    }

    /// `self` or `-self`, whichever has a positive leading coefficient.
    pub fn abs(&self) -> Self {
        if self.leading().is_some_and(|c| c.is_negative()) {
            -self
        } else {
            self.clone()
        }
    }

    /// Gcd over the integers (content included), positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.abs();
        }
        if other.is_zero() {
            return self.abs();
        }
        let cont = self.content().gcd(&other.content());
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.pseudo_div_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().scale(&cont)
    }

    /// Square root in Z[x] when one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let d = self.degree()?;
        if d % 2 == 1 || self.leading()?.is_negative() {
            return None;
        }
        let lc_root = self.leading()?.sqrt();
        if &(&lc_root * &lc_root) != self.leading()? {
            return None;
        }
        // Determine coefficients from the top down.
        let half = d / 2;
        let mut root = vec![BigInt::zero(); half + 1];
        root[half] = lc_root.clone();
        for k in (0..half).rev() {
            // coefficient of x^(half + k) in root^2
            let mut acc = self.coeff(half + k);
            for i in (k + 1)..=half {
                let j = half + k - i;
                if j > k && j <= half {
                    acc -= &root[i] * &root[j];
                }
            }
            let two_lc = &lc_root * 2;
            let (q, r) = acc.div_rem(&two_lc);
            if !r.is_zero() {
                return None;
            }
            root[k] = q;
        }
        let root = UPoly::new(root);
        (&root * &root == *self).then_some(root)
    }
}

impl<T: Ring> Add for &UPoly<T> {
    type Output = UPoly<T>;
    fn add(self, rhs: &UPoly<T>) -> UPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Ring> Sub for &UPoly<T> {
    type Output = UPoly<T>;
    fn sub(self, rhs: &UPoly<T>) -> UPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Ring> Neg for &UPoly<T> {
    type Output = UPoly<T>;
    fn neg(self) -> UPoly<T> {
        UPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Ring> Mul for &UPoly<T> {
    type Output = UPoly<T>;
    fn mul(self, rhs: &UPoly<T>) -> UPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UPoly::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Ring> $tr for UPoly<T> {
            type Output = UPoly<T>;
            fn $m(self, rhs: UPoly<T>) -> UPoly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Ring> Neg for UPoly<T> {
    type Output = UPoly<T>;
    fn neg(self) -> UPoly<T> {
        -&self
    }
}

impl<T: Ring> Zero for UPoly<T> {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for UPoly<T> {
    fn one() -> Self {
        UPoly::constant(T::one())
    }
}

/// Pretty-print with a variable name, highest degree first.
pub fn format_upoly(p: &UPoly<BigInt>, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
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
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}

impl fmt::Display for UPoly<BigInt> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_upoly(self, "x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly<BigInt> {
        UPoly::from_i64s(c)
    }

    #[test]
    fn gcd_and_exact_division() {
        // (x+1)(x-2) and (x+1)(3x+5)
        let a = &p(&[1, 1]) * &p(&[-2, 1]);
        let b = &p(&[1, 1]) * &p(&[5, 3]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[-2, 1])));
        assert_eq!(a.div_exact(&p(&[5, 3])), None);
        let c = p(&[2, 4]).scale(&BigInt::from(3));
        assert_eq!(c.gcd(&p(&[0, 6])), p(&[6]));
    }

    #[test]
    fn square_roots() {
        let r = p(&[1, -2, 3]);
        assert_eq!((&r * &r).sqrt(), Some(r));
        assert_eq!(p(&[1, 0, 1]).sqrt(), None);
        assert_eq!(p(&[4]).sqrt(), Some(p(&[2])));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 0, 4]).to_string(), "4*x^3 - x + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
    }
}
