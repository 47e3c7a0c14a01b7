//! Truncated power series `c_0 + c_1 x + ... + c_{n-1} x^{n-1} + O(x^n)`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Ring;

#[derive(Clone, Debug, PartialEq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Series<T> {
    /// Series known through `x^{coeffs.len() - 1}`.
    pub fn new(coeffs: Vec<T>) -> Self {
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series::new(vec![T::zero(); order])
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    /// `x^k` truncated to `order` terms.
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = T::one();
        }
        s
    }

    /// Number of known coefficients.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first non-zero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(order);
        Series::new(c)
    }

    pub fn scale(&self, k: &T) -> Self {
        Series::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// Multiply by `x^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut c = vec![T::zero(); n];
        for i in 0..n.saturating_sub(k) {
            c[i + k] = self.coeffs[i].clone();
        }
        Series::new(c)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Series::one(self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Powers `self^0 ..= self^max`.
    pub fn powers(&self, max: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(max + 1);
        out.push(Series::one(self.order()));
        for j in 1..=max {
            let next = &out[j - 1] * self;
            out.push(next);
        }
        out
    }

    /// Evaluate a polynomial with series coefficients, by Horner.
    pub fn compose_poly(coeffs: &[Self], arg: &Self) -> Self {
        let mut acc = Series::zero(arg.order());
        for c in coeffs.iter().rev() {
            acc = &(&acc * arg) + c;
        }
        acc
    }
}

impl<T: Ring> Series<T>
where
    T: std::ops::Div<Output = T>,
{
    /// `self / other`, requiring the constant term of `other` to divide exactly.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        let n = self.order().min(other.order());
        let d0 = other.coeff(0);
        if d0.is_zero() {
            return None;
        }
        let mut q: Vec<T> = Vec::with_capacity(n);
        for k in 0..n {
            let mut r = self.coeff(k);
            for i in 1..=k {
                r = r - other.coeff(i) * q[k - i].clone();
            }
            let qk = r.clone() / d0.clone();
            if qk.clone() * d0.clone() != r {
                return None;
            }
            q.push(qk);
        }
        Some(Series::new(q))
    }
}

impl<'a, T: Ring> Add<&'a Series<T>> for &'a Series<T> {
    type Output = Series<T>;
    fn add(self, rhs: &Series<T>) -> Series<T> {
        let n = self.order().min(rhs.order());
        Series::new((0..n).map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone()).collect())
    }
}

impl<'a, T: Ring> Sub<&'a Series<T>> for &'a Series<T> {
    type Output = Series<T>;
    fn sub(self, rhs: &Series<T>) -> Series<T> {
        let n = self.order().min(rhs.order());
        Series::new((0..n).map(|k| self.coeffs[k].clone() - rhs.coeffs[k].clone()).collect())
    }
}

impl<T: Ring> Neg for &Series<T> {
    type Output = Series<T>;
    fn neg(self) -> Series<T> {
        Series::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<'a, T: Ring> Mul<&'a Series<T>> for &'a Series<T> {
    type Output = Series<T>;
    fn mul(self, rhs: &Series<T>) -> Series<T> {
        let n = self.order().min(rhs.order());
        let mut out = vec![T::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Series::new(out)
    }
}
