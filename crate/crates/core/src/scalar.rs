//! Scalar abstractions shared by the polynomial, series and linear-algebra code.
//!
//! Everything that only needs ring operations is written against [`Ring`];
//! elimination that divides is written against [`Field`]. The exact paths use
//! `BigInt` / `BigRational`, and [`Fp`] gives a cheap modular shadow of the
//! same computations for rank tests.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// A commutative ring with identity.
pub trait Ring:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + fmt::Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A ring in which every non-zero element is invertible and `/` is exact.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for Ratio<T> where T: Clone + Integer + Signed + fmt::Debug {}
impl Field for f64 {}
impl Field for f32 {}
impl Field for Fp {}

/// Modulus of [`Fp`]: the Mersenne prime 2^61 - 1.
pub const FP_MODULUS: u64 = (1 << 61) - 1;

/// Integers modulo [`FP_MODULUS`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(v % FP_MODULUS)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Reduce a signed big integer.
    pub fn from_bigint(v: &num_bigint::BigInt) -> Self {
        let m = num_bigint::BigInt::from(FP_MODULUS);
        let r = v.mod_floor(&m);
        Fp(r.iter_u64_digits().next().unwrap_or(0))
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(FP_MODULUS - 2))
        }
    }

    /// The fraction `n/d` with `|n|, d <= sqrt(p/2)` congruent to `self`,
    /// if there is one (half extended Euclid).
    pub fn rational_reconstruction(self) -> Option<(i64, i64)> {
        let bound = ((FP_MODULUS / 2) as f64).sqrt() as i128;
        let (mut r0, mut r1) = (FP_MODULUS as i128, self.0 as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 > bound {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if t1 == 0 || t1.abs() > bound {
            return None;
        }
        let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
        Some((n as i64, d as i64))
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp(1)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let s = self.0 + rhs.0;
        Fp(if s >= FP_MODULUS { s - FP_MODULUS } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        if self.0 >= rhs.0 {
            Fp(self.0 - rhs.0)
        } else {
            Fp(self.0 + FP_MODULUS - rhs.0)
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let p = self.0 as u128 * rhs.0 as u128;
        // 2^61 = 1 (mod 2^61 - 1)
        let lo = (p & FP_MODULUS as u128) as u64;
        let hi = (p >> 61) as u64;
        let s = lo + hi;
        Fp(if s >= FP_MODULUS { s - FP_MODULUS } else { s })
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp(FP_MODULUS - self.0)
        }
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inverse().expect("division by zero in Fp")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn fp_inverse_round_trips() {
        for v in [1u64, 2, 3, 12345, FP_MODULUS - 1] {
            let a = Fp::new(v);
            assert_eq!(a * a.inverse().unwrap(), Fp::one());
        }
        assert!(Fp::zero().inverse().is_none());
    }

    #[test]
    fn fp_reduces_negative_bigints() {
        let a = Fp::from_bigint(&BigInt::from(-5));
        assert_eq!(a + Fp::new(5), Fp::zero());
        let big = BigInt::from(FP_MODULUS) * BigInt::from(7) + BigInt::from(3);
        assert_eq!(Fp::from_bigint(&big), Fp::new(3));
    }

    #[test]
    fn rational_reconstruction_recovers_small_fractions() {
        for (n, d) in [(3i64, 7i64), (-22, 5), (0, 1), (1, 1), (-1, 1000)] {
            let v = Fp::from_bigint(&BigInt::from(n)) / Fp::new(d as u64);
            assert_eq!(v.rational_reconstruction(), Some((n, d)));
        }
    }
}
