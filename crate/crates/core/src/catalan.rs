//! Peak/valley generating functions for finite sets as rational functions of
//! the Catalan generating function `C`, where `x*C^2 = C - 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dp;
use crate::elimination::Mobius;
use crate::error::{Error, Result};
use crate::intset::IntSet;
use crate::restriction::RestrictionSpec;
use crate::series::Series;
use crate::upoly::{format_upoly, UPoly};

type IntPoly = UPoly<BigInt>;

/// `a + b*C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalanLinear {
    pub a: IntPoly,
    pub b: IntPoly,
}

impl CatalanLinear {
    pub fn new(a: IntPoly, b: IntPoly) -> Self {
        CatalanLinear { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Product, reduced so the result is again linear in `C`, times `x`.
    fn mul_times_x(&self, o: &Self) -> Self {
        // x*(a + bC)(c + dC) = x*ac + x*(ad + bc)C + bd(C - 1)
        let x = IntPoly::x();
        let bd = &self.b * &o.b;
        CatalanLinear {
            a: &(&x * &(&self.a * &o.a)) - &bd,
            b: &(&x * &(&(&self.a * &o.b) + &(&self.b * &o.a))) + &bd,
        }
    }

    pub fn eval_series(&self, c: &Series<BigInt>) -> Series<BigInt> {
        let n = c.order();
        let lift = |p: &IntPoly| {
            let mut v = p.coeffs().to_vec();
            v.resize(n.max(v.len()), BigInt::zero());
            Series::new(v).truncate(n)
        };
        &lift(&self.a) + &(&lift(&self.b) * c)
    }
}

impl fmt::Display for CatalanLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_upoly(&self.a, "x"));
        }
        let b = if self.b.coeffs().len() == 1 {
            match self.b.coeff(0) {
                c if c.is_one() => "C".to_string(),
                c if c == -BigInt::one() => "-C".to_string(),
                c => format!("{c}*C"),
            }
        } else {
            format!("({})*C", format_upoly(&self.b, "x"))
        };
        if self.a.is_zero() {
            return f.write_str(&b);
        }
        let a = format_upoly(&self.a, "x");
        match a.strip_prefix('-') {
            Some(rest) => write!(f, "{b} - {rest}"),
            None => write!(f, "{b} + {a}"),
        }
    }
}

/// `num / den`, both linear in `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInCatalan {
    pub num: CatalanLinear,
    pub den: CatalanLinear,
}

impl RationalInCatalan {
    fn from_mobius(m: &Mobius) -> Self {
        let mut r = RationalInCatalan {
            num: CatalanLinear::new(m.b.clone(), m.a.clone()),
            den: CatalanLinear::new(m.d.clone(), m.c.clone()),
        };
        r.reduce();
        r
    }

    /// Divide out the common `Z[x]` content; make the denominator's constant
    /// term positive.
    fn reduce(&mut self) {
        let parts = [&self.num.a, &self.num.b, &self.den.a, &self.den.b];
        let g = parts.iter().fold(IntPoly::zero(), |g, p| g.gcd(p));
        if g.is_zero() {
            return;
        }
        let div = |p: &mut IntPoly| *p = p.div_exact(&g).expect("content divides");
        div(&mut self.num.a);
        div(&mut self.num.b);
        div(&mut self.den.a);
        div(&mut self.den.b);
        let lead = if self.den.a.is_zero() { &self.den.b } else { &self.den.a };
        let negative = lead.coeffs().iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
        if negative {
            for p in [&mut self.num.a, &mut self.num.b, &mut self.den.a, &mut self.den.b] {
                *p = -&*p;
            }
        }
    }

    /// Equal as elements of `Q(x)(C)`.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.num.mul_times_x(&other.den) == other.num.mul_times_x(&self.den)
    }

    /// Numerator and denominator are the same `Q(x)` multiples of the other's.
    pub fn proportional(&self, other: &Self) -> bool {
        let u = [&self.num.a, &self.num.b, &self.den.a, &self.den.b];
        let v = [&other.num.a, &other.num.b, &other.den.a, &other.den.b];
        (0..4).all(|i| (i + 1..4).all(|j| (u[i] * v[j]) == (u[j] * v[i])))
            && u.iter().zip(&v).any(|(p, q)| !p.is_zero() && !q.is_zero())
    }

    /// Substitute the Catalan series for `C`; `None` if the denominator
    /// does not have an invertible constant term.
    pub fn series(&self, order: usize) -> Option<Series<BigInt>> {
        let c = Series::new((0..order).map(dp::catalan_number).collect());
        self.num.eval_series(&c).div_exact(&self.den.eval_series(&c))
    }
}

impl fmt::Display for RationalInCatalan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// Follow the peak/valley chain from `(A, B)` down to the unrestricted
/// state, whose series is `C`.
pub fn catalan_form(a: &IntSet, b: &IntSet) -> Result<RationalInCatalan> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::NotFinite("catalan form"));
    }
    RestrictionSpec::peaks_valleys(a.clone(), b.clone()).validate()?;
    let x = IntPoly::x();
    let one = IntPoly::one;
    let zero = IntPoly::zero;
    let mut m = Mobius::identity();
    let (mut a, mut b) = (a.clone(), b.clone());
    while !(a.is_empty() && b.is_empty()) {
        let step = if a.contains(0) {
            a = a.remove(0);
            Mobius { a: one(), b: -one(), c: zero(), d: one() }
        } else {
            let blocked = b.contains(0);
            a = a.shift_down();
            b = b.shift_down();
            if blocked {
                Mobius { a: x.clone(), b: one(), c: zero(), d: one() }
            } else {
                Mobius { a: zero(), b: one(), c: -&x, d: one() }
            }
        };
        m = m.compose(&step);
    }
    Ok(RationalInCatalan::from_mobius(&m))
}
