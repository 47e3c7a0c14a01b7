use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::restriction::Sequence;
use crate::upoly::{format_upoly, UPoly};

/// `sum_{i=0..L} p_i(n) a(n-i) = 0` for all `n >= L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RecurrenceOperator {
    coeffs: Vec<UPoly<BigInt>>,
}

impl RecurrenceOperator {
    /// Normalizes to content 1 with the first non-zero coefficient's leading
    /// term positive. Returns `None` for the zero operator or order 0.
    pub fn new(coeffs: Vec<UPoly<BigInt>>) -> Option<Self> {
        if coeffs.len() < 2 || coeffs.iter().all(|p| p.is_zero()) {
            return None;
        }
        if coeffs[0].is_zero() && coeffs.last().unwrap().is_zero() {
            return None;
        }
        let g = coeffs
            .iter()
            .flat_map(|p| p.coeffs().iter())
            .fold(BigInt::zero(), |g, c| g.gcd(c));
        let first = coeffs.iter().find(|p| !p.is_zero()).unwrap();
        let g = if first.leading().unwrap().is_negative() { -g } else { g };
        Some(RecurrenceOperator {
            coeffs: coeffs.iter().map(|p| p.div_scalar(&g)).collect(),
        })
    }

    pub fn from_i64s(coeffs: &[&[i64]]) -> Option<Self> {
        Self::new(coeffs.iter().map(|c| UPoly::from_i64s(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[UPoly<BigInt>] {
        &self.coeffs
    }

    /// Largest coefficient degree.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    /// `sum_i p_i(n) a(n-i)`; requires `order <= n < len`.
    pub fn residual(&self, terms: &[BigInt], n: usize) -> BigInt {
        let nn = BigInt::from(n);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, p)| p.eval(&nn) * &terms[n - i])
            .sum()
    }

    /// True iff the residual vanishes for every `n` in `order..len`.
    pub fn annihilates(&self, seq: &Sequence) -> bool {
        (self.order()..seq.len()).all(|n| self.residual(&seq.terms, n).is_zero())
    }

    /// Extend a sequence using the recurrence; `None` when `p_0(n)` vanishes
    /// or does not divide.
    pub fn extend(&self, seq: &Sequence, len: usize) -> Option<Sequence> {
        let mut terms = seq.terms.clone();
        while terms.len() < len {
            let n = terms.len();
            let nn = BigInt::from(n);
            let lead = self.coeffs[0].eval(&nn);
            if lead.is_zero() {
                return None;
            }
            let rest: BigInt = self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, p)| p.eval(&nn) * &terms[n - i])
                .sum();
            let (q, r) = (-rest).div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            terms.push(q);
        }
        Some(Sequence::new(terms))
    }

    /// `a(n) = sum_i q_i(n)/p_0(n) a(n-i)`, when `p_0` is non-zero.
    pub fn solved_form(&self) -> Option<String> {
        let den = &self.coeffs[0];
        if den.is_zero() {
            return None;
        }
        let den_s = format_upoly(den, "n");
        let mut parts = Vec::new();
        for (i, p) in self.coeffs.iter().enumerate().skip(1) {
            if p.is_zero() {
                continue;
            }
            let num = format_upoly(&-p, "n");
            parts.push(format!("({num})*a(n-{i})"));
        }
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        if den.degree() == Some(0) && den.coeff(0) == BigInt::from(1) {
            Some(format!("a(n) = {body}"))
        } else {
            Some(format!("a(n) = ({body})/({den_s})"))
        }
    }
}

impl fmt::Display for RecurrenceOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let a = if i == 0 { "a(n)".to_string() } else { format!("a(n-{i})") };
            parts.push(format!("({})*{a}", format_upoly(p, "n")));
        }
        write!(f, "{} = 0", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::catalan_number;

    fn catalan_op() -> RecurrenceOperator {
        // (n+1) a(n) - (4n-2) a(n-1)
        RecurrenceOperator::from_i64s(&[&[1, 1], &[2, -4]]).unwrap()
    }

    #[test]
    fn catalan_recurrence_holds() {
        let seq = Sequence::new((0..40).map(catalan_number).collect());
        assert!(catalan_op().annihilates(&seq));
        let ext = catalan_op().extend(&seq.prefix(1), 40).unwrap();
        assert_eq!(ext, seq);
    }

    #[test]
    fn wrong_operator_is_rejected() {
        let op = RecurrenceOperator::from_i64s(&[&[0, 1], &[0, -1]]).unwrap();
        assert!(!op.annihilates(&Sequence::from_u64s(&[1, 2, 3, 4])));
    }

    #[test]
    fn normalization() {
        let op = RecurrenceOperator::from_i64s(&[&[-2, -2], &[-4, 8]]).unwrap();
        assert_eq!(op, catalan_op());
        assert!(RecurrenceOperator::from_i64s(&[&[0], &[0]]).is_none());
        assert!(RecurrenceOperator::from_i64s(&[&[1]]).is_none());
    }

    #[test]
    fn printing() {
        assert_eq!(catalan_op().to_string(), "(n + 1)*a(n) + (-4*n + 2)*a(n-1) = 0");
        assert_eq!(
            catalan_op().solved_form().unwrap(),
            "a(n) = ((4*n - 2)*a(n-1))/(n + 1)"
        );
    }
}
