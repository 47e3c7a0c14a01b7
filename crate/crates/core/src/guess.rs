//! Fitting an algebraic equation or a P-recursive recurrence to a sequence by
//! undetermined coefficients, then verifying it on guard terms.
//!
//! For each candidate shape the linear system is built from all available
//! terms, the last `guard` equations are held back, and the fit is accepted
//! only if its nullspace is one-dimensional and the resulting object also
//! kills the held-back equations.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bipoly::BivariatePoly;
use crate::error::{Error, Result};
use crate::linalg::{integer_nullspace, rank_mod_p};
use crate::recurrence::RecurrenceOperator;
use crate::restriction::Sequence;
use crate::series::Series;
use crate::upoly::UPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FitConfig {
    pub max_x_degree: usize,
    pub max_y_degree: usize,
    pub max_order: usize,
    pub max_coeff_degree: usize,
    pub guard: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            max_x_degree: 12,
            max_y_degree: 12,
            max_order: 12,
            max_coeff_degree: 6,
            guard: 10,
        }
    }
}

/// Candidate `(x-degree, y-degree)` shapes in search order.
pub fn equation_shapes(cfg: &FitConfig) -> Vec<(usize, usize)> {
    let mut shapes: Vec<(usize, usize)> = (0..=cfg.max_x_degree)
        .flat_map(|dx| (1..=cfg.max_y_degree).map(move |dy| (dx, dy)))
        .collect();
    shapes.sort_by_key(|&(dx, dy)| ((dx + 1) * (dy + 1), dy, dx));
    shapes
}

/// Candidate `(order, coefficient degree)` shapes in search order.
pub fn recurrence_shapes(cfg: &FitConfig) -> Vec<(usize, usize)> {
    let mut shapes: Vec<(usize, usize)> = (1..=cfg.max_order)
        .flat_map(|l| (0..=cfg.max_coeff_degree).map(move |d| (l, d)))
        .collect();
    shapes.sort_by_key(|&(l, d)| ((l + 1) * (d + 1), l, d));
    shapes
}

/// Unique (up to scale) nullspace vector of the fitting rows, if any.
fn unique_fit(rows: &[Vec<BigInt>], ncols: usize) -> Option<Vec<BigInt>> {
    if rank_mod_p(rows, ncols) == ncols {
        return None;
    }
    let mut basis = integer_nullspace(rows, ncols);
    (basis.len() == 1).then(|| basis.pop().unwrap())
}

/// Smallest `P(x, y)` with `P(x, f(x)) = 0` through every available term.
pub fn guess_algebraic_equation(seq: &Sequence, cfg: &FitConfig) -> Result<Option<BivariatePoly>> {
    let available = seq.len();
    let needed = 2 + cfg.guard;
    if available < needed {
        return Err(Error::InsufficientTerms { needed, available });
    }
    if seq.terms[1..].iter().all(|t| t.is_zero()) {
        let p = BivariatePoly::from_terms([((0, 1), BigInt::one()), ((0, 0), -seq.terms[0].clone())]);
        return Ok(Some(p.canonical()));
    }
    let f = Series::new(seq.terms.clone());
    let powers = f.powers(cfg.max_y_degree);
    let fit_rows = available - cfg.guard;
    for (dx, dy) in equation_shapes(cfg) {
        let unknowns = (dx + 1) * (dy + 1);
        if unknowns + cfg.guard > available {
            continue;
        }
        let columns: Vec<(usize, usize)> = (0..=dy)
            .flat_map(|j| (0..=dx).map(move |i| (i, j)))
            .collect();
        let rows: Vec<Vec<BigInt>> = (0..fit_rows)
            .map(|k| {
                columns
                    .iter()
                    .map(|&(i, j)| if k >= i { powers[j].coeff(k - i) } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        let Some(v) = unique_fit(&rows, unknowns) else {
            continue;
        };
        let p = BivariatePoly::from_terms(
            columns
                .iter()
                .zip(v)
                .map(|(&(i, j), c)| ((i as u32, j as u32), c)),
        );
        let divisible_by_y = p.terms().all(|(_, j, _)| j > 0);
        if p.y_degree() == 0 || divisible_by_y || !p.annihilates(seq) {
            continue;
        }
        return Ok(Some(p.canonical()));
    }
    Ok(None)
}

/// Smallest operator annihilating every available term.
pub fn guess_linear_recurrence(seq: &Sequence, cfg: &FitConfig) -> Result<Option<RecurrenceOperator>> {
    let available = seq.len();
    // order 1, degree 0 needs N rows >= 2 + guard
    let needed = 3 + cfg.guard;
    if available < needed {
        return Err(Error::InsufficientTerms { needed, available });
    }
    for (order, deg) in recurrence_shapes(cfg) {
        let unknowns = (order + 1) * (deg + 1);
        let equations = available - order;
        if equations < unknowns + cfg.guard {
            continue;
        }
        let rows: Vec<Vec<BigInt>> = (order..available - cfg.guard)
            .map(|n| {
                let nn = BigInt::from(n);
                let npow: Vec<BigInt> = (0..=deg).map(|k| num_traits::pow(nn.clone(), k)).collect();
                (0..=order)
                    .flat_map(|i| npow.iter().map(move |p| p * &seq.terms[n - i]))
                    .collect()
            })
            .collect();
        let Some(v) = unique_fit(&rows, unknowns) else {
            continue;
        };
        let coeffs: Vec<UPoly<BigInt>> = v.chunks(deg + 1).map(|c| UPoly::new(c.to_vec())).collect();
        let Some(op) = RecurrenceOperator::new(coeffs) else {
            continue;
        };
        if op.annihilates(seq) {
            return Ok(Some(op));
        }
    }
    Ok(None)
}

/// `P(x, f) = 0 mod x^{N+1}`.
pub fn verify_equation(p: &BivariatePoly, seq: &Sequence) -> bool {
    p.annihilates(seq)
}

pub fn verify_recurrence(r: &RecurrenceOperator, seq: &Sequence) -> bool {
    r.annihilates(seq)
}
