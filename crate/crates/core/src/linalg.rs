//! Right nullspaces of dense matrices, exactly and modulo a prime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Field, Fp};

/// Basis of `{v : M v = 0}` from the reduced row echelon form.
///
/// Each basis vector has a 1 in its free column and zeros in the other free
/// columns.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &(_, c) in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![F::zero(); ncols];
            v[free] = F::one();
            for &(r, c) in &pivots {
                v[c] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

/// In-place reduced row echelon form; returns `(row, column)` of each pivot.
pub fn rref<F: Field>(m: &mut [Vec<F>], ncols: usize) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = F::one() / m[row][col].clone();
        for v in m[row].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..ncols {
                let sub = factor.clone() * m[row][c].clone();
                m[r][c] = m[r][c].clone() - sub;
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    pivots
}

/// Rank of an integer matrix reduced modulo a large prime.
///
/// Never exceeds the rank over Q, so a zero nullity here proves a zero
/// nullity over Q.
pub fn rank_mod_p(rows: &[Vec<BigInt>], ncols: usize) -> usize {
    let mut m: Vec<Vec<Fp>> = rows
        .iter()
        .map(|r| r.iter().map(Fp::from_bigint).collect())
        .collect();
    rref(&mut m, ncols).len()
}

/// Integer basis of the rational nullspace; every vector has content 1 and
/// its last non-zero entry positive.
pub fn exact_nullspace(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            r.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect();
    integer_nullspace(&int_rows, ncols)
}

/// Fraction-free variant of [`exact_nullspace`] for integer matrices.
pub fn integer_nullspace(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|v| !v.is_zero())).cloned().collect();
    for r in m.iter_mut() {
        make_primitive(r);
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        // smallest pivot keeps the numbers down
        let Some(p) = (row..m.len())
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].abs())
        else {
            continue;
        };
        m.swap(row, p);
        let pivot_row = m[row].clone();
        let pv = pivot_row[col].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let g = pv.gcd(&other[col]);
            let a = &pv / &g;
            let b = &other[col] / &g;
            for c in 0..ncols {
                other[c] = &other[c] * &a - &pivot_row[c] * &b;
            }
            make_primitive(other);
        }
        pivots.push((row, col));
        row += 1;
    }
    let mut is_pivot = vec![false; ncols];
    for &(_, c) in &pivots {
        is_pivot[c] = true;
    }
    let lcm = pivots
        .iter()
        .fold(BigInt::one(), |acc, &(r, c)| acc.lcm(&m[r][c]));
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![BigInt::zero(); ncols];
            v[free] = lcm.clone();
            for &(r, c) in &pivots {
                v[c] = -(&lcm / &m[r][c]) * &m[r][free];
            }
            make_primitive(&mut v);
            if v.iter().rev().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                for x in v.iter_mut() {
                    *x = -&*x;
                }
            }
            v
        })
        .collect()
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}
