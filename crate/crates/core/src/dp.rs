//! Run-based dynamic programming for restricted Dyck path counts.
//!
//! `u(m, k)` counts walks from `(0,0)` to `(m,k)` that stay weakly above the
//! axis and end with a complete maximal up-run (so `(m,k)` is a peak), and
//! `d(m, k)` those ending with a complete maximal down-run. With the
//! restriction sets applied:
//!
//! ```text
//! u(m,k) = 0                              if m = 0 or k in A
//!        = sum_{1 <= r <= k, r not in C} d(m-r, k-r)
//! d(0,0) = 1
//! d(m,k) = 0                              if k in B
//!        = sum_{r >= 1, r not in D} u(m-r, k+r)
//! ```
//!
//! The number of restricted paths of semi-length n is `d(2n, 0)`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::restriction::{RestrictionSpec, Sequence};

/// Filled `u`/`d` tables for every state that can still return to the axis
/// by step `2 * max_n`.
#[derive(Clone, Debug)]
pub struct DpTable {
    max_n: usize,
    u: Vec<Vec<BigInt>>,
    d: Vec<Vec<BigInt>>,
}

impl DpTable {
    pub fn build(spec: &RestrictionSpec, max_n: usize) -> Result<Self> {
        spec.validate()?;
        let steps = 2 * max_n;
        let forbid_peak = spec.peaks.mask(max_n + 1);
        let forbid_valley = spec.valleys.mask(max_n + 1);
        let forbid_up = spec.up_runs.mask(max_n + 1);
        let forbid_down = spec.down_runs.mask(max_n + 1);

        let mut u: Vec<Vec<BigInt>> = Vec::with_capacity(steps + 1);
        let mut d: Vec<Vec<BigInt>> = Vec::with_capacity(steps + 1);
        for m in 0..=steps {
            let top = m.min(steps - m);
            let mut urow = vec![BigInt::zero(); top + 1];
            let mut drow = vec![BigInt::zero(); top + 1];
            // (m - k) odd states are unreachable
            for k in (m % 2..=top).step_by(2) {
                if m == 0 {
                    drow[k] = BigInt::from((k == 0) as u32);
                    continue;
                }
                if !forbid_peak[k] {
                    let mut acc = BigInt::zero();
                    for r in (1..=k).filter(|&r| !forbid_up[r]) {
                        acc += &d[m - r][k - r];
                    }
                    urow[k] = acc;
                }
                if !forbid_valley[k] {
                    let mut acc = BigInt::zero();
                    // the previous peak (m-r, k+r) needs k + r <= m - r
                    for r in (1..=(m - k) / 2).filter(|&r| !forbid_down[r]) {
                        acc += &u[m - r][k + r];
                    }
                    drow[k] = acc;
                }
            }
            u.push(urow);
            d.push(drow);
        }
        Ok(DpTable { max_n, u, d })
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    fn get(table: &[Vec<BigInt>], m: usize, k: usize) -> BigInt {
        table
            .get(m)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_default()
    }

    pub fn u(&self, m: usize, k: usize) -> BigInt {
        Self::get(&self.u, m, k)
    }

    pub fn d(&self, m: usize, k: usize) -> BigInt {
        Self::get(&self.d, m, k)
    }

    pub fn sequence(&self) -> Sequence {
        Sequence::new((0..=self.max_n).map(|n| self.d(2 * n, 0)).collect())
    }
}

/// Restricted count for semi-length `n`.
pub fn count(spec: &RestrictionSpec, n: usize) -> Result<BigInt> {
    Ok(DpTable::build(spec, n)?.d(2 * n, 0))
}

/// `a(0), ..., a(max_n)` from a single table.
pub fn sequence(spec: &RestrictionSpec, max_n: usize) -> Result<Sequence> {
    Ok(DpTable::build(spec, max_n)?.sequence())
}

/// `(2n)! / (n! (n+1)!)` through the product formula.
pub fn catalan_number(n: usize) -> BigInt {
    let mut c = BigInt::from(1);
    for k in 0..n {
        c = c * BigInt::from(2 * (2 * k + 1)) / BigInt::from(k + 2);
    }
    c
}
