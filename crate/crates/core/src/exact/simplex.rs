//! Two-phase primal simplex on the standard form `max c·x, Ax = b, x >= 0`.
//!
//! Pivoting follows Bland's rule (smallest eligible index for both the
//! entering and the leaving variable), so the method terminates without any
//! tolerance handling.

use num_traits::{One, Signed, Zero};

use super::rat::Rat;
use crate::error::{Error, Result};

struct Tableau {
    rows: Vec<Vec<Rat>>,
    /// Reduced costs; the last entry holds `-z`.
    obj: Vec<Rat>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let inv = self.rows[r][e].recip();
        if !inv.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let prow = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[e].is_zero() {
                continue;
            }
            let f = row[e].clone();
            for (v, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        if !self.obj[e].is_zero() {
            let f = self.obj[e].clone();
            for (v, p) in self.obj.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.rows[r] = prow;
        self.basis[r] = e;
    }

    /// Runs Bland pivots over the columns `< limit`. Returns false when
    /// unbounded.
    fn optimize(&mut self, limit: usize) -> bool {
        loop {
            let Some(e) = (0..limit).find(|&j| self.obj[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][e];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, e),
            }
        }
    }

    fn set_objective(&mut self, c: &[Rat]) {
        let mut obj: Vec<Rat> = c.to_vec();
        obj.resize(self.ncols + 1, Rat::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &c.get(b).cloned().unwrap_or_else(Rat::zero);
            if cb.is_zero() {
                continue;
            }
            for (v, a) in obj.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *v -= cb * a;
                }
            }
        }
        self.obj = obj;
    }
}

/// Builds a feasible basis via phase 1. `None` when the system is infeasible.
fn phase_one(a: &[Vec<Rat>], b: &[Rat], n: usize) -> Option<Tableau> {
    let m = a.len();
    let ncols = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let neg = bi.is_negative();
        let mut r: Vec<Rat> = row
            .iter()
            .map(|v| if neg { -v.clone() } else { v.clone() })
            .collect();
        r.resize(ncols + 1, Rat::zero());
        r[n + i] = Rat::one();
        r[ncols] = bi.abs();
        rows.push(r);
    }
    let mut t = Tableau {
        rows,
        obj: Vec::new(),
        basis: (n..n + m).collect(),
        ncols,
    };
    let mut c = vec![Rat::zero(); ncols];
    for v in c.iter_mut().skip(n) {
        *v = -Rat::one();
    }
    t.set_objective(&c);
    t.optimize(ncols);
    if !t.obj[ncols].is_zero() {
        return None;
    }
    // Drive remaining (zero-valued) artificial variables out of the basis;
    // rows where that is impossible are redundant and get dropped.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    for r in t.rows.iter_mut() {
        let rhs = r[ncols].clone();
        r.truncate(n);
        r.push(rhs);
    }
    t.ncols = n;
    Some(t)
}

/// Maximizes `c·x` subject to `Ax = b`, `x >= 0`. Returns the optimum and an
/// optimal basic solution.
pub fn maximize_standard(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> Result<(Rat, Vec<Rat>)> {
    let n = c.len();
    for row in a {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: row.len(),
            });
        }
    }
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let mut t = phase_one(a, b, n).ok_or(Error::Infeasible)?;
    t.set_objective(c);
    if !t.optimize(n) {
        return Err(Error::Unbounded);
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        x[bv] = t.rhs(i).clone();
    }
    Ok((-t.obj[n].clone(), x))
}

/// Finds some `x >= 0` with `Ax = b`.
pub fn feasible_point(a: &[Vec<Rat>], b: &[Rat], n: usize) -> Option<Vec<Rat>> {
    let t = phase_one(a, b, n)?;
    let mut x = vec![Rat::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        x[bv] = t.rhs(i).clone();
    }
    Some(x)
}
