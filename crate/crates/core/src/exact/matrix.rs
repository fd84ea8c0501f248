use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{common_denominator, scaled_integer, Rat};
use crate::error::{Error, Result};

/// Dense rectangular rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct RatMatrix {
    rows: Vec<Vec<Rat>>,
    cols: usize,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    #[serde(with = "super::rat::serde_rows")]
    rows: Vec<Vec<Rat>>,
}

impl TryFrom<RawMatrix> for RatMatrix {
    type Error = Error;
    fn try_from(raw: RawMatrix) -> Result<Self> {
        RatMatrix::new(raw.rows)
    }
}

impl From<RatMatrix> for RawMatrix {
    fn from(m: RatMatrix) -> Self {
        RawMatrix { rows: m.rows }
    }
}

impl RatMatrix {
    pub fn new(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
        }
        Ok(Self { rows, cols })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| super::rat::int(v)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![vec![Rat::zero(); cols]; rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Rat::one();
        }
        m
    }

    /// Row `i` is the first row cyclically shifted `i` places to the right.
    pub fn circulant(first: &[Rat]) -> Self {
        let n = first.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| first[(j + n - i) % n].clone()).collect())
            .collect();
        Self { rows, cols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    pub fn into_rows(self) -> Vec<Vec<Rat>> {
        self.rows
    }

    /// Each row multiplied by the lcm of its denominators; returns the scale
    /// factors alongside.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut out = Vec::with_capacity(self.rows.len());
        let mut scales = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let d = common_denominator(r.iter());
            out.push(r.iter().map(|v| scaled_integer(v, &d)).collect());
            scales.push(d);
        }
        (out, scales)
    }

    /// Exact rank via fraction-free elimination.
    pub fn rank(&self) -> usize {
        let (mut a, _) = self.integer_rows();
        bareiss(&mut a, self.cols).0
    }

    pub fn determinant(&self) -> Result<Rat> {
        if self.rows.len() != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows.len(),
                cols: self.cols,
            });
        }
        if self.cols == 0 {
            return Ok(Rat::one());
        }
        let (mut a, scales) = self.integer_rows();
        let (rank, det) = bareiss(&mut a, self.cols);
        if rank < self.cols {
            return Ok(Rat::zero());
        }
        let denom = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
        Ok(Rat::new(det, denom))
    }
}

/// In-place Bareiss elimination with row pivoting. Returns the rank and, for
/// a full-rank square input, the determinant of the integer matrix.
pub(crate) fn bareiss(a: &mut [Vec<BigInt>], cols: usize) -> (usize, BigInt) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    let det = if r == rows && rows == cols && rows > 0 {
        let d = a[rows - 1][cols - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    } else {
        BigInt::zero()
    };
    (r, det)
}

/// Rank of integer rows, leaving the input untouched.
pub(crate) fn integer_rank(rows: &[Vec<BigInt>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut a = rows.to_vec();
    bareiss(&mut a, cols).0
}

/// Solves the square system `m x = b` exactly; `None` when singular.
pub fn solve(m: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(p, c);
        let inv = a[c][c].recip();
        for j in c..=n {
            a[c][j] = &a[c][j] * &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=n {
                    let t = &a[c][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Basis of the null space of `m` (as rows of the returned vector).
pub fn null_space(m: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for j in c..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[i][free].clone();
        }
        basis.push(v);
    }
    basis
}
