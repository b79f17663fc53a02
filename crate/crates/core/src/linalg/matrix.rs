use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{dim_mismatch, Result};
use crate::rational::Rational;

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows of length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(dim_mismatch(format!(
                    "row {i} has length {} instead of {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(RationalMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect();
        Self::from_rows(cols, rows).expect("ragged literal matrix")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(dim_mismatch(format!(
                "vector of length {} times a matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self
            .rows()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// The submatrix keeping the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> RationalMatrix {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    /// Appends a column on the right.
    pub fn augment(&self, col: &[Rational]) -> Result<RationalMatrix> {
        if col.len() != self.rows {
            return Err(dim_mismatch("augmenting column has the wrong length"));
        }
        let rows = self
            .rows()
            .zip(col)
            .map(|(r, c)| r.iter().cloned().chain(std::iter::once(c.clone())).collect())
            .collect();
        Self::from_rows(self.cols + 1, rows)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in self.rows() {
            let cells: Vec<String> = r.iter().map(|q| q.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Clears denominators row by row; row scaling leaves the row space alone.
pub(crate) fn integer_rows<'a, I>(rows: I) -> Vec<Vec<BigInt>>
where
    I: IntoIterator<Item = &'a [Rational]>,
{
    rows.into_iter()
        .map(|r| {
            let lcm = r
                .iter()
                .filter(|q| !q.is_zero())
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let mut row: Vec<BigInt> = r.iter().map(|q| (q * &lcm).to_integer()).collect();
            make_primitive(&mut row);
            row
        })
        .collect()
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `target ← piv·target − factor·source` on columns `from..`, then divide
/// out the content. Columns before `from` must be zero in `source`.
fn eliminate(target: &mut [BigInt], source: &[BigInt], piv: &BigInt, factor: &BigInt, from: usize) {
    for k in from..target.len() {
        let s = &source[k];
        if s.is_zero() {
            if !target[k].is_zero() {
                target[k] *= piv;
            }
        } else {
            target[k] = &target[k] * piv - factor * s;
        }
    }
    make_primitive(target);
}

/// Fraction-free forward elimination. On return the first `pivots.len()`
/// rows are in integer row-echelon form with strictly increasing pivot
/// columns; the remaining rows are zero.
pub(crate) fn forward_eliminate(rows: &mut [Vec<BigInt>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let piv = &pivot_row[c];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            eliminate(row, pivot_row, piv, &factor, c);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Back substitution on an integer echelon form followed by pivot
/// normalization: yields the reduced row echelon rows over ℚ.
pub(crate) fn reduce_echelon(mut rows: Vec<Vec<BigInt>>, pivots: &[usize]) -> Vec<Vec<Rational>> {
    rows.truncate(pivots.len());
    for k in (0..pivots.len()).rev() {
        let c = pivots[k];
        let (head, tail) = rows.split_at_mut(k);
        let src = &tail[0];
        for row in head.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            eliminate(row, src, &src[c], &factor, 0);
        }
    }
    rows.into_iter()
        .zip(pivots)
        .map(|(row, &c)| {
            let piv = row[c].clone();
            row.into_iter().map(|v| Rational::new(v, piv.clone())).collect()
        })
        .collect()
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut rows = integer_rows(m.rows());
    let pivots = forward_eliminate(&mut rows, m.cols);
    let mut reduced = reduce_echelon(rows, &pivots);
    reduced.resize_with(m.rows, || vec![Rational::zero(); m.cols]);
    let r = RationalMatrix::from_rows(m.cols, reduced).expect("row lengths preserved");
    (r, pivots)
}

pub fn rank(m: &RationalMatrix) -> usize {
    let mut rows = integer_rows(m.rows());
    forward_eliminate(&mut rows, m.cols).len()
}

/// The canonical solution of `M·w = b` with every free variable set to zero,
/// or `None` when the system is inconsistent.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    let aug = m.augment(b)?;
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut w = vec![Rational::zero(); m.cols];
    for (i, &c) in pivots.iter().enumerate() {
        w[c] = r.get(i, m.cols).clone();
    }
    Ok(Some(w))
}
