//! Exact dense linear algebra: Gaussian elimination over `F_p` and
//! fraction-free (Bareiss) determinants over `Z`.
//!
//! Pivoting always takes the first nonzero entry at or below the current row
//! in the current column. With exact arithmetic nothing else is needed, and
//! it makes every solution reproducible.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{BigInt, PrimeField, Residue};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Residue>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = FpMatrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {c}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, field.reduce_i64(v));
            }
        }
        Ok(m)
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = FpMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1 % field.modulus());
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Residue {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Residue) {
        self.data[i * self.cols + j] = self.field.reduce(v);
    }

    pub fn row(&self, i: usize) -> &[Residue] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[Residue]) -> Result<Vec<Residue>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", x.len(), self.cols)));
        }
        let f = self.field;
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(x).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    // row[target] -= factor * row[source], from column `from` on.
    fn eliminate(&mut self, target: usize, source: usize, factor: Residue, from: usize) {
        if factor == 0 {
            return;
        }
        let p = self.field.modulus();
        let neg = p - factor;
        let cols = self.cols;
        let (src, dst) = if source < target {
            let (lo, hi) = self.data.split_at_mut(target * cols);
            (&lo[source * cols..source * cols + cols], &mut hi[..cols])
        } else {
            let (lo, hi) = self.data.split_at_mut(source * cols);
            (&hi[..cols], &mut lo[target * cols..target * cols + cols])
        };
        for j in from..cols {
            if src[j] != 0 {
                dst[j] = (dst[j] + neg * src[j]) % p;
            }
        }
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j);
                self.data[r * self.cols + j] = f.mul(v, inv);
            }
            for i in 0..self.rows {
                if i != r {
                    let factor = self.get(i, c);
                    self.eliminate(i, r, factor, c);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    /// Determinant by elimination over `F_p`.
    pub fn determinant(&self) -> Result<Residue> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let f = self.field;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = 1 % f.modulus();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return Ok(0);
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("nonzero pivot");
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                m.eliminate(i, c, factor, c);
            }
        }
        Ok(det)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// A solution with every free variable set to zero.
    Unique(Vec<Residue>),
    NoSolution {
        rank: usize,
    },
}

impl Solution {
    pub fn vector(&self) -> Option<&[Residue]> {
        match self {
            Solution::Unique(x) => Some(x),
            Solution::NoSolution { .. } => None,
        }
    }
}

/// Solve `A x = b` over `F_p`.
pub fn solve_mod_p(a: &FpMatrix, b: &[Residue]) -> Result<Solution> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch(format!("right-hand side of length {} for {} rows", b.len(), a.rows)));
    }
    let f = a.field;
    let mut aug = FpMatrix::zeros(f, a.rows, a.cols + 1);
    for (i, &bi) in b.iter().enumerate() {
        aug.data[i * (a.cols + 1)..i * (a.cols + 1) + a.cols].copy_from_slice(a.row(i));
        aug.set(i, a.cols, bi);
    }
    let pivots = aug.row_reduce();
    if pivots.last() == Some(&a.cols) {
        return Ok(Solution::NoSolution { rank: pivots.len() - 1 });
    }
    let mut x = vec![0; a.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(r, a.cols);
    }
    Ok(Solution::Unique(x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut entry: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(entry(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let c = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|r| r.len() != c) {
            return Err(Error::DimensionMismatch(format!("row {i} has wrong length")));
        }
        Ok(IntMatrix::from_fn(rows.len(), c, |i, j| BigInt::from(rows[i][j])))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[BigInt]>::to_vec).collect()
    }

    pub fn reduce_mod(&self, field: PrimeField) -> FpMatrix {
        let mut m = FpMatrix::zeros(field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, field.reduce_big(self.get(i, j)));
            }
        }
        m
    }
}

/// Exact determinant by fraction-free elimination. Every division performed
/// is exact.
pub fn bareiss_determinant(a: &IntMatrix) -> Result<BigInt> {
    if a.rows != a.cols {
        return Err(Error::NotSquare { rows: a.rows, cols: a.cols });
    }
    let n = a.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m: Vec<Vec<BigInt>> = a.to_rows();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(pr) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            m.swap(k, pr);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = v.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}
