use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense row-major integer matrix with overflow-checked arithmetic.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed so that 0-row matrices keep their width.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_columns(columns: &[Vec<i64>], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension(format!(
                    "column {j} has {} entries, expected {rows}",
                    c.len()
                )));
            }
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a
                        .checked_mul(other.get(k, j))
                        .ok_or(Error::Overflow("matrix product"))?;
                    let v = out
                        .get(i, j)
                        .checked_add(prod)
                        .ok_or(Error::Overflow("matrix product"))?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|i| checked_dot(self.row(i), v))
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "hstack of {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn map_entries(&self, f: impl Fn(i64) -> i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        if q == 0 {
            return Ok(());
        }
        for j in 0..self.cols {
            let v = q
                .checked_mul(self.get(src, j))
                .and_then(|p| self.get(dst, j).checked_add(p))
                .ok_or(Error::Overflow("row operation"))?;
            self.set(dst, j, v);
        }
        Ok(())
    }

    /// col[dst] += q * col[src]
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        if q == 0 {
            return Ok(());
        }
        for i in 0..self.rows {
            let v = q
                .checked_mul(self.get(i, src))
                .and_then(|p| self.get(i, dst).checked_add(p))
                .ok_or(Error::Overflow("column operation"))?;
            self.set(i, dst, v);
        }
        Ok(())
    }

    pub(crate) fn negate_row(&mut self, i: usize) -> Result<()> {
        for j in 0..self.cols {
            let v = self
                .get(i, j)
                .checked_neg()
                .ok_or(Error::Overflow("row negation"))?;
            self.set(i, j, v);
        }
        Ok(())
    }

    pub(crate) fn negate_col(&mut self, j: usize) -> Result<()> {
        for i in 0..self.rows {
            let v = self
                .get(i, j)
                .checked_neg()
                .ok_or(Error::Overflow("column negation"))?;
            self.set(i, j, v);
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    /// `[[a,b],[c,d]]`, the same syntax the descriptor parser reads.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn checked_dot(a: &[i64], b: &[i64]) -> Result<i64> {
    a.iter().zip(b).try_fold(0i64, |acc, (&x, &y)| {
        x.checked_mul(y)
            .and_then(|p| acc.checked_add(p))
            .ok_or(Error::Overflow("dot product"))
    })
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}

pub fn lcm(a: i64, b: i64) -> Result<i64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b))
        .checked_mul(b)
        .map(i64::abs)
        .ok_or(Error::Overflow("lcm"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]], 2).unwrap();
        let b = IntMatrix::identity(2);
        assert_eq!(a.mul(&b).unwrap(), a);
        assert_eq!(a.transpose().to_rows(), vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(a.mul_vec(&[1, 1]).unwrap(), vec![3, 7]);
    }

    #[test]
    fn overflow_is_reported() {
        let a = IntMatrix::from_rows(&[vec![i64::MAX]], 1).unwrap();
        let b = IntMatrix::from_rows(&[vec![2]], 1).unwrap();
        assert_eq!(a.mul(&b), Err(Error::Overflow("matrix product")));
    }

    #[test]
    fn empty_shapes() {
        let e = IntMatrix::zeros(0, 3);
        assert_eq!(e.rows(), 0);
        assert_eq!(e.cols(), 3);
        assert_eq!(e.to_string(), "[]");
        let z = IntMatrix::zeros(3, 0).mul(&IntMatrix::zeros(0, 2)).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn gcd_and_lcm() {
        assert_eq!(gcd(-4, 6), 2);
        assert_eq!(gcd_all(&[6, 10, 15]), 1);
        assert_eq!(gcd_all(&[]), 0);
        assert_eq!(lcm(4, 6).unwrap(), 12);
        assert_eq!(lcm(-3, 5).unwrap(), 15);
        assert_eq!(lcm(0, 5).unwrap(), 0);
    }
}
