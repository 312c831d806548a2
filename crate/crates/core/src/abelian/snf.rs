use crate::abelian::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Smith decomposition `u * m * v = diag(diagonal)` with unimodular `u`, `v`
/// and their inverses. Nonzero diagonal entries are positive and form a
/// divisibility chain; zeros come last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<i64>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&d| d != 0).count()
    }

    pub fn invariant_factors(&self) -> Vec<i64> {
        self.diagonal.iter().copied().filter(|&d| d != 0).collect()
    }
}

/// Invariant factors and rational rank of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub invariant_factors: Vec<i64>,
    pub rank: usize,
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithNormalForm> {
    let s = smith_decomposition(m)?;
    Ok(SmithNormalForm {
        invariant_factors: s.invariant_factors(),
        rank: s.rank(),
    })
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        let neg = q.checked_neg().ok_or(Error::Overflow("row operation"))?;
        self.a.add_row_multiple(dst, src, q)?;
        self.u.add_row_multiple(dst, src, q)?;
        self.u_inv.add_col_multiple(src, dst, neg)
    }

    fn add_col(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        let neg = q.checked_neg().ok_or(Error::Overflow("column operation"))?;
        self.a.add_col_multiple(dst, src, q)?;
        self.v.add_col_multiple(dst, src, q)?;
        self.v_inv.add_row_multiple(src, dst, neg)
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        self.a.negate_row(i)?;
        self.u.negate_row(i)?;
        self.u_inv.negate_col(i)
    }

    fn smallest_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, u64)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j).unsigned_abs();
                if x != 0 && best.is_none_or(|(_, _, b)| x < b) {
                    best = Some((i, j, x));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

pub fn smith_decomposition(m: &IntMatrix) -> Result<SmithForm> {
    let (r, c) = (m.rows(), m.cols());
    let mut red = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
        v_inv: IntMatrix::identity(c),
    };
    let n = r.min(c);
    'outer: for t in 0..n {
        loop {
            let Some((pi, pj)) = red.smallest_nonzero(t) else {
                break 'outer;
            };
            red.swap_rows(t, pi);
            red.swap_cols(t, pj);
            let p = red.a.get(t, t);

            let mut clean = true;
            for i in t + 1..r {
                let x = red.a.get(i, t);
                if x != 0 {
                    red.add_row(i, t, -(x / p))?;
                    clean &= red.a.get(i, t) == 0;
                }
            }
            for j in t + 1..c {
                let x = red.a.get(t, j);
                if x != 0 {
                    red.add_col(j, t, -(x / p))?;
                    clean &= red.a.get(t, j) == 0;
                }
            }
            if !clean {
                continue;
            }

            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| red.a.get(i, j) % p != 0));
            match offender {
                Some(i) => red.add_row(t, i, 1)?,
                None => break,
            }
        }
        if red.a.get(t, t) < 0 {
            red.negate_row(t)?;
        }
    }
    let diagonal = (0..n).map(|i| red.a.get(i, i)).collect();
    Ok(SmithForm {
        diagonal,
        u: red.u,
        u_inv: red.u_inv,
        v: red.v,
        v_inv: red.v_inv,
    })
}

/// Rank over GF(2).
pub fn rank_mod2(m: &IntMatrix) -> usize {
    let mut rows: Vec<Vec<bool>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.rem_euclid(2) == 1).collect())
        .collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] {
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}
