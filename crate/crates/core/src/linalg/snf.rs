//! Dense Smith normal form with optional unimodular transforms.

use super::sparse::SparseMatrix;
use crate::scalar::{Overflow, Scalar};

pub(crate) type Dense<T> = Vec<Vec<T>>;

pub(crate) fn dense_identity<T: Scalar>(n: usize) -> Dense<T> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect()
}

/// `U · A · V = diag(factors)` with `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult<T> {
    pub factors: Vec<T>,
    pub u: SparseMatrix<T>,
    pub u_inv: SparseMatrix<T>,
    pub v: SparseMatrix<T>,
    pub v_inv: SparseMatrix<T>,
}

impl<T: Scalar> SnfResult<T> {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn diagonal(&self) -> SparseMatrix<T> {
        let mut s = SparseMatrix::zeros(self.u.nrows(), self.v.ncols());
        for (i, d) in self.factors.iter().enumerate() {
            s.set(i, i, d.clone());
        }
        s
    }
}

pub(crate) struct DenseSnf<T> {
    pub factors: Vec<T>,
    pub u: Option<Dense<T>>,
    pub u_inv: Option<Dense<T>>,
    pub v: Option<Dense<T>>,
    pub v_inv: Option<Dense<T>>,
}

struct Work<T> {
    a: Dense<T>,
    m: usize,
    n: usize,
    u: Option<Dense<T>>,
    u_inv: Option<Dense<T>>,
    v: Option<Dense<T>>,
    v_inv: Option<Dense<T>>,
}

fn row_axpy<T: Scalar>(rows: &mut Dense<T>, dst: usize, q: &T, src: usize) -> Result<(), Overflow> {
    // rows[dst] -= q * rows[src]
    if q.is_zero() {
        return Ok(());
    }
    let (d, s) = if dst < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x = x.try_sub_mul(q, y)?;
        }
    }
    Ok(())
}

fn col_axpy<T: Scalar>(rows: &mut Dense<T>, dst: usize, q: &T, src: usize) -> Result<(), Overflow> {
    // col[dst] -= q * col[src]
    if q.is_zero() {
        return Ok(());
    }
    for row in rows.iter_mut() {
        if !row[src].is_zero() {
            row[dst] = row[dst].try_sub_mul(q, &row[src])?;
        }
    }
    Ok(())
}

fn swap_cols<T>(rows: &mut Dense<T>, a: usize, b: usize) {
    if a != b {
        for row in rows.iter_mut() {
            row.swap(a, b);
        }
    }
}

impl<T: Scalar> Work<T> {
    /// row_i -= q row_t, mirrored on U and U⁻¹.
    fn row_op(&mut self, i: usize, q: &T, t: usize) -> Result<(), Overflow> {
        row_axpy(&mut self.a, i, q, t)?;
        if let Some(u) = &mut self.u {
            row_axpy(u, i, q, t)?;
        }
        if let Some(ui) = &mut self.u_inv {
            col_axpy(ui, t, &-q.clone(), i)?;
        }
        Ok(())
    }

    /// col_j -= q col_t, mirrored on V and V⁻¹.
    fn col_op(&mut self, j: usize, q: &T, t: usize) -> Result<(), Overflow> {
        col_axpy(&mut self.a, j, q, t)?;
        if let Some(v) = &mut self.v {
            col_axpy(v, j, q, t)?;
        }
        if let Some(vi) = &mut self.v_inv {
            row_axpy(vi, t, &-q.clone(), j)?;
        }
        Ok(())
    }

    fn swap_rows(&mut self, i: usize, t: usize) {
        if i == t {
            return;
        }
        self.a.swap(i, t);
        if let Some(u) = &mut self.u {
            u.swap(i, t);
        }
        if let Some(ui) = &mut self.u_inv {
            swap_cols(ui, i, t);
        }
    }

    fn swap_cols(&mut self, j: usize, t: usize) {
        if j == t {
            return;
        }
        swap_cols(&mut self.a, j, t);
        if let Some(v) = &mut self.v {
            swap_cols(v, j, t);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap(j, t);
        }
    }

    fn negate_row(&mut self, t: usize) {
        for x in self.a[t].iter_mut() {
            *x = -x.clone();
        }
        if let Some(u) = &mut self.u {
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row[t] = -row[t].clone();
            }
        }
    }

    /// Smallest nonzero |entry| in the trailing block, ties broken by the
    /// fewest nonzeros in its row and column.
    fn choose_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(T, usize, usize, usize)> = None;
        let row_nnz: Vec<usize> = (0..self.m)
            .map(|i| {
                if i < t {
                    0
                } else {
                    self.a[i][t..].iter().filter(|x| !x.is_zero()).count()
                }
            })
            .collect();
        let col_nnz: Vec<usize> = (0..self.n)
            .map(|j| {
                if j < t {
                    0
                } else {
                    (t..self.m).filter(|&i| !self.a[i][j].is_zero()).count()
                }
            })
            .collect();
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let key = (x.abs(), row_nnz[i] + col_nnz[j]);
                let better = match &best {
                    None => true,
                    Some((b, f, _, _)) => key.0 < *b || (key.0 == *b && key.1 < *f),
                };
                if better {
                    best = Some((key.0, key.1, i, j));
                }
            }
        }
        best.map(|(_, _, i, j)| (i, j))
    }

    fn run(mut self) -> Result<DenseSnf<T>, Overflow> {
        let mut factors = Vec::new();
        let mut t = 0;
        while t < self.m.min(self.n) {
            let Some((pi, pj)) = self.choose_pivot(t) else {
                break;
            };
            self.swap_rows(pi, t);
            self.swap_cols(pj, t);
            loop {
                let mut dirty = false;
                for i in t + 1..self.m {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].clone() / self.a[t][t].clone();
                        self.row_op(i, &q, t)?;
                        dirty |= !self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.n {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].clone() / self.a[t][t].clone();
                        self.col_op(j, &q, t)?;
                        dirty |= !self.a[t][j].is_zero();
                    }
                }
                if dirty {
                    // a remainder smaller than the pivot is left in row or column t
                    let mut best = (self.a[t][t].abs(), t, t);
                    for i in t + 1..self.m {
                        let x = self.a[i][t].abs();
                        if !x.is_zero() && x < best.0 {
                            best = (x, i, t);
                        }
                    }
                    for j in t + 1..self.n {
                        let x = self.a[t][j].abs();
                        if !x.is_zero() && x < best.0 {
                            best = (x, t, j);
                        }
                    }
                    self.swap_rows(best.1, t);
                    self.swap_cols(best.2, t);
                    continue;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.m).find(|&i| {
                    self.a[i][t + 1..]
                        .iter()
                        .any(|x| !(x.clone() % p.clone()).is_zero())
                });
                match bad {
                    Some(i) => self.row_op(t, &-T::one(), i)?,
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            factors.push(self.a[t][t].clone());
            t += 1;
        }
        Ok(DenseSnf {
            factors,
            u: self.u,
            u_inv: self.u_inv,
            v: self.v,
            v_inv: self.v_inv,
        })
    }
}

pub(crate) fn dense_snf<T: Scalar>(
    a: Dense<T>,
    ncols: usize,
    track: bool,
) -> Result<DenseSnf<T>, Overflow> {
    let m = a.len();
    let n = ncols;
    let work = Work {
        a,
        m,
        n,
        u: track.then(|| dense_identity(m)),
        u_inv: track.then(|| dense_identity(m)),
        v: track.then(|| dense_identity(n)),
        v_inv: track.then(|| dense_identity(n)),
    };
    work.run()
}

/// Smith normal form of `a` with all four transforms.
pub fn smith_normal_form<T: Scalar>(a: &SparseMatrix<T>) -> Result<SnfResult<T>, Overflow> {
    let d = dense_snf(a.to_dense(), a.ncols(), true)?;
    let sp = |x: Option<Dense<T>>| SparseMatrix::from_dense(&x.expect("tracked"));
    Ok(SnfResult {
        factors: d.factors,
        u: sp(d.u),
        u_inv: sp(d.u_inv),
        v: sp(d.v),
        v_inv: sp(d.v_inv),
    })
}

/// Invariant factors of a dense matrix, without transforms.
pub fn dense_invariant_factors<T: Scalar>(a: Dense<T>, ncols: usize) -> Result<Vec<T>, Overflow> {
    Ok(dense_snf(a, ncols, false)?.factors)
}
