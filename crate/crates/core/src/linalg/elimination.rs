//! Sparse elimination on unit pivots.
//!
//! Boundary matrices are mostly ±1 entries, so most of the rank can be peeled
//! off with exact unit pivots before anything dense happens. What is left (the
//! core) goes to the dense Smith normal form.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use super::snf::dense_invariant_factors;
use super::sparse::SparseMatrix;
use crate::scalar::{Overflow, Scalar};

/// Column-major sparse matrix with a row index, supporting column operations
/// and deletion of rows and columns.
#[derive(Clone, Debug)]
pub(crate) struct ColMatrix<T> {
    pub cols: Vec<BTreeMap<usize, T>>,
    pub rows: Vec<BTreeSet<usize>>,
    pub live_rows: BTreeSet<usize>,
    pub live_cols: BTreeSet<usize>,
}

impl<T: Scalar> ColMatrix<T> {
    pub fn from_sparse(a: &SparseMatrix<T>) -> Self {
        let mut cols = vec![BTreeMap::new(); a.ncols()];
        let mut rows = vec![BTreeSet::new(); a.nrows()];
        for (r, c, v) in a.iter() {
            cols[c].insert(r, v.clone());
            rows[r].insert(c);
        }
        Self {
            cols,
            rows,
            live_rows: (0..a.nrows()).collect(),
            live_cols: (0..a.ncols()).collect(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&T> {
        self.cols[c].get(&r)
    }

    /// col_dst -= k · col_src
    pub fn col_sub(&mut self, dst: usize, k: &T, src: usize) -> Result<(), Overflow> {
        let src_col: Vec<(usize, T)> = self.cols[src]
            .iter()
            .map(|(&r, v)| (r, v.clone()))
            .collect();
        for (r, v) in src_col {
            let cur = self.cols[dst].remove(&r).unwrap_or_else(T::zero);
            let next = cur.try_sub_mul(k, &v)?;
            if next.is_zero() {
                self.rows[r].remove(&dst);
            } else {
                self.cols[dst].insert(r, next);
                self.rows[r].insert(dst);
            }
        }
        Ok(())
    }

    pub fn remove_row(&mut self, r: usize) {
        for c in std::mem::take(&mut self.rows[r]) {
            self.cols[c].remove(&r);
        }
        self.live_rows.remove(&r);
    }

    pub fn remove_col(&mut self, c: usize) {
        for r in std::mem::take(&mut self.cols[c]).into_keys() {
            self.rows[r].remove(&c);
        }
        self.live_cols.remove(&c);
    }

    /// Clear row `r` using the unit entry at `(r, c)`, then delete row `r`
    /// and column `c`. Returns the other columns that were modified.
    pub fn pivot(&mut self, r: usize, c: usize) -> Result<Vec<usize>, Overflow> {
        let eps = self.cols[c][&r].clone();
        debug_assert!(eps.is_unit());
        let touched: Vec<usize> = self.rows[r].iter().copied().filter(|&x| x != c).collect();
        for &x in &touched {
            let k = self.cols[x][&r].try_mul(&eps)?;
            self.col_sub(x, &k, c)?;
        }
        self.remove_col(c);
        self.remove_row(r);
        Ok(touched)
    }

    /// Unit entry of column `c` whose row is sparsest.
    pub fn unit_in_col(&self, c: usize) -> Option<usize> {
        self.cols[c]
            .iter()
            .filter(|(_, v)| v.is_unit())
            .min_by_key(|(&r, _)| (self.rows[r].len(), r))
            .map(|(&r, _)| r)
    }

    /// Live rows and columns that still carry entries, as a dense block.
    pub fn dense_core(&self) -> (Vec<usize>, Vec<usize>, Vec<Vec<T>>) {
        let rows: Vec<usize> = self
            .live_rows
            .iter()
            .copied()
            .filter(|&r| !self.rows[r].is_empty())
            .collect();
        let cols: Vec<usize> = self
            .live_cols
            .iter()
            .copied()
            .filter(|&c| !self.cols[c].is_empty())
            .collect();
        let pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(j, &c)| (c, j)).collect();
        let dense = rows
            .iter()
            .map(|&r| {
                let mut row = vec![T::zero(); cols.len()];
                for c in &self.rows[r] {
                    row[pos[c]] = self.cols[*c][&r].clone();
                }
                row
            })
            .collect();
        (rows, cols, dense)
    }
}

/// Repeatedly pivot on unit entries, sparsest columns first. `on_pivot`
/// observes each `(row, col)` pivot before it is applied.
pub(crate) fn eliminate_units<T: Scalar>(
    m: &mut ColMatrix<T>,
    mut on_pivot: impl FnMut(&ColMatrix<T>, usize, usize) -> Result<(), Overflow>,
) -> Result<usize, Overflow> {
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = m
        .live_cols
        .iter()
        .map(|&c| Reverse((m.cols[c].len(), c)))
        .collect();
    let mut pivots = 0;
    while let Some(Reverse((len, c))) = heap.pop() {
        if !m.live_cols.contains(&c) || m.cols[c].len() != len {
            continue;
        }
        let Some(r) = m.unit_in_col(c) else { continue };
        on_pivot(m, r, c)?;
        for x in m.pivot(r, c)? {
            heap.push(Reverse((m.cols[x].len(), x)));
        }
        pivots += 1;
    }
    Ok(pivots)
}

/// Nonzero invariant factors (with multiplicity, ascending divisibility chain).
pub fn invariant_factors<T: Scalar>(a: &SparseMatrix<T>) -> Result<Vec<T>, Overflow> {
    let mut m = ColMatrix::from_sparse(a);
    let units = eliminate_units(&mut m, |_, _, _| Ok(()))?;
    let (_, cols, dense) = m.dense_core();
    let mut out = vec![T::one(); units];
    out.extend(dense_invariant_factors(dense, cols.len())?);
    Ok(out)
}

pub fn rank<T: Scalar>(a: &SparseMatrix<T>) -> Result<usize, Overflow> {
    Ok(invariant_factors(a)?.len())
}
