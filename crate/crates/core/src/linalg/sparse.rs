use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::scalar::{convert, Overflow, Scalar};

/// Sparse vector: index → nonzero coefficient.
pub type SparseVector<T> = BTreeMap<usize, T>;

/// Sparse matrix with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix<T> {
    nrows: usize,
    ncols: usize,
    entries: BTreeMap<(usize, usize), T>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), T::one());
        }
        m
    }

    /// Sums repeated positions and drops zeros.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Result<Self, Overflow> {
        let mut m = Self::zeros(nrows, ncols);
        for (r, c, v) in triplets {
            m.add_to(r, c, &v)?;
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        assert!(
            r < self.nrows && c < self.ncols,
            "index ({r}, {c}) out of bounds"
        );
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &T) -> Result<(), Overflow> {
        let cur = self.get(r, c);
        self.set(r, c, cur.try_add(v)?);
        Ok(())
    }

    /// Entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> Self {
        Self {
            nrows: self.ncols,
            ncols: self.nrows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut d = vec![vec![T::zero(); self.ncols]; self.nrows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVector<T>> {
        let mut cols = vec![SparseVector::new(); self.ncols];
        for (&(r, c), v) in &self.entries {
            cols[c].insert(r, v.clone());
        }
        cols
    }

    pub fn rows(&self) -> Vec<SparseVector<T>> {
        let mut rows = vec![SparseVector::new(); self.nrows];
        for (&(r, c), v) in &self.entries {
            rows[r].insert(c, v.clone());
        }
        rows
    }

    pub fn from_columns(nrows: usize, cols: &[SparseVector<T>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            for (&r, v) in col {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Overflow> {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let rows = other.rows();
        let mut out = Self::zeros(self.nrows, other.ncols);
        for (&(r, k), a) in &self.entries {
            for (&c, b) in &rows[k] {
                out.add_to(r, c, &a.try_mul(b)?)?;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &SparseVector<T>) -> Result<SparseVector<T>, Overflow> {
        let mut out = SparseVector::new();
        for (&(r, c), a) in &self.entries {
            if let Some(b) = x.get(&c) {
                vec_add_scaled(&mut out, r, &a.try_mul(b)?)?;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, Overflow> {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_to(r, c, v)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self.entries.iter().map(|(&k, v)| (k, -v.clone())).collect(),
        }
    }

    pub fn convert<U: Scalar>(&self) -> Result<SparseMatrix<U>, Overflow> {
        Ok(SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self
                .entries
                .iter()
                .map(|(&k, v)| Ok((k, convert(v)?)))
                .collect::<Result<_, Overflow>>()?,
        })
    }

    pub fn to_big(&self) -> SparseMatrix<BigInt> {
        self.convert().expect("widening never overflows")
    }

    /// `nrows ncols nnz` header followed by one `row col value` line per entry.
    pub fn to_coordinate_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.nrows, self.ncols, self.nnz());
        for (&(r, c), v) in &self.entries {
            writeln!(s, "{r} {c} {v}").expect("writing to a string");
        }
        s
    }

    /// Keep the listed rows and columns, renumbered in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut rmap = vec![usize::MAX; self.nrows];
        for (i, &r) in rows.iter().enumerate() {
            rmap[r] = i;
        }
        let mut cmap = vec![usize::MAX; self.ncols];
        for (j, &c) in cols.iter().enumerate() {
            cmap[c] = j;
        }
        let mut out = Self::zeros(rows.len(), cols.len());
        for (&(r, c), v) in &self.entries {
            if rmap[r] != usize::MAX && cmap[c] != usize::MAX {
                out.entries.insert((rmap[r], cmap[c]), v.clone());
            }
        }
        out
    }
}

/// `v[i] += x`, removing the entry if it cancels.
pub fn vec_add_scaled<T: Scalar>(v: &mut SparseVector<T>, i: usize, x: &T) -> Result<(), Overflow> {
    if x.is_zero() {
        return Ok(());
    }
    let cur = v.remove(&i).unwrap_or_else(T::zero);
    let next = cur.try_add(x)?;
    if !next.is_zero() {
        v.insert(i, next);
    }
    Ok(())
}

/// `v += c · w`.
pub fn vec_axpy<T: Scalar>(
    v: &mut SparseVector<T>,
    c: &T,
    w: &SparseVector<T>,
) -> Result<(), Overflow> {
    if c.is_zero() {
        return Ok(());
    }
    for (&i, x) in w {
        vec_add_scaled(v, i, &c.try_mul(x)?)?;
    }
    Ok(())
}

pub fn vec_dot<T: Scalar>(a: &SparseVector<T>, b: &SparseVector<T>) -> Result<T, Overflow> {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut acc = T::zero();
    for (i, x) in small {
        if let Some(y) = large.get(i) {
            acc = acc.try_add(&x.try_mul(y)?)?;
        }
    }
    Ok(acc)
}

pub fn vec_convert<S: Scalar, T: Scalar>(v: &SparseVector<S>) -> Result<SparseVector<T>, Overflow> {
    v.iter().map(|(&i, x)| Ok((i, convert(x)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_dense(&[vec![1i64, 2], vec![0, 3]]);
        let b = SparseMatrix::from_dense(&[vec![4i64, 0], vec![1, -1]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.to_dense(), vec![vec![6, -2], vec![3, -3]]);
        assert_eq!(a.transpose().get(1, 0), 2);
        assert_eq!(a.nnz(), 3);
        let i = SparseMatrix::<i64>::identity(2);
        assert_eq!(a.mul(&i).unwrap(), a);
    }

    #[test]
    fn zeros_are_not_stored() {
        let m = SparseMatrix::from_triplets(2, 2, [(0, 0, 3i64), (0, 0, -3), (1, 1, 2)]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.to_coordinate_text(), "2 2 1\n1 1 2\n");
    }

    #[test]
    fn overflow_is_reported() {
        let a = SparseMatrix::from_dense(&[vec![i64::MAX, i64::MAX]]);
        let b = SparseMatrix::from_dense(&[vec![1i64], vec![1]]);
        assert_eq!(a.mul(&b), Err(Overflow));
        let ab = a.to_big().mul(&b.to_big()).unwrap();
        assert_eq!(ab.get(0, 0), BigInt::from(i64::MAX) * 2);
    }
}
