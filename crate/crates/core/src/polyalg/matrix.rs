use std::fmt;
use std::ops::Range;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense matrix of polynomials, row-major.
///
/// Zero-row and zero-column matrices are valid values: a kernel
/// representation with no rows describes the unconstrained behaviour.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<Poly<T>>,
}

impl<T: Scalar> PolyMatrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly<T>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    /// Build from explicit rows. `cols` is needed to give zero-row matrices a width.
    pub fn from_rows(rows: Vec<Vec<Poly<T>>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Poly::one();
        }
        m
    }

    /// Matrix of constant polynomials.
    pub fn from_constants(rows: usize, cols: usize, values: Vec<T>) -> Result<Self> {
        Self::new(rows, cols, values.into_iter().map(Poly::constant).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<T> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly<T>) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly<T>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Poly<T>>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Poly<T>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Maximum entry degree; `None` for the zero matrix.
    pub fn degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    /// Maximum degree over row `i`; `None` for a zero row.
    pub fn row_degree(&self, i: usize) -> Option<usize> {
        self.row(i).iter().filter_map(Poly::degree).max()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&Poly<T>, &Poly<T>) -> Poly<T>) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "shapes {:?} and {:?} differ",
                self.shape(),
                rhs.shape()
            )));
        }
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect();
        Ok(PolyMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| -p).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Poly<T>) -> Poly<T>) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// `[self rhs]`
    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} rows with {} rows",
                self.rows, rhs.rows
            )));
        }
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().chain(rhs.row(i)).cloned().collect())
            .collect();
        Self::from_rows(rows, self.cols + rhs.cols)
    }

    /// `[self; rhs]`
    pub fn vstack(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} cols with {} cols",
                self.cols, rhs.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(rhs.entries.iter().cloned());
        Self::new(self.rows + rhs.rows, self.cols, entries)
    }

    pub fn select_rows(&self, range: Range<usize>) -> Self {
        let entries = self.entries[range.start * self.cols..range.end * self.cols].to_vec();
        PolyMatrix { rows: range.len(), cols: self.cols, entries }
    }

    pub fn select_cols(&self, range: Range<usize>) -> Self {
        let rows = (0..self.rows).map(|i| self.row(i)[range.clone()].to_vec()).collect();
        Self::from_rows(rows, range.len()).expect("column slice is rectangular")
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// row[target] -= factor * row[source]
    pub(crate) fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &Poly<T>) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = factor * self.get(source, j);
            let idx = target * self.cols + j;
            self.entries[idx] = &self.entries[idx] - &delta;
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &T) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.entries[idx] = self.entries[idx].scale(c);
        }
    }

    pub(crate) fn set_row(&mut self, i: usize, row: Vec<Poly<T>>) {
        debug_assert_eq!(row.len(), self.cols);
        for (j, p) in row.into_iter().enumerate() {
            self.set(i, j, p);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination over `T[s]`.
    pub fn det(&self) -> Result<Poly<T>> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one());
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = Poly::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return Ok(Poly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(m.get(i, j) * m.get(k, k)) - &(m.get(i, k) * m.get(k, j));
                    let q = num
                        .div_exact(&prev)?
                        .expect("Bareiss step divides exactly");
                    m.set(i, j, q);
                }
                m.set(i, k, Poly::zero());
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if negate { -d } else { d })
    }

    /// Square with a nonzero constant determinant.
    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.det()?.degree() == Some(0))
    }
}

impl<T: fmt::Debug> fmt::Debug for PolyMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<_> = self.entries.chunks(self.cols.max(1)).collect();
        write!(f, "PolyMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries(rows.iter().take(self.rows)).finish()
    }
}

impl<T: Scalar> fmt::Display for PolyMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, p) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{p}")?;
            }
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QPoly, QPolyMatrix, Rational};

    fn p(coeffs: &[i64]) -> QPoly {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    fn m(rows: &[&[&[i64]]]) -> QPolyMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        PolyMatrix::from_rows(rows.iter().map(|r| r.iter().map(|c| p(c)).collect()).collect(), cols)
            .unwrap()
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = PolyMatrix::from_rows(vec![vec![p(&[1])], vec![]], 1).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
    }

    #[test]
    fn det_examples() {
        assert_eq!(m(&[&[&[0, 1], &[-1]], &[&[], &[0, 1]]]).det().unwrap(), p(&[0, 0, 1]));
        // follower P at h = k = 1
        let follower = m(&[&[&[0, 1], &[-1]], &[&[1], &[2, 1]]]);
        assert_eq!(follower.det().unwrap(), p(&[1, 2, 1]));
        assert_eq!(QPolyMatrix::identity(3).det().unwrap(), p(&[1]));
        assert_eq!(QPolyMatrix::identity(0).det().unwrap(), p(&[1]));
    }

    #[test]
    fn det_needs_pivoting() {
        // [[0, 1], [1, 0]] has det -1
        assert_eq!(m(&[&[&[], &[1]], &[&[1], &[]]]).det().unwrap(), p(&[-1]));
    }

    #[test]
    fn non_square_det_is_error() {
        assert_eq!(
            QPolyMatrix::zeros(1, 2).det(),
            Err(Error::NotSquare { rows: 1, cols: 2 })
        );
    }

    #[test]
    fn unimodular_examples() {
        assert!(m(&[&[&[1], &[0, 1]], &[&[], &[1]]]).is_unimodular().unwrap());
        assert!(!m(&[&[&[0, 1]]]).is_unimodular().unwrap());
        assert!(!QPolyMatrix::zeros(2, 2).is_unimodular().unwrap());
    }

    #[test]
    fn stacking_zero_row_blocks() {
        let a = QPolyMatrix::zeros(0, 3);
        let b = m(&[&[&[1], &[2], &[3]]]);
        assert_eq!(a.vstack(&b).unwrap(), b);
        assert_eq!(QPolyMatrix::zeros(0, 2).hstack(&QPolyMatrix::zeros(0, 1)).unwrap().shape(), (0, 3));
    }
}
