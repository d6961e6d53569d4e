use super::matrix::PolyMatrix;
use super::poly::Poly;
use crate::scalar::{recip, Scalar};

/// Row Hermite form of a polynomial matrix: `u * input = h`.
///
/// `h` is in staircase form. The first `rank` rows carry monic pivots at
/// strictly increasing `pivot_cols`, entries above each pivot have smaller
/// degree than the pivot, and the remaining rows are zero. `u` is
/// unimodular.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteReduction<T> {
    pub u: PolyMatrix<T>,
    pub h: PolyMatrix<T>,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

impl<T: Scalar> HermiteReduction<T> {
    /// Rows of `u` that annihilate the input (the left kernel block).
    pub fn kernel_rows(&self) -> PolyMatrix<T> {
        self.u.select_rows(self.rank..self.u.rows())
    }

    /// Rows of `u` producing the nonzero staircase block.
    pub fn image_rows(&self) -> PolyMatrix<T> {
        self.u.select_rows(0..self.rank)
    }

    /// The nonzero staircase block of `h`.
    pub fn nonzero_rows(&self) -> PolyMatrix<T> {
        self.h.select_rows(0..self.rank)
    }

    /// Check every structural invariant against the matrix that was reduced.
    pub fn is_valid_for(&self, input: &PolyMatrix<T>) -> bool {
        let product_ok = self.u.mul(input).is_ok_and(|p| p == self.h);
        let unimodular = self.u.is_unimodular().unwrap_or(false);
        product_ok && unimodular && self.is_staircase()
    }

    pub fn is_staircase(&self) -> bool {
        if self.pivot_cols.len() != self.rank || !self.pivot_cols.windows(2).all(|w| w[0] < w[1]) {
            return false;
        }
        for (i, &pc) in self.pivot_cols.iter().enumerate() {
            let pivot = self.h.get(i, pc);
            if pivot.leading_coeff().is_none_or(|c| !c.is_one()) {
                return false;
            }
            if (0..pc).any(|j| !self.h.get(i, j).is_zero()) {
                return false;
            }
            if (i + 1..self.h.rows()).any(|k| !self.h.get(k, pc).is_zero()) {
                return false;
            }
            if (0..i).any(|k| self.h.get(k, pc).degree() >= pivot.degree()) {
                return false;
            }
        }
        (self.rank..self.h.rows()).all(|i| self.h.row(i).iter().all(Poly::is_zero))
    }
}

/// Reduce `input` to row Hermite form by unimodular row operations.
///
/// Column by column, the lowest-degree candidate is swapped into pivot
/// position and used to divide the entries below it until they vanish. The
/// pivot is then made monic and the entries above it are reduced modulo it.
/// The result is deterministic.
pub fn hermite_row_form<T: Scalar>(input: &PolyMatrix<T>) -> HermiteReduction<T> {
    let (rows, cols) = input.shape();
    let mut h = input.clone();
    let mut u = PolyMatrix::identity(rows);
    let mut pivot_cols = Vec::new();
    let mut r = 0;

    for j in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| !h.get(i, j).is_zero())
                .min_by_key(|&i| h.get(i, j).degree());
            let Some(best) = best else { break };
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            let mut cleared = true;
            for i in r + 1..rows {
                if h.get(i, j).is_zero() {
                    continue;
                }
                let (q, rem) = h.get(i, j).div_rem(h.get(r, j)).expect("pivot is nonzero");
                h.sub_row_multiple(i, r, &q);
                u.sub_row_multiple(i, r, &q);
                if !rem.is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if h.get(r, j).is_zero() {
            continue;
        }
        let inv = recip(h.get(r, j).leading_coeff().unwrap()).unwrap();
        h.scale_row(r, &inv);
        u.scale_row(r, &inv);
        for i in 0..r {
            let (q, _) = h.get(i, j).div_rem(h.get(r, j)).expect("pivot is nonzero");
            h.sub_row_multiple(i, r, &q);
            u.sub_row_multiple(i, r, &q);
        }
        pivot_cols.push(j);
        r += 1;
    }

    HermiteReduction { u, h, pivot_cols, rank: r }
}

/// Rank over the field of rational functions.
pub fn rank<T: Scalar>(m: &PolyMatrix<T>) -> usize {
    hermite_row_form(m).rank
}

pub fn has_full_row_rank<T: Scalar>(m: &PolyMatrix<T>) -> bool {
    rank(m) == m.rows()
}
