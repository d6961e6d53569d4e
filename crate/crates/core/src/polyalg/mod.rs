//! Exact polynomial and polynomial-matrix algebra.

mod hermite;
mod matrix;
mod poly;
mod properness;
mod solve;

pub use hermite::{has_full_row_rank, hermite_row_form, rank, HermiteReduction};
pub use matrix::PolyMatrix;
pub use poly::Poly;
pub use properness::{leading_row_coefficients, rational_properness, row_reduce};
pub use solve::{solve_left, solve_left_with};

use crate::error::Result;
use crate::scalar::Scalar;

/// Quotient and remainder of polynomial division.
pub fn poly_divmod<T: Scalar>(a: &Poly<T>, b: &Poly<T>) -> Result<(Poly<T>, Poly<T>)> {
    a.div_rem(b)
}

/// Monic gcd.
pub fn poly_gcd<T: Scalar>(a: &Poly<T>, b: &Poly<T>) -> Result<Poly<T>> {
    a.gcd(b)
}

pub fn det<T: Scalar>(m: &PolyMatrix<T>) -> Result<Poly<T>> {
    m.det()
}

pub fn is_unimodular<T: Scalar>(m: &PolyMatrix<T>) -> Result<bool> {
    m.is_unimodular()
}
