use super::hermite::{hermite_row_form, HermiteReduction};
use super::matrix::PolyMatrix;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Find `X` with `X * r = s`, i.e. decide whether every row of `s` lies in
/// the row module of `r` over the polynomial ring.
///
/// Returns `Ok(None)` when no polynomial solution exists. A returned `X` has
/// been re-multiplied and checked.
pub fn solve_left<T: Scalar>(r: &PolyMatrix<T>, s: &PolyMatrix<T>) -> Result<Option<PolyMatrix<T>>> {
    if r.cols() != s.cols() {
        return Err(Error::DimensionMismatch(format!(
            "solve_left: R has {} columns, S has {}",
            r.cols(),
            s.cols()
        )));
    }
    let hr = hermite_row_form(r);
    solve_left_with(&hr, r, s)
}

/// [`solve_left`] reusing an existing Hermite reduction of `r`.
pub fn solve_left_with<T: Scalar>(
    hr: &HermiteReduction<T>,
    r: &PolyMatrix<T>,
    s: &PolyMatrix<T>,
) -> Result<Option<PolyMatrix<T>>> {
    let mut rows = Vec::with_capacity(s.rows());
    for i in 0..s.rows() {
        match reduce_row(hr, s.row(i))? {
            Some(coeffs) => rows.push(coeffs),
            None => return Ok(None),
        }
    }
    // coefficients are with respect to the staircase rows U[..rank] * R
    let c = PolyMatrix::from_rows(rows, hr.rank)?;
    let x = c.mul(&hr.image_rows())?;
    if x.mul(r)? != *s {
        return Err(Error::CertificateRejected("solve_left: X * R != S".into()));
    }
    Ok(Some(x))
}

/// Express `target` as a combination of the staircase rows, or fail.
fn reduce_row<T: Scalar>(hr: &HermiteReduction<T>, target: &[Poly<T>]) -> Result<Option<Vec<Poly<T>>>> {
    let mut residual = target.to_vec();
    let mut coeffs = Vec::with_capacity(hr.rank);
    for (i, &pc) in hr.pivot_cols.iter().enumerate() {
        // columns left of this pivot are untouched by this and later rows
        if residual[..pc].iter().any(|p| !p.is_zero()) {
            return Ok(None);
        }
        let Some(q) = residual[pc].div_exact(hr.h.get(i, pc))? else {
            return Ok(None);
        };
        if !q.is_zero() {
            for (j, entry) in residual.iter_mut().enumerate().skip(pc) {
                *entry = &*entry - &(&q * hr.h.get(i, j));
            }
        }
        coeffs.push(q);
    }
    Ok(residual.iter().all(Poly::is_zero).then_some(coeffs))
}
