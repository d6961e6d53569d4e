use super::matrix::PolyMatrix;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Whether `P^{-1} Q` is a proper rational matrix.
///
/// `P` is first brought to row-reduced form by unimodular row operations
/// applied jointly to `(P, Q)`. For row-reduced `P` the quotient is proper
/// exactly when every row degree of `Q` is at most the matching row degree
/// of `P`.
pub fn rational_properness<T: Scalar>(p: &PolyMatrix<T>, q: &PolyMatrix<T>) -> Result<bool> {
    if !p.is_square() {
        return Err(Error::NotSquare { rows: p.rows(), cols: p.cols() });
    }
    if p.rows() != q.rows() {
        return Err(Error::DimensionMismatch(format!(
            "P has {} rows, Q has {}",
            p.rows(),
            q.rows()
        )));
    }
    if p.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let (p, q) = row_reduce(p.clone(), q.clone())?;
    Ok((0..p.rows()).all(|i| q.row_degree(i) <= p.row_degree(i)))
}

/// Leading row coefficient matrix: entry `(i, j)` is the coefficient of
/// `s^{d_i}` in `p[i][j]`, where `d_i` is the degree of row `i`.
pub fn leading_row_coefficients<T: Scalar>(p: &PolyMatrix<T>) -> Vec<Vec<T>> {
    (0..p.rows())
        .map(|i| {
            let d = p.row_degree(i).unwrap_or(0);
            p.row(i).iter().map(|e| e.coeff(d)).collect()
        })
        .collect()
}

/// Unimodular row operations until the leading row coefficient matrix of
/// `p` is nonsingular. The same operations are applied to `q`.
pub fn row_reduce<T: Scalar>(
    mut p: PolyMatrix<T>,
    mut q: PolyMatrix<T>,
) -> Result<(PolyMatrix<T>, PolyMatrix<T>)> {
    loop {
        let lead = leading_row_coefficients(&p);
        let Some(a) = left_kernel_vector(&lead) else {
            return Ok((p, q));
        };
        let degs: Vec<usize> = (0..p.rows())
            .map(|i| p.row_degree(i).ok_or(Error::Singular))
            .collect::<Result<_>>()?;
        // the participating row of highest degree is replaced
        let k = (0..a.len())
            .filter(|&i| !a[i].is_zero())
            .max_by_key(|&i| (degs[i], std::cmp::Reverse(i)))
            .expect("kernel vector is nonzero");
        let combine = |m: &PolyMatrix<T>| -> Vec<Poly<T>> {
            (0..m.cols())
                .map(|j| {
                    (0..a.len())
                        .filter(|&i| !a[i].is_zero())
                        .fold(Poly::zero(), |acc, i| {
                            &acc + &m.get(i, j).scale(&a[i]).shift(degs[k] - degs[i])
                        })
                })
                .collect()
        };
        let new_p = combine(&p);
        let new_q = combine(&q);
        p.set_row(k, new_p);
        q.set_row(k, new_q);
    }
}

/// A nonzero `a` with `a^T m = 0`, if one exists. `m` is square.
fn left_kernel_vector<T: Scalar>(m: &[Vec<T>]) -> Option<Vec<T>> {
    let n = m.len();
    // rows of the working matrix are columns of m, so its null space is the
    // left null space of m
    let mut w: Vec<Vec<T>> = (0..m.first().map_or(0, Vec::len))
        .map(|j| (0..n).map(|i| m[i][j].clone()).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..w.len()).find(|&i| !w[i][c].is_zero()) else { continue };
        w.swap(r, pr);
        let inv = T::one() / w[r][c].clone();
        for x in w[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..w.len() {
            if i != r && !w[i][c].is_zero() {
                let f = w[i][c].clone();
                for j in 0..n {
                    w[i][j] = w[i][j].clone() - f.clone() * w[r][j].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut a = vec![T::zero(); n];
    a[free] = T::one();
    for (row, &pc) in pivots.iter().enumerate() {
        a[pc] = -w[row][free].clone();
    }
    Some(a)
}
