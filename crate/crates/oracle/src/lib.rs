//! Brute-force reference computations for the behavcon test suites.
//!
//! Everything here works on raw coefficient vectors with dense Gaussian
//! elimination over the rationals. None of it goes through the Hermite
//! reduction, so agreement with the library is meaningful.
//!
//! [`DoubleDouble`] lets the generic simulator run below f64 round-off.

mod dd;

pub use dd::DoubleDouble;

use behavcon::{QPoly, QPolyMatrix, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

pub type Coeffs = Vec<Rational>;

fn coeffs(p: &QPoly) -> Coeffs {
    p.coeffs().to_vec()
}

fn trim(mut c: Coeffs) -> Coeffs {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}

fn conv(a: &[Rational], b: &[Rational]) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn add(a: &[Rational], b: &[Rational], sign: i32) -> Coeffs {
    let n = a.len().max(b.len());
    let get = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
    trim(
        (0..n)
            .map(|i| if sign >= 0 { get(a, i) + get(b, i) } else { get(a, i) - get(b, i) })
            .collect(),
    )
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a constant rational matrix.
pub fn constant_rank(m: &[Vec<Rational>]) -> usize {
    let mut w = m.to_vec();
    rref(&mut w).len()
}

/// Degree bound used by [`solve_left_oracle`].
pub fn oracle_degree_bound(r: &QPolyMatrix, s: &QPolyMatrix) -> usize {
    s.degree().unwrap_or(0) + r.rows() * (r.degree().unwrap_or(0) + 1)
}

/// Solve `X R = S` over polynomials with `deg X <= bound` by expanding into
/// a linear system in the coefficients of `X`.
pub fn solve_left_oracle(r: &QPolyMatrix, s: &QPolyMatrix) -> Option<QPolyMatrix> {
    assert_eq!(r.cols(), s.cols());
    let d = oracle_degree_bound(r, s);
    let dr = r.degree().unwrap_or(0);
    let n_unknowns = r.rows() * (d + 1);
    let n_powers = d + dr + 1;
    if (0..s.rows()).any(|i| (0..s.cols()).any(|c| s.get(i, c).degree().is_some_and(|dg| dg >= n_powers))) {
        return None;
    }
    // One equation per (column, power of s); unknowns are the coefficients
    // of each row of X, every row of S being a right-hand side.
    let mut aug = Vec::with_capacity(r.cols() * n_powers);
    for c in 0..r.cols() {
        for t in 0..n_powers {
            let mut row = vec![Rational::zero(); n_unknowns + s.rows()];
            for j in 0..r.rows() {
                let rc = r.get(j, c).coeffs();
                for e in 0..=d.min(t) {
                    if let Some(v) = rc.get(t - e) {
                        row[j * (d + 1) + e] = v.clone();
                    }
                }
            }
            for i in 0..s.rows() {
                row[n_unknowns + i] = s.get(i, c).coeff(t);
            }
            aug.push(row);
        }
    }
    let (ech, pivots) = bareiss_echelon(aug, n_unknowns);
    let rank = pivots.len();
    let mut x_rows = Vec::new();
    for i in 0..s.rows() {
        if ech[rank..].iter().any(|row| !row[n_unknowns + i].is_zero()) {
            return None;
        }
        let mut sol = vec![Rational::zero(); n_unknowns];
        for (k, &pc) in pivots.iter().enumerate().rev() {
            let row = &ech[k];
            let mut acc = Rational::from_integer(row[n_unknowns + i].clone());
            for j in pc + 1..n_unknowns {
                if !row[j].is_zero() {
                    acc -= Rational::from_integer(row[j].clone()) * &sol[j];
                }
            }
            sol[pc] = acc / Rational::from_integer(row[pc].clone());
        }
        x_rows.push(
            (0..r.rows())
                .map(|j| QPoly::new(sol[j * (d + 1)..(j + 1) * (d + 1)].to_vec()))
                .collect(),
        );
    }
    Some(QPolyMatrix::from_rows(x_rows, r.rows()).unwrap())
}

/// Fraction-free row echelon form, pivoting only in the first `n_pivot_cols`
/// columns. Rows are scaled to integers first.
fn bareiss_echelon(rows: Vec<Vec<Rational>>, n_pivot_cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let n = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_pivot_cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let piv = &top[r];
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c..cols {
                let v = &piv[c] * &row[j] - &f * &piv[j];
                let (qt, rem) = v.div_rem(&prev);
                assert!(rem.is_zero(), "fraction-free step must divide exactly");
                row[j] = qt;
            }
            for j in 0..c {
                row[j] = BigInt::zero();
            }
        }
        prev = piv[c].clone();
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn mul_oracle(a: &QPolyMatrix, b: &QPolyMatrix) -> QPolyMatrix {
    assert_eq!(a.cols(), b.rows());
    let rows = (0..a.rows())
        .map(|i| {
            (0..b.cols())
                .map(|j| {
                    let acc = (0..a.cols()).fold(Vec::new(), |acc, k| {
                        add(&acc, &conv(&coeffs(a.get(i, k)), &coeffs(b.get(k, j))), 1)
                    });
                    QPoly::new(acc)
                })
                .collect()
        })
        .collect();
    QPolyMatrix::from_rows(rows, b.cols()).unwrap()
}

/// Cofactor expansion along the first row.
pub fn det_laplace(m: &QPolyMatrix) -> QPoly {
    assert!(m.is_square());
    let n = m.rows();
    let grid: Vec<Vec<Coeffs>> = (0..n)
        .map(|i| (0..n).map(|j| coeffs(m.get(i, j))).collect())
        .collect();
    QPoly::new(det_rec(&grid))
}

fn det_rec(g: &[Vec<Coeffs>]) -> Coeffs {
    let n = g.len();
    if n == 0 {
        return vec![Rational::one()];
    }
    let mut acc = Vec::new();
    for j in 0..n {
        if g[0][j].is_empty() {
            continue;
        }
        let minor: Vec<Vec<Coeffs>> = g[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = conv(&g[0][j], &det_rec(&minor));
        acc = add(&acc, &term, if j % 2 == 0 { 1 } else { -1 });
    }
    acc
}

/// Rank over the rational function field: maximum rank of the evaluation
/// at `deg * rows + 1` distinct integer points.
pub fn rank_oracle(m: &QPolyMatrix) -> usize {
    let points = m.degree().unwrap_or(0) * m.rows().max(1) + 1;
    (0..=points as i64)
        .map(|x| {
            let x = Rational::from_integer(x.into());
            let ev: Vec<Vec<Rational>> = (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m.get(i, j).eval(&x)).collect())
                .collect();
            constant_rank(&ev)
        })
        .max()
        .unwrap_or(0)
}

/// `P^{-1} Q` proper, via `adj(P) Q / det(P)` entry by entry. Panics on
/// singular `P`.
pub fn properness_oracle(p: &QPolyMatrix, q: &QPolyMatrix) -> bool {
    let n = p.rows();
    let det = det_laplace(p);
    let den_deg = det.degree().expect("P must be nonsingular");
    // adj(P)[i][k] = (-1)^{i+k} det(P without row k and column i)
    let adj: Vec<Vec<Coeffs>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    let minor: Vec<Vec<Coeffs>> = (0..n)
                        .filter(|&r| r != k)
                        .map(|r| (0..n).filter(|&c| c != i).map(|c| coeffs(p.get(r, c))).collect())
                        .collect();
                    let d = det_rec(&minor);
                    if (i + k) % 2 == 0 { d } else { add(&[], &d, -1) }
                })
                .collect()
        })
        .collect();
    (0..n).all(|i| {
        (0..q.cols()).all(|j| {
            let num = (0..n).fold(Vec::new(), |acc, k| add(&acc, &conv(&adj[i][k], &coeffs(q.get(k, j))), 1));
            num.is_empty() || num.len() - 1 <= den_deg
        })
    })
}

/// Random small rational: numerator in `[-r, r]`, denominator in `[1, 2]`.
pub fn random_rational<R: Rng>(rng: &mut R, r: i64) -> Rational {
    Rational::new(rng.gen_range(-r..=r).into(), rng.gen_range(1..=2_i64).into())
}

/// Random polynomial of degree at most `max_deg`; zero with probability
/// `zero_prob`.
pub fn random_poly<R: Rng>(rng: &mut R, max_deg: usize, zero_prob: f64) -> QPoly {
    if rng.gen_bool(zero_prob) {
        return QPoly::zero();
    }
    let deg = rng.gen_range(0..=max_deg);
    QPoly::new((0..=deg).map(|_| random_rational(rng, 3)).collect())
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, max_deg: usize, zero_prob: f64) -> QPolyMatrix {
    let entries = (0..rows * cols).map(|_| random_poly(rng, max_deg, zero_prob)).collect();
    QPolyMatrix::new(rows, cols, entries).unwrap()
}

/// Random matrix whose rank is at most `rank` (product of thin factors).
pub fn random_low_rank<R: Rng>(rng: &mut R, rows: usize, cols: usize, rank: usize, max_deg: usize) -> QPolyMatrix {
    let d = (max_deg / 2).max(1);
    let left = random_matrix(rng, rows, rank, d, 0.2);
    let right = random_matrix(rng, rank, cols, max_deg - d.min(max_deg), 0.2);
    mul_oracle(&left, &right)
}

/// Random unimodular matrix: product of elementary operations.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, ops: usize) -> QPolyMatrix {
    let mut m = QPolyMatrix::identity(n);
    for _ in 0..ops {
        if n < 2 {
            let c = loop {
                let c = random_rational(rng, 3);
                if !c.is_zero() {
                    break c;
                }
            };
            m = m.map(|p| p.scale(&c));
            continue;
        }
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let mut e = QPolyMatrix::identity(n);
        e.set(i, j, random_poly(rng, 1, 0.0));
        m = mul_oracle(&e, &m);
    }
    m
}
