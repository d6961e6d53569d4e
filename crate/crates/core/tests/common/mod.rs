#![allow(dead_code)]

use behavcon::contracts::{Assumptions, Contract, Guarantees};
use behavcon::{QPoly, QPolyMatrix, Rational};
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn p(c: &[i64]) -> QPoly {
    QPoly::new(c.iter().map(|&x| q(x, 1)).collect())
}

pub fn m(rows: Vec<Vec<QPoly>>, cols: usize) -> QPolyMatrix {
    QPolyMatrix::from_rows(rows, cols).unwrap()
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

/// Polynomials of degree at most `deg`, zero about a quarter of the time.
pub fn poly(deg: usize) -> impl Strategy<Value = QPoly> {
    prop_oneof![
        1 => Just(QPoly::zero()),
        3 => prop::collection::vec(rational(), 1..=deg + 1).prop_map(QPoly::new),
    ]
}

pub fn matrix(rows: usize, cols: usize, deg: usize) -> impl Strategy<Value = QPolyMatrix> {
    prop::collection::vec(poly(deg), rows * cols)
        .prop_map(move |e| QPolyMatrix::new(rows, cols, e).unwrap())
}

pub fn sized_matrix(max_rows: usize, max_cols: usize, deg: usize) -> impl Strategy<Value = QPolyMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| matrix(r, c, deg))
}

pub fn square(max_n: usize, deg: usize) -> impl Strategy<Value = QPolyMatrix> {
    (1..=max_n).prop_flat_map(move |n| matrix(n, n, deg))
}

/// Products of elementary row operations: unimodular by construction.
pub fn unimodular(n: usize) -> impl Strategy<Value = QPolyMatrix> {
    let op = (0..n, 1..n.max(2), poly(1));
    (prop::collection::vec(op, 0..5), rational().prop_filter("unit", |c| *c != q(0, 1))).prop_map(
        move |(ops, c)| {
            let mut u = QPolyMatrix::identity(n).map(|e| e.scale(&c));
            if n < 2 {
                return u;
            }
            for (i, off, f) in ops {
                let j = (i + off) % n;
                let mut e = QPolyMatrix::identity(n);
                e.set(i, j, f);
                u = e.mul(&u).unwrap();
            }
            u
        },
    )
}

pub fn contract(n_y: usize, n_u: usize) -> impl Strategy<Value = Contract<Rational>> {
    (0..=2usize, 1..=2usize)
        .prop_flat_map(move |(ra, rg)| (matrix(ra, n_u, 2), matrix(rg, n_y, 2), matrix(rg, n_u, 2)))
        .prop_map(|(a, g, h)| Contract::new(Assumptions::new(a), Guarantees::new(g, h).unwrap()).unwrap())
}

pub fn any_contract() -> impl Strategy<Value = Contract<Rational>> {
    (1..=2usize, 1..=2usize).prop_flat_map(|(n_y, n_u)| contract(n_y, n_u))
}
