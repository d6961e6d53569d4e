mod common;

use behavcon::polyalg::{
    det, hermite_row_form, is_unimodular, poly_divmod, poly_gcd, rank, rational_properness, solve_left,
};
use behavcon::{QPoly, QPolyMatrix};
use behavcon_oracle::{det_laplace, mul_oracle, properness_oracle, rank_oracle, solve_left_oracle};
use common::*;
use proptest::prelude::*;

fn solvable_pair() -> impl Strategy<Value = (QPolyMatrix, QPolyMatrix)> {
    (1..=3usize, 1..=3usize, 1..=3usize).prop_flat_map(|(r, c, k)| {
        (matrix(r, c, 3), matrix(k, r, 2)).prop_map(|(r, x)| {
            let s = mul_oracle(&x, &r);
            (r, s)
        })
    })
}

fn arbitrary_pair() -> impl Strategy<Value = (QPolyMatrix, QPolyMatrix)> {
    (1..=3usize, 1..=3usize, 1..=3usize).prop_flat_map(|(r, c, k)| (matrix(r, c, 3), matrix(k, c, 3)))
}

fn check_against_oracle(r: &QPolyMatrix, s: &QPolyMatrix) -> Result<(), TestCaseError> {
    let got = solve_left(r, s).unwrap();
    let want = solve_left_oracle(r, s);
    prop_assert_eq!(got.is_some(), want.is_some(), "R = {}, S = {}", r, s);
    if let Some(x) = got {
        prop_assert_eq!(&mul_oracle(&x, r), s);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn divmod_identity(a in poly(4), b in poly(3)) {
        prop_assume!(!b.is_zero());
        let (qt, r) = poly_divmod(&a, &b).unwrap();
        prop_assert_eq!(&(&qt * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_both(a in poly(3), b in poly(3), c in poly(2)) {
        prop_assume!(!(c.is_zero() || (a.is_zero() && b.is_zero())));
        let (a, b) = (&a * &c, &b * &c);
        let g = poly_gcd(&a, &b).unwrap();
        prop_assert_eq!(g.leading_coeff().cloned(), Some(q(1, 1)));
        prop_assert!(a.div_exact(&g).unwrap().is_some());
        prop_assert!(b.div_exact(&g).unwrap().is_some());
        prop_assert!(g.div_exact(&c.monic()).unwrap().is_some());
    }

    #[test]
    fn det_matches_laplace(a in square(3, 2)) {
        prop_assert_eq!(det(&a).unwrap(), det_laplace(&a));
    }

    #[test]
    fn det_is_multiplicative((a, b) in (1..=3usize).prop_flat_map(|n| (matrix(n, n, 2), matrix(n, n, 2)))) {
        let ab = mul_oracle(&a, &b);
        prop_assert_eq!(det(&ab).unwrap(), &det(&a).unwrap() * &det(&b).unwrap());
    }

    #[test]
    fn unimodular_products_are_detected(u in (1..=3usize).prop_flat_map(unimodular)) {
        prop_assert!(is_unimodular(&u).unwrap());
        let inv = solve_left(&u, &QPolyMatrix::identity(u.rows())).unwrap();
        prop_assert!(inv.is_some());
    }

    #[test]
    fn hermite_invariants(r in sized_matrix(3, 3, 3)) {
        let hr = hermite_row_form(&r);
        prop_assert_eq!(&mul_oracle(&hr.u, &r), &hr.h);
        prop_assert!(is_unimodular(&hr.u).unwrap());
        prop_assert!(hr.is_staircase());
        prop_assert_eq!(hr.rank, rank_oracle(&r));
        prop_assert!(hr.kernel_rows().is_zero() || mul_oracle(&hr.kernel_rows(), &r).is_zero());
    }

    #[test]
    fn rank_of_low_rank_products(
        (l, rt) in (2..=3usize, 2..=3usize, 1..=2usize)
            .prop_flat_map(|(r, c, k)| (matrix(r, k, 1), matrix(k, c, 2)))
    ) {
        let r = mul_oracle(&l, &rt);
        prop_assert_eq!(rank(&r), rank_oracle(&r));
        prop_assert!(rank(&r) <= l.cols());
    }

    #[test]
    fn solve_left_agrees_on_solvable((r, s) in solvable_pair()) {
        check_against_oracle(&r, &s)?;
        prop_assert!(solve_left(&r, &s).unwrap().is_some());
    }

    #[test]
    fn solve_left_agrees_on_arbitrary((r, s) in arbitrary_pair()) {
        check_against_oracle(&r, &s)?;
    }

    #[test]
    fn properness_matches_oracle(
        (p, qm) in (1..=2usize, 1..=2usize).prop_flat_map(|(n, m)| (matrix(n, n, 2), matrix(n, m, 2)))
    ) {
        prop_assume!(!det(&p).unwrap().is_zero());
        prop_assert_eq!(rational_properness(&p, &qm).unwrap(), properness_oracle(&p, &qm));
    }

    #[test]
    fn properness_is_unimodular_invariant(
        (u, p, qm) in (1..=2usize).prop_flat_map(|n| (unimodular(n), matrix(n, n, 2), matrix(n, 1, 2)))
    ) {
        prop_assume!(!det(&p).unwrap().is_zero());
        let left = rational_properness(&p, &qm).unwrap();
        let right = rational_properness(&mul_oracle(&u, &p), &mul_oracle(&u, &qm)).unwrap();
        prop_assert_eq!(left, right);
    }
}

#[test]
fn singular_p_is_an_error() {
    let p0 = m(vec![vec![p(&[0, 1]), p(&[1])], vec![p(&[0, 2]), p(&[2])]], 2);
    let q0 = QPolyMatrix::zeros(2, 1);
    assert!(rational_properness(&p0, &q0).is_err());
}

#[test]
fn solve_left_rejects_mismatched_columns() {
    assert!(solve_left(&QPolyMatrix::identity(2), &QPolyMatrix::zeros(1, 3)).is_err());
}

#[test]
fn improper_example_needs_row_reduction() {
    // P is not row reduced; the leading coefficient matrix is singular.
    let p0 = m(vec![vec![p(&[1, 1]), p(&[0, 0, 1])], vec![p(&[0]), p(&[0, 1])]], 2);
    let q_proper = m(vec![vec![p(&[0, 1])], vec![p(&[1])]], 1);
    let q_improper = m(vec![vec![p(&[0, 0, 1])], vec![p(&[1])]], 1);
    assert_eq!(rational_properness(&p0, &q_proper).unwrap(), properness_oracle(&p0, &q_proper));
    assert_eq!(rational_properness(&p0, &q_improper).unwrap(), properness_oracle(&p0, &q_improper));
    let _ = QPoly::zero();
}
