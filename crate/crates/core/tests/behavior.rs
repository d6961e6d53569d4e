mod common;

use behavcon::behavior::{
    behaviour_equal, eliminate_latent, includes, join_inputs, poly_trajectory_residual, project_input, stack,
};
use behavcon::{InclusionCertificate, KernelRep, LatentRep, QPolyMatrix};
use behavcon_oracle::{mul_oracle, solve_left_oracle};
use common::*;
use proptest::prelude::*;

fn kernel(r: QPolyMatrix) -> KernelRep<behavcon::Rational> {
    KernelRep::inputs(r)
}

/// `R1`, `R2 = X R1`, `R3 = Y R2`: a chain of inclusions by construction.
fn chain() -> impl Strategy<Value = (QPolyMatrix, QPolyMatrix, QPolyMatrix)> {
    (1..=3usize, 1..=3usize, 1..=3usize, 1..=3usize).prop_flat_map(|(c, r1, r2, r3)| {
        (matrix(r1, c, 2), matrix(r2, r1, 1), matrix(r3, r2, 1)).prop_map(|(a, x, y)| {
            let b = mul_oracle(&x, &a);
            let c = mul_oracle(&y, &b);
            (a, b, c)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn inclusion_is_reflexive(r in sized_matrix(3, 3, 3)) {
        let b = kernel(r.clone());
        let cert = includes(&b, &b).unwrap().expect("reflexive");
        prop_assert!(InclusionCertificate::verifies(cert.matrix(), &r, &r));
    }

    #[test]
    fn certificates_compose((r1, r2, r3) in chain()) {
        let (b1, b2, b3) = (kernel(r1.clone()), kernel(r2), kernel(r3.clone()));
        let c12 = includes(&b1, &b2).unwrap().expect("B1 in B2");
        let c23 = includes(&b2, &b3).unwrap().expect("B2 in B3");
        let c13 = c12.compose(&c23, &r1, &r3).unwrap();
        prop_assert_eq!(&mul_oracle(c13.matrix(), &r1), &r3);
        prop_assert!(includes(&b1, &b3).unwrap().is_some());
    }

    #[test]
    fn inclusion_matches_oracle(
        (r1, r2) in (1..=2usize, 1..=3usize, 1..=2usize)
            .prop_flat_map(|(a, c, b)| (matrix(a, c, 2), matrix(b, c, 2)))
    ) {
        let got = includes(&kernel(r1.clone()), &kernel(r2.clone())).unwrap();
        prop_assert_eq!(got.is_some(), solve_left_oracle(&r1, &r2).is_some());
    }

    #[test]
    fn unimodular_change_keeps_behaviour(
        (u, r) in (1..=3usize, 1..=3usize).prop_flat_map(|(n, c)| (unimodular(n), matrix(n, c, 2)))
    ) {
        let ur = mul_oracle(&u, &r);
        prop_assert!(behaviour_equal(&kernel(r), &kernel(ur)).unwrap());
    }

    /// Latent form `U [N 0; K I]`: the latent variables are determined by
    /// `w`, so the manifest behaviour is `ker N`.
    #[test]
    fn elimination_recovers_manifest_law(
        (u, n, k) in (1..=2usize, 1..=2usize, 1..=2usize).prop_flat_map(|(rn, c, l)| {
            (unimodular(rn + l), matrix(rn, c, 2), matrix(l, c, 2))
        })
    ) {
        let (rn, l, c) = (n.rows(), k.rows(), n.cols());
        let r_w = mul_oracle(&u, &n.vstack(&k).unwrap());
        let r_l = mul_oracle(&u, &QPolyMatrix::zeros(rn, l).vstack(&QPolyMatrix::identity(l)).unwrap());
        let e = eliminate_latent(&LatentRep::inputs(r_w.clone(), r_l.clone()).unwrap());
        prop_assert_eq!(e.matrix().cols(), c);
        prop_assert!(behaviour_equal(&e, &kernel(n)).unwrap());
    }

    /// Every eliminated law is a consequence of the latent equations.
    #[test]
    fn elimination_is_sound(
        (r_w, r_l) in (1..=3usize, 1..=2usize, 1..=2usize)
            .prop_flat_map(|(r, c, l)| (matrix(r, c, 2), matrix(r, l, 2)))
    ) {
        let e = eliminate_latent(&LatentRep::inputs(r_w.clone(), r_l.clone()).unwrap());
        let full = r_w.hstack(&r_l).unwrap();
        let target = e.matrix().hstack(&QPolyMatrix::zeros(e.matrix().rows(), r_l.cols())).unwrap();
        prop_assert!(target.rows() == 0 || solve_left_oracle(&full, &target).is_some());
    }

    #[test]
    fn projection_is_sound(
        (g, h) in (1..=3usize, 1..=2usize, 1..=2usize)
            .prop_flat_map(|(r, ny, nu)| (matrix(r, ny, 2), matrix(r, nu, 2)))
    ) {
        let a = project_input(&g, &h).unwrap();
        let full = g.hstack(&h.neg()).unwrap();
        let target = QPolyMatrix::zeros(a.matrix().rows(), g.cols()).hstack(&a.matrix().neg()).unwrap();
        prop_assert!(target.rows() == 0 || solve_left_oracle(&full, &target).is_some());
    }

    #[test]
    fn join_contains_both(
        (a1, a2) in (1..=2usize).prop_flat_map(|m| (0..=2usize, 0..=2usize).prop_flat_map(move |(r1, r2)| {
            (matrix(r1, m, 2), matrix(r2, m, 2))
        }))
    ) {
        let (b1, b2) = (kernel(a1), kernel(a2));
        let j = join_inputs(&b1, &b2).unwrap();
        prop_assert!(includes(&b1, &j).unwrap().is_some());
        prop_assert!(includes(&b2, &j).unwrap().is_some());
    }

    #[test]
    fn stack_is_below_both(
        (r1, r2) in (1..=3usize).prop_flat_map(|c| (matrix(1, c, 2), matrix(2, c, 2)))
    ) {
        let (b1, b2) = (kernel(r1), kernel(r2));
        let s = stack(&b1, &b2).unwrap();
        prop_assert!(includes(&s, &b1).unwrap().is_some());
        prop_assert!(includes(&s, &b2).unwrap().is_some());
    }
}

#[test]
fn polynomial_trajectories_respect_membership() {
    // u1' = u2
    let b = kernel(m(vec![vec![p(&[0, 1]), p(&[-1])]], 2));
    let inside = [p(&[3, 0, 1]), p(&[0, 2])];
    let outside = [p(&[3, 0, 1]), p(&[1, 2])];
    assert!(poly_trajectory_residual(&b, &inside).unwrap().iter().all(|r| r.is_zero()));
    assert!(!poly_trajectory_residual(&b, &outside).unwrap().iter().all(|r| r.is_zero()));
}

#[test]
fn inclusion_rejects_partition_mismatch() {
    let r = m(vec![vec![p(&[1]), p(&[1])]], 2);
    let b1 = KernelRep::new(r.clone(), 1, 1).unwrap();
    let b2 = KernelRep::new(r, 0, 2).unwrap();
    assert!(includes(&b1, &b2).is_err());
}

#[test]
fn zero_rows_mean_everything() {
    let everything = KernelRep::<behavcon::Rational>::full(0, 2);
    let some = kernel(m(vec![vec![p(&[0, 1]), p(&[-1])]], 2));
    assert!(includes(&some, &everything).unwrap().is_some());
    assert!(includes(&everything, &some).unwrap().is_none());
}
