//! Exact polynomial models of the vehicle-following example, parametrised
//! by headway `h`, gain `k` and leader damping `c`.
//!
//! Inputs are the leader `(p_E, v_E)`, outputs the follower `(p, v)`.

use crate::behavior::{IoSystem, LatentRep};
use crate::contracts::{Assumptions, Contract, Guarantees};
use crate::polyalg::{Poly, PolyMatrix};
use crate::scalar::Scalar;

fn lin<T: Scalar>(c0: T, c1: T) -> Poly<T> {
    Poly::new(vec![c0, c1])
}

fn k<T: Scalar>(c: T) -> Poly<T> {
    Poly::constant(c)
}

fn mat<T: Scalar>(rows: Vec<Vec<Poly<T>>>, cols: usize) -> PolyMatrix<T> {
    PolyMatrix::from_rows(rows, cols).expect("model matrices are rectangular")
}

/// `[s, -1]`: leader velocity is the derivative of its position.
pub fn assumptions<T: Scalar>() -> Assumptions<T> {
    Assumptions::new(mat(vec![vec![Poly::s(), k(-T::one())]], 2))
}

/// Spacing error `p_E - p - h v` decays at rate `k`:
/// `G = [s + k, h s + h k]`, `H = [s + k, 0]`.
pub fn spacing_guarantees<T: Scalar>(h: T, gain: T) -> Guarantees<T> {
    let g = mat(
        vec![vec![lin(gain.clone(), T::one()), lin(h.clone() * gain.clone(), h)]],
        2,
    );
    let hm = mat(vec![vec![lin(gain, T::one()), Poly::zero()]], 2);
    Guarantees::new(g, hm).expect("one row each")
}

/// Follower velocity is the derivative of its position: `[s, -1] y = 0`.
pub fn kinematic_guarantees<T: Scalar>() -> Guarantees<T> {
    let g = mat(vec![vec![Poly::s(), k(-T::one())]], 2);
    Guarantees::new(g, PolyMatrix::zeros(1, 2)).expect("one row each")
}

pub fn spacing_contract<T: Scalar>(h: T, gain: T) -> Contract<T> {
    Contract::new(assumptions(), spacing_guarantees(h, gain)).expect("two inputs")
}

pub fn kinematic_contract<T: Scalar>() -> Contract<T> {
    Contract::new(assumptions(), kinematic_guarantees()).expect("two inputs")
}

/// Closed loop of the unit-mass vehicle and the headway controller.
pub fn controlled_vehicle<T: Scalar>(h: T, gain: T) -> IoSystem<T> {
    let inv_h = T::one() / h;
    let k_over_h = gain.clone() * inv_h.clone();
    let p = mat(
        vec![
            vec![Poly::s(), k(-T::one())],
            vec![k(k_over_h.clone()), lin(inv_h.clone() + gain, T::one())],
        ],
        2,
    );
    let q = mat(
        vec![vec![Poly::zero(), Poly::zero()], vec![k(k_over_h), k(inv_h)]],
        2,
    );
    IoSystem::new(p, q).expect("square P")
}

/// Vehicle `[s, -1; 0, s] y = [0; 1] f` and controller
/// `f = [k/h, 1/h] u - [k/h, 1/h + k] y` with the force `f` latent.
pub fn vehicle_and_controller<T: Scalar>(h: T, gain: T) -> LatentRep<T> {
    let z = Poly::<T>::zero;
    let inv_h = T::one() / h;
    let k_over_h = gain.clone() * inv_h.clone();
    // columns: y1, y2, u1, u2
    let r_w = mat(
        vec![
            vec![Poly::s(), k(-T::one()), z(), z()],
            vec![z(), Poly::s(), z(), z()],
            vec![
                k(k_over_h.clone()),
                k(inv_h.clone() + gain),
                k(-k_over_h),
                k(-inv_h),
            ],
        ],
        4,
    );
    let r_l = mat(vec![vec![z()], vec![k(T::one())], vec![k(-T::one())]], 1);
    LatentRep::new(r_w, r_l, 2, 2).expect("consistent shapes")
}

/// The closed-form witness `M1 = [1, h]`, `M2 = [1]`.
pub fn implementation_witness<T: Scalar>(h: T) -> (PolyMatrix<T>, PolyMatrix<T>) {
    (
        mat(vec![vec![Poly::one(), k(h)]], 2),
        mat(vec![vec![Poly::one()]], 1),
    )
}

/// Leader `[s, -1; 0, s + c] u = [0; 1] l` with latent force `l`.
pub fn leader_environment<T: Scalar>(damping: T) -> LatentRep<T> {
    let r_w = mat(
        vec![
            vec![Poly::s(), k(-T::one())],
            vec![Poly::zero(), lin(damping, T::one())],
        ],
        2,
    );
    let r_l = mat(vec![vec![Poly::zero()], vec![Poly::one()]], 1);
    LatentRep::inputs(r_w, r_l).expect("consistent shapes")
}
