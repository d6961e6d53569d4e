//! Behaviour representations and the operations the contract layer composes.
//!
//! Variables are always ordered `w = [y; u]`: output columns first, input
//! columns second. A kernel representation with zero rows is the full space.

use crate::error::{Error, Result};
use crate::polyalg::{hermite_row_form, rational_properness, solve_left, Poly, PolyMatrix};
use crate::scalar::Scalar;

/// `{ w : R(d/dt) w = 0 }` with `w = [y; u]`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelRep<T> {
    r: PolyMatrix<T>,
    n_y: usize,
    n_u: usize,
    var_names: Vec<String>,
}

fn default_names(n_y: usize, n_u: usize) -> Vec<String> {
    (1..=n_y)
        .map(|i| format!("y{i}"))
        .chain((1..=n_u).map(|i| format!("u{i}")))
        .collect()
}

impl<T: Scalar> KernelRep<T> {
    pub fn new(r: PolyMatrix<T>, n_y: usize, n_u: usize) -> Result<Self> {
        if r.cols() != n_y + n_u {
            return Err(Error::DimensionMismatch(format!(
                "kernel matrix has {} columns, partition needs {}",
                r.cols(),
                n_y + n_u
            )));
        }
        Ok(KernelRep { r, n_y, n_u, var_names: default_names(n_y, n_u) })
    }

    /// A pure input behaviour `{ u : R(d/dt) u = 0 }`.
    pub fn inputs(r: PolyMatrix<T>) -> Self {
        let n_u = r.cols();
        KernelRep { r, n_y: 0, n_u, var_names: default_names(0, n_u) }
    }

    /// The unconstrained behaviour over the given partition.
    pub fn full(n_y: usize, n_u: usize) -> Self {
        Self::new(PolyMatrix::zeros(0, n_y + n_u), n_y, n_u).expect("shape is consistent")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.r.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} names for {} variables",
                names.len(),
                self.r.cols()
            )));
        }
        self.var_names = names;
        Ok(self)
    }

    pub fn matrix(&self) -> &PolyMatrix<T> {
        &self.r
    }

    pub fn into_matrix(self) -> PolyMatrix<T> {
        self.r
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    pub fn n_u(&self) -> usize {
        self.n_u
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    fn check_partition(&self, other: &Self) -> Result<()> {
        if (self.n_y, self.n_u) != (other.n_y, other.n_u) {
            return Err(Error::PartitionMismatch(self.n_y, self.n_u, other.n_y, other.n_u));
        }
        Ok(())
    }
}

/// `{ w : exists l, R_w(d/dt) w = R_l(d/dt) l }`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatentRep<T> {
    r_w: PolyMatrix<T>,
    r_l: PolyMatrix<T>,
    n_y: usize,
    n_u: usize,
}

impl<T: Scalar> LatentRep<T> {
    pub fn new(r_w: PolyMatrix<T>, r_l: PolyMatrix<T>, n_y: usize, n_u: usize) -> Result<Self> {
        if r_w.rows() != r_l.rows() {
            return Err(Error::DimensionMismatch(format!(
                "R_w has {} rows, R_l has {}",
                r_w.rows(),
                r_l.rows()
            )));
        }
        if r_w.cols() != n_y + n_u {
            return Err(Error::DimensionMismatch(format!(
                "R_w has {} columns, partition needs {}",
                r_w.cols(),
                n_y + n_u
            )));
        }
        Ok(LatentRep { r_w, r_l, n_y, n_u })
    }

    /// Latent form of a pure input behaviour.
    pub fn inputs(r_w: PolyMatrix<T>, r_l: PolyMatrix<T>) -> Result<Self> {
        let n_u = r_w.cols();
        Self::new(r_w, r_l, 0, n_u)
    }

    pub fn manifest(&self) -> &PolyMatrix<T> {
        &self.r_w
    }

    pub fn latent(&self) -> &PolyMatrix<T> {
        &self.r_l
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    pub fn n_u(&self) -> usize {
        self.n_u
    }
}

/// `P(d/dt) y = Q(d/dt) u`. Input-output form is checked by [`is_io_form`],
/// not enforced at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct IoSystem<T> {
    pub p: PolyMatrix<T>,
    pub q: PolyMatrix<T>,
}

impl<T: Scalar> IoSystem<T> {
    pub fn new(p: PolyMatrix<T>, q: PolyMatrix<T>) -> Result<Self> {
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
        Ok(IoSystem { p, q })
    }

    pub fn n_y(&self) -> usize {
        self.p.rows()
    }

    pub fn n_u(&self) -> usize {
        self.q.cols()
    }

    /// `[P, -Q]` over `w = [y; u]`.
    pub fn kernel(&self) -> KernelRep<T> {
        let r = self.p.hstack(&self.q.neg()).expect("row counts agree");
        KernelRep::new(r, self.n_y(), self.n_u()).expect("shape is consistent")
    }
}

/// Witness `M` with `M * R1 = R2`, proving `B1 ⊂ B2`.
#[derive(Debug, Clone, PartialEq)]
pub struct InclusionCertificate<T> {
    m: PolyMatrix<T>,
}

impl<T: Scalar> InclusionCertificate<T> {
    /// Accepts `m` only if `m * r1 == r2`.
    pub fn new(m: PolyMatrix<T>, r1: &PolyMatrix<T>, r2: &PolyMatrix<T>) -> Result<Self> {
        if !Self::verifies(&m, r1, r2) {
            return Err(Error::CertificateRejected("M * R1 != R2".into()));
        }
        Ok(InclusionCertificate { m })
    }

    pub fn verifies(m: &PolyMatrix<T>, r1: &PolyMatrix<T>, r2: &PolyMatrix<T>) -> bool {
        m.mul(r1).is_ok_and(|p| p == *r2)
    }

    pub fn matrix(&self) -> &PolyMatrix<T> {
        &self.m
    }

    pub fn into_matrix(self) -> PolyMatrix<T> {
        self.m
    }

    /// Certificate for `B1 ⊂ B3` from `B1 ⊂ B2` (self) and `B2 ⊂ B3` (next).
    pub fn compose(&self, next: &Self, r1: &PolyMatrix<T>, r3: &PolyMatrix<T>) -> Result<Self> {
        Self::new(next.m.mul(&self.m)?, r1, r3)
    }
}

/// Decide `B1 ⊂ B2`; a certificate `M` with `M R1 = R2` when it holds.
pub fn includes<T: Scalar>(
    b1: &KernelRep<T>,
    b2: &KernelRep<T>,
) -> Result<Option<InclusionCertificate<T>>> {
    b1.check_partition(b2)?;
    solve_left(&b1.r, &b2.r)?
        .map(|m| InclusionCertificate::new(m, &b1.r, &b2.r))
        .transpose()
}

/// Behavioural equality by mutual inclusion.
pub fn behaviour_equal<T: Scalar>(b1: &KernelRep<T>, b2: &KernelRep<T>) -> Result<bool> {
    Ok(includes(b1, b2)?.is_some() && includes(b2, b1)?.is_some())
}

/// Project a latent representation onto its manifest variables.
pub fn eliminate_latent<T: Scalar>(l: &LatentRep<T>) -> KernelRep<T> {
    let hr = hermite_row_form(&l.r_l);
    let r = hr.kernel_rows().mul(&l.r_w).expect("row counts agree");
    KernelRep::new(r, l.n_y, l.n_u).expect("shape is consistent")
}

/// Input behaviour of `G(d/dt) y = H(d/dt) u`: the `u` for which some `y`
/// exists.
pub fn project_input<T: Scalar>(g: &PolyMatrix<T>, h: &PolyMatrix<T>) -> Result<KernelRep<T>> {
    if g.rows() != h.rows() {
        return Err(Error::DimensionMismatch(format!(
            "G has {} rows, H has {}",
            g.rows(),
            h.rows()
        )));
    }
    let hr = hermite_row_form(g);
    Ok(KernelRep::inputs(hr.kernel_rows().mul(h)?))
}

/// Intersection: rows of `b1` over rows of `b2`.
pub fn stack<T: Scalar>(b1: &KernelRep<T>, b2: &KernelRep<T>) -> Result<KernelRep<T>> {
    b1.check_partition(b2)?;
    Ok(KernelRep {
        r: b1.r.vstack(&b2.r)?,
        n_y: b1.n_y,
        n_u: b1.n_u,
        var_names: b1.var_names.clone(),
    })
}

/// Sum `B(A1) + B(A2)` of two input behaviours, through the latent form
/// `[I I; A1 0; 0 A2] [l1; l2] = [I; 0; 0] u`.
pub fn join_inputs<T: Scalar>(a1: &KernelRep<T>, a2: &KernelRep<T>) -> Result<KernelRep<T>> {
    if a1.n_y != 0 || a2.n_y != 0 {
        return Err(Error::DimensionMismatch("join expects pure input behaviours".into()));
    }
    if a1.n_u != a2.n_u {
        return Err(Error::DimensionMismatch(format!(
            "join of {} and {} inputs",
            a1.n_u, a2.n_u
        )));
    }
    let m = a1.n_u;
    let eye = PolyMatrix::identity(m);
    let top = eye.hstack(&eye)?;
    let mid = a1.r.hstack(&PolyMatrix::zeros(a1.r.rows(), m))?;
    let bot = PolyMatrix::zeros(a2.r.rows(), m).hstack(&a2.r)?;
    let r_l = top.vstack(&mid)?.vstack(&bot)?;
    let r_w = eye.vstack(&PolyMatrix::zeros(a1.r.rows() + a2.r.rows(), m))?;
    Ok(eliminate_latent(&LatentRep::inputs(r_w, r_l)?))
}

/// `det P != 0` and `P^{-1} Q` proper.
pub fn is_io_form<T: Scalar>(s: &IoSystem<T>) -> bool {
    matches!(rational_properness(&s.p, &s.q), Ok(true))
}

/// `R(d/dt) w` for a polynomial trajectory `w(t)`; zero exactly when `w` is
/// in the behaviour.
pub fn poly_trajectory_residual<T: Scalar>(b: &KernelRep<T>, w: &[Poly<T>]) -> Result<Vec<Poly<T>>> {
    if w.len() != b.r.cols() {
        return Err(Error::DimensionMismatch(format!(
            "trajectory has {} components, behaviour has {} variables",
            w.len(),
            b.r.cols()
        )));
    }
    Ok((0..b.r.rows())
        .map(|i| {
            b.r.row(i)
                .iter()
                .zip(w)
                .fold(Poly::zero(), |acc, (op, wj)| &acc + &op.apply_derivative(wj))
        })
        .collect())
}
