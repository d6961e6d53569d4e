use crate::behavior::IoSystem;
use crate::error::{Error, Result};
use crate::polyalg::{Poly, PolyMatrix};
use crate::scalar::Scalar;

/// Small dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Dense { rows, cols, data })
    }

    pub fn from_rows<const C: usize>(rows: &[[T; C]]) -> Self {
        Dense {
            rows: rows.len(),
            cols: C,
            data: rows.iter().flat_map(|r| r.iter().cloned()).collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let v = (0..self.cols).fold(T::zero(), |acc, k| {
                    acc + self.get(i, k).clone() * rhs.get(k, j).clone()
                });
                out.set(i, j, v);
            }
        }
        out
    }

    /// `self * x` accumulated into `out`.
    pub fn mul_vec_into(&self, x: &[T], out: &mut [T]) {
        for (i, o) in out.iter_mut().enumerate().take(self.rows) {
            *o = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .zip(x)
                .fold(o.clone(), |acc, (a, b)| acc + a.clone() * b.clone());
        }
    }

    /// Place `self` at `(r0, c0)` inside `target`.
    fn paste_into(&self, target: &mut Self, r0: usize, c0: usize) {
        for i in 0..self.rows {
            for j in 0..self.cols {
                target.set(r0 + i, c0 + j, self.get(i, j).clone());
            }
        }
    }
}

/// `x' = A x + B u`, `y = C x + D u`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpace<T> {
    pub a: Dense<T>,
    pub b: Dense<T>,
    pub c: Dense<T>,
    pub d: Dense<T>,
}

impl<T: Scalar> StateSpace<T> {
    pub fn new(a: Dense<T>, b: Dense<T>, c: Dense<T>, d: Dense<T>) -> Result<Self> {
        let n = a.rows;
        let ok = a.cols == n
            && b.rows == n
            && c.cols == n
            && d.rows == c.rows
            && d.cols == b.cols;
        if !ok {
            return Err(Error::DimensionMismatch(format!(
                "A {}x{}, B {}x{}, C {}x{}, D {}x{}",
                a.rows, a.cols, b.rows, b.cols, c.rows, c.cols, d.rows, d.cols
            )));
        }
        Ok(StateSpace { a, b, c, d })
    }

    /// State-output realization: `C = I`, `D = 0`.
    pub fn full_state(a: Dense<T>, b: Dense<T>) -> Result<Self> {
        let n = a.rows;
        let m = b.cols;
        Self::new(a, b, Dense::identity(n), Dense::zeros(n, m))
    }

    pub fn n_states(&self) -> usize {
        self.a.rows
    }

    pub fn n_inputs(&self) -> usize {
        self.b.cols
    }

    pub fn n_outputs(&self) -> usize {
        self.c.rows
    }

    /// `(sI - A) y = B u` for a state-output realization.
    pub fn io_system(&self) -> Result<IoSystem<T>> {
        let n = self.n_states();
        if self.c != Dense::identity(n) || self.d != Dense::zeros(n, self.n_inputs()) {
            return Err(Error::InvalidConfig(
                "kernel recovery needs output = state".into(),
            ));
        }
        let mut p = PolyMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut coeffs = vec![-self.a.get(i, j).clone()];
                if i == j {
                    coeffs.push(T::one());
                }
                p.set(i, j, Poly::new(coeffs));
            }
        }
        let q = PolyMatrix::from_constants(n, self.n_inputs(), self.b.data.clone())?;
        IoSystem::new(p, q)
    }

    /// Series connection: `self` output feeds `next` input. The combined
    /// state is `[x_self; x_next]`, the combined output `[y_self; y_next]`.
    pub fn cascade(&self, next: &Self) -> Result<Self> {
        if self.n_outputs() != next.n_inputs() {
            return Err(Error::DimensionMismatch(format!(
                "cascade of {} outputs into {} inputs",
                self.n_outputs(),
                next.n_inputs()
            )));
        }
        let (n1, n2) = (self.n_states(), next.n_states());
        let (m, p1, p2) = (self.n_inputs(), self.n_outputs(), next.n_outputs());
        let mut a = Dense::zeros(n1 + n2, n1 + n2);
        self.a.paste_into(&mut a, 0, 0);
        next.b.matmul(&self.c).paste_into(&mut a, n1, 0);
        next.a.paste_into(&mut a, n1, n1);
        let mut b = Dense::zeros(n1 + n2, m);
        self.b.paste_into(&mut b, 0, 0);
        next.b.matmul(&self.d).paste_into(&mut b, n1, 0);
        let mut c = Dense::zeros(p1 + p2, n1 + n2);
        self.c.paste_into(&mut c, 0, 0);
        next.d.matmul(&self.c).paste_into(&mut c, p1, 0);
        next.c.paste_into(&mut c, p1, n1);
        let mut d = Dense::zeros(p1 + p2, m);
        self.d.paste_into(&mut d, 0, 0);
        next.d.matmul(&self.d).paste_into(&mut d, p1, 0);
        Self::new(a, b, c, d)
    }
}

/// Leading vehicle: states `(u1, u2)` = position, velocity, driven by `l`.
pub fn build_leader<T: Scalar>(damping: T) -> StateSpace<T> {
    let (z, o) = (T::zero(), T::one());
    let a = Dense::from_rows(&[[z.clone(), o.clone()], [z.clone(), -damping]]);
    let b = Dense::from_rows(&[[z], [o]]);
    StateSpace::full_state(a, b).expect("leader shapes are consistent")
}

/// Controlled follower with headway `h` and gain `k`: states `(y1, y2)`,
/// inputs `(u1, u2)`.
pub fn build_follower<T: Scalar + PartialOrd>(h: T, k: T) -> Result<StateSpace<T>> {
    if !(h > T::zero()) {
        return Err(Error::InvalidConfig("headway h must be positive".into()));
    }
    if !(k > T::zero()) {
        return Err(Error::InvalidConfig("gain k must be positive".into()));
    }
    let (z, o) = (T::zero(), T::one());
    let inv_h = o.clone() / h;
    let k_over_h = k.clone() * inv_h.clone();
    let a = Dense::from_rows(&[
        [z.clone(), o],
        [-k_over_h.clone(), -(inv_h.clone() + k)],
    ]);
    let b = Dense::from_rows(&[[z.clone(), z], [k_over_h, inv_h]]);
    StateSpace::full_state(a, b)
}
