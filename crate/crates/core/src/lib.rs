//! Exact verification of assume-guarantee contracts for continuous-time
//! linear systems in the behavioural setting.
//!
//! Behaviours are kernels of polynomial differential operators. Inclusion
//! `B1 ⊂ B2` holds exactly when `R2 = M R1` for a polynomial `M`, and that
//! `M` is returned as a certificate. The contract checks in [`contracts`]
//! reduce to such inclusions.
//!
//! All algebra is generic over [`Scalar`]; [`Rational`] is the intended
//! instantiation for verification and `f64` for simulation.
//!
//! ```
//! use behavcon::contracts::{implements, verify_implementation_certificate};
//! use behavcon::vehiclesim::models::{controlled_vehicle, spacing_contract};
//! use behavcon::Rational;
//!
//! let one = Rational::from_integer(1.into());
//! let sys = controlled_vehicle(one.clone(), one.clone());
//! let contract = spacing_contract(one.clone(), one);
//! let verdict = implements(&sys, &contract)?;
//! let (m1, m2) = verdict.certificate.unwrap();
//! assert!(verify_implementation_certificate(&sys, &contract, &m1, &m2));
//! # Ok::<(), behavcon::Error>(())
//! ```

pub mod behavior;
pub mod contracts;
mod error;
pub mod polyalg;
mod scalar;
pub mod vehiclesim;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use behavior::{InclusionCertificate, IoSystem, KernelRep, LatentRep};
pub use contracts::{Assumptions, Contract, Guarantees};
pub use polyalg::{HermiteReduction, Poly, PolyMatrix};

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

pub type QPoly = Poly<Rational>;
pub type QPolyMatrix = PolyMatrix<Rational>;
pub type QKernelRep = KernelRep<Rational>;
pub type QContract = Contract<Rational>;
pub type QIoSystem = IoSystem<Rational>;

pub type StateSpace64 = vehiclesim::StateSpace<f64>;
pub type Trajectory64 = vehiclesim::Trajectory<f64>;
