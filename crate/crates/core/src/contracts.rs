//! Assume-guarantee contracts over input-output behaviours and their
//! decision procedures.
//!
//! Every positive verdict carries polynomial witnesses that were
//! re-multiplied before being returned.

use crate::behavior::{
    behaviour_equal, eliminate_latent, includes, is_io_form, join_inputs, project_input, stack,
    InclusionCertificate, IoSystem, KernelRep, LatentRep,
};
use crate::error::{Error, Result};
use crate::polyalg::{has_full_row_rank, hermite_row_form, solve_left, PolyMatrix};
use crate::scalar::Scalar;

/// `0 = A(d/dt) u`.
#[derive(Debug, Clone, PartialEq)]
pub struct Assumptions<T> {
    pub a: PolyMatrix<T>,
}

impl<T: Scalar> Assumptions<T> {
    pub fn new(a: PolyMatrix<T>) -> Self {
        Assumptions { a }
    }

    /// No constraint on `m` inputs.
    pub fn unconstrained(m: usize) -> Self {
        Assumptions { a: PolyMatrix::zeros(0, m) }
    }

    pub fn n_u(&self) -> usize {
        self.a.cols()
    }

    pub fn input_behaviour(&self) -> KernelRep<T> {
        KernelRep::inputs(self.a.clone())
    }

    /// `[0, -A]` over `w = [y; u]`.
    pub fn lifted(&self, n_y: usize) -> KernelRep<T> {
        let r = PolyMatrix::zeros(self.a.rows(), n_y)
            .hstack(&self.a.neg())
            .expect("row counts agree");
        KernelRep::new(r, n_y, self.n_u()).expect("shape is consistent")
    }
}

/// `G(d/dt) y = H(d/dt) u`.
#[derive(Debug, Clone, PartialEq)]
pub struct Guarantees<T> {
    pub g: PolyMatrix<T>,
    pub h: PolyMatrix<T>,
}

impl<T: Scalar> Guarantees<T> {
    pub fn new(g: PolyMatrix<T>, h: PolyMatrix<T>) -> Result<Self> {
        if g.rows() != h.rows() {
            return Err(Error::DimensionMismatch(format!(
                "G has {} rows, H has {}",
                g.rows(),
                h.rows()
            )));
        }
        Ok(Guarantees { g, h })
    }

    pub fn n_y(&self) -> usize {
        self.g.cols()
    }

    pub fn n_u(&self) -> usize {
        self.h.cols()
    }

    /// `[G, -H]` over `w = [y; u]`.
    pub fn kernel(&self) -> KernelRep<T> {
        let r = self.g.hstack(&self.h.neg()).expect("row counts agree");
        KernelRep::new(r, self.n_y(), self.n_u()).expect("shape is consistent")
    }

    /// Meet: both sets of equations.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        Self::new(self.g.vstack(&other.g)?, self.h.vstack(&other.h)?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Contract<T> {
    pub assumptions: Assumptions<T>,
    pub guarantees: Guarantees<T>,
}

impl<T: Scalar> Contract<T> {
    pub fn new(assumptions: Assumptions<T>, guarantees: Guarantees<T>) -> Result<Self> {
        if assumptions.n_u() != guarantees.n_u() {
            return Err(Error::DimensionMismatch(format!(
                "assumptions over {} inputs, guarantees over {}",
                assumptions.n_u(),
                guarantees.n_u()
            )));
        }
        Ok(Contract { assumptions, guarantees })
    }

    pub fn n_y(&self) -> usize {
        self.guarantees.n_y()
    }

    pub fn n_u(&self) -> usize {
        self.guarantees.n_u()
    }

    /// Kernel representation of `A ∧ Γ` over `w = [y; u]`.
    pub fn restricted_guarantees(&self) -> KernelRep<T> {
        stack(&self.assumptions.lifted(self.n_y()), &self.guarantees.kernel())
            .expect("partitions agree")
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if (self.n_y(), self.n_u()) != (other.n_y(), other.n_u()) {
            return Err(Error::PartitionMismatch(self.n_y(), self.n_u(), other.n_y(), other.n_u()));
        }
        Ok(())
    }
}

/// Result of [`implements`]. When `holds`, the certificate satisfies
/// `[G, -H] = [M1, M2] [[P, -Q], [0, -A]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImplementationVerdict<T> {
    pub holds: bool,
    pub certificate: Option<(PolyMatrix<T>, PolyMatrix<T>)>,
}

/// Check a candidate pair `(M1, M2)` against the implementation identity.
pub fn verify_implementation_certificate<T: Scalar>(
    sys: &IoSystem<T>,
    contract: &Contract<T>,
    m1: &PolyMatrix<T>,
    m2: &PolyMatrix<T>,
) -> bool {
    let Ok(lhs) = contract.guarantees.g.hstack(&contract.guarantees.h.neg()) else {
        return false;
    };
    let Ok(stacked) = interconnection(sys, &contract.assumptions) else {
        return false;
    };
    m1.hstack(m2)
        .and_then(|m| m.mul(stacked.matrix()))
        .is_ok_and(|rhs| rhs == lhs)
}

/// `A ∧ Σ`: the system equations over the assumption equations.
pub fn interconnection<T: Scalar>(sys: &IoSystem<T>, a: &Assumptions<T>) -> Result<KernelRep<T>> {
    if sys.n_u() != a.n_u() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} inputs, assumptions {}",
            sys.n_u(),
            a.n_u()
        )));
    }
    stack(&sys.kernel(), &a.lifted(sys.n_y()))
}

/// Does the system implement the contract? Errors if it is not in
/// input-output form.
pub fn implements<T: Scalar>(sys: &IoSystem<T>, contract: &Contract<T>) -> Result<ImplementationVerdict<T>> {
    if (sys.n_y(), sys.n_u()) != (contract.n_y(), contract.n_u()) {
        return Err(Error::PartitionMismatch(sys.n_y(), sys.n_u(), contract.n_y(), contract.n_u()));
    }
    if !is_io_form(sys) {
        return Err(Error::NotInputOutputForm);
    }
    let closed = interconnection(sys, &contract.assumptions)?;
    let Some(cert) = includes(&closed, &contract.guarantees.kernel())? else {
        return Ok(ImplementationVerdict { holds: false, certificate: None });
    };
    let m = cert.into_matrix();
    let p = sys.n_y();
    let m1 = m.select_cols(0..p);
    let m2 = m.select_cols(p..m.cols());
    if !verify_implementation_certificate(sys, contract, &m1, &m2) {
        return Err(Error::CertificateRejected("implementation identity".into()));
    }
    Ok(ImplementationVerdict { holds: true, certificate: Some((m1, m2)) })
}

/// An environment over the contract inputs, in kernel or latent form.
#[derive(Debug, Clone, PartialEq)]
pub enum Environment<T> {
    Kernel(KernelRep<T>),
    Latent(LatentRep<T>),
}

impl<T: Scalar> Environment<T> {
    pub fn input_behaviour(&self) -> KernelRep<T> {
        match self {
            Environment::Kernel(k) => k.clone(),
            Environment::Latent(l) => eliminate_latent(l),
        }
    }
}

/// Certificate for `B_u(E) ⊂ B_u(A)`, or `None` if the environment is not
/// compatible.
pub fn compatible<T: Scalar>(
    env: &Environment<T>,
    contract: &Contract<T>,
) -> Result<Option<InclusionCertificate<T>>> {
    let e = env.input_behaviour();
    if e.n_y() != 0 || e.n_u() != contract.n_u() {
        return Err(Error::DimensionMismatch(format!(
            "environment over {} inputs, contract over {}",
            e.n_u(),
            contract.n_u()
        )));
    }
    includes(&e, &contract.assumptions.input_behaviour())
}

/// Necessary condition for consistency: `B_u(A) ⊂ B_u(Γ)`.
///
/// `false` proves the contract inconsistent. `true` decides nothing.
pub fn consistency_necessary<T: Scalar>(contract: &Contract<T>) -> Result<bool> {
    let gamma_u = project_input(&contract.guarantees.g, &contract.guarantees.h)?;
    Ok(includes(&contract.assumptions.input_behaviour(), &gamma_u)?.is_some())
}

/// Guarantees `Γ'` with full-row-rank `G'` and `B(A ∧ Γ) = B(A ∧ Γ')`.
///
/// `None` when `B_u(A) ⊄ B_u(Γ)`.
pub fn normalize_guarantees<T: Scalar>(contract: &Contract<T>) -> Result<Option<Guarantees<T>>> {
    let gamma = &contract.guarantees;
    if has_full_row_rank(&gamma.g) {
        return Ok(Some(gamma.clone()));
    }
    let hr = hermite_row_form(&gamma.g);
    let uh = hr.u.mul(&gamma.h)?;
    let g_top = hr.nonzero_rows();
    let h_top = uh.select_rows(0..hr.rank);
    let h_rest = uh.select_rows(hr.rank..uh.rows());
    if solve_left(&contract.assumptions.a, &h_rest)?.is_none() {
        return Ok(None);
    }
    let normalized = Guarantees::new(g_top, h_top)?;
    let candidate = Contract::new(contract.assumptions.clone(), normalized.clone())?;
    if !behaviour_equal(&contract.restricted_guarantees(), &candidate.restricted_guarantees())? {
        return Err(Error::CertificateRejected("normalized guarantees change A ∧ Γ".into()));
    }
    Ok(Some(normalized))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefinementOutcome {
    Refines,
    DoesNotRefine,
    /// Negative only under the (undecided) consistency of the refining contract.
    DoesNotRefineIfConsistent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefinementVerdict<T> {
    pub outcome: RefinementOutcome,
    /// `A1 = M A2`, i.e. `B_u(A2) ⊂ B_u(A1)`.
    pub env_inclusion_cert: Option<InclusionCertificate<T>>,
    /// `B(A2 ∧ Γ1) ⊂ B(Γ2)`.
    pub guarantee_cert: Option<InclusionCertificate<T>>,
    pub c1_provably_inconsistent: bool,
}

/// Does `c1` refine `c2`?
///
/// 1. `B_u(A2) ⊄ B_u(A1)`: some environment of `c2` is not one of `c1`.
/// 2. `B(A2 ∧ Γ1) ⊂ B(Γ2)`: refines, whatever the consistency of `c1`.
/// 3. `c1` fails the necessary consistency condition: it has no
///    implementations, so refinement holds vacuously.
/// 4. Otherwise the answer is "no" if `c1` is consistent, which cannot be
///    decided here.
pub fn refines<T: Scalar>(c1: &Contract<T>, c2: &Contract<T>) -> Result<RefinementVerdict<T>> {
    c1.check_dims(c2)?;
    let a1 = c1.assumptions.input_behaviour();
    let a2 = c2.assumptions.input_behaviour();
    let Some(env_cert) = includes(&a2, &a1)? else {
        return Ok(RefinementVerdict {
            outcome: RefinementOutcome::DoesNotRefine,
            env_inclusion_cert: None,
            guarantee_cert: None,
            c1_provably_inconsistent: false,
        });
    };
    let restricted = stack(&c2.assumptions.lifted(c1.n_y()), &c1.guarantees.kernel())?;
    if let Some(g_cert) = includes(&restricted, &c2.guarantees.kernel())? {
        return Ok(RefinementVerdict {
            outcome: RefinementOutcome::Refines,
            env_inclusion_cert: Some(env_cert),
            guarantee_cert: Some(g_cert),
            c1_provably_inconsistent: false,
        });
    }
    let inconsistent = !consistency_necessary(c1)?;
    let outcome = if inconsistent {
        RefinementOutcome::Refines
    } else {
        RefinementOutcome::DoesNotRefineIfConsistent
    };
    Ok(RefinementVerdict {
        outcome,
        env_inclusion_cert: Some(env_cert),
        guarantee_cert: None,
        c1_provably_inconsistent: inconsistent,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjunctionCondition {
    /// `B_u(A1) = B_u(A2)`.
    SameAssumptions,
    /// `B((A1 ∨ A2) ∧ Γ1) = B((A1 ∨ A2) ∧ Γ2)`.
    SameRestrictedGuarantees,
}

impl ConjunctionCondition {
    pub fn name(self) -> &'static str {
        match self {
            ConjunctionCondition::SameAssumptions => "SameAssumptions",
            ConjunctionCondition::SameRestrictedGuarantees => "SameRestrictedGuarantees",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjunctionResult<T> {
    /// `(A1 ∨ A2, Γ1 ∧ Γ2)`, which always refines both arguments.
    pub contract: Contract<T>,
    /// The candidate is provably the largest common refinement.
    pub certified_largest: bool,
    pub which_condition: Option<ConjunctionCondition>,
}

pub fn conjunction<T: Scalar>(c1: &Contract<T>, c2: &Contract<T>) -> Result<ConjunctionResult<T>> {
    c1.check_dims(c2)?;
    let a1 = c1.assumptions.input_behaviour();
    let a2 = c2.assumptions.input_behaviour();
    let joined = Assumptions::new(join_inputs(&a1, &a2)?.into_matrix());
    let met = c1.guarantees.meet(&c2.guarantees)?;
    let contract = Contract::new(joined, met)?;

    let which_condition = if behaviour_equal(&a1, &a2)? {
        Some(ConjunctionCondition::SameAssumptions)
    } else {
        let lifted = contract.assumptions.lifted(c1.n_y());
        let r1 = stack(&lifted, &c1.guarantees.kernel())?;
        let r2 = stack(&lifted, &c2.guarantees.kernel())?;
        behaviour_equal(&r1, &r2)?.then_some(ConjunctionCondition::SameRestrictedGuarantees)
    };
    Ok(ConjunctionResult {
        contract,
        certified_largest: which_condition.is_some(),
        which_condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::Poly;
    use crate::{QPoly, QPolyMatrix, Rational};

    fn p(coeffs: &[i64]) -> QPoly {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    fn m(rows: &[&[&[i64]]]) -> QPolyMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        PolyMatrix::from_rows(rows.iter().map(|r| r.iter().map(|c| p(c)).collect()).collect(), cols)
            .unwrap()
    }

    fn scalar_contract(a: &[i64], g: &[i64], h: &[i64]) -> Contract<Rational> {
        Contract::new(
            Assumptions::new(m(&[&[a]])),
            Guarantees::new(m(&[&[g]]), m(&[&[h]])).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn improper_system_is_rejected() {
        let c = scalar_contract(&[], &[1], &[0, 1]);
        let sys = IoSystem::new(m(&[&[&[1]]]), m(&[&[&[0, 1]]])).unwrap();
        assert_eq!(implements(&sys, &c), Err(Error::NotInputOutputForm));
    }

    #[test]
    fn static_system_implements_derivative_guarantee() {
        let c = scalar_contract(&[0, 1], &[1], &[0, 1]);
        let sys = IoSystem::new(m(&[&[&[1]]]), m(&[&[&[]]])).unwrap();
        let v = implements(&sys, &c).unwrap();
        assert!(v.holds);
        let (m1, m2) = v.certificate.unwrap();
        assert_eq!((m1, m2), (m(&[&[&[1]]]), m(&[&[&[1]]])));
    }

    #[test]
    fn failing_implementation() {
        // y = 0 does not give y = u for free u
        let c = Contract::new(Assumptions::unconstrained(1), Guarantees::new(m(&[&[&[1]]]), m(&[&[&[1]]])).unwrap()).unwrap();
        let sys = IoSystem::new(m(&[&[&[1]]]), m(&[&[&[]]])).unwrap();
        let v = implements(&sys, &c).unwrap();
        assert!(!v.holds && v.certificate.is_none());
    }

    #[test]
    fn consistency_examples() {
        assert!(consistency_necessary(&scalar_contract(&[], &[1], &[0, 1])).unwrap());
        assert!(!consistency_necessary(&scalar_contract(&[], &[], &[1])).unwrap());
    }

    #[test]
    fn normalization_compresses_rows() {
        let c = Contract::new(
            Assumptions::new(m(&[&[&[0, 1]]])),
            Guarantees::new(m(&[&[&[1]], &[&[1]]]), m(&[&[&[]], &[&[0, 1]]])).unwrap(),
        )
        .unwrap();
        let g = normalize_guarantees(&c).unwrap().unwrap();
        assert_eq!(g.g, m(&[&[&[1]]]));
        assert_eq!(g.h, m(&[&[&[]]]));

        let c0 = Contract::new(Assumptions::new(m(&[&[&[]]])), c.guarantees.clone()).unwrap();
        assert_eq!(normalize_guarantees(&c0).unwrap(), None);
    }

    #[test]
    fn inconsistent_contract_refines_vacuously() {
        let c1 = scalar_contract(&[], &[], &[1]);
        let c2 = scalar_contract(&[], &[1], &[0, 1]);
        let v = refines(&c1, &c2).unwrap();
        assert_eq!(v.outcome, RefinementOutcome::Refines);
        assert!(v.c1_provably_inconsistent);
        assert!(v.guarantee_cert.is_none());
    }

    #[test]
    fn smaller_assumptions_do_not_refine() {
        let c1 = scalar_contract(&[0, 1], &[1], &[0, 1]);
        let c2 = scalar_contract(&[], &[1], &[0, 1]);
        assert_eq!(refines(&c1, &c2).unwrap().outcome, RefinementOutcome::DoesNotRefine);
    }

    #[test]
    fn unknown_consistency_branch() {
        // c1 = (all u, y = s u) passes the necessary condition but its
        // guarantees do not imply y = 0.
        let c1 = scalar_contract(&[], &[1], &[0, 1]);
        let c2 = scalar_contract(&[], &[1], &[]);
        let v = refines(&c1, &c2).unwrap();
        assert_eq!(v.outcome, RefinementOutcome::DoesNotRefineIfConsistent);
        assert!(v.env_inclusion_cert.is_some());
    }

    #[test]
    fn uncertified_conjunction() {
        let c1 = scalar_contract(&[0, 1], &[1], &[]);
        let c2 = scalar_contract(&[-1, 1], &[1], &[1]);
        let r = conjunction(&c1, &c2).unwrap();
        assert!(!r.certified_largest);
        assert_eq!(r.which_condition, None);
        let joined = r.contract.assumptions.input_behaviour();
        assert!(behaviour_equal(&joined, &KernelRep::inputs(m(&[&[&[0, -1, 1]]]))).unwrap());
    }

    #[test]
    fn dimension_errors() {
        let c1 = scalar_contract(&[0, 1], &[1], &[]);
        let c2 = Contract::new(
            Assumptions::unconstrained(2),
            Guarantees::new(QPolyMatrix::zeros(1, 1), QPolyMatrix::zeros(1, 2)).unwrap(),
        )
        .unwrap();
        assert!(refines(&c1, &c2).is_err());
        assert!(conjunction(&c1, &c2).is_err());
        assert!(Contract::new(Assumptions::unconstrained(2), c1.guarantees.clone()).is_err());
    }
}
