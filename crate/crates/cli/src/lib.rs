//! Command implementations for the `behavcon` binary.

pub mod model;
pub mod report;

use std::path::Path;

use behavcon::contracts::{
    compatible, conjunction, consistency_necessary, implements, normalize_guarantees, refines,
    RefinementOutcome,
};
use behavcon::vehiclesim::{check_exponential_decay, max_decay_deviation, simulate, spacing_error, vehicle_cascade};
use behavcon::{behavior, Error};

pub use model::{ModelFile, Scenario};
pub use report::Report;

pub mod exit {
    pub const OK: u8 = 0;
    pub const NEGATIVE: u8 = 1;
    pub const NOT_IO_FORM: u8 = 2;
    /// Conditional or uncertified answer.
    pub const UNDECIDED: u8 = 3;
    pub const USAGE: u8 = 64;
    pub const INTERNAL: u8 = 70;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid model: {0}")]
    Model(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::CertificateRejected(_)) => exit::INTERNAL,
            _ => exit::USAGE,
        }
    }
}

/// What a command produced. `artifact` is the payload for `--out`, if the
/// command has one besides its report.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: u8,
    pub report: Report,
    pub artifact: Option<String>,
}

impl Outcome {
    fn report(code: u8, report: Report) -> Self {
        Outcome { code, report, artifact: None }
    }
}

pub fn load_model(path: &Path) -> Result<ModelFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    ModelFile::parse(&text)
}

pub fn check_implements(system: &ModelFile, contract: &ModelFile) -> Result<Outcome, CliError> {
    let sys = system.to_system()?;
    let c = contract.to_contract()?;
    match implements(&sys, &c) {
        Ok(v) => match v.certificate {
            Some((m1, m2)) if v.holds => Ok(Outcome::report(
                exit::OK,
                Report::new("implements").with_matrix("M1", &m1).with_matrix("M2", &m2),
            )),
            _ => Ok(Outcome::report(exit::NEGATIVE, Report::new("does-not-implement"))),
        },
        Err(Error::NotInputOutputForm) => Ok(Outcome::report(
            exit::NOT_IO_FORM,
            Report::new("not-input-output-form").with_note("P^{-1} Q is not proper"),
        )),
        Err(e) => Err(e.into()),
    }
}

pub fn check_refines(c1: &ModelFile, c2: &ModelFile) -> Result<Outcome, CliError> {
    let v = refines(&c1.to_contract()?, &c2.to_contract()?)?;
    let mut r = match v.outcome {
        RefinementOutcome::Refines => Report::new("refines"),
        RefinementOutcome::DoesNotRefine => Report::new("does-not-refine")
            .with_note("some environment of the second contract is not an environment of the first"),
        RefinementOutcome::DoesNotRefineIfConsistent => Report::new("does-not-refine-if-consistent")
            .with_note("guarantee inclusion fails; the answer is negative if the first contract is consistent"),
    };
    if let Some(c) = &v.env_inclusion_cert {
        r = r.with_matrix("env_inclusion", c.matrix());
    }
    if let Some(c) = &v.guarantee_cert {
        r = r.with_matrix("guarantee_inclusion", c.matrix());
    }
    if v.c1_provably_inconsistent {
        r = r.with_note("the first contract is provably inconsistent, so refinement holds vacuously");
    }
    let code = match v.outcome {
        RefinementOutcome::Refines => exit::OK,
        RefinementOutcome::DoesNotRefine => exit::NEGATIVE,
        RefinementOutcome::DoesNotRefineIfConsistent => exit::UNDECIDED,
    };
    Ok(Outcome::report(code, r))
}

/// Never reports success: a passing necessary condition leaves
/// consistency undecided.
pub fn check_consistency(contract: &ModelFile) -> Result<Outcome, CliError> {
    let c = contract.to_contract()?;
    if !consistency_necessary(&c)? {
        return Ok(Outcome::report(
            exit::NEGATIVE,
            Report::new("inconsistent").with_note("B_u(A) is not contained in B_u(Gamma)"),
        ));
    }
    let mut r = Report::new("undetermined")
        .with_note("necessary condition holds; consistency is not decided");
    if let Some(g) = normalize_guarantees(&c)? {
        r = r.with_matrix("G_prime", &g.g).with_matrix("H_prime", &g.h);
    }
    Ok(Outcome::report(exit::UNDECIDED, r))
}

pub fn check_compatible(env: &ModelFile, contract: &ModelFile) -> Result<Outcome, CliError> {
    match compatible(&env.to_environment()?, &contract.to_contract()?)? {
        Some(cert) => Ok(Outcome::report(
            exit::OK,
            Report::new("compatible").with_matrix("M", cert.matrix()),
        )),
        None => Ok(Outcome::report(exit::NEGATIVE, Report::new("incompatible"))),
    }
}

pub fn conjoin(c1: &ModelFile, c2: &ModelFile) -> Result<Outcome, CliError> {
    let res = conjunction(&c1.to_contract()?, &c2.to_contract()?)?;
    let c = &res.contract;
    let mut r = Report::new(if res.certified_largest { "certified" } else { "uncertified" })
        .with_matrix("A", &c.assumptions.a)
        .with_matrix("G", &c.guarantees.g)
        .with_matrix("H", &c.guarantees.h);
    r = match res.which_condition {
        Some(cond) => r.with_note(format!("largest common refinement by {}", cond.name())),
        None => r.with_note("refines both contracts; maximality not certified"),
    };
    Ok(Outcome {
        code: if res.certified_largest { exit::OK } else { exit::UNDECIDED },
        report: r,
        artifact: Some(ModelFile::from_contract(c).to_json()),
    })
}

pub fn project_input(guarantees: &ModelFile) -> Result<Outcome, CliError> {
    let g = guarantees.to_guarantees()?;
    let a = behavcon::contracts::Assumptions::new(behavior::project_input(&g.g, &g.h)?.into_matrix());
    Ok(Outcome {
        code: exit::OK,
        report: Report::new("projected").with_matrix("A", &a.a),
        artifact: Some(ModelFile::from_assumptions(&a).to_json()),
    })
}

pub fn eliminate_latent(env: &ModelFile) -> Result<Outcome, CliError> {
    let e = env.to_environment()?.input_behaviour();
    let out = ModelFile::from_environment(&behavcon::contracts::Environment::Kernel(e.clone()));
    Ok(Outcome {
        code: exit::OK,
        report: Report::new("eliminated").with_matrix("E", e.matrix()),
        artifact: Some(out.to_json()),
    })
}

/// Runs the scenario; the artifact is the trajectory CSV.
pub fn run_simulation(scenario: &ModelFile, tol: Option<f64>) -> Result<Outcome, CliError> {
    let mut s = scenario.to_scenario()?;
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(CliError::Model("tol must be positive".into()));
        }
        s.tol = t;
    }
    let cfg = &s.config;
    let traj = simulate(&vehicle_cascade(cfg)?, &s.signal, cfg)?;
    let eps = spacing_error(&traj, cfg.h)?;
    let dev = max_decay_deviation(&eps, cfg.k, cfg.step);
    let pass = check_exponential_decay(&eps, cfg.k, cfg.step, s.tol);
    let report = Report::new(if pass { "decays" } else { "decay-violated" })
        .with_note(format!("max |eps - eps0 exp(-k t)| = {dev:e}"))
        .with_note(format!("tolerance {:e} relative to max(|eps0|, 1)", s.tol));
    Ok(Outcome {
        code: if pass { exit::OK } else { exit::NEGATIVE },
        report,
        artifact: Some(traj.to_csv(cfg.h)?),
    })
}
