//! JSON model files.
//!
//! Rationals travel as strings (`"-3/2"`), polynomials as arrays of
//! coefficients in ascending degree, matrices as arrays of rows. `n_y` and
//! `n_u` fix the column counts so that zero-row matrices are unambiguous.

use std::str::FromStr;

use behavcon::contracts::{Assumptions, Contract, Environment, Guarantees};
use behavcon::vehiclesim::{Piece, PiecewiseSignal, ScenarioConfig, SignalShape};
use behavcon::{IoSystem, KernelRep, LatentRep, QPoly, QPolyMatrix, Rational};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub type PolyJson = Vec<String>;
pub type MatrixJson = Vec<Vec<PolyJson>>;

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    Rational::from_str(s.trim()).map_err(|e| CliError::Model(format!("bad rational {s:?}: {e}")))
}

pub fn poly_from_json(p: &PolyJson) -> Result<QPoly, CliError> {
    Ok(QPoly::new(p.iter().map(|c| parse_rational(c)).collect::<Result<_, _>>()?))
}

pub fn poly_to_json(p: &QPoly) -> PolyJson {
    p.coeffs().iter().map(ToString::to_string).collect()
}

pub fn matrix_from_json(m: &MatrixJson, cols: usize) -> Result<QPolyMatrix, CliError> {
    let rows = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != cols {
                return Err(CliError::Model(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            row.iter().map(poly_from_json).collect()
        })
        .collect::<Result<Vec<Vec<QPoly>>, _>>()?;
    Ok(QPolyMatrix::from_rows(rows, cols)?)
}

pub fn matrix_to_json(m: &QPolyMatrix) -> MatrixJson {
    (0..m.rows()).map(|i| m.row(i).iter().map(poly_to_json).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssumptionsJson {
    #[serde(rename = "A")]
    pub a: MatrixJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuaranteesJson {
    #[serde(rename = "G")]
    pub g: MatrixJson,
    #[serde(rename = "H")]
    pub h: MatrixJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeJson {
    Constant(f64),
    Sinusoid { amplitude: f64, frequency: f64, phase: f64, offset: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PieceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end: Option<f64>,
    #[serde(flatten)]
    pub shape: ShapeJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct ScenarioJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    /// Leader damping.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leader_initial: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub follower_initial: Option<[f64; 2]>,
    /// Overrides the follower position so the spacing error starts here.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_spacing_error: Option<f64>,
    /// Leader force; the demonstration signal when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signal: Option<Vec<PieceJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelFile {
    System {
        n_y: usize,
        n_u: usize,
        #[serde(rename = "P")]
        p: MatrixJson,
        #[serde(rename = "Q")]
        q: MatrixJson,
    },
    Assumptions {
        n_u: usize,
        #[serde(rename = "A")]
        a: MatrixJson,
    },
    Guarantees {
        n_y: usize,
        n_u: usize,
        #[serde(rename = "G")]
        g: MatrixJson,
        #[serde(rename = "H")]
        h: MatrixJson,
    },
    Contract {
        n_y: usize,
        n_u: usize,
        assumptions: AssumptionsJson,
        guarantees: GuaranteesJson,
    },
    /// Either `E` (kernel form) or `R_w` with `R_l` (latent form, `R_l`
    /// having `n_l` columns).
    Environment {
        n_u: usize,
        #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
        e: Option<MatrixJson>,
        #[serde(rename = "R_w", default, skip_serializing_if = "Option::is_none")]
        r_w: Option<MatrixJson>,
        #[serde(rename = "R_l", default, skip_serializing_if = "Option::is_none")]
        r_l: Option<MatrixJson>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n_l: Option<usize>,
    },
    Scenario(ScenarioJson),
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ModelFile::System { .. } => "system",
            ModelFile::Assumptions { .. } => "assumptions",
            ModelFile::Guarantees { .. } => "guarantees",
            ModelFile::Contract { .. } => "contract",
            ModelFile::Environment { .. } => "environment",
            ModelFile::Scenario(_) => "scenario",
        }
    }

    fn wrong_kind(&self, want: &str) -> CliError {
        CliError::Model(format!("expected a {want} model, found {}", self.kind()))
    }

    pub fn from_system(s: &IoSystem<Rational>) -> Self {
        ModelFile::System { n_y: s.n_y(), n_u: s.n_u(), p: matrix_to_json(&s.p), q: matrix_to_json(&s.q) }
    }

    pub fn to_system(&self) -> Result<IoSystem<Rational>, CliError> {
        let ModelFile::System { n_y, n_u, p, q } = self else {
            return Err(self.wrong_kind("system"));
        };
        let p = matrix_from_json(p, *n_y)?;
        let q = matrix_from_json(q, *n_u)?;
        if p.rows() != *n_y {
            return Err(CliError::Model(format!("P has {} rows, n_y is {n_y}", p.rows())));
        }
        Ok(IoSystem::new(p, q)?)
    }

    pub fn from_assumptions(a: &Assumptions<Rational>) -> Self {
        ModelFile::Assumptions { n_u: a.n_u(), a: matrix_to_json(&a.a) }
    }

    pub fn to_assumptions(&self) -> Result<Assumptions<Rational>, CliError> {
        let ModelFile::Assumptions { n_u, a } = self else {
            return Err(self.wrong_kind("assumptions"));
        };
        Ok(Assumptions::new(matrix_from_json(a, *n_u)?))
    }

    pub fn from_guarantees(g: &Guarantees<Rational>) -> Self {
        ModelFile::Guarantees { n_y: g.n_y(), n_u: g.n_u(), g: matrix_to_json(&g.g), h: matrix_to_json(&g.h) }
    }

    pub fn to_guarantees(&self) -> Result<Guarantees<Rational>, CliError> {
        let ModelFile::Guarantees { n_y, n_u, g, h } = self else {
            return Err(self.wrong_kind("guarantees"));
        };
        Ok(Guarantees::new(matrix_from_json(g, *n_y)?, matrix_from_json(h, *n_u)?)?)
    }

    pub fn from_contract(c: &Contract<Rational>) -> Self {
        ModelFile::Contract {
            n_y: c.n_y(),
            n_u: c.n_u(),
            assumptions: AssumptionsJson { a: matrix_to_json(&c.assumptions.a) },
            guarantees: GuaranteesJson {
                g: matrix_to_json(&c.guarantees.g),
                h: matrix_to_json(&c.guarantees.h),
            },
        }
    }

    pub fn to_contract(&self) -> Result<Contract<Rational>, CliError> {
        let ModelFile::Contract { n_y, n_u, assumptions, guarantees } = self else {
            return Err(self.wrong_kind("contract"));
        };
        let a = Assumptions::new(matrix_from_json(&assumptions.a, *n_u)?);
        let g = Guarantees::new(
            matrix_from_json(&guarantees.g, *n_y)?,
            matrix_from_json(&guarantees.h, *n_u)?,
        )?;
        Ok(Contract::new(a, g)?)
    }

    pub fn from_environment(env: &Environment<Rational>) -> Self {
        match env {
            Environment::Kernel(k) => ModelFile::Environment {
                n_u: k.n_u(),
                e: Some(matrix_to_json(k.matrix())),
                r_w: None,
                r_l: None,
                n_l: None,
            },
            Environment::Latent(l) => ModelFile::Environment {
                n_u: l.n_u(),
                e: None,
                r_w: Some(matrix_to_json(l.manifest())),
                r_l: Some(matrix_to_json(l.latent())),
                n_l: Some(l.latent().cols()),
            },
        }
    }

    pub fn to_environment(&self) -> Result<Environment<Rational>, CliError> {
        let ModelFile::Environment { n_u, e, r_w, r_l, n_l } = self else {
            return Err(self.wrong_kind("environment"));
        };
        match (e, r_w, r_l) {
            (Some(e), None, None) => Ok(Environment::Kernel(KernelRep::inputs(matrix_from_json(e, *n_u)?))),
            (None, Some(r_w), Some(r_l)) => {
                let n_l = match n_l {
                    Some(n) => *n,
                    None => r_l
                        .first()
                        .map(Vec::len)
                        .ok_or_else(|| CliError::Model("R_l without rows needs n_l".into()))?,
                };
                let r_w = matrix_from_json(r_w, *n_u)?;
                let r_l = matrix_from_json(r_l, n_l)?;
                Ok(Environment::Latent(LatentRep::inputs(r_w, r_l)?))
            }
            _ => Err(CliError::Model("environment needs either E or both R_w and R_l".into())),
        }
    }

    pub fn to_scenario(&self) -> Result<Scenario, CliError> {
        let ModelFile::Scenario(s) = self else {
            return Err(self.wrong_kind("scenario"));
        };
        s.to_scenario()
    }
}

/// A validated simulation request.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub config: ScenarioConfig<f64>,
    pub signal: PiecewiseSignal<f64>,
    pub tol: f64,
}

pub const DEFAULT_DECAY_TOL: f64 = 1e-6;

impl ScenarioJson {
    pub fn to_scenario(&self) -> Result<Scenario, CliError> {
        let d = ScenarioConfig::<f64>::default();
        let mut config = ScenarioConfig {
            h: self.h.unwrap_or(d.h),
            k: self.k.unwrap_or(d.k),
            c: self.c.unwrap_or(d.c),
            horizon: self.horizon.unwrap_or(d.horizon),
            step: self.step.unwrap_or(d.step),
            leader_initial: self.leader_initial.unwrap_or(d.leader_initial),
            follower_initial: self.follower_initial.unwrap_or(d.follower_initial),
        };
        if let Some(eps0) = self.initial_spacing_error {
            config = config.with_initial_spacing_error(eps0);
        }
        config.validate()?;
        let signal = match &self.signal {
            None => PiecewiseSignal::vehicle_demo(),
            Some(pieces) => PiecewiseSignal::new(
                pieces
                    .iter()
                    .map(|p| Piece {
                        end: p.end,
                        shape: match p.shape {
                            ShapeJson::Constant(c) => SignalShape::Constant(c),
                            ShapeJson::Sinusoid { amplitude, frequency, phase, offset } => {
                                SignalShape::Sinusoid { amplitude, frequency, phase, offset }
                            }
                        },
                    })
                    .collect(),
            )?,
        };
        let tol = self.tol.unwrap_or(DEFAULT_DECAY_TOL);
        if !(tol > 0.0) {
            return Err(CliError::Model("tol must be positive".into()));
        }
        Ok(Scenario { config, signal, tol })
    }
}
