use std::collections::BTreeMap;
use std::fmt;

use behavcon::QPolyMatrix;
use serde::{Deserialize, Serialize};

use crate::model::{matrix_from_json, matrix_to_json, MatrixJson};
use crate::CliError;

/// Machine-readable result of a command.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Report {
    pub verdict: String,
    #[serde(default)]
    pub certificates: BTreeMap<String, CertificateJson>,
    #[serde(default)]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub cols: usize,
    pub matrix: MatrixJson,
}

impl Report {
    pub fn new(verdict: impl Into<String>) -> Self {
        Report { verdict: verdict.into(), ..Default::default() }
    }

    pub fn with_matrix(mut self, name: &str, m: &QPolyMatrix) -> Self {
        self.certificates
            .insert(name.to_string(), CertificateJson { cols: m.cols(), matrix: matrix_to_json(m) });
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn matrix(&self, name: &str) -> Result<QPolyMatrix, CliError> {
        let c = self
            .certificates
            .get(name)
            .ok_or_else(|| CliError::Model(format!("report has no certificate {name}")))?;
        matrix_from_json(&c.matrix, c.cols)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.verdict)?;
        for (name, c) in &self.certificates {
            match matrix_from_json(&c.matrix, c.cols) {
                Ok(m) => writeln!(f, "{name} = {m}")?,
                Err(_) => writeln!(f, "{name} = <malformed>")?,
            }
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}
