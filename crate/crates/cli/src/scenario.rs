//! Scenario files: the ambient dimension, named states, named subspaces and
//! the arithmetic settings, as JSON.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "base": "2",
//!   "arithmetic": "exact",
//!   "states": { "psi_z+": ["1", "0"], "psi_x+": ["1", "1"] },
//!   "subspaces": [
//!     { "name": "X+", "pattern": "[a,a]" },
//!     { "name": "Z+", "basis": [["1", "0"]] }
//!   ]
//! }
//! ```

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use qvalent::{pattern_subspace, Field, LogBase, Matrix, PropositionSet, Scalar, StateVector, Subspace};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    #[default]
    Exact,
    Float,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SubspaceSource {
    Pattern { pattern: String },
    Basis { basis: Vec<Vec<Scalar>> },
}

#[derive(Clone, Debug, Deserialize)]
pub struct SubspaceDescriptor {
    pub name: String,
    #[serde(flatten)]
    pub source: SubspaceSource,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub dimension: usize,
    #[serde(default)]
    pub base: Option<String>,
    #[serde(default)]
    pub arithmetic: Arithmetic,
    #[serde(default)]
    pub eps: Option<f64>,
    #[serde(default)]
    pub states: BTreeMap<String, Vec<Scalar>>,
    #[serde(default)]
    pub subspaces: Vec<SubspaceDescriptor>,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())))?;
        Scenario::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let scenario: Scenario =
            serde_json::from_str(text).map_err(|e| CliError::Malformed(format!("scenario: {e}")))?;
        scenario.validate()?;
        Ok(scenario)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.dimension == 0 {
            return Err(CliError::Malformed("dimension must be at least 1".into()));
        }
        for (name, components) in &self.states {
            if components.len() != self.dimension {
                return Err(CliError::Malformed(format!(
                    "state {name:?} has {} components, expected {}",
                    components.len(),
                    self.dimension
                )));
            }
        }
        let mut seen = HashSet::new();
        for d in &self.subspaces {
            if !seen.insert(d.name.as_str()) {
                return Err(CliError::Malformed(format!("duplicate subspace name {:?}", d.name)));
            }
        }
        if let Some(b) = &self.base {
            b.parse::<LogBase>()?;
        }
        if let Some(eps) = self.eps {
            if !(eps.is_finite() && eps > 0.0) {
                return Err(CliError::Malformed(format!("eps must be positive, got {eps}")));
            }
        }
        Ok(())
    }

    pub fn state<F: Field>(&self, name: &str, convert: &impl Fn(&Scalar) -> F) -> Result<StateVector<F>, CliError> {
        let components = self.states.get(name).ok_or_else(|| CliError::Name(format!("unknown state {name:?}")))?;
        Ok(StateVector::new(components.iter().map(convert).collect())?)
    }

    fn descriptor(&self, name: &str) -> Result<&SubspaceDescriptor, CliError> {
        self.subspaces
            .iter()
            .find(|d| d.name == name)
            .ok_or_else(|| CliError::Name(format!("unknown subspace {name:?}")))
    }

    pub fn subspace<F: Field>(&self, name: &str, convert: &impl Fn(&Scalar) -> F) -> Result<Subspace<F>, CliError> {
        let n = self.dimension;
        match &self.descriptor(name)?.source {
            SubspaceSource::Pattern { pattern } => Ok(pattern_subspace(pattern, n, convert)?),
            SubspaceSource::Basis { basis } => {
                let vectors: Vec<Vec<F>> = basis.iter().map(|v| v.iter().map(convert).collect()).collect();
                Ok(Subspace::from_spanning(n, &Matrix::from_columns(n, &vectors)?)?)
            }
        }
    }

    /// The named subspaces in the given order, or all of them in file order.
    pub fn propositions<F: Field>(
        &self,
        names: &[String],
        convert: &impl Fn(&Scalar) -> F,
    ) -> Result<PropositionSet<F>, CliError> {
        let names: Vec<&str> = if names.is_empty() {
            self.subspaces.iter().map(|d| d.name.as_str()).collect()
        } else {
            names.iter().map(String::as_str).collect()
        };
        let items = names
            .into_iter()
            .map(|n| Ok((n.to_string(), self.subspace(n, convert)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(PropositionSet::new(items)?)
    }
}

/// A square matrix file: a JSON array of rows of scalars.
pub fn load_matrix(path: &Path) -> Result<Matrix<Scalar>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text)
}

pub fn parse_matrix(text: &str) -> Result<Matrix<Scalar>, CliError> {
    let rows: Vec<Vec<Scalar>> = serde_json::from_str(text).map_err(|e| CliError::Malformed(format!("matrix: {e}")))?;
    if rows.is_empty() {
        return Err(CliError::Malformed("matrix has no rows".into()));
    }
    Ok(Matrix::from_rows(rows)?)
}
