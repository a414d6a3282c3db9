//! Command implementations, generic over the arithmetic in use.

use qvalent::{
    classify_transition, entropy_trajectory, evaluate, is_scaled_unitary, Field, LogBase, Matrix, Scalar,
    TransitionClass,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::report::{Cell, Table};
use crate::scenario::Scenario;

/// What a command produced: a flat table, or a structured document that
/// still has a tabular CSV form.
pub enum Output {
    Table(Table),
    Document { json: Value, table: Table },
}

pub struct Context<'a, C> {
    pub scenario: &'a Scenario,
    pub base: LogBase,
    pub convert: C,
}

fn class_name(class: TransitionClass) -> &'static str {
    match class {
        TransitionClass::EntropyPreserving => "entropyPreserving",
        TransitionClass::ArbitraryChange => "arbitraryChange",
    }
}

impl<'a, F: Field, C: Fn(&Scalar) -> F> Context<'a, C> {
    pub fn entropy(&self, state: &str, subspaces: &[String]) -> Result<Output, CliError> {
        let u = self.scenario.state(state, &self.convert)?;
        let props = self.scenario.propositions(subspaces, &self.convert)?;
        let mut table = Table::new(vec![
            "state",
            "subspace",
            "truth",
            "m_in",
            "m_out",
            "n",
            "m",
            "entropy",
            "h_max",
            "born",
            "born_value",
            "shannon",
            "base",
        ]);
        for (name, p) in props.iter() {
            let r = evaluate(&u, p, &self.base)?;
            table.push(vec![
                state.into(),
                name.into(),
                r.truth.as_str().into(),
                r.matches.m_in.into(),
                r.matches.m_out.into(),
                r.entropy.dim.into(),
                r.entropy.matched.into(),
                r.entropy_value().into(),
                r.h_max().into(),
                r.born_probability.to_string().into(),
                r.born_f64().into(),
                r.shannon_entropy().into(),
                self.base.to_string().into(),
            ]);
        }
        Ok(Output::Table(table))
    }

    pub fn truth(&self, state: &str, subspaces: &[String]) -> Result<Output, CliError> {
        let u = self.scenario.state(state, &self.convert)?;
        let props = self.scenario.propositions(subspaces, &self.convert)?;
        let mut table = Table::new(vec!["state", "subspace", "truth", "born"]);
        for (name, p) in props.iter() {
            let truth = qvalent::truth_value(&u, p)?;
            let born = qvalent::born_degree_of_truth(&u, p)?;
            table.push(vec![state.into(), name.into(), truth.as_str().into(), born.to_string().into()]);
        }
        Ok(Output::Table(table))
    }

    fn transition_table(
        &self,
        past: &str,
        present: &str,
        subspaces: &[String],
    ) -> Result<(Table, TransitionClass), CliError> {
        let u = self.scenario.state(past, &self.convert)?;
        let v = self.scenario.state(present, &self.convert)?;
        let props = self.scenario.propositions(subspaces, &self.convert)?;
        let report = classify_transition(&u, &v, &props, &self.base)?;
        let mut table =
            Table::new(vec!["subspace", "n", "m_past", "m_present", "h_past", "h_present", "delta", "sign", "tag"]);
        for row in &report.rows {
            let tag = serde_json::to_value(row.tag).expect("tags serialize");
            table.push(vec![
                row.name.as_str().into(),
                row.h_past().dim.into(),
                row.h_past().matched.into(),
                row.h_present().matched.into(),
                row.h_past().value(&self.base).into(),
                row.h_present().value(&self.base).into(),
                row.delta.value(&self.base).into(),
                row.delta.signum().into(),
                tag.as_str().unwrap_or_default().into(),
            ]);
        }
        Ok((table, report.class))
    }

    pub fn delta(&self, past: &str, present: &str, subspaces: &[String]) -> Result<Output, CliError> {
        Ok(Output::Table(self.transition_table(past, present, subspaces)?.0))
    }

    pub fn classify(&self, past: &str, present: &str, subspaces: &[String]) -> Result<Output, CliError> {
        let (table, class) = self.transition_table(past, present, subspaces)?;
        let json = json!({
            "past": past,
            "present": present,
            "base": self.base.to_string(),
            "class": class_name(class),
            "rows": table.to_json(),
        });
        let mut csv = Table::new(vec!["past", "present", "class"]);
        csv.headers.extend(table.headers.iter().cloned());
        for row in table.rows {
            let mut full: Vec<Cell> = vec![past.into(), present.into(), class_name(class).into()];
            full.extend(row);
            csv.push(full);
        }
        Ok(Output::Document { json, table: csv })
    }

    pub fn trajectory(
        &self,
        state: &str,
        matrix: &Matrix<Scalar>,
        steps: usize,
        subspaces: &[String],
        strict_unitary: bool,
    ) -> Result<Output, CliError> {
        let u = self.scenario.state(state, &self.convert)?;
        let props = self.scenario.propositions(subspaces, &self.convert)?;
        let a = matrix.map(&self.convert);
        if strict_unitary && !is_scaled_unitary(&a) {
            return Err(CliError::Malformed("matrix is not a scalar multiple of a unitary".into()));
        }
        let rows = entropy_trajectory(&u, &a, steps, &props, &self.base)?;
        let mut table = Table::new(vec!["step", "prop", "entropy", "truth", "born"]);
        for row in &rows {
            for e in &row.entries {
                table.push(vec![
                    row.step.into(),
                    e.name.as_str().into(),
                    e.entropy.value(&self.base).into(),
                    e.truth.as_str().into(),
                    e.born.to_c64().re.into(),
                ]);
            }
        }
        Ok(Output::Table(table))
    }

    pub fn complement(&self, name: &str) -> Result<Output, CliError> {
        let p = self.scenario.subspace(name, &self.convert)?;
        let perp = p.orthocomplement();
        let basis: Vec<Vec<String>> =
            perp.basis().columns().iter().map(|c| c.iter().map(ToString::to_string).collect()).collect();
        let json = json!({
            "subspace": name,
            "ambient_dim": perp.ambient_dim(),
            "subspace_dim": p.dim(),
            "complement_dim": perp.dim(),
            "basis": basis,
        });
        let mut headers = vec!["subspace".to_string(), "vector".to_string()];
        headers.extend((1..=perp.ambient_dim()).map(|i| format!("x{i}")));
        let mut table = Table::new(headers);
        for (k, v) in basis.into_iter().enumerate() {
            let mut row: Vec<Cell> = vec![name.into(), (k + 1).into()];
            row.extend(v.into_iter().map(Cell::from));
            table.push(row);
        }
        Ok(Output::Document { json, table })
    }
}
