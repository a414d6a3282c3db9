//! Self-checking reproduction of the worked examples: the two-qubit space
//! `C^4` with the state `(1,0,0,0)` against four rays, and the single qubit
//! `C^2` with the spin propositions `X+`, `Z+`, `Z-`.
//!
//! Expected entropies are stated in bits and converted to the requested base
//! by `H_base = H_bits * ln 2 / ln base`; exact comparisons use the `(N, m)`
//! pair.

use std::fmt;

use crate::dynamics::{classify_transition, PropositionSet, TransitionClass};
use crate::error::Result;
use crate::membership::{evaluate, max_match_counts, Entropy, LogBase, StateVector, TruthValue};
use crate::pattern::pattern_subspace;
use crate::scalar::Scalar;

pub const NUMERIC_TOLERANCE: f64 = 1e-12;

/// Inputs for the demo. Tests may alter them to exercise the failure path.
#[derive(Clone, Debug)]
pub struct DemoFixtures {
    pub psi1: Vec<Scalar>,
    /// `(name, pattern)` for the four `C^4` rays, in order.
    pub c4_props: Vec<(String, String)>,
    pub z_up: Vec<Scalar>,
    pub z_down: Vec<Scalar>,
    /// The ray of `(1,1)/sqrt(2)`.
    pub x_up: Vec<Scalar>,
    /// `(name, pattern)` for `X+`, `Z+`, `Z-`, in order.
    pub qubit_props: Vec<(String, String)>,
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_integer(x)).collect()
}

fn named(items: &[(&str, &str)]) -> Vec<(String, String)> {
    items.iter().map(|&(n, p)| (n.to_string(), p.to_string())).collect()
}

impl Default for DemoFixtures {
    fn default() -> Self {
        DemoFixtures {
            psi1: ints(&[1, 0, 0, 0]),
            c4_props: named(&[("P1", "[a,0,0,0]"), ("P2", "[0,a,0,0]"), ("P3", "[a,a,a,a]"), ("P4", "[a,a,0,0]")]),
            z_up: ints(&[1, 0]),
            z_down: ints(&[0, 1]),
            x_up: ints(&[1, 1]),
            qubit_props: named(&[("X+", "[a,a]"), ("Z+", "[a,0]"), ("Z-", "[0,a]")]),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: expected {}, got {}", self.label, self.expected, self.actual)
    }
}

#[derive(Clone, Debug)]
pub struct DemoReport {
    pub base: LogBase,
    pub checks: Vec<Check>,
}

impl DemoReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

struct Checker {
    base: LogBase,
    checks: Vec<Check>,
}

impl Checker {
    fn push(&mut self, label: String, expected: String, actual: String, passed: bool) {
        self.checks.push(Check { label, expected, actual, passed });
    }

    fn exact<T: PartialEq + fmt::Debug>(&mut self, label: String, expected: T, actual: T) {
        let passed = expected == actual;
        self.push(label, format!("{expected:?}"), format!("{actual:?}"), passed);
    }

    fn bits_to_base(&self, bits: f64) -> f64 {
        bits * std::f64::consts::LN_2 / self.base.ln()
    }

    fn numeric(&mut self, label: String, expected_bits: f64, actual: f64) {
        let expected = self.bits_to_base(expected_bits);
        let passed = (expected - actual).abs() <= NUMERIC_TOLERANCE;
        self.push(label, format!("{expected:.12}"), format!("{actual:.12}"), passed);
    }

    /// Exact `(N, m)` comparison plus the numeric value in the current base.
    fn entropy(&mut self, label: &str, expected: Entropy, expected_bits: f64, actual: Entropy) {
        self.push(
            format!("{label} (N,m)"),
            format!("(N={}, m={})", expected.dim, expected.matched),
            format!("(N={}, m={})", actual.dim, actual.matched),
            expected == actual,
        );
        let value = actual.value(&self.base);
        self.numeric(format!("{label} [{}]", self.base), expected_bits, value);
    }
}

fn props(n: usize, items: &[(String, String)]) -> Result<PropositionSet<Scalar>> {
    let subspaces = items
        .iter()
        .map(|(name, text)| Ok((name.clone(), pattern_subspace(text, n, Scalar::clone)?)))
        .collect::<Result<Vec<_>>>()?;
    PropositionSet::new(subspaces)
}

/// Runs every check; errors only when a fixture itself is malformed.
pub fn run_demo(fixtures: &DemoFixtures, base: &LogBase) -> Result<DemoReport> {
    let mut c = Checker { base: base.clone(), checks: Vec::new() };

    // Two qubits: truth values, match counts and the one nonzero entropy.
    let psi1 = StateVector::new(fixtures.psi1.clone())?;
    let c4 = props(4, &fixtures.c4_props)?;
    let expected_truths = [TruthValue::True, TruthValue::False, TruthValue::Indeterminate, TruthValue::Indeterminate];
    for ((name, p), want) in c4.iter().zip(expected_truths) {
        let report = evaluate(&psi1, p, base)?;
        c.exact(format!("truth(psi1, {name})"), want, report.truth);
    }
    if let Some((name, p3)) = c4.iter().nth(2) {
        let m = max_match_counts(&psi1, p3)?;
        c.exact(format!("(|M|,|M_perp|)(psi1, {name})"), (1, 3), m.counts());
        let h = Entropy::new(psi1.dim(), m.max_count());
        c.entropy(&format!("H(psi1, {name})"), Entropy::new(4, 3), 2.0 - 0.75 * 3f64.log2(), h);
    }

    // One qubit: the nine entropies.
    let qubit = props(2, &fixtures.qubit_props)?;
    let states = [
        ("psi_z+", StateVector::new(fixtures.z_up.clone())?),
        ("psi_z-", StateVector::new(fixtures.z_down.clone())?),
        ("psi_x+", StateVector::new(fixtures.x_up.clone())?),
    ];
    // Rows: state; columns: X+, Z+, Z-. 1 = log 2 bits (m <= 1), 0 = determinate (m = 2).
    let expected_bits = [[1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 1.0]];
    for ((sname, u), row) in states.iter().zip(expected_bits) {
        for ((pname, p), bits) in qubit.iter().zip(row) {
            let report = evaluate(u, p, base)?;
            let expected = Entropy::new(2, if bits == 0.0 { 2 } else { 1 });
            c.entropy(&format!("H({sname}, {pname})"), expected, bits, report.entropy);
        }
    }

    // Transitions.
    let [(_, z_up), (_, z_down), (_, x_up)] = &states;
    let preserving = classify_transition(z_up, z_down, &qubit, base)?;
    c.exact("class(psi_z+ -> psi_z-)".into(), TransitionClass::EntropyPreserving, preserving.class);
    for row in &preserving.rows {
        c.exact(format!("sign dH(psi_z+ -> psi_z-, {})", row.name), 0, row.delta.signum());
        c.numeric(format!("dH(psi_z+ -> psi_z-, {}) [{}]", row.name, base), 0.0, row.delta.value(base));
    }
    let arbitrary = classify_transition(z_up, x_up, &qubit, base)?;
    c.exact("class(psi_z+ -> psi_x+)".into(), TransitionClass::ArbitraryChange, arbitrary.class);
    for (row, (sign, bits)) in arbitrary.rows.iter().zip([(-1, -1.0), (1, 1.0), (1, 1.0)]) {
        c.exact(format!("sign dH(psi_z+ -> psi_x+, {})", row.name), sign, row.delta.signum());
        c.numeric(format!("dH(psi_z+ -> psi_x+, {}) [{}]", row.name, base), bits, row.delta.value(base));
    }

    Ok(DemoReport { base: base.clone(), checks: c.checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_fixtures_pass_in_bits_and_nats() {
        for base in [LogBase::bits(), LogBase::E, "10".parse().unwrap()] {
            let report = run_demo(&DemoFixtures::default(), &base).unwrap();
            for check in &report.checks {
                assert!(check.passed, "{check}");
            }
            assert!(report.checks.len() >= 30);
        }
    }

    #[test]
    fn nats_are_bits_times_ln2() {
        let report = run_demo(&DemoFixtures::default(), &LogBase::E).unwrap();
        let h = report.checks.iter().find(|c| c.label == "H(psi1, P3) [e]").unwrap();
        let expected = (2.0 - 0.75 * 3f64.log2()) * std::f64::consts::LN_2;
        assert_eq!(h.expected, format!("{expected:.12}"));
    }

    #[test]
    fn corrupted_fixture_fails() {
        let fixtures = DemoFixtures { psi1: ints(&[0, 1, 0, 0]), ..DemoFixtures::default() };
        let report = run_demo(&fixtures, &LogBase::bits()).unwrap();
        assert!(!report.all_passed());

        let fixtures = DemoFixtures { x_up: ints(&[1, 2]), ..DemoFixtures::default() };
        let report = run_demo(&fixtures, &LogBase::bits()).unwrap();
        assert!(report.failures() > 0);
    }
}
