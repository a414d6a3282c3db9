//! Match counts between a state and a subspace, the valuational entropy they
//! induce, and the three-way truth value of the membership proposition.
//!
//! `|M|` is the largest number of index positions at which the state agrees
//! with some *nonzero* element of the subspace; `|M⊥|` is the same quantity
//! against the orthocomplement. A global nonzero rescaling of the state does
//! not change either count, because subspaces are closed under scaling.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num::rational::BigRational;
use num::traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{inner, is_zero_vector, Field};
use crate::matrix::gram_projection;
use crate::scalar::{parse_rational, Scalar};
use crate::subspace::Subspace;

/// Largest ambient dimension accepted by the pruned subset search.
pub const MAX_SEARCH_DIM: usize = 16;

/// Largest ambient dimension accepted by the exhaustive oracle.
pub const MAX_BRUTE_FORCE_DIM: usize = 12;

/// A nonzero vector, standing for the ray it spans.
#[derive(Clone, Debug)]
pub struct StateVector<F> {
    components: Vec<F>,
}

impl<F: Field> StateVector<F> {
    pub fn new(components: Vec<F>) -> Result<Self> {
        if components.is_empty() || is_zero_vector(&components) {
            return Err(Error::ZeroState);
        }
        Ok(StateVector { components })
    }

    pub fn components(&self) -> &[F] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn scaled(&self, factor: &F) -> Result<Self> {
        StateVector::new(self.components.iter().map(|c| c.mul(factor)).collect())
    }

    /// Same ray: `self = c * other` for some nonzero `c`.
    pub fn same_ray(&self, other: &Self) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let Some(k) = other.components.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let ratio = self.components[k].div(&other.components[k]).expect("nonzero");
        self.components.iter().zip(&other.components).all(|(a, b)| a.approx_eq(&ratio.mul(b)))
    }
}

impl StateVector<Scalar> {
    pub fn from_integers(values: &[i64]) -> Result<Self> {
        StateVector::new(values.iter().map(|&v| Scalar::from_integer(v)).collect())
    }
}

/// A nonzero subspace element agreeing with the state on `positions`.
#[derive(Clone, Debug)]
pub struct Witness<F> {
    /// Zero-based, ascending.
    pub positions: Vec<usize>,
    pub vector: Vec<F>,
}

#[derive(Clone, Debug)]
pub struct MatchResult<F> {
    pub m_in: usize,
    pub m_out: usize,
    pub witness_in: Option<Witness<F>>,
    pub witness_out: Option<Witness<F>>,
}

impl<F> MatchResult<F> {
    pub fn counts(&self) -> (usize, usize) {
        (self.m_in, self.m_out)
    }

    pub fn max_count(&self) -> usize {
        self.m_in.max(self.m_out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TruthValue {
    True,
    False,
    Indeterminate,
}

impl TruthValue {
    pub fn is_determinate(self) -> bool {
        self != TruthValue::Indeterminate
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TruthValue::True => "true",
            TruthValue::False => "false",
            TruthValue::Indeterminate => "indeterminate",
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Base of the logarithm entropies are reported in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogBase {
    E,
    Rational(BigRational),
}

impl LogBase {
    pub fn bits() -> Self {
        LogBase::Rational(BigRational::from_integer(2.into()))
    }

    pub fn ln(&self) -> f64 {
        match self {
            LogBase::E => 1.0,
            LogBase::Rational(r) => {
                // ln(p/q) = ln p - ln q keeps precision for large parts.
                let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
                let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
                n.ln() - d.ln()
            }
        }
    }

    pub fn log(&self, x: f64) -> f64 {
        x.ln() / self.ln()
    }
}

impl Default for LogBase {
    fn default() -> Self {
        LogBase::bits()
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "e" {
            return Ok(LogBase::E);
        }
        match parse_rational(t) {
            Some(r) if r > BigRational::from_integer(1.into()) => Ok(LogBase::Rational(r)),
            _ => Err(Error::InvalidBase(s.to_string())),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogBase::E => f.write_str("e"),
            LogBase::Rational(r) => write!(f, "{}", Scalar::from_rational(r.clone())),
        }
    }
}

fn m_log_m(m: usize) -> f64 {
    if m == 0 {
        0.0
    } else {
        let m = m as f64;
        m * m.ln()
    }
}

/// The valuational entropy `log N - (m/N) log m`, held losslessly as the
/// pair `(N, m)` with `m = max(|M|, |M⊥|)`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Entropy {
    pub dim: usize,
    pub matched: usize,
}

impl Entropy {
    pub fn new(dim: usize, matched: usize) -> Self {
        Entropy { dim, matched }
    }

    /// `m = 0` and `m = 1` give the same value (`0 log 0 = 1 log 1 = 0`).
    fn canonical_matched(&self) -> usize {
        self.matched.max(1)
    }

    pub fn is_zero(&self) -> bool {
        self.canonical_matched() >= self.dim
    }

    /// `true` when the entropy equals its supremum `log N`.
    pub fn is_max(&self) -> bool {
        self.canonical_matched() == 1
    }

    pub fn value(&self, base: &LogBase) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let n = self.dim as f64;
        ((n.ln()) - m_log_m(self.matched) / n) / base.ln()
    }

    pub fn bits(&self) -> f64 {
        self.value(&LogBase::bits())
    }

    /// The supremum `log N`.
    pub fn max_value(&self, base: &LogBase) -> f64 {
        base.log(self.dim as f64)
    }
}

impl PartialEq for Entropy {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() && other.is_zero() {
            return true;
        }
        self.dim == other.dim && self.canonical_matched() == other.canonical_matched()
    }
}

/// `H(present) - H(past)` for one proposition, exact in sign.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyDelta {
    pub past: Entropy,
    pub present: Entropy,
}

impl EntropyDelta {
    pub fn value(&self, base: &LogBase) -> f64 {
        if self.past == self.present {
            return 0.0;
        }
        if self.past.dim == self.present.dim {
            let n = self.past.dim as f64;
            let past = if self.past.is_zero() { m_log_m(self.past.dim) } else { m_log_m(self.past.matched) };
            let present =
                if self.present.is_zero() { m_log_m(self.present.dim) } else { m_log_m(self.present.matched) };
            return (past - present) / n / base.ln();
        }
        self.present.value(base) - self.past.value(base)
    }

    /// Exact sign of the change: -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        if self.past == self.present {
            return 0;
        }
        if self.past.dim == self.present.dim {
            // Entropy strictly decreases in the canonical match count.
            let p = if self.past.is_zero() { self.past.dim } else { self.past.canonical_matched() };
            let q = if self.present.is_zero() { self.present.dim } else { self.present.canonical_matched() };
            return if q > p { -1 } else { 1 };
        }
        let v = self.value(&LogBase::E);
        if v < 0.0 {
            -1
        } else {
            1
        }
    }
}

/// Everything reported for one (state, subspace) pair.
#[derive(Clone, Debug)]
pub struct EntropyReport<F> {
    pub truth: TruthValue,
    pub matches: MatchResult<F>,
    pub entropy: Entropy,
    pub base: LogBase,
    pub born_probability: F,
}

impl<F: Field> EntropyReport<F> {
    pub fn entropy_value(&self) -> f64 {
        self.entropy.value(&self.base)
    }

    pub fn h_max(&self) -> f64 {
        self.entropy.max_value(&self.base)
    }

    pub fn born_f64(&self) -> f64 {
        self.born_probability.to_c64().re
    }

    /// Binary Shannon entropy of the Born probability, in the same base.
    pub fn shannon_entropy(&self) -> f64 {
        shannon_binary_entropy(self.born_f64().clamp(0.0, 1.0), &self.base).expect("clamped into [0, 1]")
    }
}

fn check_dims<F: Field>(u: &StateVector<F>, p: &Subspace<F>) -> Result<()> {
    p.check_dim(u.dim())
}

/// A nonzero `q` in `p` with `q_i = u_i` for every `i` in `positions`, if any.
///
/// With basis `B` (`N x k`) and its rows `B_S`: when `u_S != 0` the set is
/// feasible iff `B_S x = u_S` is consistent (and then `q = Bx` is nonzero);
/// when `u_S = 0` it is feasible iff `B_S` has a nontrivial kernel.
pub fn feasible_index_set<F: Field>(
    u: &StateVector<F>,
    p: &Subspace<F>,
    positions: &[usize],
) -> Result<Option<Vec<F>>> {
    check_dims(u, p)?;
    if let Some(&bad) = positions.iter().find(|&&i| i >= u.dim()) {
        return Err(Error::DimensionMismatch { expected: u.dim(), found: bad + 1 });
    }
    if p.dim() == 0 {
        return Ok(None);
    }
    let basis = p.basis();
    let rows = basis.select_rows(positions);
    let target: Vec<F> = positions.iter().map(|&i| u.components()[i].clone()).collect();
    let coeffs = if is_zero_vector(&target) {
        let kernel = rows.nullspace_basis();
        if kernel.cols() == 0 {
            return Ok(None);
        }
        kernel.column(0)
    } else {
        match rows.solve_consistent(&target)? {
            Some(x) => x,
            None => return Ok(None),
        }
    };
    Ok(Some(basis.mul_vec(&coeffs)?))
}

fn mask_of(positions: &[usize]) -> u32 {
    positions.iter().fold(0, |m, &i| m | (1 << i))
}

/// Largest feasible index set, searched by decreasing size in lexicographic
/// order. Infeasible sets are shrunk to minimal infeasible cores; since
/// feasibility is closed under taking subsets, any superset of a core is
/// skipped without a rank computation.
fn max_feasible<F: Field>(u: &StateVector<F>, p: &Subspace<F>) -> Result<(usize, Option<Witness<F>>)> {
    if p.dim() == 0 {
        return Ok((0, None));
    }
    let n = u.dim();
    let mut cores: Vec<u32> = Vec::new();
    for size in (0..=n).rev() {
        for positions in (0..n).combinations(size) {
            let mask = mask_of(&positions);
            if cores.iter().any(|&core| core & !mask == 0) {
                continue;
            }
            match feasible_index_set(u, p, &positions)? {
                Some(vector) => return Ok((size, Some(Witness { positions, vector }))),
                None => cores.push(minimal_core(u, p, positions)?),
            }
        }
    }
    unreachable!("the empty index set is feasible for a nonzero subspace")
}

fn minimal_core<F: Field>(u: &StateVector<F>, p: &Subspace<F>, mut core: Vec<usize>) -> Result<u32> {
    let mut k = 0;
    while k < core.len() {
        let removed = core.remove(k);
        if feasible_index_set(u, p, &core)?.is_some() {
            core.insert(k, removed);
            k += 1;
        }
    }
    Ok(mask_of(&core))
}

/// `(|M|, |M⊥|)` with the lexicographically smallest maximal witnesses.
pub fn max_match_counts<F: Field>(u: &StateVector<F>, p: &Subspace<F>) -> Result<MatchResult<F>> {
    check_dims(u, p)?;
    if u.dim() > MAX_SEARCH_DIM {
        return Err(Error::DimensionCap { dim: u.dim(), cap: MAX_SEARCH_DIM });
    }
    let (m_in, witness_in) = max_feasible(u, p)?;
    let (m_out, witness_out) = max_feasible(u, &p.orthocomplement())?;
    Ok(MatchResult { m_in, m_out, witness_in, witness_out })
}

fn brute_force_side<F: Field>(u: &StateVector<F>, p: &Subspace<F>) -> Result<(usize, Option<Witness<F>>)> {
    let n = u.dim();
    let mut best: Option<Witness<F>> = None;
    for mask in 0u32..(1 << n) {
        let positions: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let Some(vector) = feasible_index_set(u, p, &positions)? else { continue };
        let better = match &best {
            None => true,
            Some(b) => {
                positions.len() > b.positions.len() || (positions.len() == b.positions.len() && positions < b.positions)
            }
        };
        if better {
            best = Some(Witness { positions, vector });
        }
    }
    Ok((best.as_ref().map_or(0, |w| w.positions.len()), best))
}

/// Exhaustive oracle for [`max_match_counts`]: every one of the `2^N` index
/// sets is tested, with no pruning.
pub fn brute_force_match_counts<F: Field>(u: &StateVector<F>, p: &Subspace<F>) -> Result<MatchResult<F>> {
    check_dims(u, p)?;
    if u.dim() > MAX_BRUTE_FORCE_DIM {
        return Err(Error::DimensionCap { dim: u.dim(), cap: MAX_BRUTE_FORCE_DIM });
    }
    let (m_in, witness_in) = brute_force_side(u, p)?;
    let (m_out, witness_out) = brute_force_side(u, &p.orthocomplement())?;
    Ok(MatchResult { m_in, m_out, witness_in, witness_out })
}

pub fn predicate_entropy<F: Field>(u: &StateVector<F>, p: &Subspace<F>) -> Result<Entropy> {
    let matches = max_match_counts(u, p)?;
    Ok(Entropy::new(u.dim(), matches.max_count()))
}

/// True iff `|M| = N` (the state lies in `p`), False iff `|M⊥| = N`.
///
/// Full agreement with a nonzero element is the same as membership, so the
/// value is decided by two rank tests instead of the subset search.
pub fn truth_value<F: Field>(u: &StateVector<F>, p: &Subspace<F>) -> Result<TruthValue> {
    check_dims(u, p)?;
    if p.contains(u.components())? {
        Ok(TruthValue::True)
    } else if p.orthocomplement().contains(u.components())? {
        Ok(TruthValue::False)
    } else {
        Ok(TruthValue::Indeterminate)
    }
}

/// Truth value read off already computed match counts.
pub fn truth_from_matches<F>(matches: &MatchResult<F>, dim: usize) -> TruthValue {
    if matches.m_in == dim {
        TruthValue::True
    } else if matches.m_out == dim {
        TruthValue::False
    } else {
        TruthValue::Indeterminate
    }
}

/// `||proj_P u||^2 / ||u||^2`, exact for exact fields.
pub fn born_degree_of_truth<F: Field>(u: &StateVector<F>, p: &Subspace<F>) -> Result<F> {
    check_dims(u, p)?;
    let proj = gram_projection(p.basis(), u.components())?;
    let num = inner(&proj, &proj);
    let den = inner(u.components(), u.components());
    Ok(num.div(&den).expect("state is nonzero"))
}

pub fn shannon_binary_entropy(p: f64, base: &LogBase) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    let term = |x: f64| if x == 0.0 { 0.0 } else { -x * x.ln() };
    Ok((term(p) + term(1.0 - p)) / base.ln())
}

/// Match counts, entropy, truth value and Born probability in one pass.
pub fn evaluate<F: Field>(u: &StateVector<F>, p: &Subspace<F>, base: &LogBase) -> Result<EntropyReport<F>> {
    let matches = max_match_counts(u, p)?;
    let truth = truth_from_matches(&matches, u.dim());
    Ok(EntropyReport {
        truth,
        entropy: Entropy::new(u.dim(), matches.max_count()),
        matches,
        base: base.clone(),
        born_probability: born_degree_of_truth(u, p)?,
    })
}

impl EntropyReport<Scalar> {
    /// Born probability as an exact rational.
    pub fn born_exact(&self) -> BigRational {
        self.born_probability.re().clone()
    }
}
