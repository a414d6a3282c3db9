//! Past-to-present state changes: per-proposition entropy deltas, the
//! preserving/arbitrary classification, matrix evolution, projective collapse
//! and trajectories.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{gram_projection, Matrix};
use crate::membership::{
    evaluate, predicate_entropy, truth_value, Entropy, EntropyDelta, LogBase, StateVector, TruthValue,
};
use crate::subspace::Subspace;

/// Named propositions over one ambient space, in a fixed order.
#[derive(Clone, Debug)]
pub struct PropositionSet<F> {
    items: Vec<(String, Subspace<F>)>,
}

impl<F: Field> PropositionSet<F> {
    pub fn new(items: Vec<(String, Subspace<F>)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (name, _) in &items {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        if let Some((_, first)) = items.first() {
            let n = first.ambient_dim();
            if let Some((_, bad)) = items.iter().find(|(_, s)| s.ambient_dim() != n) {
                return Err(Error::DimensionMismatch { expected: n, found: bad.ambient_dim() });
            }
        }
        Ok(PropositionSet { items })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Subspace<F>)> {
        self.items.iter().map(|(n, s)| (n.as_str(), s))
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Subspace<F>> {
        self.items.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum DeltaTag {
    Preserved,
    InformationGain,
    InformationLoss,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum TransitionClass {
    EntropyPreserving,
    ArbitraryChange,
}

#[derive(Clone, Debug)]
pub struct TransitionRow {
    pub name: String,
    pub delta: EntropyDelta,
    pub tag: DeltaTag,
}

impl TransitionRow {
    pub fn h_past(&self) -> Entropy {
        self.delta.past
    }

    pub fn h_present(&self) -> Entropy {
        self.delta.present
    }
}

#[derive(Clone, Debug)]
pub struct TransitionReport {
    pub rows: Vec<TransitionRow>,
    pub class: TransitionClass,
    pub base: LogBase,
}

pub fn delta_entropy<F: Field>(
    past: &StateVector<F>,
    present: &StateVector<F>,
    p: &Subspace<F>,
) -> Result<EntropyDelta> {
    Ok(EntropyDelta { past: predicate_entropy(past, p)?, present: predicate_entropy(present, p)? })
}

pub fn classify_transition<F: Field>(
    past: &StateVector<F>,
    present: &StateVector<F>,
    props: &PropositionSet<F>,
    base: &LogBase,
) -> Result<TransitionReport> {
    if props.is_empty() {
        return Err(Error::EmptyPropositionSet);
    }
    if past.dim() != present.dim() {
        return Err(Error::DimensionMismatch { expected: past.dim(), found: present.dim() });
    }
    let rows = props
        .iter()
        .map(|(name, p)| {
            let delta = delta_entropy(past, present, p)?;
            let tag = match delta.signum() {
                0 => DeltaTag::Preserved,
                s if s < 0 => DeltaTag::InformationGain,
                _ => DeltaTag::InformationLoss,
            };
            Ok(TransitionRow { name: name.to_string(), delta, tag })
        })
        .collect::<Result<Vec<_>>>()?;
    let class = if rows.iter().all(|r| r.tag == DeltaTag::Preserved) {
        TransitionClass::EntropyPreserving
    } else {
        TransitionClass::ArbitraryChange
    };
    Ok(TransitionReport { rows, class, base: base.clone() })
}

fn check_evolution<F: Field>(a: &Matrix<F>, dim: usize) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.rows() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: a.rows() });
    }
    if a.rank() < dim {
        return Err(Error::SingularMatrix);
    }
    Ok(())
}

/// `A u` for an invertible `A`.
pub fn apply_matrix<F: Field>(u: &StateVector<F>, a: &Matrix<F>) -> Result<StateVector<F>> {
    check_evolution(a, u.dim())?;
    StateVector::new(a.mul_vec(u.components())?)
}

/// `A* A = c I` for some positive real `c`: a scalar multiple of a unitary.
pub fn is_scaled_unitary<F: Field>(a: &Matrix<F>) -> bool {
    if !a.is_square() || a.rows() == 0 {
        return false;
    }
    let Ok(gram) = a.adjoint().mul(a) else { return false };
    let c = gram.get(0, 0).clone();
    if c.is_zero() || c.to_c64().re <= 0.0 {
        return false;
    }
    let scaled: Matrix<F> = Matrix::identity(a.rows()).map(|x: &F| x.mul(&c));
    gram.approx_eq(&scaled)
}

/// Unnormalized projection of `u` onto `p`.
pub fn projective_collapse<F: Field>(u: &StateVector<F>, p: &Subspace<F>) -> Result<StateVector<F>> {
    p.check_dim(u.dim())?;
    let proj = gram_projection(p.basis(), u.components())?;
    StateVector::new(proj).map_err(|_| Error::OrthogonalState)
}

#[derive(Clone, Debug)]
pub struct TrajectoryEntry<F> {
    pub name: String,
    pub entropy: Entropy,
    pub truth: TruthValue,
    pub born: F,
}

#[derive(Clone, Debug)]
pub struct TrajectoryRow<F> {
    pub step: usize,
    pub state: StateVector<F>,
    pub entries: Vec<TrajectoryEntry<F>>,
}

fn trajectory_row<F: Field>(
    step: usize,
    state: StateVector<F>,
    props: &PropositionSet<F>,
    base: &LogBase,
) -> Result<TrajectoryRow<F>> {
    let entries = props
        .iter()
        .map(|(name, p)| {
            let r = evaluate(&state, p, base)?;
            Ok(TrajectoryEntry { name: name.to_string(), entropy: r.entropy, truth: r.truth, born: r.born_probability })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TrajectoryRow { step, state, entries })
}

/// Rows `0..=steps` for `u_k = A^k u0`.
pub fn entropy_trajectory<F: Field>(
    u0: &StateVector<F>,
    a: &Matrix<F>,
    steps: usize,
    props: &PropositionSet<F>,
    base: &LogBase,
) -> Result<Vec<TrajectoryRow<F>>> {
    check_evolution(a, u0.dim())?;
    let mut rows = Vec::with_capacity(steps + 1);
    let mut state = u0.clone();
    for step in 0..=steps {
        let next = if step < steps { Some(apply_matrix(&state, a)?) } else { None };
        rows.push(trajectory_row(step, state, props, base)?);
        match next {
            Some(n) => state = n,
            None => break,
        }
    }
    Ok(rows)
}

/// A line through the origin on which `u` is neither definitely inside nor
/// definitely outside.
///
/// The candidate `u_i e_i + (u_i + u_j) e_j`, with `i` the first nonzero
/// position and `j` another index, is never parallel to `u`, and its inner
/// product with `u` is `|u_i|^2 + conj(u_j) u_i + |u_j|^2 > 0`. The shifted
/// candidates `u + t e_k` are only reached under tolerant arithmetic.
pub fn find_indeterminate_subspace<F: Field>(u: &StateVector<F>) -> Result<Subspace<F>> {
    let n = u.dim();
    if n < 2 {
        return Err(Error::NoIndeterminateSubspace(n));
    }
    let c = u.components();
    let i = c.iter().position(|x| !x.is_zero()).expect("state is nonzero");
    let j = if i == 0 { 1 } else { 0 };

    let mut primary = vec![F::zero(); n];
    primary[i] = c[i].clone();
    primary[j] = c[i].add(&c[j]);

    let shifts = [F::one(), F::from_i64(2), F::from_i64(-1), F::from_i64(3)];
    let fallbacks = (0..n).flat_map(|k| {
        shifts.iter().map(move |t| {
            let mut v = c.to_vec();
            v[k] = v[k].add(t);
            v
        })
    });

    for candidate in std::iter::once(primary).chain(fallbacks) {
        if candidate.iter().all(Field::is_zero) {
            continue;
        }
        let line = Subspace::from_vectors(n, &[candidate])?;
        if truth_value(u, &line)? == TruthValue::Indeterminate {
            return Ok(line);
        }
    }
    Err(Error::NoIndeterminateSubspace(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{parse_pattern, subspace_from_pattern};
    use crate::scalar::Scalar;

    fn state(v: &[i64]) -> StateVector<Scalar> {
        StateVector::from_integers(v).unwrap()
    }

    fn pat(text: &str, n: usize) -> Subspace<Scalar> {
        subspace_from_pattern(&parse_pattern(text).unwrap(), n).unwrap()
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from_integer(v)).collect()).collect()).unwrap()
    }

    fn qubit_props() -> PropositionSet<Scalar> {
        PropositionSet::new(vec![
            ("X+".into(), pat("[a,a]", 2)),
            ("Z+".into(), pat("[a,0]", 2)),
            ("Z-".into(), pat("[0,a]", 2)),
        ])
        .unwrap()
    }

    fn bits(report: &TransitionReport) -> Vec<f64> {
        report.rows.iter().map(|r| r.delta.value(&report.base)).collect()
    }

    #[test]
    fn deltas_for_hadamard_transition() {
        let z_up = state(&[1, 0]);
        let x_up = state(&[1, 1]);
        let d = delta_entropy(&z_up, &x_up, &pat("[a,a]", 2)).unwrap();
        assert_eq!(d.value(&LogBase::bits()), -1.0);
        let d = delta_entropy(&z_up, &x_up, &pat("[a,0]", 2)).unwrap();
        assert_eq!(d.value(&LogBase::bits()), 1.0);
        let d = delta_entropy(&x_up, &x_up, &pat("[a,0]", 2)).unwrap();
        assert_eq!(d.signum(), 0);
    }

    #[test]
    fn classification() {
        let bitsb = LogBase::bits();
        let r = classify_transition(&state(&[1, 0]), &state(&[0, 1]), &qubit_props(), &bitsb).unwrap();
        assert_eq!(r.class, TransitionClass::EntropyPreserving);
        assert_eq!(bits(&r), vec![0.0, 0.0, 0.0]);

        let r = classify_transition(&state(&[1, 0]), &state(&[1, 1]), &qubit_props(), &bitsb).unwrap();
        assert_eq!(r.class, TransitionClass::ArbitraryChange);
        assert_eq!(bits(&r), vec![-1.0, 1.0, 1.0]);
        let tags: Vec<DeltaTag> = r.rows.iter().map(|row| row.tag).collect();
        assert_eq!(tags, [DeltaTag::InformationGain, DeltaTag::InformationLoss, DeltaTag::InformationLoss]);

        let u = state(&[3, -2]);
        let r = classify_transition(&u, &u, &qubit_props(), &bitsb).unwrap();
        assert_eq!(r.class, TransitionClass::EntropyPreserving);
    }

    #[test]
    fn classification_errors() {
        let empty = PropositionSet::<Scalar>::new(vec![]).unwrap();
        let u = state(&[1, 0]);
        assert_eq!(classify_transition(&u, &u, &empty, &LogBase::bits()).unwrap_err(), Error::EmptyPropositionSet);
        let dup = PropositionSet::new(vec![("A".into(), pat("[a,0]", 2)), ("A".into(), pat("[0,a]", 2))]);
        assert_eq!(dup.unwrap_err(), Error::DuplicateName("A".into()));
        let mixed = PropositionSet::new(vec![("A".into(), pat("[a,0]", 2)), ("B".into(), pat("[0,a,0]", 3))]);
        assert!(matches!(mixed.unwrap_err(), Error::DimensionMismatch { .. }));
    }

    #[test]
    fn evolution() {
        let z_up = state(&[1, 0]);
        let id = Matrix::<Scalar>::identity(2);
        assert!(apply_matrix(&z_up, &id).unwrap().same_ray(&z_up));
        let hadamard = mat(&[&[1, 1], &[1, -1]]);
        assert!(apply_matrix(&z_up, &hadamard).unwrap().same_ray(&state(&[1, 1])));
        let flip = mat(&[&[0, 1], &[1, 0]]);
        assert!(apply_matrix(&z_up, &flip).unwrap().same_ray(&state(&[0, 1])));

        assert_eq!(apply_matrix(&z_up, &mat(&[&[1, 1], &[1, 1]])).unwrap_err(), Error::SingularMatrix);
        assert!(matches!(apply_matrix(&z_up, &mat(&[&[1, 0]])).unwrap_err(), Error::NotSquare { .. }));
    }

    #[test]
    fn scaled_unitaries() {
        assert!(is_scaled_unitary(&mat(&[&[1, 1], &[1, -1]])));
        assert!(is_scaled_unitary(&mat(&[&[0, 1], &[1, 0]])));
        assert!(!is_scaled_unitary(&mat(&[&[1, 1], &[0, 1]])));
        assert!(!is_scaled_unitary(&mat(&[&[2, 0], &[0, 1]])));
    }

    #[test]
    fn collapse() {
        let z_up = state(&[1, 0]);
        let c = projective_collapse(&z_up, &pat("[a,a]", 2)).unwrap();
        assert_eq!(c.components(), &[Scalar::ratio(1, 2), Scalar::ratio(1, 2)]);
        assert!(c.same_ray(&state(&[1, 1])));

        let inside = state(&[4, 0]);
        let c = projective_collapse(&inside, &pat("[a,0]", 2)).unwrap();
        assert_eq!(c.components(), inside.components());

        assert_eq!(projective_collapse(&z_up, &pat("[0,a]", 2)).unwrap_err(), Error::OrthogonalState);
        let c = projective_collapse(&state(&[3, 1]), &pat("[a,0]", 2)).unwrap();
        assert_eq!(truth_value(&c, &pat("[a,0]", 2)).unwrap(), TruthValue::True);
    }

    #[test]
    fn trajectories() {
        let z_up = state(&[1, 0]);
        let rows = entropy_trajectory(&z_up, &Matrix::identity(2), 3, &qubit_props(), &LogBase::bits()).unwrap();
        assert_eq!(rows.len(), 4);
        for r in &rows {
            let h: Vec<f64> = r.entries.iter().map(|e| e.entropy.bits()).collect();
            assert_eq!(h, vec![1.0, 0.0, 0.0]);
        }

        let flip = mat(&[&[0, 1], &[1, 0]]);
        let rows = entropy_trajectory(&z_up, &flip, 4, &qubit_props(), &LogBase::bits()).unwrap();
        for r in &rows {
            let h: Vec<f64> = r.entries.iter().map(|e| e.entropy.bits()).collect();
            assert_eq!(h, vec![1.0, 0.0, 0.0]);
            let expect_up = r.step % 2 == 0;
            assert_eq!(r.entries[1].truth == TruthValue::True, expect_up);
        }

        let hadamard = mat(&[&[1, 1], &[1, -1]]);
        let rows = entropy_trajectory(&z_up, &hadamard, 1, &qubit_props(), &LogBase::bits()).unwrap();
        let h: Vec<f64> = rows[1].entries.iter().map(|e| e.entropy.bits()).collect();
        assert_eq!(h, vec![0.0, 1.0, 1.0]);
    }

    #[test]
    fn indeterminate_subspaces() {
        let z_up = state(&[1, 0]);
        let p = find_indeterminate_subspace(&z_up).unwrap();
        assert_eq!(p, pat("[a,a]", 2));
        assert_eq!(predicate_entropy(&z_up, &p).unwrap().bits(), 1.0);

        let x_up = state(&[1, 1]);
        let p = find_indeterminate_subspace(&x_up).unwrap();
        assert_eq!(truth_value(&x_up, &p).unwrap(), TruthValue::Indeterminate);
        assert_eq!(predicate_entropy(&x_up, &p).unwrap().bits(), 1.0);

        assert_eq!(find_indeterminate_subspace(&state(&[5])).unwrap_err(), Error::NoIndeterminateSubspace(1));
    }

    #[test]
    fn indeterminate_subspace_complex_fallback() {
        for u in [
            vec![Scalar::one(), Scalar::complex((-1, 2), (1, 1))],
            vec![Scalar::complex((1, 1), (1, 1)), Scalar::complex((0, 1), (1, 1))],
        ] {
            let u = StateVector::new(u).unwrap();
            let p = find_indeterminate_subspace(&u).unwrap();
            assert_eq!(truth_value(&u, &p).unwrap(), TruthValue::Indeterminate);
        }
    }
}
