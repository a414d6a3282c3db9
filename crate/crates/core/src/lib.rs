//! Valuational entropy of membership propositions in finite-dimensional
//! Hilbert spaces.
//!
//! A state vector `u` and a closed subspace `P` define the proposition
//! "`u` lies in `P`". The proposition is true when `u ∈ P`, false when
//! `u ∈ P⊥`, and indeterminate otherwise. Its entropy
//! `H = log N - (m/N) log m`, with `m` the best positional agreement between
//! the state and a nonzero element of `P` or `P⊥`, is zero exactly when the
//! truth value is determinate.
//!
//! Arithmetic is exact over complex rationals ([`Scalar`]) by default; a
//! tolerant floating mode ([`FloatScalar`]) exists for irrational inputs.
//!
//! ```
//! use qvalent::{pattern_subspace, predicate_entropy, Scalar, StateVector};
//!
//! let psi = StateVector::from_integers(&[1, 0, 0, 0]).unwrap();
//! let diagonal = pattern_subspace("[a,a,a,a]", 4, Scalar::clone).unwrap();
//! let h = predicate_entropy(&psi, &diagonal).unwrap();
//! assert_eq!((h.dim, h.matched), (4, 3));
//! assert!((h.bits() - (2.0 - 0.75 * 3f64.log2())).abs() < 1e-12);
//! ```

pub mod demo;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod float;
pub mod matrix;
pub mod membership;
pub mod pattern;
pub mod scalar;
pub mod subspace;

pub use dynamics::{
    apply_matrix, classify_transition, delta_entropy, entropy_trajectory, find_indeterminate_subspace,
    is_scaled_unitary, projective_collapse, DeltaTag, PropositionSet, TrajectoryEntry, TrajectoryRow, TransitionClass,
    TransitionReport, TransitionRow,
};
pub use error::{Error, Result};
pub use field::{inner, Field};
pub use float::{FloatScalar, DEFAULT_EPS};
pub use matrix::{gram_projection, Matrix};
pub use membership::{
    born_degree_of_truth, brute_force_match_counts, evaluate, feasible_index_set, max_match_counts, predicate_entropy,
    shannon_binary_entropy, truth_from_matches, truth_value, Entropy, EntropyDelta, EntropyReport, LogBase,
    MatchResult, StateVector, TruthValue, Witness, MAX_BRUTE_FORCE_DIM, MAX_SEARCH_DIM,
};
pub use pattern::{parse_pattern, pattern_subspace, subspace_from_pattern, PatternVector};
pub use scalar::Scalar;
pub use subspace::Subspace;
