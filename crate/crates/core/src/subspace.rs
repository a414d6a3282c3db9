//! Closed linear subspaces of a finite-dimensional space, stored as an
//! independent basis plus a canonical echelon fingerprint for equality.

use crate::error::{Error, Result};
use crate::field::{is_zero_vector, Field};
use crate::matrix::Matrix;

#[derive(Clone, Debug)]
pub struct Subspace<F> {
    /// `N x dim`, independent columns.
    basis: Matrix<F>,
    /// `dim x N` reduced row echelon form of the basis vectors.
    canonical: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    /// The span of the columns of `spanning` (which need not be independent).
    pub fn from_spanning(ambient_dim: usize, spanning: &Matrix<F>) -> Result<Self> {
        if spanning.rows() != ambient_dim {
            return Err(Error::DimensionMismatch { expected: ambient_dim, found: spanning.rows() });
        }
        let (_, pivots) = spanning.rref();
        let basis = spanning.select_columns(&pivots);
        let (echelon, _) = basis.transpose().rref();
        Ok(Subspace { basis, canonical: echelon })
    }

    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<F>]) -> Result<Self> {
        Subspace::from_spanning(ambient_dim, &Matrix::from_columns(ambient_dim, vectors)?)
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { basis: Matrix::zeros(ambient_dim, 0), canonical: Matrix::zeros(0, ambient_dim) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { basis: Matrix::identity(ambient_dim), canonical: Matrix::identity(ambient_dim) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn canonical_form(&self) -> &Matrix<F> {
        &self.canonical
    }

    /// Re-expresses the subspace over another field, recomputing the basis.
    pub fn convert<G: Field>(&self, f: impl Fn(&F) -> G) -> Subspace<G> {
        Subspace::from_spanning(self.ambient_dim(), &self.basis.map(f)).expect("row count is preserved by map")
    }

    /// Membership by rank test; the zero vector belongs to every subspace.
    pub fn contains(&self, u: &[F]) -> Result<bool> {
        self.check_dim(u.len())?;
        if is_zero_vector(u) {
            return Ok(true);
        }
        if self.dim() == 0 {
            return Ok(false);
        }
        Ok(self.basis.augment(u)?.rank() == self.dim())
    }

    /// All vectors orthogonal to the subspace: the kernel of the adjoint basis.
    pub fn orthocomplement(&self) -> Self {
        let n = self.ambient_dim();
        Subspace::from_spanning(n, &self.basis.adjoint().nullspace_basis())
            .expect("nullspace of a k x N matrix has N rows")
    }

    pub(crate) fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), found });
        }
        Ok(())
    }
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim() == other.ambient_dim() && self.canonical.approx_eq(&other.canonical)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::inner;
    use crate::scalar::Scalar;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_integer(x)).collect()
    }

    fn span(n: usize, vs: &[&[i64]]) -> Subspace<Scalar> {
        Subspace::from_vectors(n, &vs.iter().map(|x| v(x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn orthocomplement_of_coordinate_ray() {
        let p2 = span(4, &[&[0, 1, 0, 0]]);
        let perp = p2.orthocomplement();
        assert_eq!(perp.dim(), 3);
        for e in [&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]] {
            assert!(perp.contains(&v(e)).unwrap());
        }
        assert_eq!(perp, span(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]));
    }

    #[test]
    fn orthocomplement_of_diagonal_is_sum_zero_hyperplane() {
        let p3 = span(4, &[&[1, 1, 1, 1]]);
        let perp = p3.orthocomplement();
        assert_eq!(perp.dim(), 3);
        assert_eq!(perp, span(4, &[&[1, -1, 0, 0], &[0, -1, 1, 0], &[0, -1, 0, 1]]));
        for b in perp.basis().columns() {
            assert!(inner(&b, &v(&[1, 1, 1, 1])).is_zero());
        }
    }

    #[test]
    fn full_and_zero_are_complements() {
        assert_eq!(Subspace::<Scalar>::full(3).orthocomplement(), Subspace::zero(3));
        assert_eq!(Subspace::<Scalar>::zero(3).orthocomplement(), Subspace::full(3));
    }

    #[test]
    fn containment() {
        let p1 = span(4, &[&[1, 0, 0, 0]]);
        let p2 = span(4, &[&[0, 1, 0, 0]]);
        let psi = v(&[1, 0, 0, 0]);
        assert!(p1.contains(&psi).unwrap());
        assert!(!p2.contains(&psi).unwrap());
        assert!(!Subspace::zero(4).contains(&psi).unwrap());
        assert!(p1.contains(&v(&[-7, 0, 0, 0])).unwrap());
        assert_eq!(p1.contains(&v(&[1, 0])), Err(Error::DimensionMismatch { expected: 4, found: 2 }));
    }

    #[test]
    fn dependent_spanning_set_is_reduced() {
        let p = span(3, &[&[1, 1, 0], &[2, 2, 0], &[0, 0, 1], &[1, 1, 1]]);
        assert_eq!(p.dim(), 2);
        assert_eq!(p.basis().rank(), 2);
    }

    #[test]
    fn complex_orthocomplement() {
        let i = Scalar::complex((0, 1), (1, 1));
        let p = Subspace::from_vectors(2, &[vec![Scalar::one(), i.clone()]]).unwrap();
        let perp = p.orthocomplement();
        assert_eq!(perp.dim(), 1);
        // (1, i) is orthogonal to (i, 1) under the Hermitian product.
        assert!(perp.contains(&[i, Scalar::one()]).unwrap());
    }

    fn random_subspace() -> impl Strategy<Value = Subspace<Scalar>> {
        (1usize..=6).prop_flat_map(|n| {
            (Just(n), 0usize..=n).prop_flat_map(|(n, k)| {
                proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), k).prop_map(move |cols| {
                    let cols: Vec<Vec<Scalar>> = cols.iter().map(|c| v(c)).collect();
                    Subspace::from_vectors(n, &cols).unwrap()
                })
            })
        })
    }

    proptest! {
        #[test]
        fn orthocomplement_is_an_involution(p in random_subspace()) {
            let perp = p.orthocomplement();
            prop_assert_eq!(p.dim() + perp.dim(), p.ambient_dim());
            prop_assert_eq!(perp.orthocomplement(), p);
        }

        #[test]
        fn never_in_both(p in random_subspace(), u in proptest::collection::vec(-2i64..=2, 6)) {
            let u = v(&u[..p.ambient_dim()]);
            prop_assume!(!is_zero_vector(&u));
            let perp = p.orthocomplement();
            prop_assert!(!(p.contains(&u).unwrap() && perp.contains(&u).unwrap()));
        }
    }
}
