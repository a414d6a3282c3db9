//! Dense matrices and the small elimination kernel: rank, consistent solve,
//! nullspace and Gram projection.
//!
//! Matrices may have zero rows or zero columns; a subspace of dimension 0 has
//! an `N x 0` basis and the constraint block of an empty index set is `0 x k`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{inner, Field};

#[derive(Clone)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::MalformedMatrix(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::MalformedMatrix("ragged rows".into()));
        }
        let n = rows.len();
        Matrix::new(n, cols, rows.into_iter().flatten().collect())
    }

    /// Builds an `n_rows x columns.len()` matrix; every column must have `n_rows` entries.
    pub fn from_columns(n_rows: usize, columns: &[Vec<F>]) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != n_rows) {
            return Err(Error::DimensionMismatch { expected: n_rows, found: bad.len() });
        }
        let mut m = Matrix::zeros(n_rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).conj());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let v = (0..self.cols).fold(F::zero(), |acc, k| acc.add(&self.get(i, k).mul(rhs.get(k, j))));
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(F::zero(), |acc, (a, x)| acc.add(&a.mul(x))))
            .collect())
    }

    /// The sub-matrix made of the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let data = rows.iter().flat_map(|&i| self.row(i).iter().cloned()).collect();
        Matrix { rows: rows.len(), cols: self.cols, data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Matrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    /// `[self | column]`.
    pub fn augment(&self, column: &[F]) -> Result<Self> {
        if column.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: column.len() });
        }
        let mut m = Matrix::zeros(self.rows, self.cols + 1);
        for (i, x) in column.iter().enumerate() {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            m.set(i, self.cols, x.clone());
        }
        Ok(m)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Row index in `from..` holding the pivot for column `col`, if any.
    /// Exact fields take the first nonzero entry; tolerant ones the largest.
    fn find_pivot(&self, from: usize, col: usize) -> Option<usize> {
        let mut candidates = (from..self.rows).filter(|&i| !self.get(i, col).is_zero());
        if F::EXACT {
            candidates.next()
        } else {
            candidates.max_by(|&a, &b| self.get(a, col).magnitude().total_cmp(&self.get(b, col).magnitude()))
        }
    }

    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut prev = F::one();
        let mut r = 0;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = m.find_pivot(r, col) else { continue };
            m.swap_rows(r, p);
            let pivot = m.get(r, col).clone();
            for i in r + 1..m.rows {
                let lead = m.get(i, col).clone();
                for j in col + 1..m.cols {
                    let v = pivot.mul(m.get(i, j)).sub(&lead.mul(m.get(r, j)));
                    m.set(i, j, v.div(&prev).expect("previous pivot is nonzero"));
                }
                m.set(i, col, F::zero());
            }
            prev = pivot;
            r += 1;
        }
        r
    }

    /// Reduced row echelon form by Gauss-Jordan elimination, with the pivot
    /// column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = m.find_pivot(r, col) else {
                if !F::EXACT {
                    for i in r..m.rows {
                        m.set(i, col, F::zero());
                    }
                }
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, col).inv().expect("pivot is nonzero");
            for j in col..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            m.set(r, col, F::one());
            for i in 0..m.rows {
                if i == r || m.get(i, col).is_zero() {
                    if i != r {
                        m.set(i, col, F::zero());
                    }
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in col..m.cols {
                    let v = m.get(i, j).sub(&factor.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
                m.set(i, col, F::zero());
            }
            pivots.push(col);
            r += 1;
        }
        (m, pivots)
    }

    /// Some `x` with `self * x = b` when the system is consistent.
    pub fn solve_consistent(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        let (r, pivots) = self.augment(b)?.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = r.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Columns spanning the kernel; one per free column of the echelon form.
    pub fn nullspace_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, F::one());
            for (row, &p) in pivots.iter().enumerate() {
                basis.set(p, k, r.get(row, f).neg());
            }
        }
        basis
    }
}

/// Orthogonal projection of `u` onto the column span of `basis`, computed as
/// `B (B* B)^-1 B* u`.
pub fn gram_projection<F: Field>(basis: &Matrix<F>, u: &[F]) -> Result<Vec<F>> {
    if u.len() != basis.rows() {
        return Err(Error::DimensionMismatch { expected: basis.rows(), found: u.len() });
    }
    let k = basis.cols();
    if k == 0 {
        return Ok(vec![F::zero(); u.len()]);
    }
    let adj = basis.adjoint();
    let gram = adj.mul(basis)?;
    if gram.rank() < k {
        return Err(Error::SingularGram);
    }
    let rhs = adj.mul_vec(u)?;
    let coeffs = gram.solve_consistent(&rhs)?.ok_or(Error::SingularGram)?;
    basis.mul_vec(&coeffs)
}

/// `true` when `u` is orthogonal to every column of `basis`.
pub fn orthogonal_to_columns<F: Field>(basis: &Matrix<F>, u: &[F]) -> bool {
    basis.columns().iter().all(|c| inner(c, u).is_zero())
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> =
                self.data[i * self.cols..(i + 1) * self.cols].iter().map(|x| format!("{x:?}")).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use proptest::prelude::*;

    fn q(v: i64) -> Scalar {
        Scalar::from_integer(v)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()).unwrap()
    }

    fn vecq(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| q(x)).collect()
    }

    /// Columns (1,-1,0,0), (0,-1,1,0), (0,-1,0,1): the sum-zero hyperplane of C^4.
    fn sum_zero_basis() -> Matrix<Scalar> {
        mat(&[&[1, 0, 0], &[-1, -1, -1], &[0, 1, 0], &[0, 0, 1]])
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::<Scalar>::identity(3).rank(), 3);
        assert_eq!(mat(&[&[1, 1], &[1, 1]]).rank(), 1);
        assert_eq!(sum_zero_basis().rank(), 3);
        assert_eq!(Matrix::<Scalar>::zeros(2, 0).rank(), 0);
        assert_eq!(Matrix::<Scalar>::zeros(0, 3).rank(), 0);
    }

    #[test]
    fn rank_needs_row_swaps() {
        assert_eq!(mat(&[&[0, 1, 2], &[0, 2, 4], &[3, 0, 1]]).rank(), 2);
        assert_eq!(mat(&[&[0, 0], &[0, 5]]).rank(), 1);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::<Scalar>::identity(2);
        assert_eq!(id.solve_consistent(&vecq(&[1, 0])).unwrap(), Some(vecq(&[1, 0])));
        let col = mat(&[&[1], &[1]]);
        assert_eq!(col.solve_consistent(&vecq(&[1, 0])).unwrap(), None);
        let rows = sum_zero_basis().select_rows(&[0, 2, 3]);
        let x = rows.solve_consistent(&vecq(&[1, 0, 0])).unwrap().unwrap();
        assert_eq!(rows.mul_vec(&x).unwrap(), vecq(&[1, 0, 0]));
    }

    #[test]
    fn solve_with_no_rows() {
        let empty = Matrix::<Scalar>::zeros(0, 2);
        assert_eq!(empty.solve_consistent(&[]).unwrap(), Some(vecq(&[0, 0])));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(Matrix::<Scalar>::identity(3).nullspace_basis().cols(), 0);

        let row = mat(&[&[1, 1, 1, 1]]);
        let ns = row.nullspace_basis();
        assert_eq!(ns.cols(), 3);
        assert_eq!(ns.rank(), 3);
        for v in ns.columns() {
            assert_eq!(row.mul_vec(&v).unwrap(), vecq(&[0]));
        }

        let zero = Matrix::<Scalar>::zeros(2, 2).nullspace_basis();
        assert_eq!(zero.cols(), 2);
        assert_eq!(zero.rank(), 2);
    }

    #[test]
    fn gram_projection_examples() {
        let e1 = mat(&[&[1], &[0]]);
        assert_eq!(gram_projection(&e1, &vecq(&[1, 0])).unwrap(), vecq(&[1, 0]));

        let diag = mat(&[&[1], &[1]]);
        let half = Scalar::ratio(1, 2);
        assert_eq!(gram_projection(&diag, &vecq(&[1, 0])).unwrap(), vec![half.clone(), half]);

        let ones = mat(&[&[1], &[1], &[1], &[1]]);
        let quarter = Scalar::ratio(1, 4);
        assert_eq!(gram_projection(&ones, &vecq(&[1, 0, 0, 0])).unwrap(), vec![quarter; 4]);
    }

    #[test]
    fn gram_projection_rejects_dependent_columns() {
        let dependent = mat(&[&[1, 2], &[1, 2]]);
        assert_eq!(gram_projection(&dependent, &vecq(&[1, 0])), Err(Error::SingularGram));
    }

    #[test]
    fn gram_projection_complex() {
        // span{(1, i)}: projecting e1 gives (1/2, i/2).
        let b = Matrix::from_rows(vec![vec![q(1)], vec![Scalar::complex((0, 1), (1, 1))]]).unwrap();
        let p = gram_projection(&b, &vecq(&[1, 0])).unwrap();
        assert_eq!(p, vec![Scalar::ratio(1, 2), Scalar::complex((0, 1), (1, 2))]);
        let residual: Vec<Scalar> = vecq(&[1, 0]).iter().zip(&p).map(|(a, b)| a.sub(b)).collect();
        assert!(orthogonal_to_columns(&b, &residual));
    }

    fn small_matrix() -> impl Strategy<Value = Matrix<Scalar>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..=3, -2i64..=2), r * c).prop_map(move |entries| {
                // Mostly real entries, some complex ones.
                let data = entries
                    .into_iter()
                    .map(|(re, im)| Scalar::complex((re, 1), (if im.abs() == 2 { im / 2 } else { 0 }, 1)))
                    .collect();
                Matrix::new(r, c, data).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn bareiss_rank_agrees_with_gauss_jordan_on_transpose(m in small_matrix()) {
            let bareiss = m.rank();
            let (_, pivots) = m.transpose().rref();
            prop_assert_eq!(bareiss, pivots.len());
            prop_assert!(bareiss <= m.rows().min(m.cols()));
        }

        #[test]
        fn nullspace_is_kernel_of_full_size(m in small_matrix()) {
            let ns = m.nullspace_basis();
            prop_assert_eq!(ns.cols(), m.cols() - m.rank());
            prop_assert_eq!(ns.rank(), ns.cols());
            for v in ns.columns() {
                prop_assert!(m.mul_vec(&v).unwrap().iter().all(Field::is_zero));
            }
        }

        #[test]
        fn projection_is_idempotent_and_orthogonal(m in small_matrix(), u in proptest::collection::vec(-4i64..=4, 4)) {
            let (_, pivots) = m.rref();
            let basis = m.select_columns(&pivots);
            let u: Vec<Scalar> = u[..m.rows()].iter().map(|&v| q(v)).collect();
            let p = gram_projection(&basis, &u).unwrap();
            prop_assert_eq!(gram_projection(&basis, &p).unwrap(), p.clone());
            let residual: Vec<Scalar> = u.iter().zip(&p).map(|(a, b)| a.sub(b)).collect();
            prop_assert!(orthogonal_to_columns(&basis, &residual));
        }
    }
}
