//! Dense exact matrices over the integers, the rationals and the Gaussian
//! rationals.
//!
//! Everything here is arbitrary precision. Matrices are stored row-major and
//! are immutable once built; every operation returns a fresh value.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::gauss::GaussRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {op} of {left:?} and {right:?}")]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("entry count {got} does not match {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, got: usize },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("linear system is underdetermined: rank {rank} < {unknowns} unknowns")]
    NonUnique { rank: usize, unknowns: usize },
}

/// Ring elements a [`Matrix`] can hold.
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

/// Scalars that also support exact division.
pub trait Field: Scalar + Div<Output = Self> {}

impl Field for BigRational {}
impl Field for GaussRational {}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;
pub type GaussMatrix = Matrix<GaussRational>;

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                rows,
                cols,
                got: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend_from_slice(row);
        }
        Self {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    /// The all-ones matrix `J_n`.
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, n, |_, _| T::one())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(self.shape_error("product", other));
        }
        let mut out = vec![T::zero(); self.rows * other.cols];
        for r in 0..self.rows {
            let out_row = &mut out[r * other.cols..(r + 1) * other.cols];
            for (k, lhs) in self.row(r).iter().enumerate() {
                if lhs.is_zero() {
                    continue;
                }
                for (slot, rhs) in out_row.iter_mut().zip(other.row(k)) {
                    if !rhs.is_zero() {
                        *slot = slot.clone() + lhs.clone() * rhs.clone();
                    }
                }
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            entries: out,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, "sum", |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, "difference", |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|e| k.clone() * e.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|e| -e.clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// Block matrix whose `(i, j)` block is `self[i][j] * other`.
    ///
    /// The left factor indexes blocks: row `other.rows * i + i'` of the result
    /// is row `i'` of block row `i`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        Self::from_fn(rows, cols, |r, c| {
            let outer = self.get(r / other.rows, c / other.cols);
            if outer.is_zero() {
                T::zero()
            } else {
                outer.clone() * other.get(r % other.rows, c % other.cols).clone()
            }
        })
    }

    /// `Σ coeffs[i] * mats[i]`; all matrices must share one shape.
    pub fn linear_combination(coeffs: &[T], mats: &[&Self]) -> Result<Self, LinalgError> {
        let first = mats.first().expect("empty linear combination");
        let mut acc = Self::zeros(first.rows, first.cols);
        for (k, m) in coeffs.iter().zip(mats) {
            if k.is_zero() {
                continue;
            }
            acc = acc.add(&m.scale(k))?;
        }
        Ok(acc)
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(&T, &T) -> T,
    ) -> Result<Self, LinalgError> {
        if self.shape() != other.shape() {
            return Err(self.shape_error(op, other));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    fn shape_error(&self, op: &'static str, other: &Self) -> LinalgError {
        LinalgError::Shape {
            op,
            left: self.shape(),
            right: other.shape(),
        }
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    /// Panics on a shape mismatch; use [`Matrix::mat_mul`] to get an error.
    fn mul(self, rhs: Self) -> Matrix<T> {
        self.mat_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: Self) -> Matrix<T> {
        Matrix::add(self, rhs).expect("matrix sum shape mismatch")
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: Self) -> Matrix<T> {
        Matrix::sub(self, rhs).expect("matrix difference shape mismatch")
    }
}

impl IntMatrix {
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            entries: entries.iter().map(|&e| BigInt::from(e)).collect(),
        }
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(|e| BigRational::from_integer(e.clone()))
    }

    pub fn to_gauss(&self) -> GaussMatrix {
        self.map(|e| GaussRational::from(BigRational::from_integer(e.clone())))
    }

    pub fn is_zero_one(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero() || e.is_one())
    }

    /// Rank by Bareiss fraction-free elimination; all intermediates stay integral.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            for r in rank + 1..self.rows {
                for c in col + 1..self.cols {
                    let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                    m[r][c] = v / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[rank][col].abs();
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

impl RatMatrix {
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        IntMatrix::from_i64(rows, cols, entries).to_rational()
    }

    pub fn to_gauss(&self) -> GaussMatrix {
        self.map(|e| GaussRational::from(e.clone()))
    }
}

impl GaussMatrix {
    /// Real and imaginary parts, or `None` if any entry is non-real.
    pub fn to_rational(&self) -> Option<RatMatrix> {
        if self.entries.iter().all(|z| z.im.is_zero()) {
            Some(self.map(|z| z.re.clone()))
        } else {
            None
        }
    }
}

/// Row echelon reduction in place; returns the pivot columns.
fn row_reduce<F: Field>(m: &mut [Vec<F>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = F::one() / m[rank][col].clone();
        for c in col..m[rank].len() {
            m[rank][c] = m[rank][c].clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..m[r].len() {
                let v = m[r][c].clone() - factor.clone() * m[rank][c].clone();
                m[r][c] = v;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    pivots
}

/// Rank of a list of vectors over a field.
pub fn vector_rank<F: Field>(vectors: &[Vec<F>]) -> usize {
    let Some(width) = vectors.first().map(Vec::len) else {
        return 0;
    };
    let mut m = vectors.to_vec();
    row_reduce(&mut m, width).len()
}

/// Result of [`solve_exact`].
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub x: RatMatrix,
    pub rank: usize,
}

/// Solves `a · x = b` exactly by Gauss-Jordan elimination over the rationals.
pub fn solve_exact(a: &RatMatrix, b: &RatMatrix) -> Result<Solution, LinalgError> {
    if a.rows != b.rows {
        return Err(a.shape_error("system", b));
    }
    let unknowns = a.cols;
    let mut aug: Vec<Vec<BigRational>> = (0..a.rows)
        .map(|r| a.row(r).iter().chain(b.row(r)).cloned().collect())
        .collect();
    let pivots = row_reduce(&mut aug, unknowns);
    let rank = pivots.len();
    let inconsistent = aug[rank..]
        .iter()
        .any(|row| row[unknowns..].iter().any(|v| !v.is_zero()));
    if inconsistent {
        return Err(LinalgError::NoSolution);
    }
    if rank < unknowns {
        return Err(LinalgError::NonUnique { rank, unknowns });
    }
    let x = Matrix::from_fn(unknowns, b.cols, |r, c| aug[r][unknowns + c].clone());
    Ok(Solution { x, rank })
}

/// Field over which [`span_dimension`] measures a span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarField {
    Rationals,
    GaussianRationals,
}

/// Dimension of the linear span of `mats` over the chosen field.
///
/// Over the rationals each Gaussian entry contributes two coordinates (real
/// and imaginary part), so the ambient space has dimension `2 · rows · cols`.
pub fn span_dimension(mats: &[GaussMatrix], field: ScalarField) -> Result<usize, LinalgError> {
    let Some(first) = mats.first() else {
        return Ok(0);
    };
    if let Some(bad) = mats.iter().find(|m| m.shape() != first.shape()) {
        return Err(first.shape_error("span", bad));
    }
    Ok(match field {
        ScalarField::Rationals => {
            let vecs: Vec<Vec<BigRational>> = mats
                .iter()
                .map(|m| {
                    m.entries
                        .iter()
                        .flat_map(|z| [z.re.clone(), z.im.clone()])
                        .collect()
                })
                .collect();
            vector_rank(&vecs)
        }
        ScalarField::GaussianRationals => {
            let vecs: Vec<Vec<GaussRational>> = mats.iter().map(|m| m.entries.clone()).collect();
            vector_rank(&vecs)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: usize, cols: usize, e: &[i64]) -> IntMatrix {
        IntMatrix::from_i64(rows, cols, e)
    }

    fn cycle_x() -> IntMatrix {
        int(4, 4, &[0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0])
    }

    #[test]
    fn identity_product() {
        let m = int(3, 3, &[1, -2, 3, 4, 5, 6, 7, 8, 0]);
        assert_eq!(&IntMatrix::identity(3) * &m, m);
    }

    #[test]
    fn all_ones_squares_to_twice_itself() {
        let j = IntMatrix::ones(2);
        assert_eq!(&j * &j, j.scale(&BigInt::from(2)));
    }

    #[test]
    fn x_squared_is_double_transposition() {
        // (1,3)(2,4)
        let expected = int(4, 4, &[0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0]);
        assert_eq!(&cycle_x() * &cycle_x(), expected);
    }

    #[test]
    fn transpose_of_x_is_its_cube() {
        let x = cycle_x();
        let x3 = &(&x * &x) * &x;
        assert_eq!(x.transpose(), x3);
        assert_eq!(IntMatrix::identity(5).transpose(), IntMatrix::identity(5));
    }

    #[test]
    fn product_shape_error() {
        let err = int(2, 3, &[0; 6]).mat_mul(&int(2, 3, &[0; 6])).unwrap_err();
        assert!(matches!(err, LinalgError::Shape { .. }));
    }

    #[test]
    fn kronecker_block_layout() {
        let m = int(2, 2, &[1, 2, 3, 4]);
        let k = IntMatrix::identity(2).kronecker(&m);
        let expected = int(
            4,
            4,
            &[1, 2, 0, 0, 3, 4, 0, 0, 0, 0, 1, 2, 0, 0, 3, 4],
        );
        assert_eq!(k, expected);

        let k = IntMatrix::ones(2).kronecker(&IntMatrix::identity(2));
        let expected = int(
            4,
            4,
            &[1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1],
        );
        assert_eq!(k, expected);
    }

    #[test]
    fn solve_identity_system() {
        let v = RatMatrix::from_i64(3, 1, &[4, -1, 7]);
        let sol = solve_exact(&RatMatrix::identity(3), &v).unwrap();
        assert_eq!(sol.x, v);
        assert_eq!(sol.rank, 3);
    }

    #[test]
    fn solve_multiplicity_system_for_a3() {
        // Columns are the five characters of the order-16 scheme, rows the
        // eight relations; right side is the trace of each relation.
        let a = 3;
        let rows: [[i64; 5]; 8] = [
            [1, 1, 1, 1, 2],
            [1, 1, 1, 1, -2],
            [1, -1, 1, -1, 0],
            [1, -1, 1, -1, 0],
            [a, a, -1, -1, 0],
            [a, a, -1, -1, 0],
            [a, -a, -1, 1, 0],
            [a, -a, -1, 1, 0],
        ];
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        let sys = RatMatrix::from_i64(8, 5, &flat);
        let rhs = RatMatrix::from_i64(8, 1, &[16, 0, 0, 0, 0, 0, 0, 0]);
        let sol = solve_exact(&sys, &rhs).unwrap();
        assert_eq!(sol.x, RatMatrix::from_i64(5, 1, &[1, 1, 3, 3, 4]));
        assert_eq!(sol.rank, 5);
    }

    #[test]
    fn solve_inconsistent() {
        let sys = RatMatrix::from_i64(2, 1, &[1, 1]);
        let rhs = RatMatrix::from_i64(2, 1, &[1, 2]);
        assert_eq!(solve_exact(&sys, &rhs), Err(LinalgError::NoSolution));
    }

    #[test]
    fn solve_underdetermined() {
        let sys = RatMatrix::from_i64(1, 2, &[1, 1]);
        let rhs = RatMatrix::from_i64(1, 1, &[1]);
        assert!(matches!(
            solve_exact(&sys, &rhs),
            Err(LinalgError::NonUnique { rank: 1, unknowns: 2 })
        ));
    }

    #[test]
    fn span_of_identity_and_negation() {
        let i = IntMatrix::identity(2).to_gauss();
        assert_eq!(span_dimension(std::slice::from_ref(&i), ScalarField::Rationals), Ok(1));
        assert_eq!(span_dimension(&[i.clone(), i.neg()], ScalarField::Rationals), Ok(1));
    }

    #[test]
    fn span_of_degree_two_images() {
        // T(σ_1), T(σ_y), T(μ_x), T(μ_x)T(σ_y) with a = 3
        let one = IntMatrix::identity(2);
        let sy = int(2, 2, &[1, 0, 0, -1]);
        let mx = int(2, 2, &[0, -1, 3, 0]);
        let mxy = &mx * &sy;
        let mats: Vec<GaussMatrix> = [one, sy, mx, mxy].iter().map(IntMatrix::to_gauss).collect();
        assert_eq!(span_dimension(&mats, ScalarField::Rationals), Ok(4));
    }

    #[test]
    fn span_over_gaussian_field_merges_i_multiples() {
        let one = IntMatrix::identity(2).to_gauss();
        let i_one = one.scale(&GaussRational::i());
        assert_eq!(
            span_dimension(&[one.clone(), i_one.clone()], ScalarField::Rationals),
            Ok(2)
        );
        assert_eq!(
            span_dimension(&[one, i_one], ScalarField::GaussianRationals),
            Ok(1)
        );
    }

    #[test]
    fn span_shape_mismatch() {
        let a = IntMatrix::identity(2).to_gauss();
        let b = IntMatrix::identity(3).to_gauss();
        assert!(span_dimension(&[a, b], ScalarField::Rationals).is_err());
    }

    #[test]
    fn bareiss_rank() {
        assert_eq!(int(3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]).rank(), 2);
        assert_eq!(IntMatrix::identity(4).rank(), 4);
        assert_eq!(IntMatrix::zeros(2, 3).rank(), 0);
        assert_eq!(int(2, 3, &[0, 2, 4, 0, 3, 7]).rank(), 2);
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-5i64..=5, rows * cols)
            .prop_map(move |e| IntMatrix::from_i64(rows, cols, &e))
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn kronecker_mixed_product(
            a in small_matrix(2, 2), b in small_matrix(3, 3),
            c in small_matrix(2, 2), d in small_matrix(3, 3),
        ) {
            let lhs = &a.kronecker(&b) * &c.kronecker(&d);
            prop_assert_eq!(lhs, (&a * &c).kronecker(&(&b * &d)));
        }

        #[test]
        fn transpose_reverses_products(a in small_matrix(3, 4), b in small_matrix(4, 2)) {
            prop_assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
        }

        #[test]
        fn solve_recovers_unique_solution(
            a in small_matrix(6, 4), m in proptest::collection::vec(-9i64..=9, 4),
        ) {
            let a = a.to_rational();
            let m = RatMatrix::from_i64(4, 1, &m);
            let b = &a * &m;
            match solve_exact(&a, &b) {
                Ok(sol) => {
                    prop_assert_eq!(sol.rank, 4);
                    prop_assert_eq!(sol.x, m);
                }
                Err(LinalgError::NonUnique { rank, .. }) => prop_assert!(rank < 4),
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }
    }
}
