//! Dense matrices over Q(ζ_N) and the exact linear algebra built on them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::AlgebraError;
use crate::scalar::CyclotomicScalar as Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, conductor: u32) -> Self {
        Matrix { rows, cols, conductor, data: vec![Scalar::zero(conductor); rows * cols] }
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        Self::scalar(n, Scalar::one(conductor))
    }

    pub fn scalar(n: usize, c: Scalar) -> Self {
        let mut m = Self::zeros(n, n, c.conductor());
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn diagonal(entries: &[Scalar], conductor: u32) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len(), conductor);
        for (i, c) in entries.iter().enumerate() {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, conductor: u32) -> Result<Self, AlgebraError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(AlgebraError::ShapeMismatch("ragged rows".into()));
            }
            for c in row {
                if c.conductor() != conductor {
                    return Err(AlgebraError::ConductorMismatch { left: conductor, right: c.conductor() });
                }
                data.push(c);
            }
        }
        Ok(Matrix { rows: nrows, cols: ncols, conductor, data })
    }

    pub fn from_fn(rows: usize, cols: usize, conductor: u32, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, conductor, data }
    }

    /// Integer matrix embedded in Q(ζ_N).
    pub fn from_integers(rows: &[Vec<i64>], conductor: u32) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_fn(rows.len(), cols, conductor, |i, j| Scalar::from_integer(conductor, rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.cols, self.rows, self.conductor, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { data: self.data.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows, self.conductor);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn embed(&self, conductor: u32) -> Result<Matrix, AlgebraError> {
        let data = self.data.iter().map(|c| c.embed(conductor)).collect::<Result<_, _>>()?;
        Ok(Matrix { conductor, data, ..*self })
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<(), AlgebraError> {
        if self.conductor != other.conductor {
            return Err(AlgebraError::ConductorMismatch { left: self.conductor, right: other.conductor });
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix, AlgebraError> {
        self.check_same_shape(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, AlgebraError> {
        if self.conductor != other.conductor {
            return Err(AlgebraError::ConductorMismatch { left: self.conductor, right: other.conductor });
        }
        if self.cols != other.rows {
            return Err(AlgebraError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self * other)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.conductor, other.conductor, "conductor mismatch");
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, self.conductor, |i, j| {
            &self[(i / other.rows, j / other.cols)] * &other[(i % other.rows, j % other.cols)]
        })
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.conductor, other.conductor, "conductor mismatch");
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols, self.conductor);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        Self::from_fn(r1 - r0, c1 - c0, self.conductor, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Scalar>], conductor: u32) -> Matrix {
        let rows = columns.first().map_or(0, Vec::len);
        Self::from_fn(rows, columns.len(), conductor, |i, j| columns[j][i].clone())
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(self.conductor), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    for j in c..m.cols {
                        if !m[(r, j)].is_zero() {
                            let delta = &factor * &m[(r, j)];
                            m[(i, j)] = &m[(i, j)] - &delta;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank and a basis of the right nullspace {v : Mv = 0}.
    pub fn rank_nullspace(&self) -> (usize, Vec<Vec<Scalar>>) {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        for &f in &free {
            let mut v = vec![Scalar::zero(self.conductor); self.cols];
            v[f] = Scalar::one(self.conductor);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[(row, f)];
            }
            basis.push(v);
        }
        (pivots.len(), basis)
    }

    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        self.rank_nullspace().1
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Scalar::one(self.conductor);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Scalar::zero(self.conductor);
            };
            if p != c {
                m.swap_rows(p, c);
                det = -&det;
            }
            let pivot = m[(c, c)].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot is nonzero");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = &m[(i, c)] * &inv;
                for j in c..n {
                    if !m[(c, j)].is_zero() {
                        let delta = &factor * &m[(c, j)];
                        m[(i, j)] = &m[(i, j)] - &delta;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n, self.conductor);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one(self.conductor);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0, n, n, 2 * n))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn to_complex(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_complex())
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect()
    }

    pub fn from_string_rows(rows: &[Vec<String>]) -> Result<Matrix, AlgebraError> {
        let parsed: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        let conductor = parsed.iter().flatten().map(Scalar::conductor).fold(1, num_integer::lcm);
        let embedded = parsed
            .into_iter()
            .map(|r| r.into_iter().map(|c| c.embed(conductor)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(embedded, conductor)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.check_same_shape(rhs).expect("incompatible matrices");
        Matrix { data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(), ..self.clone() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.check_same_shape(rhs).expect("incompatible matrices");
        Matrix { data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(), ..self.clone() }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { data: self.data.iter().map(|a| -a).collect(), ..self.clone() }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.conductor, rhs.conductor, "conductor mismatch");
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols, self.conductor);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] = &out[(i, j)] + &t;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Incrementally maintained semi-echelon basis of a subspace of K^dim.
///
/// Each stored row has a pivot entry equal to one and zeros at the pivots of
/// all earlier rows, so reducing a vector against the rows in insertion
/// order leaves it zero exactly when it lies in the span.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    conductor: u32,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl EchelonBasis {
    pub fn new(dim: usize, conductor: u32) -> Self {
        EchelonBasis { dim, conductor, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v` if it is independent of the current rows; returns whether it was added.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        let row: Vec<Scalar> = r.iter().map(|x| x * &inv).collect();
        self.rows.push((p, row));
        true
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_full_rank() {
        let (rank, null) = Matrix::identity(3, 1).rank_nullspace();
        assert_eq!(rank, 3);
        assert!(null.is_empty());
    }

    #[test]
    fn zero_matrix_nullspace() {
        let (rank, null) = Matrix::zeros(2, 3, 5).rank_nullspace();
        assert_eq!(rank, 0);
        assert_eq!(null.len(), 3);
    }

    #[test]
    fn singular_over_q_zeta3() {
        let z = |k| Scalar::zeta_power(3, k);
        let m = Matrix::from_rows(vec![vec![z(0), z(1)], vec![z(2), z(0)]], 3).unwrap();
        assert!(m.determinant().is_zero());
        let (rank, null) = m.rank_nullspace();
        assert_eq!(rank, 1);
        assert_eq!(null.len(), 1);
        assert!(m.mul_vec(&null[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_integers(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]], 3);
        assert_eq!(m.determinant(), Scalar::from_integer(3, 18));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3, 3));
        let sing = Matrix::from_integers(&[vec![1, 2], vec![2, 4]], 1);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn echelon_basis_tracks_span() {
        let v = |xs: &[i64]| xs.iter().map(|&x| Scalar::from_integer(1, x)).collect::<Vec<_>>();
        let mut b = EchelonBasis::new(3, 1);
        assert!(b.insert(&v(&[1, 2, 3])));
        assert!(b.insert(&v(&[0, 1, 1])));
        assert!(!b.insert(&v(&[2, 5, 7])));
        assert!(b.contains(&v(&[1, 3, 4])));
        assert!(!b.contains(&v(&[0, 0, 1])));
        assert_eq!(b.len(), 2);
    }
}
