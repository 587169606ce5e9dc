//! Square matrices with polynomial entries, e.g. the pencil x₁A₁ + ⋯ + xₙAₙ.

use std::ops::{Add, Mul};

use crate::error::AlgebraError;
use crate::matrix::Matrix;
use crate::poly::{Monomial, Poly};
use crate::scalar::{CyclotomicScalar as Scalar, Rational};

/// Size at or below which [`PolyMatrix::det`] uses cofactor expansion.
pub const COFACTOR_LIMIT: usize = 4;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    size: usize,
    nvars: usize,
    conductor: u32,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(size: usize, nvars: usize, conductor: u32) -> Self {
        PolyMatrix { size, nvars, conductor, entries: vec![Poly::zero(nvars, conductor); size * size] }
    }

    /// `p · I`.
    pub fn scalar(size: usize, p: &Poly) -> Self {
        let mut m = Self::zeros(size, p.nvars(), p.conductor());
        for i in 0..size {
            m[(i, i)] = p.clone();
        }
        m
    }

    pub fn from_entries(size: usize, entries: Vec<Poly>) -> Result<Self, AlgebraError> {
        if entries.len() != size * size {
            return Err(AlgebraError::ShapeMismatch(format!("{} entries for a {size}x{size} matrix", entries.len())));
        }
        let (nvars, conductor) = entries.first().map_or((0, 1), |p| (p.nvars(), p.conductor()));
        for p in &entries {
            if p.nvars() != nvars {
                return Err(AlgebraError::ArityMismatch { left: nvars, right: p.nvars() });
            }
            if p.conductor() != conductor {
                return Err(AlgebraError::ConductorMismatch { left: conductor, right: p.conductor() });
            }
        }
        Ok(PolyMatrix { size, nvars, conductor, entries })
    }

    /// Constant matrix viewed as a polynomial matrix in `nvars` variables.
    pub fn constant(m: &Matrix, nvars: usize) -> Self {
        assert!(m.is_square());
        PolyMatrix {
            size: m.rows(),
            nvars,
            conductor: m.conductor(),
            entries: m.entries().iter().map(|c| Poly::constant(nvars, c.clone())).collect(),
        }
    }

    /// The linear pencil Σ xᵢ Aᵢ.
    pub fn pencil(matrices: &[Matrix]) -> Result<Self, AlgebraError> {
        let first = matrices.first().ok_or_else(|| AlgebraError::ShapeMismatch("empty pencil".into()))?;
        let (m, conductor, n) = (first.rows(), first.conductor(), matrices.len());
        for a in matrices {
            if !a.is_square() || a.rows() != m {
                return Err(AlgebraError::ShapeMismatch("pencil matrices differ in size".into()));
            }
            if a.conductor() != conductor {
                return Err(AlgebraError::ConductorMismatch { left: conductor, right: a.conductor() });
            }
        }
        let mut out = Self::zeros(m, n, conductor);
        for (i, a) in matrices.iter().enumerate() {
            let x = Monomial::var(n, i);
            for r in 0..m {
                for c in 0..m {
                    let t = Poly::term(x.clone(), a[(r, c)].clone());
                    out[(r, c)] = &out[(r, c)] + &t;
                }
            }
        }
        Ok(out)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn has_zero_row(&self) -> bool {
        (0..self.size).any(|i| (0..self.size).all(|j| self[(i, j)].is_zero()))
    }

    pub fn pow(&self, e: u32) -> PolyMatrix {
        let mut acc = PolyMatrix::scalar(self.size, &Poly::one(self.nvars, self.conductor));
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn trace(&self) -> Poly {
        (0..self.size).fold(Poly::zero(self.nvars, self.conductor), |acc, i| &acc + &self[(i, i)])
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Matrix, AlgebraError> {
        let values = self.entries.iter().map(|p| p.evaluate(point)).collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_fn(self.size, self.size, self.conductor, |i, j| values[i * self.size + j].clone()))
    }

    /// Exact determinant: cofactor expansion up to size
    /// [`COFACTOR_LIMIT`], fraction-free elimination above.
    pub fn det(&self) -> Poly {
        if self.size <= COFACTOR_LIMIT {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    /// Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> Poly {
        let cols: Vec<usize> = (0..self.size).collect();
        self.cofactor_rec(0, &cols)
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> Poly {
        if cols.is_empty() {
            return Poly::one(self.nvars, self.conductor);
        }
        if cols.len() == 1 {
            return self[(row, cols[0])].clone();
        }
        let mut acc = Poly::zero(self.nvars, self.conductor);
        for (k, &c) in cols.iter().enumerate() {
            let entry = &self[(row, c)];
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = &self.cofactor_rec(row + 1, &rest) * entry;
            acc = if k % 2 == 0 { &acc + &minor } else { &acc - &minor };
        }
        acc
    }

    /// Bareiss fraction-free elimination over the polynomial ring. Every
    /// division is exact.
    pub fn det_bareiss(&self) -> Poly {
        let n = self.size;
        if n == 0 {
            return Poly::one(self.nvars, self.conductor);
        }
        let mut m: Vec<Vec<Poly>> = (0..n).map(|i| (0..n).map(|j| self[(i, j)].clone()).collect()).collect();
        let mut negate = false;
        let mut prev = Poly::one(self.nvars, self.conductor);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Poly::zero(self.nvars, self.conductor);
                };
                m.swap(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if negate {
            -&d
        } else {
            d
        }
    }

    /// Elementary symmetric functions e₁, …, e_m of the eigenvalues, so
    /// det(tI − P) = t^m − e₁t^{m−1} + e₂t^{m−2} − ⋯ ± e_m.
    ///
    /// Uses the Faddeev–LeVerrier recursion, which needs division by
    /// 1..=m and is therefore fine in characteristic zero.
    pub fn char_data(&self) -> Vec<Poly> {
        let n = self.size;
        let zero = Poly::zero(self.nvars, self.conductor);
        // c[k] is the coefficient of t^k in det(tI - P).
        let mut c = vec![zero.clone(); n + 1];
        c[n] = Poly::one(self.nvars, self.conductor);
        let mut mk = PolyMatrix::zeros(n, self.nvars, self.conductor);
        for k in 1..=n {
            mk = &(self * &mk) + &PolyMatrix::scalar(n, &c[n - k + 1]);
            let tr = (self * &mk).trace();
            let inv_k = Scalar::from_rational(self.conductor, Rational::new((-1).into(), (k as i64).into()));
            c[n - k] = tr.scale(&inv_k);
        }
        (1..=n).map(|k| if k % 2 == 0 { c[n - k].clone() } else { -&c[n - k] }).collect()
    }
}

impl std::ops::Index<(usize, usize)> for PolyMatrix {
    type Output = Poly;
    fn index(&self, (i, j): (usize, usize)) -> &Poly {
        &self.entries[i * self.size + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Poly {
        &mut self.entries[i * self.size + j]
    }
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.size, rhs.size, "shape mismatch");
        let n = self.size;
        let mut out = PolyMatrix::zeros(n, self.nvars, self.conductor);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Add for &PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.size, rhs.size, "shape mismatch");
        PolyMatrix { entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(), ..self.clone() }
    }
}
