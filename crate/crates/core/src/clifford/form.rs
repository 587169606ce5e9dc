use std::fmt;

use crate::error::CliffordError;
use crate::matrix::Matrix;
use crate::poly::{Monomial, Poly, PolyJson};
use crate::scalar::CyclotomicScalar as Scalar;

/// A nonzero homogeneous polynomial f(x₁, …, xₙ) of degree d.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form {
    poly: Poly,
    degree: u32,
}

impl Form {
    pub fn new(poly: Poly) -> Result<Self, CliffordError> {
        let degree = poly.degree().ok_or(CliffordError::ZeroForm)?;
        if !poly.is_homogeneous() {
            return Err(CliffordError::NotHomogeneous);
        }
        Ok(Form { poly, degree })
    }

    /// x₁^d + ⋯ + xₙ^d.
    pub fn sum_of_powers(n: usize, d: u32, conductor: u32) -> Self {
        let poly = (0..n).fold(Poly::zero(n, conductor), |acc, i| &acc + &Poly::var(n, i, conductor).pow(d));
        Form::new(poly).expect("sum of powers is a nonzero form")
    }

    /// c₁x^d + c₂y^d.
    pub fn binary_diagonal(d: u32, c1: &Scalar, c2: &Scalar) -> Result<Self, CliffordError> {
        let conductor = c1.conductor();
        let x = Poly::var(2, 0, conductor).pow(d).scale(c1);
        let y = Poly::var(2, 1, conductor).pow(d).try_mul(&Poly::constant(2, c2.clone()))?;
        Form::new(&x + &y)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn conductor(&self) -> u32 {
        self.poly.conductor()
    }

    /// The coefficient f_m of x^m.
    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.poly.coeff(m)
    }

    pub fn embed(&self, conductor: u32) -> Result<Form, CliffordError> {
        Ok(Form { poly: self.poly.embed(conductor)?, degree: self.degree })
    }

    pub fn pow(&self, e: u32) -> Poly {
        self.poly.pow(e)
    }

    /// f(Mx), i.e. xᵢ ↦ Σⱼ Mᵢⱼ xⱼ.
    pub fn change_of_variables(&self, m: &Matrix) -> Result<Form, CliffordError> {
        let n = self.nvars();
        if m.rows() != n || m.cols() != n {
            return Err(CliffordError::ShapeMismatch(format!(
                "change of variables needs a {n}x{n} matrix, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if m.conductor() != self.conductor() {
            return Err(
                crate::error::AlgebraError::ConductorMismatch { left: self.conductor(), right: m.conductor() }.into()
            );
        }
        if m.determinant().is_zero() {
            return Err(CliffordError::SingularMatrix);
        }
        let images: Vec<Poly> = (0..n)
            .map(|i| {
                (0..n).fold(Poly::zero(n, self.conductor()), |acc, j| {
                    &acc + &Poly::term(Monomial::var(n, j), m[(i, j)].clone())
                })
            })
            .collect();
        Form::new(self.poly.compose(&images)?)
    }

    pub fn to_json(&self) -> PolyJson {
        self.poly.to_json()
    }

    pub fn from_json(json: &PolyJson) -> Result<Form, CliffordError> {
        Form::new(Poly::from_json(json)?)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}
