//! Explicit representations built from clock and shift matrices.
//!
//! With u = diag(1, ζ, …, ζ^{d−1}) and v the shift v·e_k = e_{k−1}
//! (indices mod d), vu = ζ·uv. For a pair X, Y with YX = q·XY, q a
//! primitive d-th root of unity, the q-binomial coefficients of
//! (xX + yY)^d vanish except at the ends, so (xX + yY)^d = x^d X^d + y^d Y^d.

use super::form::Form;
use super::representation::{Provenance, Representation};
use crate::error::{AlgebraError, CliffordError};
use crate::matrix::Matrix;
use crate::scalar::CyclotomicScalar as Scalar;

fn check_degree(d: u32, conductor: u32) -> Result<(), CliffordError> {
    if d < 2 {
        return Err(CliffordError::DegreeTooSmall { min: 2, got: d });
    }
    if !conductor.is_multiple_of(d) {
        return Err(AlgebraError::NotEmbeddable { from: d, to: conductor }.into());
    }
    Ok(())
}

/// diag(1, ζ_d, …, ζ_d^{d−1}).
pub fn clock(d: u32, conductor: u32) -> Matrix {
    let zeta = Scalar::root_of_unity(conductor, d).expect("d divides the conductor");
    let diag: Vec<Scalar> = (0..d).map(|k| zeta.pow(k)).collect();
    Matrix::diagonal(&diag, conductor)
}

/// The cyclic shift S·e_k = e_{k+1}.
pub fn shift(d: u32, conductor: u32) -> Matrix {
    let d = d as usize;
    Matrix::from_fn(
        d,
        d,
        conductor,
        |i, j| {
            if i == (j + 1) % d {
                Scalar::one(conductor)
            } else {
                Scalar::zero(conductor)
            }
        },
    )
}

/// A d-dimensional representation of c₁x^d + c₂y^d from d-th roots
/// γ₁, γ₂ of c₁, c₂: A₁ = γ₁S and A₂ = γ₂SD for odd d, with S the shift and
/// D the clock. For even d, (SD)^d = −I, so A₂ = γ₂D is used instead.
pub fn clock_shift(
    d: u32,
    c1: &Scalar,
    c2: &Scalar,
    gamma1: &Scalar,
    gamma2: &Scalar,
) -> Result<Representation, CliffordError> {
    let conductor = c1.conductor();
    for s in [c2, gamma1, gamma2] {
        if s.conductor() != conductor {
            return Err(AlgebraError::ConductorMismatch { left: conductor, right: s.conductor() }.into());
        }
    }
    check_degree(d, conductor)?;
    for (gamma, c) in [(gamma1, c1), (gamma2, c2)] {
        if &gamma.pow(d) != c {
            return Err(CliffordError::InvalidParameters(format!("({gamma})^{d} != {c}")));
        }
    }
    let s = shift(d, conductor);
    let clock = clock(d, conductor);
    let second = if d % 2 == 1 { &s * &clock } else { clock };
    Representation::new(vec![s.scale(gamma1), second.scale(gamma2)], Provenance::Constructed)
}

/// The d^{n−1}-dimensional representation of x₁^d + ⋯ + xₙ^d with
/// e_k = v^{⊗(k−1)} ⊗ u ⊗ 1^{⊗(n−k)} for k < n and e_n = v^{⊗(n−1)}.
/// These satisfy e_j e_i = ζ e_i e_j for i < j and e_i^d = 1.
pub fn tensor_diagonal(d: u32, n: usize, conductor: u32) -> Result<Representation, CliffordError> {
    check_degree(d, conductor)?;
    if n == 0 {
        return Err(CliffordError::InvalidParameters("at least one variable is required".into()));
    }
    let u = clock(d, conductor);
    let v = shift(d, conductor).transpose();
    let one = Matrix::identity(d as usize, conductor);
    let kron_all =
        |factors: Vec<&Matrix>| factors.into_iter().fold(Matrix::identity(1, conductor), |acc, f| acc.kron(f));
    let mut matrices = Vec::with_capacity(n);
    for k in 1..n {
        let mut factors = vec![&v; k - 1];
        factors.push(&u);
        factors.extend(std::iter::repeat_n(&one, n - 1 - k));
        matrices.push(kron_all(factors));
    }
    matrices.push(kron_all(vec![&v; n - 1]));
    Representation::new(matrices, Provenance::Constructed)
}

/// Bⱼ = Σᵢ Mᵢⱼ Aᵢ, the representation of f(Mx) induced by one of f.
pub fn transform_rep(rep: &Representation, m: &Matrix) -> Result<Representation, CliffordError> {
    let n = rep.nvars();
    if m.rows() != n || m.cols() != n {
        return Err(CliffordError::ShapeMismatch(format!(
            "change of variables needs a {n}x{n} matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if m.conductor() != rep.conductor() {
        return Err(AlgebraError::ConductorMismatch { left: rep.conductor(), right: m.conductor() }.into());
    }
    if m.determinant().is_zero() {
        return Err(CliffordError::SingularMatrix);
    }
    let (dim, conductor) = (rep.dim(), rep.conductor());
    let matrices = (0..n)
        .map(|j| (0..n).fold(Matrix::zeros(dim, dim, conductor), |acc, i| &acc + &rep.matrices()[i].scale(&m[(i, j)])))
        .collect();
    Representation::new(matrices, Provenance::Transformed)
}

/// The pair (f(Mx), B) for a representation A of f.
pub fn change_of_variables(
    form: &Form,
    rep: &Representation,
    m: &Matrix,
) -> Result<(Form, Representation), CliffordError> {
    Ok((form.change_of_variables(m)?, transform_rep(rep, m)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::verify::verify;

    #[test]
    fn clock_shift_cubic_verifies() {
        let one = Scalar::one(3);
        let rep = clock_shift(3, &one, &one, &one, &one).unwrap();
        let f = Form::sum_of_powers(2, 3, 3);
        assert!(verify(&rep, &f).unwrap().passed);
    }

    #[test]
    fn even_degree_pairs_verify() {
        for d in [2u32, 4, 6] {
            let one = Scalar::one(d);
            let rep = clock_shift(d, &one, &one, &one, &one).unwrap();
            assert!(verify(&rep, &Form::sum_of_powers(2, d, d)).unwrap().passed, "d = {d}");
        }
    }

    #[test]
    fn missing_eighth_root_is_rejected() {
        let one = Scalar::one(4);
        let minus_one = Scalar::from_integer(4, -1);
        let zeta4 = Scalar::zeta_power(4, 1);
        // ζ₄ is a square root of −1, not a fourth root.
        assert!(matches!(clock_shift(4, &one, &minus_one, &one, &zeta4), Err(CliffordError::InvalidParameters(_))));
        assert!(clock_shift(4, &one, &minus_one, &one, &Scalar::zeta_power(8, 1)).is_err());
    }

    #[test]
    fn tensor_dimensions() {
        assert_eq!(tensor_diagonal(3, 3, 3).unwrap().dim(), 9);
        assert_eq!(tensor_diagonal(2, 3, 2).unwrap().dim(), 4);
        assert_eq!(tensor_diagonal(3, 1, 3).unwrap().dim(), 1);
        let rep = tensor_diagonal(2, 3, 2).unwrap();
        assert!(verify(&rep, &Form::sum_of_powers(3, 2, 2)).unwrap().passed);
    }
}
