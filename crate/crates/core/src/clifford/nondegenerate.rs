//! Smoothness of the hypersurface w^d = f(x).
//!
//! A singular point has w = 0 and ∇f = 0 (and then f = 0 by Euler's
//! identity), so w^d = f is smooth exactly when the partial derivatives of
//! f have no common projective zero.

use super::form::Form;
use crate::error::CliffordError;
use crate::matrix::Matrix;
use crate::poly::{Monomial, Poly};

/// True iff the partials of f have no common zero in projective space.
///
/// * n = 1: any nonzero c·x^d (the hypersurface is d reduced points).
/// * n = 2: the Sylvester resultant of ∂f/∂x₁ and ∂f/∂x₂ is nonzero.
/// * n = 3: the degree 3e − 2 part of the ideal (∂f/∂x₁, ∂f/∂x₂, ∂f/∂x₃),
///   e = d − 1, is the whole space of forms of that degree. Three ternary
///   forms without a common zero form a regular sequence whose quotient
///   has Hilbert series (1 + t + ⋯ + t^{e−1})³, which vanishes from degree
///   3e − 2 on; a common zero p keeps every element of the ideal zero at p.
pub fn nondegenerate(form: &Form) -> Result<bool, CliffordError> {
    let n = form.nvars();
    let partials: Vec<Poly> = (0..n).map(|i| form.poly().partial_derivative(i)).collect();
    match n {
        1 => Ok(true),
        2 => Ok(!sylvester_resultant(&partials[0], &partials[1], form.degree() - 1).determinant().is_zero()),
        3 => Ok(ideal_fills_degree(&partials, form.degree() - 1)),
        other => Err(CliffordError::UnsupportedArity(other)),
    }
}

/// Sylvester matrix of two binary forms of formal degree `e`, in the
/// monomial basis x^{2e−1}, x^{2e−2}y, …, y^{2e−1}.
pub fn sylvester_resultant(g: &Poly, h: &Poly, e: u32) -> Matrix {
    let conductor = g.conductor();
    let size = 2 * e as usize;
    let mut rows = Vec::with_capacity(size);
    for p in [g, h] {
        for shift in 0..e as usize {
            let mut row = vec![crate::scalar::CyclotomicScalar::zero(conductor); size];
            for k in 0..=e as usize {
                row[shift + k] = p.coeff(&Monomial::new(vec![e - k as u32, k as u32]));
            }
            rows.push(row);
        }
    }
    Matrix::from_rows(rows, conductor).expect("uniform conductor")
}

/// Macaulay test: do forms of common degree `e` in n variables generate
/// every form of degree n(e − 1) + 1?
pub fn ideal_fills_degree(forms: &[Poly], e: u32) -> bool {
    let n = forms.len();
    if e == 0 {
        return forms.iter().any(|f| !f.is_zero());
    }
    let target = n as u32 * (e - 1) + 1;
    let columns = Monomial::all_of_degree(n, target);
    let index: std::collections::HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let conductor = forms[0].conductor();
    let mut rows = Vec::new();
    for multiplier in Monomial::all_of_degree(n, target - e) {
        for f in forms {
            let mut row = vec![crate::scalar::CyclotomicScalar::zero(conductor); columns.len()];
            for (m, c) in f.terms() {
                row[index[&m.mul(&multiplier)]] = c.clone();
            }
            rows.push(row);
        }
    }
    Matrix::from_rows(rows, conductor).expect("uniform conductor").rank() == columns.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CyclotomicScalar as Scalar;

    fn cubic(terms: &[(&[u32], i64)]) -> Form {
        let n = terms[0].0.len();
        Form::new(
            Poly::from_terms(n, 1, terms.iter().map(|(e, c)| (Monomial::new(e.to_vec()), Scalar::from_integer(1, *c))))
                .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn fermat_forms_are_nondegenerate() {
        assert!(nondegenerate(&Form::sum_of_powers(2, 3, 1)).unwrap());
        assert!(nondegenerate(&Form::sum_of_powers(3, 3, 1)).unwrap());
        assert!(nondegenerate(&Form::sum_of_powers(3, 2, 1)).unwrap());
        assert!(nondegenerate(&Form::sum_of_powers(1, 3, 1)).unwrap());
    }

    #[test]
    fn hesse_pencil_singular_member() {
        // x³ + y³ + z³ − 3xyz: all partials vanish at (1, 1, 1).
        let f = cubic(&[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 3], 1), (&[1, 1, 1], -3)]);
        assert!(!nondegenerate(&f).unwrap());
        // x³ + y³ + z³ + xyz is smooth.
        let g = cubic(&[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 3], 1), (&[1, 1, 1], 1)]);
        assert!(nondegenerate(&g).unwrap());
    }

    #[test]
    fn cones_and_repeated_factors_are_degenerate() {
        // x³ + y³ in three variables is a cone over the z-axis point.
        let f = cubic(&[(&[3, 0, 0], 1), (&[0, 3, 0], 1)]);
        assert!(!nondegenerate(&f).unwrap());
        // x²y has a double root.
        let g = cubic(&[(&[2, 1], 1)]);
        assert!(!nondegenerate(&g).unwrap());
        // x² + 2xy + y² = (x + y)².
        let h = cubic(&[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]);
        assert!(!nondegenerate(&h).unwrap());
    }

    #[test]
    fn sylvester_agrees_with_macaulay_for_binary_forms() {
        let forms = [
            cubic(&[(&[3, 0], 1), (&[0, 3], 1)]),
            cubic(&[(&[3, 0], 1), (&[2, 1], -3), (&[0, 3], 2)]),
            cubic(&[(&[3, 0], 1), (&[2, 1], 3), (&[1, 2], 3), (&[0, 3], 1)]),
            cubic(&[(&[4, 0], 1), (&[2, 2], -2), (&[0, 4], 1)]),
            cubic(&[(&[4, 0], 1), (&[0, 4], 5), (&[3, 1], 1)]),
        ];
        for f in &forms {
            let partials: Vec<Poly> = (0..2).map(|i| f.poly().partial_derivative(i)).collect();
            assert_eq!(nondegenerate(f).unwrap(), ideal_fills_degree(&partials, f.degree() - 1), "{f}");
        }
    }

    #[test]
    fn four_variables_unsupported() {
        assert_eq!(nondegenerate(&Form::sum_of_powers(4, 3, 1)), Err(CliffordError::UnsupportedArity(4)));
    }
}
