use serde::Serialize;

use super::form::Form;
use super::relations::check_rep_against_form;
use super::representation::Representation;
use crate::error::CliffordError;
use crate::poly::{Monomial, Poly};
use crate::scalar::CyclotomicScalar as Scalar;

/// A coefficient of (Σ xᵢAᵢ)^d that differs from the one in f·I.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct EntryFailure {
    /// Exponent key of the monomial, e.g. `"2,1,0"`.
    pub monomial: String,
    pub row: usize,
    pub col: usize,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub failures: Vec<EntryFailure>,
}

impl VerificationReport {
    pub(crate) fn from_failures(mut failures: Vec<EntryFailure>) -> Self {
        failures.sort();
        VerificationReport { passed: failures.is_empty(), failures }
    }
}

/// Expands (Σ xᵢAᵢ)^d as a polynomial matrix and compares it with f·I
/// coefficient by coefficient.
pub fn verify(rep: &Representation, form: &Form) -> Result<VerificationReport, CliffordError> {
    check_rep_against_form(rep, form)?;
    let power = rep.pencil().pow(form.degree());
    let (m, conductor) = (rep.dim(), rep.conductor());
    let monomials = Monomial::all_of_degree(form.nvars(), form.degree());
    let mut failures = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let entry = &power[(i, j)];
            for mono in &monomials {
                let expected = if i == j { form.coeff(mono) } else { Scalar::zero(conductor) };
                let actual = entry.coeff(mono);
                if actual != expected {
                    failures.push(EntryFailure {
                        monomial: mono.key(),
                        row: i,
                        col: j,
                        expected: expected.to_string(),
                        actual: actual.to_string(),
                    });
                }
            }
        }
    }
    Ok(VerificationReport::from_failures(failures))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminantIdentity {
    /// r with det(Σ xᵢAᵢ) = ±f^r and m = d·r.
    pub r: u32,
    /// +1 or −1. M(x) has characteristic polynomial (t^d − f)^r, so
    /// det M(x) = (−1)^{(d+1)r} f^r; the sign is −1 exactly when d is even
    /// and r is odd.
    pub sign: i8,
    pub determinant: Poly,
}

/// For a representation of f, det(Σ xᵢAᵢ)^d = f^m; when f is irreducible
/// this forces det(Σ xᵢAᵢ) = ±f^r with m = dr. Computes the determinant
/// exactly and checks both conclusions, including the predicted sign.
pub fn determinant_identity(rep: &Representation, form: &Form) -> Result<DeterminantIdentity, CliffordError> {
    if !verify(rep, form)?.passed {
        return Err(CliffordError::VerificationFailed);
    }
    let determinant = rep.pencil().det();
    let (m, d) = (rep.dim() as u32, form.degree());
    if m % d != 0 {
        return Err(CliffordError::NotPerfectPower(format!(
            "dimension {m} is not divisible by the degree {d}; det = {determinant}"
        )));
    }
    let r = m / d;
    let sign: i8 = if d % 2 == 0 && r % 2 == 1 { -1 } else { 1 };
    let power = form.pow(r);
    let expected = if sign < 0 { -&power } else { power };
    if determinant != expected {
        return Err(CliffordError::NotPerfectPower(format!("det = {determinant} differs from {sign}*f^{r}")));
    }
    Ok(DeterminantIdentity { r, sign, determinant })
}
