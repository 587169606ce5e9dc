use serde::Serialize;

use super::algebra::irreducible;
use super::representation::Representation;
use crate::error::{AlgebraError, CliffordError};
use crate::matrix::Matrix;
use crate::polymatrix::PolyMatrix;
use crate::scalar::CyclotomicScalar as Scalar;

/// Grid evaluations allowed before falling back to the symbolic determinant.
const GRID_BUDGET: u64 = 20_000;

/// Basis of {θ : Aᵢθ = θBᵢ for all i}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwinerSpace {
    pub basis: Vec<Matrix>,
}

impl IntertwinerSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// How the invertibility question was settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquivalenceMethod {
    /// The intertwiner space is zero.
    NoIntertwiners,
    /// Both sides irreducible, so every nonzero intertwiner is invertible.
    Schur,
    /// An invertible combination was found at an integer point.
    Point,
    /// det(Σ tⱼθⱼ) vanishes on a grid large enough to force it to be zero.
    GridExhausted,
    /// det(Σ tⱼθⱼ) expanded symbolically.
    Symbolic,
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub intertwiners: IntertwinerSpace,
    /// An invertible θ with Aᵢθ = θBᵢ, when one exists.
    pub witness: Option<Matrix>,
    pub method: EquivalenceMethod,
}

fn check_compatible(a: &Representation, b: &Representation) -> Result<(), CliffordError> {
    if a.conductor() != b.conductor() {
        return Err(AlgebraError::ConductorMismatch { left: a.conductor(), right: b.conductor() }.into());
    }
    if a.dim() != b.dim() || a.nvars() != b.nvars() {
        return Err(CliffordError::ShapeMismatch(format!(
            "representations of dimension {} with {} matrices and dimension {} with {} matrices",
            a.dim(),
            a.nvars(),
            b.dim(),
            b.nvars()
        )));
    }
    Ok(())
}

/// Solves Aᵢθ = θBᵢ with θ flattened row-major.
pub fn intertwiners(a: &Representation, b: &Representation) -> Result<IntertwinerSpace, CliffordError> {
    check_compatible(a, b)?;
    let (m, conductor) = (a.dim(), a.conductor());
    let unknowns = m * m;
    let mut rows = Vec::with_capacity(a.nvars() * unknowns);
    for (ai, bi) in a.matrices().iter().zip(b.matrices()) {
        for r in 0..m {
            for c in 0..m {
                // (Aθ)[r][c] − (θB)[r][c] = Σₖ A[r][k]θ[k][c] − Σₖ θ[r][k]B[k][c]
                let mut row = vec![Scalar::zero(conductor); unknowns];
                for k in 0..m {
                    row[k * m + c] = &row[k * m + c] + &ai[(r, k)];
                    row[r * m + k] = &row[r * m + k] - &bi[(k, c)];
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(rows, conductor)?;
    let basis =
        system.nullspace().into_iter().map(|v| Matrix::from_fn(m, m, conductor, |r, c| v[r * m + c].clone())).collect();
    Ok(IntertwinerSpace { basis })
}

fn combination(basis: &[Matrix], t: &[i64]) -> Matrix {
    let (m, conductor) = (basis[0].rows(), basis[0].conductor());
    basis.iter().zip(t).fold(Matrix::zeros(m, m, conductor), |acc, (theta, &tj)| {
        &acc + &theta.scale(&Scalar::from_integer(conductor, tj))
    })
}

/// Decides whether some invertible θ intertwines the two representations.
///
/// When either side is reducible, det(Σ tⱼθⱼ) is a form of degree m in the
/// s = dim of the intertwiner space coordinates, so it is zero exactly when
/// it vanishes on the grid {0, …, m}^s. Cheap points (each θⱼ alone, then
/// the all-ones combination) are tried first; the full grid only runs when
/// it fits in a fixed budget, otherwise the determinant is expanded
/// symbolically.
pub fn equivalent(a: &Representation, b: &Representation) -> Result<EquivalenceReport, CliffordError> {
    let space = intertwiners(a, b)?;
    let report =
        |equivalent, witness, method, space| EquivalenceReport { equivalent, intertwiners: space, witness, method };
    if space.basis.is_empty() {
        return Ok(report(false, None, EquivalenceMethod::NoIntertwiners, space));
    }
    if irreducible(a).irreducible && irreducible(b).irreducible {
        let witness = space.basis[0].clone();
        return Ok(report(true, Some(witness), EquivalenceMethod::Schur, space));
    }

    let (m, s) = (a.dim(), space.dimension());
    let mut cheap: Vec<Vec<i64>> = (0..s).map(|j| (0..s).map(|i| i64::from(i == j)).collect()).collect();
    cheap.push(vec![1; s]);
    cheap.push((1..=s as i64).collect());
    for t in &cheap {
        let theta = combination(&space.basis, t);
        if !theta.determinant().is_zero() {
            return Ok(report(true, Some(theta), EquivalenceMethod::Point, space));
        }
    }

    let side = m as u64 + 1;
    let grid_size = side.checked_pow(s as u32).unwrap_or(u64::MAX);
    if grid_size <= GRID_BUDGET {
        let mut t = vec![0i64; s];
        loop {
            let theta = combination(&space.basis, &t);
            if !theta.determinant().is_zero() {
                return Ok(report(true, Some(theta), EquivalenceMethod::Point, space));
            }
            // odometer over {0, …, m}^s
            let mut k = 0;
            while k < s {
                t[k] += 1;
                if t[k] as u64 == side {
                    t[k] = 0;
                    k += 1;
                } else {
                    break;
                }
            }
            if k == s {
                return Ok(report(false, None, EquivalenceMethod::GridExhausted, space));
            }
        }
    }

    let det = PolyMatrix::pencil(&space.basis)?.det();
    if det.is_zero() {
        return Ok(report(false, None, EquivalenceMethod::Symbolic, space));
    }
    // A nonzero polynomial of degree ≤ m in each variable has a nonvanishing
    // point in {0, …, m}^s; walk it lazily until one is found.
    let mut t = vec![0i64; s];
    loop {
        let point: Vec<Scalar> = t.iter().map(|&v| Scalar::from_integer(a.conductor(), v)).collect();
        if !det.evaluate(&point)?.is_zero() {
            let theta = combination(&space.basis, &t);
            return Ok(report(true, Some(theta), EquivalenceMethod::Symbolic, space));
        }
        let mut k = 0;
        while k < s {
            t[k] += 1;
            if t[k] as u64 == side {
                t[k] = 0;
                k += 1;
            } else {
                break;
            }
        }
        assert!(k < s, "nonzero determinant vanished on the whole grid");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::representation::Provenance;

    fn rep(mats: &[&[Vec<i64>]]) -> Representation {
        Representation::new(mats.iter().map(|m| Matrix::from_integers(m, 1)).collect(), Provenance::UserSupplied)
            .unwrap()
    }

    #[test]
    fn pauli_against_itself_has_one_dimensional_commutant() {
        let p = rep(&[&[vec![0, 1], vec![1, 0]], &[vec![1, 0], vec![0, -1]]]);
        let report = equivalent(&p, &p).unwrap();
        assert!(report.equivalent);
        assert_eq!(report.intertwiners.dimension(), 1);
        assert_eq!(report.method, EquivalenceMethod::Schur);
    }

    #[test]
    fn reducible_conjugates_are_equivalent() {
        let a = rep(&[&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]]]);
        let theta = Matrix::from_integers(&[vec![1, 2, 0], vec![0, 1, 3], vec![1, 0, 1]], 1);
        let b = a.conjugate(&theta).unwrap();
        let report = equivalent(&a, &b).unwrap();
        assert!(report.equivalent);
        assert_eq!(report.intertwiners.dimension(), 5);
        let w = report.witness.unwrap();
        assert_eq!(&a.matrices()[0] * &w, &w * &b.matrices()[0]);
    }

    #[test]
    fn different_spectra_are_inequivalent() {
        let a = rep(&[&[vec![1, 0], vec![0, 1]]]);
        let b = rep(&[&[vec![1, 0], vec![0, -1]]]);
        let report = equivalent(&a, &b).unwrap();
        assert!(!report.equivalent);
        assert_eq!(report.intertwiners.dimension(), 2);
        assert_eq!(report.method, EquivalenceMethod::GridExhausted);
    }

    #[test]
    fn nilpotent_versus_zero() {
        let a = rep(&[&[vec![0, 1], vec![0, 0]]]);
        let b = rep(&[&[vec![0, 0], vec![0, 0]]]);
        assert!(!equivalent(&a, &b).unwrap().equivalent);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = rep(&[&[vec![1]]]);
        let b = rep(&[&[vec![1, 0], vec![0, 1]]]);
        assert!(matches!(equivalent(&a, &b), Err(CliffordError::ShapeMismatch(_))));
    }
}
