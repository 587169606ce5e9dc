//! Best-effort decomposition of a representation by spinning candidate
//! vectors into invariant subspaces.
//!
//! Candidate vectors, in the order tried:
//!
//! 1. kernels of w − λ for w a generator or a product of two generators,
//!    and λ ∈ {0} ∪ {±ζ_N^j};
//! 2. the same kernels for the remaining words of the closure basis;
//! 3. kernels and images of non-scalar elements of the commutant (any such
//!    kernel or image is invariant);
//! 4. kernels of singular random integer combinations of closure words;
//! 5. the standard basis vectors.
//!
//! A proper orbit gives an adapted basis in which every matrix is block
//! upper triangular; the diagonal blocks are the sub- and quotient
//! representations and the search recurses on both, at most m levels deep.
//! When the generated algebra is smaller than Mat_m but no candidate yields
//! a proper orbit, the block is reported as reducible and unsplit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::{algebra_span, spin};
use super::equivalence::intertwiners;
use super::representation::{Provenance, Representation};
use crate::matrix::{EchelonBasis, Matrix};
use crate::scalar::CyclotomicScalar as Scalar;

const RANDOM_ELEMENTS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitOutcome {
    /// The input is irreducible and is returned unchanged.
    Irreducible,
    /// Every returned block is irreducible.
    Split,
    /// Some returned block is reducible but no invariant subspace was found.
    ReducibleUnsplit,
}

#[derive(Clone, Debug)]
pub struct SplitPart {
    pub representation: Representation,
    pub irreducible: bool,
}

#[derive(Clone, Debug)]
pub struct SplitReport {
    pub outcome: SplitOutcome,
    pub parts: Vec<SplitPart>,
}

impl SplitReport {
    pub fn representations(&self) -> Vec<Representation> {
        self.parts.iter().map(|p| p.representation.clone()).collect()
    }
}

pub fn split(rep: &Representation, seed: u64) -> SplitReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::new();
    split_into(rep, rep.dim(), &mut rng, &mut parts);
    let outcome = if parts.len() == 1 && parts[0].irreducible {
        parts[0].representation = rep.clone();
        SplitOutcome::Irreducible
    } else if parts.iter().all(|p| p.irreducible) {
        SplitOutcome::Split
    } else {
        SplitOutcome::ReducibleUnsplit
    };
    SplitReport { outcome, parts }
}

fn split_into(rep: &Representation, depth: usize, rng: &mut ChaCha8Rng, out: &mut Vec<SplitPart>) {
    let m = rep.dim();
    let span = algebra_span(rep);
    if span.elements.len() == m * m {
        out.push(SplitPart { representation: rep.clone(), irreducible: true });
        return;
    }
    let found = if depth == 0 { None } else { find_invariant_subspace(rep, &span.elements, &span.words, rng) };
    match found {
        Some(subspace) => {
            let (sub, quotient) = restrict(rep, &subspace);
            split_into(&sub, depth - 1, rng, out);
            split_into(&quotient, depth - 1, rng, out);
        }
        None => out.push(SplitPart { representation: rep.clone(), irreducible: false }),
    }
}

fn eigenvalue_candidates(conductor: u32) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(conductor)];
    for j in 0..conductor as i64 {
        let z = Scalar::zeta_power(conductor, j);
        if !out.contains(&z) {
            out.push(z.clone());
        }
        let neg = -z;
        if !out.contains(&neg) {
            out.push(neg);
        }
    }
    out
}

fn proper_orbit(rep: &Representation, v: &[Scalar]) -> Option<Vec<Vec<Scalar>>> {
    if v.iter().all(Scalar::is_zero) {
        return None;
    }
    let orbit = spin(rep, &[v.to_vec()]);
    (orbit.len() < rep.dim()).then_some(orbit)
}

fn first_proper_orbit<'a>(
    rep: &Representation,
    vectors: impl IntoIterator<Item = &'a Vec<Scalar>>,
) -> Option<Vec<Vec<Scalar>>> {
    vectors.into_iter().find_map(|v| proper_orbit(rep, v))
}

fn kernel_orbit(rep: &Representation, w: &Matrix, lambdas: &[Scalar]) -> Option<Vec<Vec<Scalar>>> {
    let m = rep.dim();
    for lambda in lambdas {
        let shifted = w - &Matrix::scalar(m, lambda.clone());
        let kernel = shifted.nullspace();
        if kernel.is_empty() || kernel.len() == m {
            continue;
        }
        if let Some(orbit) = first_proper_orbit(rep, &kernel) {
            return Some(orbit);
        }
    }
    None
}

fn find_invariant_subspace(
    rep: &Representation,
    elements: &[Matrix],
    words: &[Vec<usize>],
    rng: &mut ChaCha8Rng,
) -> Option<Vec<Vec<Scalar>>> {
    let (m, conductor) = (rep.dim(), rep.conductor());
    let lambdas = eigenvalue_candidates(conductor);
    let gens = rep.matrices();

    let mut short: Vec<Matrix> = gens.to_vec();
    for a in gens {
        for b in gens {
            short.push(a * b);
        }
    }
    for w in &short {
        if let Some(orbit) = kernel_orbit(rep, w, &lambdas) {
            return Some(orbit);
        }
    }
    for (w, word) in elements.iter().zip(words) {
        if word.len() > 2 {
            if let Some(orbit) = kernel_orbit(rep, w, &lambdas) {
                return Some(orbit);
            }
        }
    }

    if let Ok(commutant) = intertwiners(rep, rep) {
        for c in &commutant.basis {
            let scalar = Matrix::scalar(m, c[(0, 0)].clone());
            if *c == scalar {
                continue;
            }
            if let Some(orbit) = kernel_orbit(rep, c, &lambdas) {
                return Some(orbit);
            }
            let image: Vec<Vec<Scalar>> = (0..m).map(|j| c.column(j)).collect();
            if c.rank() < m {
                if let Some(orbit) = first_proper_orbit(rep, &image) {
                    return Some(orbit);
                }
            }
        }
    }

    for _ in 0..RANDOM_ELEMENTS {
        let combo = elements.iter().fold(Matrix::zeros(m, m, conductor), |acc, e| {
            let t: i64 = rng.random_range(-3..=3);
            &acc + &e.scale(&Scalar::from_integer(conductor, t))
        });
        let kernel = combo.nullspace();
        if !kernel.is_empty() && kernel.len() < m {
            if let Some(orbit) = first_proper_orbit(rep, &kernel) {
                return Some(orbit);
            }
        }
    }

    let standard: Vec<Vec<Scalar>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { Scalar::one(conductor) } else { Scalar::zero(conductor) }).collect())
        .collect();
    first_proper_orbit(rep, &standard)
}

/// Sub- and quotient representations for an invariant subspace W: in the
/// basis (W, complement) every matrix is [[A₁₁, A₁₂], [0, A₂₂]].
fn restrict(rep: &Representation, subspace: &[Vec<Scalar>]) -> (Representation, Representation) {
    let (m, conductor) = (rep.dim(), rep.conductor());
    let k = subspace.len();
    let mut basis = EchelonBasis::new(m, conductor);
    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(m);
    for v in subspace {
        basis.insert(v);
        columns.push(v.clone());
    }
    for i in 0..m {
        let e: Vec<Scalar> =
            (0..m).map(|j| if i == j { Scalar::one(conductor) } else { Scalar::zero(conductor) }).collect();
        if basis.insert(&e) {
            columns.push(e);
        }
    }
    let p = Matrix::from_columns(&columns, conductor);
    let p_inv = p.inverse().expect("adapted basis is invertible");
    let (mut sub, mut quotient) = (Vec::new(), Vec::new());
    for a in rep.matrices() {
        let adapted = &(&p_inv * a) * &p;
        debug_assert!(adapted.submatrix(k, m, 0, k).is_zero());
        sub.push(adapted.submatrix(0, k, 0, k));
        quotient.push(adapted.submatrix(k, m, k, m));
    }
    (
        Representation::new(sub, Provenance::SplitOutput).expect("blocks are square"),
        Representation::new(quotient, Provenance::SplitOutput).expect("blocks are square"),
    )
}

/// Block-diagonal sum of two representations with the same arity and field.
pub fn direct_sum(a: &Representation, b: &Representation) -> Result<Representation, crate::error::CliffordError> {
    use crate::error::{AlgebraError, CliffordError};
    if a.nvars() != b.nvars() {
        return Err(CliffordError::ShapeMismatch(format!(
            "cannot sum representations with {} and {} matrices",
            a.nvars(),
            b.nvars()
        )));
    }
    if a.conductor() != b.conductor() {
        return Err(AlgebraError::ConductorMismatch { left: a.conductor(), right: b.conductor() }.into());
    }
    let matrices = a.matrices().iter().zip(b.matrices()).map(|(x, y)| x.block_diag(y)).collect();
    Representation::new(matrices, Provenance::DirectSum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(mats: &[&[Vec<i64>]]) -> Representation {
        Representation::new(mats.iter().map(|m| Matrix::from_integers(m, 1)).collect(), Provenance::UserSupplied)
            .unwrap()
    }

    #[test]
    fn irreducible_input_is_returned_unchanged() {
        let p = rep(&[&[vec![0, 1], vec![1, 0]], &[vec![1, 0], vec![0, -1]]]);
        let report = split(&p, 0);
        assert_eq!(report.outcome, SplitOutcome::Irreducible);
        assert_eq!(report.representations(), vec![p]);
    }

    #[test]
    fn diagonal_splits_into_points() {
        let d = rep(&[&[vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 2]], &[vec![3, 0, 0], vec![0, 0, 0], vec![0, 0, 1]]]);
        let report = split(&d, 0);
        assert_eq!(report.outcome, SplitOutcome::Split);
        assert_eq!(report.parts.len(), 3);
        assert!(report.parts.iter().all(|p| p.representation.dim() == 1));
    }

    #[test]
    fn jordan_block_splits_into_sub_and_quotient() {
        let j = rep(&[&[vec![1, 1], vec![0, 1]]]);
        let report = split(&j, 0);
        assert_eq!(report.outcome, SplitOutcome::Split);
        let blocks: Vec<String> = report.parts.iter().map(|p| p.representation.matrices()[0].to_string()).collect();
        assert_eq!(blocks.len(), 2);
    }
}
