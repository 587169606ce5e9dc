//! The unital algebra generated by the matrices of a representation.
//!
//! The representation is irreducible when this algebra is all of Mat_m.
//! Its dimension is the rank of a set of words in the m²-dimensional
//! coordinate space, and rank does not change under field extension, so
//! the verdict computed over Q(ζ_N) is the verdict over any algebraically
//! closed field containing it.

use serde::Serialize;

use super::representation::Representation;
use crate::matrix::{EchelonBasis, Matrix};
use crate::scalar::CyclotomicScalar as Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibilityReport {
    pub dimension: usize,
    pub algebra_dimension: usize,
    pub irreducible: bool,
    /// Length of the longest word needed to span the algebra.
    pub word_length: usize,
}

/// A spanning set of words for the generated algebra.
#[derive(Clone, Debug)]
pub struct AlgebraSpan {
    /// Independent words, as matrices.
    pub elements: Vec<Matrix>,
    /// 0-based generator indices, leftmost letter first.
    pub words: Vec<Vec<usize>>,
    pub word_length: usize,
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

/// Closure of {I, A₁, …, Aₙ} under left multiplication by the generators.
/// Left products alone reach every word, since w = a_{i₁}(a_{i₂}(⋯)).
pub fn algebra_span(rep: &Representation) -> AlgebraSpan {
    let (m, conductor) = (rep.dim(), rep.conductor());
    let mut basis = EchelonBasis::new(m * m, conductor);
    let mut elements = Vec::new();
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut word_length = 0;

    let identity = Matrix::identity(m, conductor);
    basis.insert(&flatten(&identity));
    elements.push(identity);
    words.push(Vec::new());
    let mut frontier = vec![0usize];

    while !frontier.is_empty() && basis.len() < m * m {
        let mut next = Vec::new();
        for &idx in &frontier {
            for (g, a) in rep.matrices().iter().enumerate() {
                let prod = a * &elements[idx];
                if basis.insert(&flatten(&prod)) {
                    let mut w = vec![g];
                    w.extend_from_slice(&words[idx]);
                    word_length = word_length.max(w.len());
                    elements.push(prod);
                    words.push(w);
                    next.push(elements.len() - 1);
                }
            }
        }
        frontier = next;
    }
    AlgebraSpan { elements, words, word_length }
}

pub fn irreducible(rep: &Representation) -> IrreducibilityReport {
    let span = algebra_span(rep);
    let m = rep.dim();
    IrreducibilityReport {
        dimension: m,
        algebra_dimension: span.elements.len(),
        irreducible: span.elements.len() == m * m,
        word_length: span.word_length,
    }
}

/// Smallest subspace containing `seeds` and stable under every generator.
pub fn spin(rep: &Representation, seeds: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let (m, conductor) = (rep.dim(), rep.conductor());
    let mut basis = EchelonBasis::new(m, conductor);
    let mut vectors: Vec<Vec<Scalar>> = Vec::new();
    let mut queue = Vec::new();
    for s in seeds {
        if basis.insert(s) {
            vectors.push(s.clone());
            queue.push(vectors.len() - 1);
        }
    }
    while let Some(idx) = queue.pop() {
        if basis.len() == m {
            break;
        }
        for a in rep.matrices() {
            let image = a.mul_vec(&vectors[idx]);
            if basis.insert(&image) {
                vectors.push(image);
                queue.push(vectors.len() - 1);
            }
        }
    }
    basis.vectors().map(<[Scalar]>::to_vec).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::representation::Provenance;

    #[test]
    fn one_dimensional_is_irreducible() {
        let rep = Representation::new(vec![Matrix::identity(1, 1)], Provenance::UserSupplied).unwrap();
        let report = irreducible(&rep);
        assert_eq!(report.algebra_dimension, 1);
        assert!(report.irreducible);
    }

    #[test]
    fn diagonal_pair_is_reducible() {
        let a = Matrix::from_integers(&[vec![1, 0], vec![0, -1]], 1);
        let rep = Representation::new(vec![a.clone(), a], Provenance::UserSupplied).unwrap();
        let report = irreducible(&rep);
        assert_eq!(report.algebra_dimension, 2);
        assert!(!report.irreducible);
        let orbit = spin(&rep, &[vec![Scalar::one(1), Scalar::zero(1)]]);
        assert_eq!(orbit.len(), 1);
    }

    #[test]
    fn pauli_pair_is_irreducible() {
        let x = Matrix::from_integers(&[vec![0, 1], vec![1, 0]], 1);
        let z = Matrix::from_integers(&[vec![1, 0], vec![0, -1]], 1);
        let rep = Representation::new(vec![x, z], Provenance::UserSupplied).unwrap();
        let report = irreducible(&rep);
        assert_eq!(report.algebra_dimension, 4);
        assert_eq!(report.word_length, 2);
    }
}
