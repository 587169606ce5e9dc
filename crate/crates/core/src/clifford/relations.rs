use serde::Serialize;

use super::form::Form;
use super::representation::Representation;
use super::verify::{EntryFailure, VerificationReport};
use crate::error::{AlgebraError, CliffordError};
use crate::matrix::Matrix;
use crate::poly::Monomial;
use crate::scalar::CyclotomicScalar as Scalar;

/// One defining relation Σ_{words w of content m} y_{w₁}⋯y_{w_d} = f_m · 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub multidegree: Monomial,
    /// Words as 0-based generator indices, in lexicographic order.
    pub words: Vec<Vec<usize>>,
    pub rhs: Scalar,
}

impl Relation {
    pub fn lhs_string(&self) -> String {
        self.words
            .iter()
            .map(|w| w.iter().map(|i| format!("y{}", i + 1)).collect::<Vec<_>>().join(""))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The finite presentation of C_f: one relation per exponent vector of
/// degree d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordPresentation {
    pub form: Form,
    pub relations: Vec<Relation>,
}

/// All words over `0..n` of length d whose letter counts equal `m`.
fn words_of_content(m: &Monomial) -> Vec<Vec<usize>> {
    fn rec(counts: &mut [u32], word: &mut Vec<usize>, left: u32, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(word.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                word.push(i);
                rec(counts, word, left - 1, out);
                word.pop();
                counts[i] += 1;
            }
        }
    }
    let mut counts = m.exponents().to_vec();
    let mut out = Vec::new();
    rec(&mut counts, &mut Vec::new(), m.degree(), &mut out);
    out
}

/// Defining relations of C_f.
///
/// Expanding (Σ αᵢyᵢ)^d and collecting the coefficient of each monomial α^m
/// turns the generator family indexed by α ∈ kⁿ into one relation per m;
/// since k is infinite the monomials α^m are linearly independent
/// functions of α, so both families generate the same ideal.
pub fn generate_relations(form: &Form) -> Result<CliffordPresentation, CliffordError> {
    let d = form.degree();
    if d < 2 {
        return Err(CliffordError::DegreeTooSmall { min: 2, got: d });
    }
    let relations = Monomial::all_of_degree(form.nvars(), d)
        .into_iter()
        .map(|m| Relation { words: words_of_content(&m), rhs: form.coeff(&m), multidegree: m })
        .collect();
    Ok(CliffordPresentation { form: form.clone(), relations })
}

pub(crate) fn check_rep_against_form(rep: &Representation, form: &Form) -> Result<(), CliffordError> {
    if rep.nvars() != form.nvars() {
        return Err(CliffordError::ArityMismatch { rep: rep.nvars(), form: form.nvars() });
    }
    if rep.conductor() != form.conductor() {
        return Err(AlgebraError::ConductorMismatch { left: rep.conductor(), right: form.conductor() }.into());
    }
    Ok(())
}

fn word_product(rep: &Representation, word: &[usize]) -> Matrix {
    let mats = rep.matrices();
    word.iter().skip(1).fold(mats[word[0]].clone(), |acc, &i| &acc * &mats[i])
}

/// Checks the representation by substituting Aᵢ for yᵢ in every relation.
pub fn verify_via_relations(
    rep: &Representation,
    presentation: &CliffordPresentation,
) -> Result<VerificationReport, CliffordError> {
    check_rep_against_form(rep, &presentation.form)?;
    let (m, conductor) = (rep.dim(), rep.conductor());
    let mut failures = Vec::new();
    for rel in &presentation.relations {
        let sum = rel.words.iter().fold(Matrix::zeros(m, m, conductor), |acc, w| &acc + &word_product(rep, w));
        for i in 0..m {
            for j in 0..m {
                let expected = if i == j { rel.rhs.clone() } else { Scalar::zero(conductor) };
                if sum[(i, j)] != expected {
                    failures.push(EntryFailure {
                        monomial: rel.multidegree.key(),
                        row: i,
                        col: j,
                        expected: expected.to_string(),
                        actual: sum[(i, j)].to_string(),
                    });
                }
            }
        }
    }
    Ok(VerificationReport::from_failures(failures))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationJson {
    pub multidegree: String,
    /// 1-based generator indices.
    pub words: Vec<Vec<usize>>,
    pub lhs: String,
    pub rhs: String,
}

impl CliffordPresentation {
    pub fn to_json(&self) -> Vec<RelationJson> {
        self.relations
            .iter()
            .map(|r| RelationJson {
                multidegree: r.multidegree.key(),
                words: r.words.iter().map(|w| w.iter().map(|i| i + 1).collect()).collect(),
                lhs: r.lhs_string(),
                rhs: r.rhs.to_string(),
            })
            .collect()
    }
}
