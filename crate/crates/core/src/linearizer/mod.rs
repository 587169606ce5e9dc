//! Numeric search for 3-dimensional representations of ternary cubics,
//! that is, complex 3×3 matrices with (xA₁ + yA₂ + zA₃)³ = f·I.
//!
//! Solutions are compared through conjugation invariants: the traces of
//! all words of length 2, 3 and 4, and the spectra of A₂ and A₃.

mod solver;

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::Form;
use crate::error::LinearizerError;
use crate::matrix::Matrix;
use crate::poly::{Monomial, PolyJson};

pub use solver::{gauge_fix, refine, solve3, Refinement, SolveOptions, SolveOutcome};

pub type M3 = Matrix3<Complex64>;

/// Default acceptance threshold on the residual.
pub const ACCEPT: f64 = 1e-9;
/// Default fingerprint distance under which two solutions are merged.
pub const MERGE: f64 = 1e-6;
/// Default separation below which distinct classes are flagged.
pub const GAP: f64 = 1e-4;

type MonomialWords = Vec<([u32; 3], Vec<[usize; 3]>)>;

/// Exponent vectors of degree 3 in three variables, graded-lex descending,
/// with every word over {0, 1, 2} of that content.
fn monomial_words() -> &'static MonomialWords {
    static WORDS: std::sync::OnceLock<MonomialWords> = std::sync::OnceLock::new();
    WORDS.get_or_init(|| {
        Monomial::all_of_degree(3, 3)
            .into_iter()
            .map(|m| {
                let e: [u32; 3] = m.exponents().try_into().expect("three variables");
                let mut words = Vec::new();
                for i in 0..3 {
                    for j in 0..3 {
                        for k in 0..3 {
                            let mut count = [0u32; 3];
                            for l in [i, j, k] {
                                count[l] += 1;
                            }
                            if count == e {
                                words.push([i, j, k]);
                            }
                        }
                    }
                }
                (e, words)
            })
            .collect()
    })
}

/// A ternary cubic with complex coefficients, indexed like
/// `monomial_words`.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericCubic {
    coeffs: Vec<Complex64>,
}

impl NumericCubic {
    pub fn from_form(form: &Form) -> Result<Self, LinearizerError> {
        if form.nvars() != 3 || form.degree() != 3 {
            return Err(LinearizerError::NotTernaryCubic { n: form.nvars(), d: form.degree() });
        }
        let coeffs =
            monomial_words().iter().map(|(e, _)| form.coeff(&Monomial::new(e.to_vec())).to_complex()).collect();
        Ok(NumericCubic { coeffs })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn evaluate(&self, x: [Complex64; 3]) -> Complex64 {
        monomial_words()
            .iter()
            .zip(&self.coeffs)
            .map(|((e, _), c)| c * x[0].powu(e[0]) * x[1].powu(e[1]) * x[2].powu(e[2]))
            .sum()
    }
}

/// The 90 coefficient-entry deviations of (xA₁ + yA₂ + zA₃)³ − f·I, ordered
/// by monomial, then row, then column.
pub fn residual_entries(mats: &[M3; 3], f: &NumericCubic) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(90);
    for ((_, words), c) in monomial_words().iter().zip(f.coeffs()) {
        let sum: M3 = words.iter().map(|w| mats[w[0]] * mats[w[1]] * mats[w[2]]).sum();
        let dev = sum - M3::identity() * *c;
        for r in 0..3 {
            for col in 0..3 {
                out.push(dev[(r, col)]);
            }
        }
    }
    out
}

/// Max-norm of the deviation of (xA₁ + yA₂ + zA₃)³ from f·I over all
/// monomial coefficients and entries.
pub fn residual(mats: &[M3; 3], f: &NumericCubic) -> f64 {
    residual_entries(mats, f).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest coefficient of tr M, e₂(M) and det M − f for M = Σ xᵢAᵢ. For
/// 3×3 matrices these vanish exactly when M³ = f·I, by Cayley–Hamilton
/// (M³ − e₁M² + e₂M − e₃I = 0).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CharResiduals {
    pub trace: f64,
    pub e2: f64,
    pub det: f64,
}

pub fn char_residuals(mats: &[M3; 3], f: &NumericCubic) -> CharResiduals {
    let t1: Vec<Complex64> = mats.iter().map(M3::trace).collect();
    // tr(M²) coefficients on x_i x_j, i ≤ j
    let mut e2 = 0.0f64;
    for i in 0..3 {
        for j in i..3 {
            let tr2 = if i == j { (mats[i] * mats[i]).trace() } else { (mats[i] * mats[j]).trace() * 2.0 };
            let sq = if i == j { t1[i] * t1[i] } else { t1[i] * t1[j] * 2.0 };
            e2 = e2.max(((sq - tr2) * 0.5).norm());
        }
    }
    // det M = (p1³ − 3p1p2 + 2p3)/6 with p_k = tr(M^k), coefficient by coefficient
    let mut det = 0.0f64;
    for ((_, words), c) in monomial_words().iter().zip(f.coeffs()) {
        let p3: Complex64 = words.iter().map(|w| (mats[w[0]] * mats[w[1]] * mats[w[2]]).trace()).sum();
        let mut p1p2 = Complex64::new(0.0, 0.0);
        let mut p1cubed = Complex64::new(0.0, 0.0);
        for w in words {
            p1p2 += t1[w[0]] * (mats[w[1]] * mats[w[2]]).trace();
            p1cubed += t1[w[0]] * t1[w[1]] * t1[w[2]];
        }
        let coeff = (p1cubed - p1p2 * 3.0 + p3 * 2.0) / 6.0;
        det = det.max((coeff - c).norm());
    }
    CharResiduals { trace: t1.iter().map(|z| z.norm()).fold(0.0, f64::max), e2, det }
}

/// Conjugation invariants of a triple of 3×3 matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fingerprint {
    /// tr(AᵢAⱼ) for i ≤ j.
    pub pair_traces: Vec<[f64; 2]>,
    /// tr(AᵢAⱼA_k) for each cyclic class of words ijk.
    pub triple_traces: Vec<[f64; 2]>,
    /// Traces of the length-4 words, one per cyclic class. Words of length
    /// at most 3 do not see the central element A₁A₂²A₃ of the Fermat
    /// cubic's representations, so without these inequivalent classes can
    /// share every other invariant.
    pub quad_traces: Vec<[f64; 2]>,
    /// Eigenvalues of A₂ and A₃, each sorted by real then imaginary part.
    pub eigenvalues: [Vec<[f64; 2]>; 2],
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn unpair(p: &[f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn eigenvalues(m: &M3) -> Vec<Complex64> {
    let t = m.schur().unpack().1;
    let mut ev = vec![t[(0, 0)], t[(1, 1)], t[(2, 2)]];
    ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    ev
}

/// Words over {0, 1, 2} of the given length that are lexicographically
/// least among their rotations.
fn necklaces(len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mut idx in 0..3usize.pow(len as u32) {
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = idx % 3;
            idx /= 3;
        }
        if (1..len).all(|r| w <= [&w[r..], &w[..r]].concat()) {
            out.push(w);
        }
    }
    out
}

fn word_trace(mats: &[M3; 3], w: &[usize]) -> Complex64 {
    w.iter().fold(M3::identity(), |acc, &l| acc * mats[l]).trace()
}

impl Fingerprint {
    pub fn of(mats: &[M3; 3]) -> Self {
        let mut pair_traces = Vec::new();
        for i in 0..3 {
            for j in i..3 {
                pair_traces.push(pair((mats[i] * mats[j]).trace()));
            }
        }
        let traces = |len| necklaces(len).iter().map(|w| pair(word_trace(mats, w))).collect();
        let spectrum = |m: &M3| eigenvalues(m).into_iter().map(pair).collect();
        Fingerprint {
            pair_traces,
            triple_traces: traces(3),
            quad_traces: traces(4),
            eigenvalues: [spectrum(&mats[1]), spectrum(&mats[2])],
        }
    }

    /// Max-norm distance; spectra are matched by the best permutation so a
    /// near-tie in the sort order cannot inflate the distance.
    pub fn distance(&self, other: &Fingerprint) -> f64 {
        let diff = |a: &[[f64; 2]], b: &[[f64; 2]]| {
            a.iter().zip(b).map(|(x, y)| (unpair(x) - unpair(y)).norm()).fold(0.0, f64::max)
        };
        let mut d = diff(&self.pair_traces, &other.pair_traces)
            .max(diff(&self.triple_traces, &other.triple_traces))
            .max(diff(&self.quad_traces, &other.quad_traces));
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for (a, b) in self.eigenvalues.iter().zip(&other.eigenvalues) {
            let best = PERMS
                .iter()
                .map(|p| (0..3).map(|i| (unpair(&a[i]) - unpair(&b[p[i]])).norm()).fold(0.0, f64::max))
                .fold(f64::INFINITY, f64::min);
            d = d.max(best);
        }
        d
    }
}

/// A numeric solution of M³ = f·I together with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericRepresentation {
    pub matrices: [M3; 3],
    pub residual: f64,
    pub fingerprint: Fingerprint,
    pub seed: u64,
    pub start: u64,
}

impl NumericRepresentation {
    pub fn new(matrices: [M3; 3], f: &NumericCubic, seed: u64, start: u64) -> Self {
        NumericRepresentation {
            residual: residual(&matrices, f),
            fingerprint: Fingerprint::of(&matrices),
            matrices,
            seed,
            start,
        }
    }
}

/// Numeric cast of an exact 3×3 matrix.
pub fn to_m3(m: &Matrix) -> Result<M3, LinearizerError> {
    if m.rows() != 3 || m.cols() != 3 {
        return Err(LinearizerError::Malformed(format!("expected a 3x3 matrix, got {}x{}", m.rows(), m.cols())));
    }
    Ok(M3::from_fn(|i, j| m[(i, j)].to_complex()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BorderlinePair {
    pub first: usize,
    pub second: usize,
    pub distance: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Classification {
    /// Indices into the input, one list per class, in order of first
    /// appearance.
    pub classes: Vec<Vec<usize>>,
    /// Class representatives closer than the gap but farther than the merge
    /// tolerance. They are kept apart.
    pub borderline: Vec<BorderlinePair>,
}

/// Greedy single pass: each solution joins the first class whose
/// representative is within `merge`, otherwise it opens a new class.
pub fn classify(solutions: &[NumericRepresentation], merge: f64, gap: f64) -> Classification {
    let mut out = Classification::default();
    for (idx, s) in solutions.iter().enumerate() {
        let mut joined = false;
        for class in out.classes.iter_mut() {
            let rep = class[0];
            let d = solutions[rep].fingerprint.distance(&s.fingerprint);
            if d <= merge {
                class.push(idx);
                joined = true;
                break;
            }
        }
        if !joined {
            for class in &out.classes {
                let d = solutions[class[0]].fingerprint.distance(&s.fingerprint);
                if d < gap {
                    out.borderline.push(BorderlinePair { first: class[0], second: idx, distance: d });
                }
            }
            out.classes.push(vec![idx]);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionJson {
    /// Three 3×3 matrices with entries as [re, im].
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
    pub residual: f64,
    pub fingerprint: Fingerprint,
    pub seed: u64,
    pub start: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionDump {
    pub form: PolyJson,
    pub seed: u64,
    pub starts: u64,
    pub accept: f64,
    pub solutions: Vec<SolutionJson>,
}

impl SolutionJson {
    pub fn from_solution(s: &NumericRepresentation) -> Self {
        let matrices =
            s.matrices.iter().map(|m| (0..3).map(|i| (0..3).map(|j| pair(m[(i, j)])).collect()).collect()).collect();
        SolutionJson {
            matrices,
            residual: s.residual,
            fingerprint: s.fingerprint.clone(),
            seed: s.seed,
            start: s.start,
        }
    }

    /// Rebuilds the solution, recomputing residual and fingerprint; the
    /// stored residual must match within 1e−12.
    pub fn to_solution(&self, f: &NumericCubic) -> Result<NumericRepresentation, LinearizerError> {
        if self.matrices.len() != 3 || self.matrices.iter().any(|m| m.len() != 3 || m.iter().any(|row| row.len() != 3))
        {
            return Err(LinearizerError::Malformed("expected three 3x3 matrices".into()));
        }
        let mats: [M3; 3] = std::array::from_fn(|k| M3::from_fn(|i, j| unpair(&self.matrices[k][i][j])));
        let s = NumericRepresentation::new(mats, f, self.seed, self.start);
        // written so that a NaN residual is rejected too
        let matches = (s.residual - self.residual).abs() <= 1e-12;
        if !matches {
            return Err(LinearizerError::ResidualMismatch { stored: self.residual, recomputed: s.residual });
        }
        Ok(s)
    }
}

impl SolutionDump {
    pub fn solutions(&self) -> Result<(Form, Vec<NumericRepresentation>), LinearizerError> {
        let form = Form::from_json(&self.form)?;
        let f = NumericCubic::from_form(&form)?;
        let sols = self.solutions.iter().map(|s| s.to_solution(&f)).collect::<Result<_, _>>()?;
        Ok((form, sols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat() -> NumericCubic {
        NumericCubic::from_form(&Form::sum_of_powers(3, 3, 1)).unwrap()
    }

    #[test]
    fn zero_matrices_have_unit_residual() {
        let zero = [M3::zeros(); 3];
        assert_eq!(residual(&zero, &fermat()), 1.0);
    }

    #[test]
    fn word_table() {
        let words = monomial_words();
        assert_eq!(words.len(), 10);
        assert_eq!(words.iter().map(|(_, w)| w.len()).sum::<usize>(), 27);
        assert_eq!(words[0].0, [3, 0, 0]);
        assert_eq!(necklaces(3).len(), 11);
        assert_eq!(necklaces(4).len(), 24);
    }

    #[test]
    fn evaluate_fermat() {
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(fermat().evaluate([one, one, one]), Complex64::new(3.0, 0.0));
    }

    #[test]
    fn rejects_non_cubic() {
        assert!(NumericCubic::from_form(&Form::sum_of_powers(2, 3, 1)).is_err());
    }

    #[test]
    fn empty_classification() {
        assert!(classify(&[], MERGE, GAP).classes.is_empty());
    }
}
