use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{monomial_words, residual, residual_entries, NumericCubic, NumericRepresentation, ACCEPT, M3};
use crate::clifford::{nondegenerate, Form};
use crate::error::LinearizerError;
use crate::matrix::Matrix;

const BACKTRACK_STEPS: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    pub starts: u64,
    pub seed: u64,
    pub accept: f64,
    pub max_iterations: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { starts: 200, seed: 0, accept: ACCEPT, max_iterations: 100 }
    }
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    /// Accepted solutions in start order.
    pub solutions: Vec<NumericRepresentation>,
    /// Change of variables M used when f(1, 0, 0) = 0; solutions were found
    /// for f(Mx) and mapped back.
    pub transform: Option<Matrix>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Refinement {
    pub matrices: [M3; 3],
    pub residual: f64,
    pub iterations: usize,
}

fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
}

/// diag(α, ωα, ω²α) with α the principal cube root of f(1, 0, 0).
fn gauge(f: &NumericCubic) -> M3 {
    let alpha = f.coeffs()[0].powf(1.0 / 3.0);
    let w = omega();
    M3::from_diagonal(&nalgebra::Vector3::new(alpha, alpha * w, alpha * w * w))
}

/// Conjugates a solution so that A₁ = diag(α, ωα, ω²α), using the spectral
/// projectors of A₁. Returns None when A₁ does not have the three distinct
/// eigenvalues α, ωα, ω²α.
pub fn gauge_fix(mats: &[M3; 3], f: &NumericCubic) -> Option<[M3; 3]> {
    let target = gauge(f);
    let lambda = [target[(0, 0)], target[(1, 1)], target[(2, 2)]];
    let mut v = M3::zeros();
    for k in 0..3 {
        let mut p = M3::identity();
        for j in (0..3).filter(|&j| j != k) {
            p = p * (mats[0] - M3::identity() * lambda[j]) / (lambda[k] - lambda[j]);
        }
        let col = (0..3).max_by(|&a, &b| p.column(a).norm().total_cmp(&p.column(b).norm()))?;
        if p.column(col).norm() < 1e-8 {
            return None;
        }
        v.set_column(k, &p.column(col));
    }
    let inv = v.try_inverse()?;
    Some(std::array::from_fn(|i| inv * mats[i] * v))
}

fn jacobian(mats: &[M3; 3]) -> DMatrix<Complex64> {
    let mut j = DMatrix::zeros(90, 18);
    for (mi, (_, words)) in monomial_words().iter().enumerate() {
        for w in words {
            for pos in 0..3 {
                let letter = w[pos];
                if letter == 0 {
                    continue;
                }
                let prefix = w[..pos].iter().fold(M3::identity(), |acc, &l| acc * mats[l]);
                let suffix = w[pos + 1..].iter().fold(M3::identity(), |acc, &l| acc * mats[l]);
                for r in 0..3 {
                    for c in 0..3 {
                        for p in 0..3 {
                            for q in 0..3 {
                                j[(mi * 9 + r * 3 + c, (letter - 1) * 9 + p * 3 + q)] +=
                                    prefix[(r, p)] * suffix[(q, c)];
                            }
                        }
                    }
                }
            }
        }
    }
    j
}

fn with_step(mats: &[M3; 3], delta: &DVector<Complex64>, t: f64) -> [M3; 3] {
    let mut out = *mats;
    for k in 0..2 {
        for p in 0..3 {
            for q in 0..3 {
                out[k + 1][(p, q)] += delta[k * 9 + p * 3 + q] * t;
            }
        }
    }
    out
}

fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Gauss–Newton on A₂, A₃ with A₁ held fixed: each step is the minimum-norm
/// least-squares solution of J·δ = −r (via SVD), shortened by halving until
/// ‖r‖₂ decreases.
pub fn refine(f: &NumericCubic, start: [M3; 3], max_iterations: usize) -> Refinement {
    let scale = f.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max);
    let stop = 1e-14 * scale;
    let mut mats = start;
    let mut r = residual_entries(&mats, f);
    let mut norm = l2(&r);
    let mut iterations = 0;
    while iterations < max_iterations {
        if r.iter().map(|z| z.norm()).fold(0.0, f64::max) <= stop {
            break;
        }
        let svd = jacobian(&mats).svd(true, true);
        let eps = 1e-12 * svd.singular_values.max();
        let rhs = -DVector::from_vec(r.clone());
        let Ok(delta) = svd.solve(&rhs, eps) else { break };
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..BACKTRACK_STEPS {
            let candidate = with_step(&mats, &delta, t);
            let rc = residual_entries(&candidate, f);
            let nc = l2(&rc);
            if nc < norm {
                mats = candidate;
                r = rc;
                norm = nc;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        iterations += 1;
        if !accepted {
            break;
        }
    }
    Refinement { residual: residual(&mats, f), matrices: mats, iterations }
}

fn random_start(rng: &mut ChaCha8Rng, a1: M3, scale: f64) -> [M3; 3] {
    let mut sample = || {
        M3::from_fn(|_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im) * scale
        })
    };
    let a2 = sample();
    let a3 = sample();
    [a1, a2, a3]
}

/// Gauss–Newton from `opts.starts` seeded random initializations; returns
/// the accepted solutions in start order. Starts are independent and run in
/// parallel; start i draws from stream i of a ChaCha generator keyed by the
/// seed, so results do not depend on scheduling.
pub fn solve3(form: &Form, opts: &SolveOptions) -> Result<SolveOutcome, LinearizerError> {
    NumericCubic::from_form(form)?;
    if !nondegenerate(form)? {
        return Err(LinearizerError::Degenerate);
    }
    let (work_form, transform) = if form.coeff(&crate::poly::Monomial::new(vec![3, 0, 0])).is_zero() {
        let m = pick_transform(form, opts.seed)?;
        (form.change_of_variables(&m)?, Some(m))
    } else {
        (form.clone(), None)
    };
    let f_work = NumericCubic::from_form(&work_form)?;
    let f = NumericCubic::from_form(form)?;

    let back = transform.as_ref().map(|m| {
        let inv = m.inverse().expect("transform is invertible");
        M3::from_fn(|i, j| inv[(i, j)].to_complex())
    });

    let a1 = gauge(&f_work);
    let scale = f_work.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max).cbrt();
    let refined: Vec<Option<[M3; 3]>> = (0..opts.starts)
        .into_par_iter()
        .map(|start| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(start);
            let r = refine(&f_work, random_start(&mut rng, a1, scale), opts.max_iterations);
            (r.residual < opts.accept).then_some(r.matrices)
        })
        .collect();
    let mut solutions = Vec::new();
    for (start, mats) in refined.into_iter().enumerate() {
        let Some(b) = mats else { continue };
        let mats = match &back {
            // A_i = Σ_j (M⁻¹)_{ji} B_j
            Some(inv) => std::array::from_fn(|i| (0..3).map(|j| b[j] * inv[(j, i)]).sum()),
            None => b,
        };
        let s = NumericRepresentation::new(mats, &f, opts.seed, start as u64);
        if s.residual < opts.accept {
            solutions.push(s);
        }
    }
    Ok(SolveOutcome { solutions, transform })
}

/// A seeded integer change of variables M with det M ≠ 0 and f(M·e₁) ≠ 0.
fn pick_transform(form: &Form, seed: u64) -> Result<Matrix, LinearizerError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x005e_ed0f_c0de);
    loop {
        let rows: Vec<Vec<i64>> = (0..3).map(|_| (0..3).map(|_| rng.random_range(-2..=2)).collect()).collect();
        let m = Matrix::from_integers(&rows, form.conductor());
        if m.determinant().is_zero() {
            continue;
        }
        let g = form.change_of_variables(&m)?;
        if !g.coeff(&crate::poly::Monomial::new(vec![3, 0, 0])).is_zero() {
            return Ok(m);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauge_is_a_cube_root() {
        let f = NumericCubic::from_form(&Form::sum_of_powers(3, 3, 1)).unwrap();
        let g = gauge(&f);
        let cube = g * g * g;
        assert!((cube - M3::identity()).norm() < 1e-14);
    }

    #[test]
    fn degenerate_form_rejected() {
        let x = crate::poly::Poly::var(3, 0, 1);
        let y = crate::poly::Poly::var(3, 1, 1);
        let z = crate::poly::Poly::var(3, 2, 1);
        let hesse = &(&(&x.pow(3) + &y.pow(3)) + &z.pow(3))
            - &(&(&x * &y) * &z).scale(&crate::scalar::CyclotomicScalar::from_integer(1, 3));
        let f = Form::new(hesse).unwrap();
        assert_eq!(
            solve3(&f, &SolveOptions { starts: 1, ..Default::default() }).unwrap_err(),
            LinearizerError::Degenerate
        );
    }
}
