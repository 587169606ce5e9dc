//! Randomized invariants. Oracles here avoid the code paths under test
//! where possible: verification is cross-checked by pointwise evaluation on a
//! grid large enough to decide a polynomial identity exactly.

use cliffrep::clifford::{
    self, clock_shift, equivalent, generate_relations, tensor_diagonal, transform_rep, verify, verify_via_relations,
    Form, Provenance, Representation,
};
use cliffrep::scalar::totient;
use cliffrep::{CyclotomicScalar as Scalar, Matrix, Poly, PolyMatrix, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CONDUCTORS: [u32; 6] = [3, 4, 5, 8, 9, 12];

fn scalar_from(conductor: u32, coeffs: &[i64]) -> Scalar {
    let q: Vec<Rational> = coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect();
    Scalar::new(conductor, q).unwrap()
}

fn arb_scalar(conductor: u32) -> impl Strategy<Value = Scalar> {
    prop::collection::vec(-4i64..=4, totient(conductor)).prop_map(move |c| scalar_from(conductor, &c))
}

fn arb_triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|n| (arb_scalar(n), arb_scalar(n), arb_scalar(n)))
}

fn arb_matrix(size: usize, conductor: u32) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(arb_scalar(conductor), size * size).prop_map(move |entries| {
        let rows = entries.chunks(size).map(<[Scalar]>::to_vec).collect();
        Matrix::from_rows(rows, conductor).unwrap()
    })
}

/// Entries are random linear forms in three variables.
fn arb_poly_matrix(size: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 3), size * size).prop_map(move |rows| {
        let entries = rows
            .iter()
            .map(|c| {
                (0..3).fold(Poly::zero(3, 3), |acc, i| &acc + &Poly::var(3, i, 3).scale(&Scalar::from_integer(3, c[i])))
            })
            .collect();
        PolyMatrix::from_entries(size, entries).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn field_axioms((a, b, c) in arb_triple()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn complex_embedding_is_a_homomorphism((a, b, _) in arb_triple()) {
        let lhs = (&a * &b).to_complex();
        let rhs = a.to_complex() * b.to_complex();
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn determinant_is_multiplicative(a in arb_matrix(3, 3), b in arb_matrix(3, 3)) {
        prop_assert_eq!((&a * &b).determinant(), &a.determinant() * &b.determinant());
    }

    #[test]
    fn inverse_round_trips(a in arb_matrix(3, 5)) {
        match a.inverse() {
            Some(inv) => prop_assert_eq!(&a * &inv, Matrix::identity(3, 5)),
            None => prop_assert!(a.determinant().is_zero()),
        }
    }

    #[test]
    fn rank_nullity(a in arb_matrix(4, 4)) {
        let (rank, null) = a.rank_nullspace();
        prop_assert_eq!(rank + null.len(), 4);
        for v in &null {
            prop_assert!(a.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn cofactor_and_bareiss_agree(p in prop::sample::select(vec![2usize, 3, 4]).prop_flat_map(arb_poly_matrix)) {
        prop_assert_eq!(p.det_cofactor(), p.det_bareiss());
    }

    #[test]
    fn determinant_commutes_with_evaluation(p in arb_poly_matrix(4), points in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 20)) {
        let det = p.det();
        for pt in &points {
            let pt: Vec<Scalar> = pt.iter().map(|&x| Scalar::from_integer(3, x)).collect();
            prop_assert_eq!(det.evaluate(&pt).unwrap(), p.evaluate(&pt).unwrap().determinant());
        }
    }
}

/// Decides (Σ xᵢAᵢ)^d = f·I by evaluation on {0..d}ⁿ. Both sides have degree
/// at most d in each variable, so agreement on the grid forces equality.
fn grid_oracle(rep: &Representation, form: &Form) -> bool {
    let (n, d, conductor) = (form.nvars(), form.degree(), rep.conductor());
    let side = d as usize + 1;
    (0..side.pow(n as u32)).all(|mut idx| {
        let point: Vec<Scalar> = (0..n)
            .map(|_| {
                let v = idx % side;
                idx /= side;
                Scalar::from_integer(conductor, v as i64)
            })
            .collect();
        let m = rep
            .matrices()
            .iter()
            .zip(&point)
            .fold(Matrix::zeros(rep.dim(), rep.dim(), conductor), |acc, (a, x)| &acc + &a.scale(x));
        m.pow(d) == Matrix::scalar(rep.dim(), form.poly().evaluate(&point).unwrap())
    })
}

fn random_invertible(rng: &mut ChaCha8Rng, size: usize, conductor: u32) -> Matrix {
    loop {
        let m =
            Matrix::from_fn(size, size, conductor, |_, _| Scalar::from_integer(conductor, rng.random_range(-2..=2)));
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// A verified representation together with its form.
fn random_fixture(rng: &mut ChaCha8Rng) -> (Representation, Form) {
    let one = Scalar::one(3);
    let (rep, form) = match rng.random_range(0..4) {
        0 => (clock_shift(3, &one, &one, &one, &one).unwrap(), Form::sum_of_powers(2, 3, 3)),
        1 => (tensor_diagonal(2, 3, 4).unwrap(), Form::sum_of_powers(3, 2, 4)),
        2 => (
            clock_shift(2, &Scalar::one(4), &Scalar::one(4), &Scalar::one(4), &Scalar::one(4)).unwrap(),
            Form::sum_of_powers(2, 2, 4),
        ),
        _ => (tensor_diagonal(3, 2, 3).unwrap(), Form::sum_of_powers(2, 3, 3)),
    };
    let n = form.nvars();
    let m = random_invertible(rng, n, rep.conductor());
    let (form, rep) = clifford::change_of_variables(&form, &rep, &m).unwrap();
    let theta = random_invertible(rng, rep.dim(), rep.conductor());
    (rep.conjugate(&theta).unwrap(), form)
}

fn corrupt(rng: &mut ChaCha8Rng, rep: &Representation) -> Representation {
    let mut mats = rep.matrices().to_vec();
    let k = rng.random_range(0..mats.len());
    let (i, j) = (rng.random_range(0..rep.dim()), rng.random_range(0..rep.dim()));
    let delta = Scalar::from_integer(rep.conductor(), rng.random_range(1..=3));
    mats[k][(i, j)] = &mats[k][(i, j)] + &delta;
    Representation::new(mats, Provenance::UserSupplied).unwrap()
}

#[test]
fn verify_and_relations_agree_with_grid_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut accepted, mut rejected) = (0, 0);
    for case in 0..100 {
        let (rep, form) = random_fixture(&mut rng);
        let rep = if case % 2 == 1 { corrupt(&mut rng, &rep) } else { rep };
        let expansion = verify(&rep, &form).unwrap();
        let relations = verify_via_relations(&rep, &generate_relations(&form).unwrap()).unwrap();
        let oracle = grid_oracle(&rep, &form);
        assert_eq!(expansion.passed, oracle, "case {case}");
        assert_eq!(relations.passed, oracle, "case {case}");
        assert_eq!(expansion.failures.is_empty(), expansion.passed);
        assert_eq!(relations.failures.is_empty(), relations.passed);
        if oracle {
            accepted += 1;
        } else {
            rejected += 1;
        }
    }
    assert_eq!(accepted, 50);
    assert_eq!(rejected, 50, "a single-entry perturbation always breaks the identity here");
}

#[test]
fn equivalence_survives_random_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let reps = tensor_diagonal(3, 3, 3).unwrap();
    let parts = clifford::split(&reps, 0).representations();
    for _ in 0..20 {
        let r = &parts[rng.random_range(0..parts.len())];
        let theta = random_invertible(&mut rng, 3, 3);
        let conj = r.conjugate(&theta).unwrap();
        let report = equivalent(r, &conj).unwrap();
        assert!(report.equivalent);
        assert_eq!(report.intertwiners.dimension(), 1);
        let w = report.witness.unwrap();
        for (a, b) in r.matrices().iter().zip(conj.matrices()) {
            assert_eq!(&(a * &w), &(&w * b));
        }
    }
}

#[test]
fn equivalence_is_an_equivalence_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let parts = clifford::split(&tensor_diagonal(3, 3, 3).unwrap(), 0).representations();
    let mut pool = Vec::new();
    for p in &parts {
        pool.push(p.clone());
        pool.push(p.conjugate(&random_invertible(&mut rng, 3, 3)).unwrap());
    }
    let eq: Vec<Vec<bool>> =
        pool.iter().map(|a| pool.iter().map(|b| equivalent(a, b).unwrap().equivalent).collect()).collect();
    for i in 0..pool.len() {
        assert!(eq[i][i]);
        for j in 0..pool.len() {
            assert_eq!(eq[i][j], eq[j][i]);
            assert_eq!(eq[i][j], i / 2 == j / 2);
            for k in 0..pool.len() {
                if eq[i][j] && eq[j][k] {
                    assert!(eq[i][k]);
                }
            }
        }
    }
}

#[test]
fn transform_composes() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let rep = tensor_diagonal(3, 3, 3).unwrap();
    for _ in 0..5 {
        let m1 = random_invertible(&mut rng, 3, 3);
        let m2 = random_invertible(&mut rng, 3, 3);
        let lhs = transform_rep(&transform_rep(&rep, &m1).unwrap(), &m2).unwrap();
        let rhs = transform_rep(&rep, &(&m1 * &m2)).unwrap();
        assert_eq!(lhs.matrices(), rhs.matrices());
    }
}
