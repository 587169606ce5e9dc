use cliffrep::clifford::{
    clock_shift, determinant_identity, direct_sum, equivalent, generate_relations, irreducible, split, tensor_diagonal,
    verify, verify_via_relations, Form, SplitOutcome,
};
use cliffrep::CyclotomicScalar as Scalar;

fn clock_shift_cubic() -> cliffrep::clifford::Representation {
    let one = Scalar::one(3);
    clock_shift(3, &one, &one, &one, &one).unwrap()
}

#[test]
fn fermat_tensor_splits_into_three_inequivalent_irreducibles() {
    let rep = tensor_diagonal(3, 3, 3).unwrap();
    let f = Form::sum_of_powers(3, 3, 3);
    assert!(verify(&rep, &f).unwrap().passed);
    assert!(verify_via_relations(&rep, &generate_relations(&f).unwrap()).unwrap().passed);
    assert_eq!(determinant_identity(&rep, &f).unwrap().r, 3);

    let report = irreducible(&rep);
    assert_eq!(report.algebra_dimension, 27);
    assert!(!report.irreducible);

    let parts = split(&rep, 1);
    assert_eq!(parts.outcome, SplitOutcome::Split);
    let reps = parts.representations();
    assert_eq!(reps.len(), 3);
    for r in &reps {
        assert_eq!(r.dim(), 3);
        assert!(verify(r, &f).unwrap().passed);
        assert_eq!(irreducible(r).algebra_dimension, 9);
        assert_eq!(determinant_identity(r, &f).unwrap().r, 1);
    }
    for i in 0..3 {
        for j in i + 1..3 {
            let eq = equivalent(&reps[i], &reps[j]).unwrap();
            assert!(!eq.equivalent);
            assert_eq!(eq.intertwiners.dimension(), 0);
        }
    }
}

#[test]
fn direct_sum_round_trip() {
    let r = clock_shift_cubic();
    let f = Form::sum_of_powers(2, 3, 3);
    let sum = direct_sum(&r, &r).unwrap();
    assert!(verify(&sum, &f).unwrap().passed);
    assert!(!irreducible(&sum).irreducible);
    let det = determinant_identity(&sum, &f).unwrap();
    assert_eq!(det.r, 2);
    assert_eq!(det.determinant, f.pow(2));

    let eq = equivalent(&sum, &sum).unwrap();
    assert!(eq.equivalent);
    assert_eq!(eq.intertwiners.dimension(), 4);
    assert_eq!(equivalent(&r, &r).unwrap().intertwiners.dimension(), 1);

    let parts = split(&sum, 3);
    assert_eq!(parts.outcome, SplitOutcome::Split);
    let reps = parts.representations();
    assert_eq!(reps.len(), 2);
    for p in &reps {
        assert!(equivalent(p, &r).unwrap().equivalent);
    }
    assert!(equivalent(&direct_sum(&reps[0], &reps[1]).unwrap(), &sum).unwrap().equivalent);
}

#[test]
fn binary_tensor_matches_clock_shift() {
    let t = tensor_diagonal(3, 2, 3).unwrap();
    assert!(equivalent(&t, &clock_shift_cubic()).unwrap().equivalent);
}
