use hopf_poisson::quantize::{skew_coefficients, verify_skew_form};
use hopf_poisson::{
    quantization_relations, CycRat, CyclotomicField, EnvelopePresentation, Error, HopfAction, PoissonAlgebra, Scalar,
};

fn plane(c: &Scalar) -> PoissonAlgebra {
    let f = CyclotomicField::new(4).unwrap();
    PoissonAlgebra::skew(&f, &[vec![Scalar::zero(), c.clone()], vec![-c, Scalar::zero()]]).unwrap()
}

#[test]
fn skew_parameter_matches_closed_form() {
    let f = CyclotomicField::new(4).unwrap();
    let i = CycRat::zeta_pow(&f, 1);
    for (c, lambda) in [
        (CycRat::from_int(&f, 2), CycRat::from_frac(&f, 1, 3)),
        (i.clone(), CycRat::from_frac(&f, 1, 2)),
        (CycRat::from_frac(&f, -3, 2), &i + &CycRat::one(&f)),
    ] {
        let p = plane(&Scalar::num(c.clone()));
        let q = quantization_relations(&p, &lambda).unwrap();
        let lc = &lambda * &c;
        let one = CycRat::one(&f);
        let expect = (&one + &lc).try_div(&(&one - &lc)).unwrap();
        let check = verify_skew_form(&q, &skew_coefficients(&p).unwrap()).unwrap();
        assert!(check.matches);
        assert_eq!(check.q[0][1], expect);
    }
}

#[test]
fn degenerate_skew_parameter() {
    let f = CyclotomicField::new(4).unwrap();
    let p = plane(&Scalar::from_int(&f, 2));
    let q = quantization_relations(&p, &CycRat::from_frac(&f, 1, 2)).unwrap();
    assert_eq!(verify_skew_form(&q, &skew_coefficients(&p).unwrap()), Err(Error::Degenerate(1, 2)));
}

#[test]
fn quantization_of_trivial_bracket_is_commutative() {
    let f = CyclotomicField::rationals();
    let q = quantization_relations(&PoissonAlgebra::trivial(&f, 3), &CycRat::from_int(&f, 5)).unwrap();
    assert_eq!(
        q.presentation.to_string(),
        "k< u1, u2, u3 | u1*u2 - u2*u1, u1*u3 - u3*u1, u2*u3 - u3*u2 >"
    );
    assert!(q.matches_commutative_dimensions(4).unwrap());
}

#[test]
fn envelope_of_trivial_bracket_is_polynomial() {
    let f = CyclotomicField::rationals();
    let env = EnvelopePresentation::new(&PoissonAlgebra::trivial(&f, 2)).unwrap();
    assert!(env.pbw_dimensions_match(4).unwrap());
    assert!(env.presentation().is_graded());
}

#[test]
fn envelope_extension_for_taft_on_trivial_bracket() {
    let f = CyclotomicField::new(2).unwrap();
    let action = HopfAction::taft_standard(PoissonAlgebra::trivial(&f, 2), 2).unwrap();
    let env = EnvelopePresentation::new(action.algebra()).unwrap();
    let rep = env.check_extension_conditions(&action, false).unwrap();
    assert!(!rep.ok());
    assert!(rep.failures.iter().all(|r| r.h.contains('x')));
    assert!(rep.failures.iter().all(|r| r.residual2.is_zero()));
}
