//! Bracket computations checked against formulas evaluated directly in
//! the test, without the library's bracket or Jacobi code.

use std::sync::Arc;

use hopf_poisson::{CyclotomicField, Poly, PoissonAlgebra, PolyRing, Scalar};
use proptest::prelude::*;

/// `{f, g} = sum_{i,j} f_ij d_i f d_j g` over the full table.
fn oracle_bracket(p: &PoissonAlgebra, f: &Poly, g: &Poly) -> Poly {
    let m = p.nvars();
    let mut out = Poly::zero(m);
    for i in 0..m {
        for j in 0..m {
            out = &out + &(&(p.structure(i, j) * &f.derivative(i)) * &g.derivative(j));
        }
    }
    out
}

/// `phi(u_i) = sum_j d_j f_ij`.
fn oracle_modular(p: &PoissonAlgebra) -> Vec<Poly> {
    let m = p.nvars();
    (0..m)
        .map(|i| (0..m).fold(Poly::zero(m), |acc, j| &acc + &p.structure(i, j).derivative(j)))
        .collect()
}

fn oracle_jacobi_ok(p: &PoissonAlgebra) -> bool {
    let u = p.ring().vars_polys();
    let m = u.len();
    let br = |a: &Poly, b: &Poly| oracle_bracket(p, a, b);
    (0..m).all(|i| {
        (0..m).all(|j| {
            (0..m).all(|k| {
                let s = &(&br(&u[i], &br(&u[j], &u[k])) + &br(&u[j], &br(&u[k], &u[i])))
                    + &br(&u[k], &br(&u[i], &u[j]));
                s.is_zero()
            })
        })
    })
}

fn q() -> Arc<CyclotomicField> {
    CyclotomicField::rationals()
}

fn algebra(entries: &[((usize, usize), &str)], m: usize) -> PoissonAlgebra {
    PoissonAlgebra::parse(PolyRing::numbered(q(), "u", m), vec![1; m], entries).unwrap()
}

#[test]
fn library_agrees_with_oracles_on_catalogue() {
    let f = q();
    let mut catalogue = vec![
        PoissonAlgebra::weyl(&f, 2),
        PoissonAlgebra::taft_linear(&f),
        PoissonAlgebra::taft_quadratic(&f, Scalar::from_frac(&f, -5, 3)),
        algebra(&[((0, 1), "u3^2"), ((1, 2), "u2")], 3),
        algebra(&[((0, 1), "u3"), ((1, 2), "u1"), ((2, 0), "u2")], 3),
        algebra(&[((0, 1), "u1^2 + u2")], 2),
    ];
    catalogue.push(catalogue[1].rees().unwrap());
    for p in &catalogue {
        assert_eq!(p.check_jacobi().ok(), oracle_jacobi_ok(p), "{:?}", p.format_table());
        assert_eq!(p.modular_derivation().images, oracle_modular(p), "{:?}", p.format_table());
    }
}

#[test]
fn sl2_is_unimodular_and_linear_brackets_close() {
    let so3 = algebra(&[((0, 1), "u3"), ((1, 2), "u1"), ((2, 0), "u2")], 3);
    assert!(so3.check_jacobi().ok());
    assert!(so3.is_unimodular());
    assert!(!so3.is_graded());
    let gr = so3.assoc_graded().unwrap();
    assert!(gr.is_trivial());
}

#[test]
fn weyl_rees_entries() {
    let f = q();
    let r = PoissonAlgebra::weyl(&f, 1).rees().unwrap();
    assert_eq!(r.format_table(), vec!["{u1,v1} = t^2"]);
    assert_eq!(r.weights(), &[1, 1, 1]);
    assert!(r.is_graded());
}

#[test]
fn filtration_bound_is_enforced() {
    let p = algebra(&[((0, 1), "u1^3")], 2);
    assert!(p.check_filtration().is_err());
    assert!(p.rees().is_err());
}

#[test]
fn weight_grading_of_taft_brackets() {
    let f = q();
    assert!(PoissonAlgebra::taft_quadratic(&f, Scalar::one(&f)).check_weight_grading(&[1, 1, 0]));
    assert!(PoissonAlgebra::taft_linear(&f).check_weight_grading(&[1, 1, 0]));
    assert!(!PoissonAlgebra::weyl(&f, 1).check_weight_grading(&[1, 1]));
}

fn small_poly() -> impl Strategy<Value = Vec<((u32, u32, u32), i64)>> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -4i64..=4), 0..5)
}

fn to_poly(terms: &[((u32, u32, u32), i64)]) -> Poly {
    let f = q();
    Poly::from_terms(
        3,
        terms.iter().map(|&((a, b, c), k)| {
            (hopf_poisson::Monomial::from_exponents(vec![a, b, c]), Scalar::from_int(&f, k))
        }),
    )
}

proptest! {
    #[test]
    fn bracket_matches_oracle_and_is_a_biderivation(a in small_poly(), b in small_poly(), c in small_poly()) {
        let p = PoissonAlgebra::taft_quadratic(&q(), Scalar::from_int(&q(), 2));
        let (a, b, c) = (to_poly(&a), to_poly(&b), to_poly(&c));
        prop_assert_eq!(p.bracket(&a, &b), oracle_bracket(&p, &a, &b));
        prop_assert_eq!(p.bracket(&a, &b), -&p.bracket(&b, &a));
        prop_assert_eq!(p.bracket(&a, &(&b * &c)), &(&p.bracket(&a, &b) * &c) + &(&b * &p.bracket(&a, &c)));
        prop_assert!(p.jacobiator(&a, &b, &c).is_zero());
    }
}
