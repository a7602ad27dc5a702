use std::sync::Arc;

use hopf_poisson::polyring::Matrix;
use hopf_poisson::{CyclotomicField, Monomial, Poly, PolyRing, Scalar};
use proptest::prelude::*;

fn ring() -> PolyRing {
    PolyRing::numbered(CyclotomicField::new(3).unwrap(), "u", 3)
}

fn poly(field: Arc<CyclotomicField>) -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..5, 0i64..3), 0..6).prop_map(move |terms| {
        Poly::from_terms(
            3,
            terms.into_iter().map(|((a, b, c), k, z)| {
                let coeff = &Scalar::from_int(&field, k) * &Scalar::num(hopf_poisson::CycRat::zeta_pow(&field, z));
                (Monomial::from_exponents(vec![a, b, c]), coeff)
            }),
        )
    })
}

proptest! {
    #[test]
    fn leibniz_rule(f in poly(ring().field().clone()), g in poly(ring().field().clone()), i in 0usize..3) {
        let lhs = (&f * &g).derivative(i);
        let rhs = &(&f.derivative(i) * &g) + &(&f * &g.derivative(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn graded_parts_sum_back(f in poly(ring().field().clone())) {
        let w = [1, 2, 1];
        let parts = f.graded_parts(&w);
        let sum = parts.values().fold(Poly::zero(3), |a, p| &a + p);
        prop_assert_eq!(&sum, &f);
        for (d, p) in &parts {
            prop_assert!(p.is_homogeneous(&w, *d));
        }
    }

    #[test]
    fn homogenize_then_set_one(f in poly(ring().field().clone())) {
        let w = [1, 1, 1];
        let Some(d) = f.degree() else { return Ok(()); };
        let h = f.homogenize(&w, d).unwrap();
        prop_assert!(h.is_homogeneous(&[1, 1, 1, 1], d));
        let one = Scalar::one(ring().field());
        prop_assert_eq!(h.set_var(3, &one).drop_last_var().unwrap(), f);
    }

    #[test]
    fn parse_format_round_trip(f in poly(ring().field().clone())) {
        let r = ring();
        prop_assert_eq!(r.parse(&r.format(&f)).unwrap(), f);
    }

    #[test]
    fn nullspace_is_kernel(entries in prop::collection::vec(-3i64..=3, 12)) {
        let f = CyclotomicField::rationals();
        let rows: Vec<Vec<Scalar>> = entries.chunks(4).map(|r| r.iter().map(|&k| Scalar::from_int(&f, k)).collect()).collect();
        let m = Matrix::from_rows(&f, rows).unwrap();
        let rank = m.rank().unwrap();
        let kernel = m.nullspace().unwrap();
        prop_assert_eq!(kernel.len() + rank, 4);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }
}

#[test]
fn symbolic_nullspace() {
    let f = CyclotomicField::rationals();
    let c = Scalar::symbol(&f, "c");
    let one = Scalar::one(&f);
    let m = Matrix::from_rows(&f, vec![vec![c.clone(), one.clone()], vec![&c * &c, c.clone()]]).unwrap();
    let kernel = m.nullspace().unwrap();
    assert_eq!(kernel.len(), 1);
    assert!(m.mul_vec(&kernel[0]).iter().all(Scalar::is_zero));
}

#[test]
fn display_order() {
    let r = ring();
    let f = r.parse("u3 + u1*u2 - 2 + 3*u1^2 + z*u2").unwrap();
    assert_eq!(r.format(&f), "3*u1^2 + u1*u2 + z*u2 + u3 - 2");
}
