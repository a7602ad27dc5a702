//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so every line is visible in the test output. A failing criterion
//! only fails the process when `ACCEPTANCE_STRICT` is set, so the rest of
//! the workspace suite still runs.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hopf_poisson::action::HopfAction;
use hopf_poisson::classify::{equivariant_families, taft_quadratic_normal_form, BracketFamily, DegreeClass};
use hopf_poisson::envelope::EnvelopePresentation;
use hopf_poisson::hopf::{Element, FiniteHopf};
use hopf_poisson::ncalg::{FreePoly, Word};
use hopf_poisson::poisson::{Filtered2, PoissonAlgebra};
use hopf_poisson::polyring::{Monomial, Poly, PolyRing};
use hopf_poisson::quantize::{
    quantization_relations, skew_coefficients, specialize_central, transport_action, verify_skew_form,
};
use hopf_poisson::scalars::{CycRat, CyclotomicField, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn field(n: u32) -> Arc<CyclotomicField> {
    CyclotomicField::new(n).expect("positive order")
}

fn frac(f: &Arc<CyclotomicField>, p: i64, q: i64) -> CycRat {
    CycRat::from_frac(f, p, q)
}

fn weyl_xy(f: &Arc<CyclotomicField>) -> PoissonAlgebra {
    let ring = PolyRing::new(f.clone(), vec!["x".into(), "y".into()], vec![]).unwrap();
    PoissonAlgebra::parse(ring, vec![1, 1], &[((0, 1), "1")]).unwrap()
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let q = field(1);
    let mut checked = 0;
    let mut must_pass = Vec::new();
    for n in 1..=3 {
        must_pass.push((format!("weyl({n})"), PoissonAlgebra::weyl(&q, n)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..5 {
        let m = 2 + k % 3;
        let mut c = vec![vec![Scalar::zero(); m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let v = Scalar::from_frac(&q, rng.gen_range(-5..=5), rng.gen_range(1..=4));
                c[j][i] = -&v;
                c[i][j] = v;
            }
        }
        must_pass.push((format!("skew #{k} (m={m})"), PoissonAlgebra::skew(&q, &c).map_err(err)?));
    }
    must_pass.push(("taft_linear".into(), PoissonAlgebra::taft_linear(&q)));
    for (p, d) in [(1, 1), (-2, 1), (3, 2), (0, 1), (-7, 5)] {
        let c = Scalar::from_frac(&q, p, d);
        must_pass.push((format!("taft_quadratic({c})"), PoissonAlgebra::taft_quadratic(&q, c)));
    }
    for choice in Filtered2::all(Scalar::from_frac(&q, 2, 3)) {
        must_pass.push((format!("{choice:?}"), PoissonAlgebra::filtered2(&q, &choice)));
    }
    for (name, alg) in &must_pass {
        let rep = alg.check_jacobi();
        ensure(rep.ok(), || format!("{name} fails Jacobi: {:?}", rep.failures.first()))?;
        checked += 1;
    }
    let ring = PolyRing::numbered(q.clone(), "u", 3);
    let bad = PoissonAlgebra::parse(ring, vec![1; 3], &[((0, 1), "u3^2"), ((1, 2), "u2")]).map_err(err)?;
    let rep = bad.check_jacobi();
    ensure(!rep.ok(), || "perturbed table passes Jacobi".into())?;
    let residual = &rep.failures[0].residual;
    ensure(!residual.is_zero(), || "zero residual reported".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{checked} algebras pass; perturbed table residual {}; {elapsed:.2?}",
        bad.ring().format(residual)
    ))
}

fn criterion2() -> Outcome {
    let q = field(1);
    for n in 1..=3 {
        let w = PoissonAlgebra::weyl(&q, n);
        ensure(w.modular_derivation().is_zero(), || format!("phi != 0 on weyl({n})"))?;
        let r = w.rees().map_err(err)?;
        ensure(r.modular_derivation().is_zero(), || format!("phi != 0 on rees(weyl({n}))"))?;
    }
    let tl = PoissonAlgebra::taft_linear(&q);
    let phi = tl.modular_derivation();
    let ring = tl.ring();
    ensure(phi.images[2] == ring.constant(ring.int(-2)), || {
        format!("phi(u3) = {} on taft_linear", ring.format(&phi.images[2]))
    })?;
    let check_quadratic = |c: Scalar| -> Result<bool, String> {
        let alg = PoissonAlgebra::taft_quadratic(&q, c.clone());
        let ring = alg.ring();
        let phi = alg.modular_derivation();
        let expect = [
            ring.var(0).scale(&c),
            ring.var(1).scale(&c),
            ring.var(2).scale(&(&c * &Scalar::from_int(&q, -2))),
        ];
        for (i, e) in expect.iter().enumerate() {
            ensure(&phi.images[i] == e, || {
                format!("phi(u{}) = {} for c = {c}", i + 1, ring.format(&phi.images[i]))
            })?;
        }
        Ok(alg.is_unimodular())
    };
    ensure(!check_quadratic(Scalar::symbol(&q, "c"))?, || "generic c unimodular".into())?;
    for (p, d) in [(1, 1), (-3, 2), (5, 7)] {
        ensure(!check_quadratic(Scalar::from_frac(&q, p, d))?, || format!("c = {p}/{d} unimodular"))?;
    }
    ensure(check_quadratic(Scalar::zero())?, || "c = 0 not unimodular".into())?;
    Ok("phi = 0 on weyl(1..3) and their Rees algebras; phi(u3) = -2 on taft_linear; taft_quadratic(c): phi = (c*u1, c*u2, -2*c*u3), unimodular only at c = 0".into())
}

fn criterion3() -> Outcome {
    let q = field(1);
    for n in 1..=3 {
        let w = PoissonAlgebra::weyl(&q, n);
        let r = w.rees().map_err(err)?;
        let ring = r.ring();
        let t = ring.var(2 * n);
        for i in 0..=2 * n {
            for j in 0..=2 * n {
                let expect = if i < n && j == i + n {
                    &t * &t
                } else if j < n && i == j + n {
                    -&(&t * &t)
                } else {
                    ring.zero()
                };
                ensure(r.structure(i, j) == &expect, || {
                    format!("rees(weyl({n})) entry ({},{})", ring.vars()[i], ring.vars()[j])
                })?;
            }
        }
        ensure(w.assoc_graded().map_err(err)?.is_trivial(), || format!("gr(weyl({n})) not trivial"))?;
    }
    let r = PoissonAlgebra::taft_linear(&q).rees().map_err(err)?;
    let ring = r.ring();
    let got = r.structure(2, 1);
    let stated = ring.parse("u2*t").map_err(err)?;
    ensure(got == &stated, || {
        format!(
            "rees(weyl(n)) and gr(weyl(n)) as stated, but rees(taft_linear) has {{u3,u2}} = {} (stated: u2*t)",
            ring.format(got)
        )
    })?;
    Ok("rees(weyl(n)) = delta*t^2, gr(weyl(n)) trivial, {u3,u2} = u2*t".into())
}

fn criterion4() -> Outcome {
    for n in 2..=4u32 {
        let f = field(n);
        for m in 2..=3usize {
            let action = HopfAction::taft_standard(PoissonAlgebra::trivial(&f, m), n).map_err(err)?;
            for d in 0..=3 * n {
                let expect = Monomial::all_of_degree(m, &vec![1; m], d)
                    .iter()
                    .filter(|x| x.exponents()[0] % n == 0)
                    .count();
                let got = action.fixed_subspace(d).map_err(err)?.len();
                ensure(got == expect, || format!("n={n} m={m} d={d}: dim {got}, expected {expect}"))?;
            }
        }
        let action = HopfAction::taft_standard(PoissonAlgebra::taft_linear(&f), n).map_err(err)?;
        let rep = action.fixed_ring_report(n).map_err(err)?;
        let pres = rep.presentation().ok_or("taft_linear fixed ring brackets not expressed")?;
        let ring = pres.ring();
        let gens: Vec<String> = rep.generators.iter().map(|g| action.algebra().ring().format(g)).collect();
        ensure(gens == [format!("u1^{n}"), "u2".into(), "u3".into()], || format!("generators {gens:?}"))?;
        ensure(pres.structure(1, 2) == &ring.var(1), || format!("n={n}: {:?}", pres.format_table()))?;
        ensure(
            pres.structure(0, 2) == &ring.var(0).scale(&ring.int(n as i64)),
            || format!("n={n}: {:?}", pres.format_table()),
        )?;
        ensure(pres.structure(0, 1).is_zero(), || format!("n={n}: {:?}", pres.format_table()))?;

        let c = Scalar::symbol(&f, "c");
        let action = HopfAction::taft_standard(PoissonAlgebra::taft_quadratic(&f, c.clone()), n).map_err(err)?;
        let rep = action.fixed_ring_report(n).map_err(err)?;
        let pres = rep.presentation().ok_or("taft_quadratic fixed ring brackets not expressed")?;
        let ring = pres.ring();
        let expect = (&ring.var(0) * &ring.var(2)).scale(&(&c * &ring.int(n as i64)));
        ensure(pres.structure(0, 2) == &expect, || format!("n={n}: {:?}", pres.format_table()))?;
        ensure(rep.poisson_closed, || format!("n={n}: fixed ring not Poisson closed"))?;
    }
    Ok("fixed dimensions match for n in 2..4, m in 2..3, d <= 3n; {v2,v3} = v2, {v1,v3} = n*v1; {v1,v3} = n*c*v1*v3".into())
}

fn criterion5() -> Outcome {
    for n in [2u32, 3] {
        let f = field(n);
        let taft = |m| HopfAction::taft_standard(PoissonAlgebra::trivial(&f, m), n);
        let two = taft(2).map_err(err)?;
        for d in [DegreeClass::Constant, DegreeClass::Linear, DegreeClass::Quadratic] {
            let fam = equivariant_families(&two, d).map_err(err)?;
            ensure(fam.is_zero(), || format!("n={n} m=2 {d}: {:?}", fam.algebra.format_table()))?;
        }
        let three = taft(3).map_err(err)?;
        let constant = equivariant_families(&three, DegreeClass::Constant).map_err(err)?;
        ensure(constant.is_zero(), || format!("n={n} m=3 const: nonzero family"))?;
        let linear = equivariant_families(&three, DegreeClass::Linear).map_err(err)?;
        ensure(linear.dimension() == 1, || format!("n={n} m=3 linear: dimension {}", linear.dimension()))?;
        ensure(linear.jacobi_obstructions().is_empty(), || format!("n={n}: linear obstructions"))?;
        let quad = equivariant_families(&three, DegreeClass::Quadratic).map_err(err)?;
        ensure(quad.params == ["b", "c"], || format!("n={n}: quadratic params {:?}", quad.params))?;
        ensure(quad.jacobi_obstructions().is_empty(), || format!("n={n}: quadratic obstructions"))?;
        let one = CycRat::one(&f);
        let member = taft_quadratic_normal_form(&quad, &one, &one).map_err(err)?;
        let target = PoissonAlgebra::taft_quadratic(&f, Scalar::one(&f));
        ensure(member == target, || format!("n={n}: normal form {:?}", member.format_table()))?;
    }
    let q = field(1);
    let ring = PolyRing::new(q.clone(), (1..=3).map(|i| format!("u{i}")).collect(), vec!["b".into()]).unwrap();
    let artificial = PoissonAlgebra::parse(ring, vec![1; 3], &[((0, 1), "b*u3^2"), ((1, 2), "b*u2")]).map_err(err)?;
    let obstructions = BracketFamily::from_algebra(artificial).jacobi_obstructions();
    ensure(!obstructions.is_empty(), || "artificial family has no obstruction".into())?;
    Ok(format!(
        "m=2 zero; m=3 const zero; linear 1-parameter; quadratic (b,c), no obstructions; (1,1) normalizes to taft_quadratic(1); artificial family obstruction {}",
        obstructions[0]
    ))
}

fn criterion6() -> Outcome {
    let start = Instant::now();
    let q = field(1);
    let half = frac(&q, 1, 2);
    let one = Scalar::one(&q);
    let plane = PoissonAlgebra::skew(&q, &[vec![Scalar::zero(), one.clone()], vec![-&one, Scalar::zero()]])
        .map_err(err)?;
    let qp = quantization_relations(&plane, &half).map_err(err)?;
    let check = verify_skew_form(&qp, &skew_coefficients(&plane).unwrap()).map_err(err)?;
    ensure(check.matches && check.q[0][1] == CycRat::from_int(&q, 3), || {
        format!("plane: q = {}, matches = {}", check.q[0][1], check.matches)
    })?;

    let tq = PoissonAlgebra::taft_quadratic(&q, one.clone());
    let qt = quantization_relations(&tq, &half).map_err(err)?;
    let check = verify_skew_form(&qt, &skew_coefficients(&tq).unwrap()).map_err(err)?;
    let three = CycRat::from_int(&q, 3);
    ensure(
        check.matches && check.q[0][2] == three && check.q[1][2] == three && check.q[0][1].is_one(),
        || format!("taft_quadratic(1): q = {:?}", check.q),
    )?;

    let rw = weyl_xy(&q).rees().map_err(err)?;
    let qw = quantization_relations(&rw, &half).map_err(err)?;
    let pr = &qw.presentation;
    ensure(pr.relations().len() == 3, || format!("rees weyl: {pr}"))?;
    let w = |v: Vec<usize>, c: i64| FreePoly::word(3, Word(v), Scalar::from_int(&q, c));
    let expect = [w(vec![0, 1], 1), w(vec![1, 0], -1), w(vec![2, 2], -1)]
        .iter()
        .fold(FreePoly::zero(3), |a, t| &a + t);
    ensure(pr.relations().contains(&expect), || format!("rees weyl: {pr}"))?;
    let b = specialize_central(pr, "t").map_err(err)?;
    let w2 = |v: Vec<usize>, c: i64| FreePoly::word(2, Word(v), Scalar::from_int(&q, c));
    let weyl_rel = [w2(vec![0, 1], 1), w2(vec![1, 0], -1), w2(vec![], -1)]
        .iter()
        .fold(FreePoly::zero(2), |a, t| &a + t);
    ensure(b.relations() == [weyl_rel], || format!("specialized: {b}"))?;

    for (name, res) in [("plane", &qp), ("taft_quadratic(1)", &qt), ("rees weyl", &qw)] {
        ensure(res.matches_commutative_dimensions(4).map_err(err)?, || {
            format!("{name}: graded dimensions differ from the polynomial ring")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("q = 3; q13 = q23 = 3, q12 = 1; {pr}; specialized {b}; Hilbert functions match to degree 4; {elapsed:.2?}"))
}

fn criterion7() -> Outcome {
    let mut lines = Vec::new();
    for n in [2u32, 3, 4] {
        let f = field(n);
        let action =
            HopfAction::taft_standard(PoissonAlgebra::taft_quadratic(&f, Scalar::one(&f)), n).map_err(err)?;
        let qz = quantization_relations(action.algebra(), &frac(&f, 1, 2)).map_err(err)?;
        let rep = transport_action(&action, &qz).map_err(err)?;
        ensure(rep.ok(), || format!("n={n}: {:?}", rep.failures.first()))?;
        let lam_inv = CycRat::zeta_pow(&f, -1);
        let y = |i: usize, c: CycRat| FreePoly::word(3, Word::letter(i), Scalar::num(c));
        let one = CycRat::one(&f);
        let expect = [
            ("g", "u1", y(0, lam_inv)),
            ("g", "u2", y(1, one.clone())),
            ("g", "u3", y(2, one.clone())),
            ("x", "u1", y(1, one.clone())),
            ("x", "u2", FreePoly::zero(3)),
            ("x", "u3", FreePoly::zero(3)),
        ];
        let got: Vec<(&str, &str, &FreePoly)> =
            rep.descended.iter().map(|(g, l, p)| (g.as_str(), l.as_str(), p)).collect();
        let want: Vec<(&str, &str, &FreePoly)> = expect.iter().map(|(g, l, p)| (*g, *l, p)).collect();
        ensure(got == want, || format!("n={n}: {:?}", rep.format_descended(&qz.presentation)))?;
        if n == 3 {
            lines = rep.format_descended(&qz.presentation);
        }
    }
    Ok(format!("descends for n = 2, 3, 4; n = 3 table: {}", lines.join(", ")))
}

fn criterion8() -> Outcome {
    let q = field(1);
    let c = Scalar::symbol(&q, "c");
    let skew = PoissonAlgebra::skew(&q, &[vec![Scalar::zero(), c.clone()], vec![-&c, Scalar::zero()]]).map_err(err)?;
    let env = EnvelopePresentation::new(&skew).map_err(err)?;
    let w = |v: Vec<usize>, s: Scalar| FreePoly::word(4, Word(v), s);
    let one = Scalar::one(&q);
    let expect = [
        w(vec![2, 3], one.clone()),
        w(vec![3, 2], -&one),
        w(vec![0, 3], -&c),
        w(vec![1, 2], -&c),
    ]
    .iter()
    .fold(FreePoly::zero(4), |a, t| &a + t);
    ensure(env.presentation().relations().contains(&expect), || {
        format!("skew envelope: {}", env.presentation())
    })?;
    let numeric = PoissonAlgebra::skew(
        &q,
        &[vec![Scalar::zero(), Scalar::from_frac(&q, 3, 2)], vec![Scalar::from_frac(&q, -3, 2), Scalar::zero()]],
    )
    .map_err(err)?;
    let env_numeric = EnvelopePresentation::new(&numeric).map_err(err)?;
    ensure(env_numeric.pbw_dimensions_match(3).map_err(err)?, || "PBW dimensions differ".into())?;

    let f = field(3);
    let action = HopfAction::taft_standard(PoissonAlgebra::taft_quadratic(&f, Scalar::one(&f)), 3).map_err(err)?;
    ensure(action.verify_module_poisson(3).ok(), || "Taft action not verified".into())?;
    let env_t = EnvelopePresentation::new(action.algebra()).map_err(err)?;
    let rep = env_t.check_extension_conditions(&action, true).map_err(err)?;
    let hit = rep
        .failures
        .iter()
        .find(|r| r.h == "x" && r.a == "u1" && r.b == "u1")
        .ok_or("no residual for x on (u1,u1)")?;
    let k = Scalar::num(&CycRat::zeta_pow(&f, -1) - &CycRat::one(&f));
    let expect_t = &FreePoly::word(6, Word(vec![0, 4]), k.clone()) - &FreePoly::word(6, Word(vec![1, 3]), k);
    ensure(hit.residual1 == expect_t, || format!("residual1 = {}", env_t.format(&hit.residual1)))?;

    for n in [2u32, 3] {
        let f = field(n);
        let alg = PoissonAlgebra::weyl(&f, 1);
        let ring = alg.ring().clone();
        let hopf = FiniteHopf::group_algebra(&f, &[n]).map_err(err)?;
        let z = Scalar::num(CycRat::zeta_pow(&f, 1));
        let zi = Scalar::num(CycRat::zeta_pow(&f, -1));
        let images: BTreeMap<String, BTreeMap<usize, Poly>> =
            [("g".to_string(), [(0, ring.var(0).scale(&z)), (1, ring.var(1).scale(&zi))].into())].into();
        let action = HopfAction::new(hopf, alg, images).map_err(err)?;
        ensure(action.verify_module_poisson(3).ok(), || format!("kZ{n} action not verified"))?;
        let env = EnvelopePresentation::new(action.algebra()).map_err(err)?;
        let rep = env.check_extension_conditions(&action, false).map_err(err)?;
        ensure(rep.ok() && !rep.shortcut, || format!("kZ{n}: {:?}", rep.failures.first()))?;
    }
    Ok(format!(
        "skew relation present; PBW to degree 3; Taft residual1 = {}; kZ2, kZ3 extend",
        env_t.format(&hit.residual1)
    ))
}

fn criterion9() -> Outcome {
    for n in 2..=8u32 {
        let f = field(n);
        let t = FiniteHopf::taft(&f, n).map_err(err)?;
        ensure(t.dim() == (n * n) as usize, || format!("dim T_{n} = {}", t.dim()))?;
        ensure(t.verify_axioms().is_none(), || format!("T_{n}: {}", t.verify_axioms().unwrap()))?;
        ensure(!t.is_cocommutative(), || format!("T_{n} cocommutative"))?;
    }
    let f = field(3);
    let t = FiniteHopf::taft(&f, 3).map_err(err)?;
    let x = t.index_of("x").unwrap();
    let corrupted = t.with_antipode(x, Element::from([(x, CycRat::one(&f))]));
    ensure(corrupted.verify_axioms().is_some(), || "corrupted antipode accepted".into())?;
    for orders in [vec![2], vec![3], vec![4], vec![2, 2], vec![2, 3]] {
        let f = field(orders.iter().product());
        let g = FiniteHopf::group_algebra(&f, &orders).map_err(err)?;
        ensure(g.is_cocommutative(), || format!("group {orders:?} not cocommutative"))?;
        ensure(g.verify_axioms().is_none(), || format!("group {orders:?} fails axioms"))?;
    }
    Ok(format!(
        "T_2..T_8 pass, dim n^2, not cocommutative; corrupted antipode: {}; group algebras cocommutative",
        corrupted.verify_axioms().unwrap()
    ))
}

fn criterion10() -> Outcome {
    let f = field(2);
    let ring = PolyRing::numbered(f.clone(), "u", 3);
    let alg = PoissonAlgebra::parse(ring.clone(), vec![1; 3], &[((0, 1), "u1*u2"), ((0, 2), "u1*u3"), ((2, 1), "u2*u3")])
        .map_err(err)?;
    let hopf = FiniteHopf::taft(&f, 2).map_err(err)?;
    let action = HopfAction::parse(
        hopf,
        alg.clone(),
        &[("g", &[("u1", "u1"), ("u2", "u2"), ("u3", "-u3")]), ("x", &[("u1", "0"), ("u2", "0"), ("u3", "u1*u2")])],
    )
    .map_err(err)?;
    let x = action.hopf().index_of("x").unwrap();
    let g_u1 = action.act(action.hopf().index_of("g").unwrap(), &ring.var(0));
    let x_u3 = action.act(x, &ring.var(2));
    // {g(u1), x(u3)} - g(u1) x(u3) = {u1, u1 u2} - u1 (u1 u2)
    let first = &alg.bracket(&g_u1, &x_u3) - &(&g_u1 * &x_u3);
    ensure(first.is_zero(), || format!("first check: {}", ring.format(&first)))?;
    let r13 = action.poisson_residual(x, &ring.var(0), &ring.var(2));
    ensure(r13.is_zero(), || format!("x on (u1,u3): {}", ring.format(&r13)))?;
    let r32 = action.poisson_residual(x, &ring.var(2), &ring.var(1));
    ensure(r32.is_zero(), || format!("x on (u3,u2): {}", ring.format(&r32)))?;
    let x_u3_sq = action.act(x, &ring.parse("u3^2").map_err(err)?);
    ensure(x_u3_sq.is_zero(), || format!("x.u3^2 = {}", ring.format(&x_u3_sq)))?;
    let rep = action.verify_module_poisson(4);
    ensure(rep.ok(), || format!("{:?}", rep.failures.first()))?;
    ensure(alg.check_jacobi().ok(), || "bracket not Poisson".into())?;
    Ok("both displayed checks vanish; x.u3^2 = 0; full verification to degree 4 passes".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Jacobi/structure suite", criterion1),
        ("modular derivations", criterion2),
        ("Rees/graded", criterion3),
        ("Taft fixed rings", criterion4),
        ("classification", criterion5),
        ("quantization", criterion6),
        ("action transport", criterion7),
        ("enveloping algebras", criterion8),
        ("Hopf suite", criterion9),
        ("nonlinear Sweedler action", criterion10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{took:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 || std::env::var_os("ACCEPTANCE_STRICT").is_none() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
