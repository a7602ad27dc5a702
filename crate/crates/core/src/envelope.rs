//! Universal enveloping algebras of polynomial Poisson algebras and the
//! conditions under which a Hopf action extends to them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::action::HopfAction;
use crate::error::Result;
use crate::ncalg::{binomial, normal_form, FreePoly, Presentation, Rule, Word};
use crate::poisson::{random_poly, PoissonAlgebra};
use crate::polyring::Poly;
use crate::scalars::Scalar;

const DEGCAP: usize = 64;

/// `U(P)` on letters `mu1..mum, nu1..num`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopePresentation {
    base: PoissonAlgebra,
    presentation: Presentation,
    rules: Vec<Rule>,
}

impl EnvelopePresentation {
    pub fn new(base: &PoissonAlgebra) -> Result<Self> {
        let m = base.nvars();
        let field = base.field();
        let n = 2 * m;
        let mut letters: Vec<String> = (1..=m).map(|i| format!("mu{i}")).collect();
        letters.extend((1..=m).map(|i| format!("nu{i}")));
        let one = Scalar::one(field);
        let w = |v: Vec<usize>| Word(v);
        let mut env = EnvelopePresentation {
            base: base.clone(),
            presentation: Presentation::new(field, letters.clone(), Vec::new())?,
            rules: Vec::new(),
        };
        let mut relations = Vec::new();
        let mut rules = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let rel = FreePoly::from_terms(n, [(w(vec![i, j]), one.clone()), (w(vec![j, i]), -&one)]);
                relations.push(rel);
                rules.push(Rule {
                    lhs: w(vec![j, i]),
                    rhs: FreePoly::word(n, w(vec![i, j]), one.clone()),
                });
            }
        }
        for i in 0..m {
            for j in 0..m {
                let bracket = env.mu_of(base.structure(i, j));
                let swapped = FreePoly::word(n, w(vec![j, m + i]), one.clone());
                let rel = &(&FreePoly::word(n, w(vec![m + i, j]), one.clone()) - &swapped) - &bracket;
                relations.push(rel);
                rules.push(Rule {
                    lhs: w(vec![m + i, j]),
                    rhs: &swapped + &bracket,
                });
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                let bracket = env.nu_of(base.structure(i, j));
                let ordered = FreePoly::word(n, w(vec![m + i, m + j]), one.clone());
                let rel = &(&ordered - &FreePoly::word(n, w(vec![m + j, m + i]), one.clone())) - &bracket;
                relations.push(rel);
                rules.push(Rule {
                    lhs: w(vec![m + j, m + i]),
                    rhs: &ordered - &bracket,
                });
            }
        }
        env.presentation = Presentation::new(field, letters, relations)?;
        env.rules = rules;
        Ok(env)
    }

    pub fn base(&self) -> &PoissonAlgebra {
        &self.base
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Rewrite rules into PBW order: mu letters left of nu letters, indices
    /// nondecreasing within each block.
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    fn nletters(&self) -> usize {
        2 * self.base.nvars()
    }

    /// The algebra map `u_i -> mu_i`.
    pub fn mu_of(&self, f: &Poly) -> FreePoly {
        let n = self.nletters();
        FreePoly::from_terms(n, f.terms().map(|(mono, c)| (mu_word(mono.exponents()), c.clone())))
    }

    /// `nu(u^a) = sum_i a_i mu(u^a / u_i) nu_i`, `nu(1) = 0`.
    pub fn nu_of(&self, f: &Poly) -> FreePoly {
        let m = self.base.nvars();
        let n = self.nletters();
        let field = self.base.field();
        let mut out = FreePoly::zero(n);
        for (mono, c) in f.terms() {
            for (i, &e) in mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut ex = mono.exponents().to_vec();
                ex[i] -= 1;
                let mut word = mu_word(&ex);
                word.0.push(m + i);
                out.add_term(word, c * &Scalar::from_int(field, e as i64));
            }
        }
        out
    }

    pub fn normal_form(&self, f: &FreePoly) -> Result<FreePoly> {
        normal_form(&self.rules, f, DEGCAP)
    }

    pub fn format(&self, f: &FreePoly) -> String {
        self.presentation.format(f)
    }

    /// Spot check of the PBW property: the filtered dimensions of the
    /// presentation through degree `maxdeg` agree with a polynomial ring in
    /// `2m` variables. Graded presentations are counted directly, others
    /// after homogenizing with a central letter.
    pub fn pbw_dimensions_match(&self, maxdeg: u32) -> Result<bool> {
        let n = self.nletters() as u64;
        if self.presentation.is_graded() {
            for d in 0..=maxdeg {
                let expect = binomial(n + d as u64 - 1, d as u64) as usize;
                if self.presentation.graded_dimension(d)? != expect {
                    return Ok(false);
                }
            }
        } else {
            let hom = self.presentation.homogenized("h0")?;
            for d in 0..=maxdeg {
                let expect = binomial(n + d as u64, d as u64) as usize;
                if hom.graded_dimension(d)? != expect {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn mu_word(exponents: &[u32]) -> Word {
    Word(
        exponents
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect(),
    )
}

/// Nonzero residuals of the two extension conditions for one basis element
/// and one ordered pair `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionResidual {
    pub h: String,
    pub a: String,
    pub b: String,
    /// `sum mu(h1.b) nu(h2.a) - mu(h2.b) nu(h1.a)` in PBW normal form
    pub residual1: FreePoly,
    /// `sum nu(h2.b) nu(h1.a) - nu(h1.b) nu(h2.a)` in PBW normal form
    pub residual2: FreePoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub failures: Vec<ExtensionResidual>,
    /// residuals on sampled products of degree at most two vanish too
    pub products_ok: bool,
    /// decided without computation because the Hopf algebra is
    /// cocommutative
    pub shortcut: bool,
}

impl ExtensionReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.products_ok
    }
}

impl EnvelopePresentation {
    fn residuals(&self, action: &HopfAction, h: usize, a: &Poly, b: &Poly) -> Result<(FreePoly, FreePoly)> {
        let n = self.nletters();
        let mut r1 = FreePoly::zero(n);
        let mut r2 = FreePoly::zero(n);
        for (j, k, c) in action.hopf().comult(h) {
            let h1a = action.act(*j, a);
            let h2a = action.act(*k, a);
            let h1b = action.act(*j, b);
            let h2b = action.act(*k, b);
            let t1 = &(&self.mu_of(&h1b) * &self.nu_of(&h2a)) - &(&self.mu_of(&h2b) * &self.nu_of(&h1a));
            let t2 = &(&self.nu_of(&h2b) * &self.nu_of(&h1a)) - &(&self.nu_of(&h1b) * &self.nu_of(&h2a));
            r1 = &r1 + &t1.scale_num(c);
            r2 = &r2 + &t2.scale_num(c);
        }
        Ok((self.normal_form(&r1)?, self.normal_form(&r2)?))
    }

    /// Evaluates both extension conditions for every basis element of `H`
    /// and every ordered pair of variables. With `shortcut`, cocommutative
    /// Hopf algebras are accepted without computation.
    pub fn check_extension_conditions(&self, action: &HopfAction, shortcut: bool) -> Result<ExtensionReport> {
        if shortcut && action.hopf().is_cocommutative() {
            return Ok(ExtensionReport {
                failures: Vec::new(),
                products_ok: true,
                shortcut: true,
            });
        }
        let ring = self.base.ring();
        let vars = ring.vars_polys();
        let mut failures = Vec::new();
        for h in 0..action.hopf().dim() {
            for (i, a) in vars.iter().enumerate() {
                for (j, b) in vars.iter().enumerate() {
                    let (residual1, residual2) = self.residuals(action, h, a, b)?;
                    if !residual1.is_zero() || !residual2.is_zero() {
                        failures.push(ExtensionResidual {
                            h: action.hopf().basis()[h].clone(),
                            a: ring.vars()[i].clone(),
                            b: ring.vars()[j].clone(),
                            residual1,
                            residual2,
                        });
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0xe7);
        let mut products_ok = true;
        for _ in 0..2 {
            let a = random_poly(ring, &mut rng, 2);
            let b = random_poly(ring, &mut rng, 2);
            for h in 0..action.hopf().dim() {
                let (r1, r2) = self.residuals(action, h, &a, &b)?;
                products_ok &= r1.is_zero() && r2.is_zero();
            }
        }
        Ok(ExtensionReport {
            failures,
            products_ok,
            shortcut: false,
        })
    }
}
