//! Hopf algebra actions on polynomial Poisson algebras.
//!
//! An action is specified by the images of the variables under each Hopf
//! generator and extended to the whole polynomial ring through
//! `h.(ab) = (h1.a)(h2.b)`.

mod dual;
mod fixed;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hopf::{Element, FiniteHopf, HopfKind};
use crate::poisson::{random_poly, PoissonAlgebra};
use crate::polyring::{Monomial, Poly};
use crate::scalars::{CycRat, Scalar};

pub use dual::Coaction;
pub use fixed::FixedRingReport;

/// Which law a [`Failure`] violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// a defining relation of the Hopf algebra does not act as zero
    Relation(String),
    /// `h.1 = eps(h) 1` or `1.a = a`
    Unit,
    /// `h.(ab) = (h1.a)(h2.b)`
    ModuleAlgebra,
    /// `h.{a,b} = {h1.a, h2.b}`
    PoissonCompat,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Relation(r) => write!(f, "relation {r}"),
            Axiom::Unit => f.write_str("unit"),
            Axiom::ModuleAlgebra => f.write_str("module algebra"),
            Axiom::PoissonCompat => f.write_str("Poisson compatibility"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub axiom: Axiom,
    pub witness: String,
    pub residual: Poly,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn push(&mut self, axiom: Axiom, witness: String, residual: Poly) {
        if !residual.is_zero() {
            self.failures.push(Failure {
                axiom,
                witness,
                residual,
            });
        }
    }
}

/// Left action of a finite-dimensional Hopf algebra on a polynomial Poisson
/// algebra.
pub struct HopfAction {
    hopf: Arc<FiniteHopf>,
    algebra: PoissonAlgebra,
    /// `gen_images[g][i]` is the image of `u_i` under generator `g`
    gen_images: Vec<Vec<Poly>>,
    cache: RwLock<HashMap<(usize, Monomial), Poly>>,
}

impl Clone for HopfAction {
    fn clone(&self) -> Self {
        HopfAction {
            hopf: self.hopf.clone(),
            algebra: self.algebra.clone(),
            gen_images: self.gen_images.clone(),
            cache: RwLock::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for HopfAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HopfAction")
            .field("hopf", &self.hopf.basis())
            .field("vars", &self.algebra.ring().vars())
            .field("generators", &self.format_generators())
            .finish()
    }
}

impl HopfAction {
    /// Builds an action from generator images. Variables missing from a
    /// generator's table are sent to `eps(g) u_i`.
    pub fn new(
        hopf: impl Into<Arc<FiniteHopf>>,
        algebra: PoissonAlgebra,
        images: BTreeMap<String, BTreeMap<usize, Poly>>,
    ) -> Result<Self> {
        let hopf = hopf.into();
        if hopf.field() != algebra.field() {
            return Err(Error::FieldMismatch(hopf.field().order(), algebra.field().order()));
        }
        let m = algebra.nvars();
        for name in images.keys() {
            if !hopf.generators().iter().any(|(g, _)| g == name) {
                return Err(Error::UnknownSymbol(name.clone()));
            }
        }
        let mut gen_images = Vec::new();
        for (name, idx) in hopf.generators() {
            let eps = Scalar::num(hopf.counit(*idx).clone());
            let given = images.get(name);
            let mut row = Vec::with_capacity(m);
            for i in 0..m {
                let img = match given.and_then(|g| g.get(&i)) {
                    Some(p) if p.nvars() != m => return Err(Error::VariableMismatch(m, p.nvars())),
                    Some(p) => p.clone(),
                    None => algebra.ring().var(i).scale(&eps),
                };
                row.push(img);
            }
            if let Some(g) = given {
                if let Some(bad) = g.keys().find(|&&i| i >= m) {
                    return Err(Error::InvalidStructure(format!("variable index {bad} out of range")));
                }
            }
            gen_images.push(row);
        }
        Ok(HopfAction {
            hopf,
            algebra,
            gen_images,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Builds an action from generator images written as polynomial strings,
    /// e.g. `[("g", &[("u1", "-u1")])]`.
    pub fn parse(
        hopf: impl Into<Arc<FiniteHopf>>,
        algebra: PoissonAlgebra,
        images: &[(&str, &[(&str, &str)])],
    ) -> Result<Self> {
        let ring = algebra.ring().clone();
        let mut map = BTreeMap::new();
        for (g, table) in images {
            let mut row = BTreeMap::new();
            for (var, text) in *table {
                let i = ring.var_index(var).ok_or_else(|| Error::UnknownSymbol(var.to_string()))?;
                row.insert(i, ring.parse(text)?);
            }
            map.insert(g.to_string(), row);
        }
        HopfAction::new(hopf, algebra, map)
    }

    /// The standard Taft action: `g.u1 = lambda^-1 u1`, `x.u1 = u2`, and
    /// every other variable is fixed by `g` and killed by `x`.
    pub fn taft_standard(algebra: PoissonAlgebra, n: u32) -> Result<Self> {
        if algebra.nvars() < 2 {
            return Err(Error::InvalidArgument("the standard Taft action needs at least two variables".into()));
        }
        let hopf = FiniteHopf::taft(algebra.field(), n)?;
        let HopfKind::Taft { lambda, .. } = hopf.kind() else {
            unreachable!()
        };
        let ring = algebra.ring();
        let m = algebra.nvars();
        let g: BTreeMap<usize, Poly> = [(0, ring.var(0).scale_num(&lambda.inv()?))].into();
        let mut x: BTreeMap<usize, Poly> = [(0, ring.var(1))].into();
        for i in 1..m {
            x.insert(i, ring.zero());
        }
        HopfAction::new(hopf, algebra, [("g".to_string(), g), ("x".to_string(), x)].into())
    }

    /// Every basis element acts by its counit.
    pub fn trivial(hopf: impl Into<Arc<FiniteHopf>>, algebra: PoissonAlgebra) -> Result<Self> {
        HopfAction::new(hopf, algebra, BTreeMap::new())
    }

    pub fn hopf(&self) -> &FiniteHopf {
        &self.hopf
    }

    pub fn algebra(&self) -> &PoissonAlgebra {
        &self.algebra
    }

    /// Image of `u_i` under the `g`-th generator.
    pub fn generator_image(&self, g: usize, i: usize) -> &Poly {
        &self.gen_images[g][i]
    }

    /// Lines `g(u1) = ...` for every generator and variable.
    pub fn format_generators(&self) -> Vec<String> {
        let ring = self.algebra.ring();
        let mut out = Vec::new();
        for (g, (name, _)) in self.hopf.generators().iter().enumerate() {
            for (i, v) in ring.vars().iter().enumerate() {
                out.push(format!("{name}({v}) = {}", ring.format(&self.gen_images[g][i])));
            }
        }
        out
    }

    fn generator_of_basis(&self, h: usize) -> Option<usize> {
        let w = self.hopf.word(h);
        (w.len() == 1 && self.hopf.generators()[w[0]].1 == h).then(|| w[0])
    }

    fn cached(&self, key: &(usize, Monomial)) -> Option<Poly> {
        self.cache.read().expect("cache lock").get(key).cloned()
    }

    fn store(&self, key: (usize, Monomial), p: Poly) {
        self.cache.write().expect("cache lock").entry(key).or_insert(p);
    }

    /// `e_h . u_i`.
    fn act_var(&self, h: usize, i: usize) -> Poly {
        let m = self.algebra.nvars();
        let key = (h, Monomial::var(m, i));
        if let Some(p) = self.cached(&key) {
            return p;
        }
        let p = if let Some(g) = self.generator_of_basis(h) {
            self.gen_images[g][i].clone()
        } else {
            let word = self.hopf.word(h).to_vec();
            self.act_word(&word, &self.algebra.ring().var(i))
        };
        self.store(key, p.clone());
        p
    }

    fn act_monomial(&self, h: usize, mono: &Monomial) -> Poly {
        let m = self.algebra.nvars();
        let Some(i) = mono.first_var() else {
            let eps = Scalar::num(self.hopf.counit(h).clone());
            return Poly::constant(m, eps);
        };
        let rest = mono.div_var(i).unwrap();
        if rest.is_one() {
            return self.act_var(h, i);
        }
        let key = (h, mono.clone());
        if let Some(p) = self.cached(&key) {
            return p;
        }
        let mut out = Poly::zero(m);
        for (j, k, c) in self.hopf.comult(h) {
            let left = self.act_var(*j, i);
            if left.is_zero() {
                continue;
            }
            let right = self.act_monomial(*k, &rest);
            if right.is_zero() {
                continue;
            }
            out = &out + &(&left * &right).scale_num(c);
        }
        self.store(key, out.clone());
        out
    }

    /// `e_h . f` for the basis element `h`.
    pub fn act(&self, h: usize, f: &Poly) -> Poly {
        let mut out = Poly::zero(f.nvars());
        for (mono, c) in f.terms() {
            let img = self.act_monomial(h, mono);
            if !img.is_zero() {
                out = &out + &img.scale(c);
            }
        }
        out
    }

    /// Action of an arbitrary element of the Hopf algebra.
    pub fn act_element(&self, a: &Element, f: &Poly) -> Poly {
        a.iter().fold(Poly::zero(f.nvars()), |acc, (&h, c)| &acc + &self.act(h, f).scale_num(c))
    }

    /// Action of a product of generators; the rightmost acts first.
    pub fn act_word(&self, word: &[usize], f: &Poly) -> Poly {
        word.iter()
            .rev()
            .fold(f.clone(), |p, &g| self.act(self.hopf.generators()[g].1, &p))
    }

    fn basis_name(&self, h: usize) -> &str {
        &self.hopf.basis()[h]
    }

    /// Verifies the H-module Poisson algebra axioms. Generator-level checks
    /// are exhaustive; random polynomials of degree up to `maxdeg` give an
    /// additional product-level check.
    pub fn verify_module_poisson(&self, maxdeg: u32) -> VerificationReport {
        let maxdeg = maxdeg.max(2);
        let ring = self.algebra.ring();
        let vars = ring.vars_polys();
        let m = vars.len();
        let d = self.hopf.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(0xac7);
        let mut report = VerificationReport::default();

        let samples: Vec<Poly> = (0..3).map(|_| random_poly(ring, &mut rng, maxdeg)).collect();
        for rel in self.hopf.relations() {
            for (witness, f) in vars
                .iter()
                .enumerate()
                .map(|(i, v)| (ring.vars()[i].clone(), v))
                .chain(samples.iter().map(|s| (ring.format(s), s)))
            {
                let residual = rel.terms.iter().fold(Poly::zero(m), |acc, (c, w)| {
                    &acc + &self.act_word(w, f).scale_num(c)
                });
                report.push(Axiom::Relation(rel.label.clone()), format!("on {witness}"), residual);
            }
        }

        for h in 0..d {
            let eps = Scalar::num(self.hopf.counit(h).clone());
            let residual = &self.act(h, &ring.one()) - &ring.constant(eps);
            report.push(Axiom::Unit, format!("{}.1", self.basis_name(h)), residual);
        }
        for (i, v) in vars.iter().enumerate() {
            let residual = &self.act_element(self.hopf.unit(), v) - v;
            report.push(Axiom::Unit, format!("1.{}", ring.vars()[i]), residual);
        }

        let half = (maxdeg / 2).max(1);
        let pairs: Vec<(Poly, Poly)> = (0..2)
            .map(|_| (random_poly(ring, &mut rng, half), random_poly(ring, &mut rng, half)))
            .collect();
        for h in 0..d {
            for (f, g) in &pairs {
                let mut rhs = Poly::zero(m);
                for (j, k, c) in self.hopf.comult(h) {
                    rhs = &rhs + &(&self.act(*j, f) * &self.act(*k, g)).scale_num(c);
                }
                let residual = &self.act(h, &(f * g)) - &rhs;
                let witness = format!("{} on ({})*({})", self.basis_name(h), ring.format(f), ring.format(g));
                report.push(Axiom::ModuleAlgebra, witness, residual);
            }
        }

        for h in 0..d {
            for i in 0..m {
                for j in 0..m {
                    let residual = self.poisson_residual(h, &vars[i], &vars[j]);
                    let witness = format!("{} on ({},{})", self.basis_name(h), ring.vars()[i], ring.vars()[j]);
                    report.push(Axiom::PoissonCompat, witness, residual);
                }
            }
            for (f, g) in &pairs {
                let residual = self.poisson_residual(h, f, g);
                let witness = format!("{} on ({}, {})", self.basis_name(h), ring.format(f), ring.format(g));
                report.push(Axiom::PoissonCompat, witness, residual);
            }
        }
        report
    }

    /// `h.{a,b} - sum {h1.a, h2.b}`.
    pub fn poisson_residual(&self, h: usize, a: &Poly, b: &Poly) -> Poly {
        let mut rhs = Poly::zero(a.nvars());
        for (j, k, c) in self.hopf.comult(h) {
            let left = self.act(*j, a);
            let right = self.act(*k, b);
            if left.is_zero() || right.is_zero() {
                continue;
            }
            rhs = &rhs + &self.algebra.bracket(&left, &right).scale_num(c);
        }
        &self.act(h, &self.algebra.bracket(a, b)) - &rhs
    }

    /// True when every generator sends each variable into the span of the
    /// variables.
    pub fn is_linear(&self) -> bool {
        self.gen_images
            .iter()
            .flatten()
            .all(|p| p.is_homogeneous(&vec![1; self.algebra.nvars()], 1))
    }

    /// Extends the action to the Rees algebra with `h.t = eps(h) t`.
    pub fn extend_to_rees(&self) -> Result<HopfAction> {
        let rees = self.algebra.rees()?;
        let w = self.algebra.weights();
        let t = self.algebra.nvars();
        let mut images = BTreeMap::new();
        for (g, (name, idx)) in self.hopf.generators().iter().enumerate() {
            let mut row = BTreeMap::new();
            for (i, img) in self.gen_images[g].iter().enumerate() {
                let h = img.homogenize(w, w[i]).map_err(|_| {
                    Error::InvalidStructure(format!(
                        "{name}({}) has degree above {}; the action does not preserve the filtration",
                        self.algebra.ring().vars()[i],
                        w[i]
                    ))
                })?;
                row.insert(i, h);
            }
            let eps = Scalar::num(self.hopf.counit(*idx).clone());
            row.insert(t, rees.ring().var(t).scale(&eps));
            images.insert(name.clone(), row);
        }
        HopfAction::new(self.hopf.clone(), rees, images)
    }

    /// Inner faithfulness of a Taft algebra action: no nonzero Hopf ideal
    /// annihilates the algebra. Every nonzero Hopf ideal of a Taft algebra
    /// contains `x`, so for a genuine action this holds iff `x` moves some
    /// variable. Returns false when the Taft relations fail on the
    /// variables.
    pub fn taft_inner_faithful(&self) -> Result<bool> {
        if !matches!(self.hopf.kind(), HopfKind::Taft { .. }) {
            return Err(Error::NotTaft);
        }
        let vars = self.algebra.ring().vars_polys();
        let m = vars.len();
        let relations_hold = self.hopf.relations().iter().all(|rel| {
            vars.iter().all(|v| {
                rel.terms
                    .iter()
                    .fold(Poly::zero(m), |acc, (c, w)| &acc + &self.act_word(w, v).scale_num(c))
                    .is_zero()
            })
        });
        let x_moves = (0..m).any(|i| !self.gen_images[1][i].is_zero());
        Ok(relations_hold && x_moves)
    }

    /// Multiplicative orders of the eigenvalues of `g` on variables it
    /// scales; `None` for variables `g` does not act on diagonally.
    pub fn taft_g_eigenvalue_orders(&self) -> Result<Vec<Option<u32>>> {
        if !matches!(self.hopf.kind(), HopfKind::Taft { .. }) {
            return Err(Error::NotTaft);
        }
        let ring = self.algebra.ring();
        let field = ring.field();
        Ok((0..self.algebra.nvars())
            .map(|i| {
                let img = &self.gen_images[0][i];
                let (mono, c) = img.leading_term()?;
                if img.len() != 1 || *mono != Monomial::var(ring.nvars(), i) {
                    return None;
                }
                let c = c.to_num(field).ok()?;
                (1..=field.order()).find(|&k| c.pow(k).is_one())
            })
            .collect())
    }

    /// True when both actions have the same Hopf basis size and every
    /// basis element acts identically on the variables.
    pub fn same_action_on_variables(&self, other: &HopfAction) -> bool {
        self.hopf.dim() == other.hopf.dim()
            && self.algebra == other.algebra
            && (0..self.hopf.dim())
                .all(|h| (0..self.algebra.nvars()).all(|i| self.act_var(h, i) == other.act_var(h, i)))
    }

    pub(crate) fn eps(&self, h: usize) -> CycRat {
        self.hopf.counit(h).clone()
    }
}
