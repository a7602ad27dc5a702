//! Sparse commutative polynomials over [`Scalar`], weighted gradings and the
//! exact linear algebra used by every verification.

mod matrix;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::{push_term, CycRat, CyclotomicField, Scalar};

pub use matrix::{Matrix, RowSpace, SparseRow};
pub(crate) use parse::is_identifier;

/// Exponent vector of a monomial `u1^a1 * ... * um^am`.
///
/// Ordered degree-lexicographically with `u1 > u2 > ... > um`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / u_i`, if `u_i` divides `self`.
    pub fn div_var(&self, i: usize) -> Option<Self> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }

    /// Index of the first variable occurring in the monomial.
    pub fn first_var(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// All monomials in `nvars` variables of weighted degree exactly `d`,
    /// in descending term order.
    pub fn all_of_degree(nvars: usize, weights: &[u32], d: u32) -> Vec<Monomial> {
        fn rec(i: usize, left: u32, w: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == w.len() {
                if left == 0 {
                    out.push(Monomial(cur.clone()));
                }
                return;
            }
            let mut e = left / w[i];
            loop {
                cur.push(e);
                rec(i + 1, left - e * w[i], w, cur, out);
                cur.pop();
                if e == 0 {
                    break;
                }
                e -= 1;
            }
        }
        assert_eq!(weights.len(), nvars);
        let mut out = Vec::new();
        rec(0, d, weights, &mut Vec::with_capacity(nvars), &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in a fixed number of variables with [`Scalar`] coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "Poly({})", self.format_with(&names))
    }
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize, field: &Arc<CyclotomicField>) -> Self {
        Self::constant(nvars, Scalar::one(field))
    }

    pub fn var(nvars: usize, i: usize, field: &Arc<CyclotomicField>) -> Self {
        Self::monomial(Monomial::var(nvars, i), Scalar::one(field))
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// The constant coefficient when the polynomial has degree <= 0.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                let s = &*slot + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut out = Poly::zero(self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn scale_num(&self, c: &CycRat) -> Self {
        self.scale(&Scalar::num(c.clone()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32, field: &Arc<CyclotomicField>) -> Self {
        let mut out = Poly::one(self.nvars, field);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms.keys().map(|m| m.weighted_degree(weights)).max()
    }

    pub fn is_homogeneous(&self, weights: &[u32], d: u32) -> bool {
        self.terms.keys().all(|m| m.weighted_degree(weights) == d)
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let field = c.field().expect("nonzero coefficient");
            let k = Scalar::from_int(field, e as i64);
            out.add_term(m.div_var(i).unwrap(), c * &k);
        }
        out
    }

    /// The algebra homomorphism sending `u_i` to `images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::VariableMismatch(self.nvars, images.len()));
        }
        let target = images.first().map_or(0, Poly::nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::VariableMismatch(target, bad.nvars));
        }
        let mut out = Poly::zero(target);
        let mut powers: Vec<Vec<Poly>> = vec![Vec::new(); self.nvars];
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(images[i].clone());
                }
                while cache.len() < e as usize {
                    let next = cache.last().unwrap() * &images[i];
                    cache.push(next);
                }
                term = &term * &cache[e as usize - 1];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Replaces variable `i` by the scalar `value`, keeping the arity.
    pub fn set_var(&self, i: usize, value: &Scalar) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut k = m.clone();
            k.0[i] = 0;
            let coeff = if e == 0 { c.clone() } else { c * &value.pow(e) };
            out.add_term(k, coeff);
        }
        out
    }

    /// Embeds into a ring with `extra` more variables appended.
    pub fn extend_vars(&self, extra: usize) -> Self {
        Poly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(self.nvars + extra, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Drops the last variable, which must not occur.
    pub fn drop_last_var(&self) -> Option<Self> {
        let n = self.nvars.checked_sub(1)?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[n] != 0 {
                return None;
            }
            terms.insert(Monomial(m.0[..n].to_vec()), c.clone());
        }
        Some(Poly { nvars: n, terms })
    }

    /// Splits into weighted-homogeneous components.
    pub fn graded_parts(&self, weights: &[u32]) -> BTreeMap<u32, Poly> {
        let mut parts: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(m.weighted_degree(weights))
                .or_insert_with(|| Poly::zero(self.nvars))
                .terms
                .insert(m.clone(), c.clone());
        }
        parts
    }

    /// Homogenizes to weighted degree `d` using a new last variable `t` of
    /// weight 1.
    pub fn homogenize(&self, weights: &[u32], d: u32) -> Result<Self> {
        let mut out = Poly::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let w = m.weighted_degree(weights);
            if w > d {
                return Err(Error::DegreeOverflow { degree: w, bound: d });
            }
            let mut e = m.0.clone();
            e.push(d - w);
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Substitutes numeric values for parameters in every coefficient.
    pub fn substitute_params(&self, values: &BTreeMap<String, CycRat>) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.substitute(values));
        }
        out
    }

    pub fn is_numeric(&self) -> bool {
        self.terms.values().all(Scalar::is_numeric)
    }

    /// Renders with the given variable names, largest term first.
    pub fn format_with(&self, names: &[impl AsRef<str>]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let n = names[i].as_ref();
                    if e == 1 {
                        n.to_string()
                    } else {
                        format!("{n}^{e}")
                    }
                })
                .collect();
            push_term(&mut out, k == 0, c, &mono.join("*"));
        }
        out
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl std::ops::$tr for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$try(rhs).expect("polynomials over different variable sets")
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Variable names, parameter names and coefficient field for a polynomial
/// ring. Used for parsing and printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: Arc<CyclotomicField>,
    vars: Vec<String>,
    params: Vec<String>,
}

impl PolyRing {
    pub fn new(
        field: Arc<CyclotomicField>,
        vars: Vec<String>,
        params: Vec<String>,
    ) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for name in vars.iter().chain(&params) {
            if !parse::is_identifier(name) {
                return Err(Error::InvalidStructure(format!(
                    "`{name}` is not a valid symbol name"
                )));
            }
            if name == "z" && field.degree() > 1 {
                return Err(Error::InvalidStructure(
                    "`z` is reserved for the root of unity".into(),
                ));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidStructure(format!("duplicate symbol `{name}`")));
            }
        }
        Ok(PolyRing {
            field,
            vars,
            params,
        })
    }

    /// Ring with variables `prefix1, ..., prefixN` and no parameters.
    pub fn numbered(field: Arc<CyclotomicField>, prefix: &str, n: usize) -> Self {
        let vars = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        PolyRing::new(field, vars, Vec::new()).expect("generated names are valid")
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), i, &self.field)
    }

    pub fn vars_polys(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.nvars())
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.nvars(), &self.field)
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        Poly::constant(self.nvars(), c)
    }

    pub fn int(&self, n: i64) -> Scalar {
        Scalar::from_int(&self.field, n)
    }

    /// The parameter symbol `name`, which must be declared.
    pub fn param(&self, name: &str) -> Result<Scalar> {
        if !self.params.iter().any(|p| p == name) {
            return Err(Error::UnknownSymbol(name.into()));
        }
        Ok(Scalar::symbol(&self.field, name))
    }

    /// Same ring with one more variable appended.
    pub fn with_var(&self, name: &str) -> Result<Self> {
        let mut vars = self.vars.clone();
        vars.push(name.into());
        PolyRing::new(self.field.clone(), vars, self.params.clone())
    }

    /// Same ring with additional parameters declared.
    pub fn with_params(&self, extra: &[String]) -> Result<Self> {
        let mut params = self.params.clone();
        for p in extra {
            if !params.contains(p) {
                params.push(p.clone());
            }
        }
        PolyRing::new(self.field.clone(), self.vars.clone(), params)
    }

    /// A fresh symbol name not clashing with variables or parameters.
    pub fn fresh_name(&self, base: &str) -> String {
        let taken = |s: &str| self.vars.iter().chain(&self.params).any(|v| v == s);
        if !taken(base) {
            return base.into();
        }
        (0..)
            .map(|k| format!("{base}{k}"))
            .find(|s| !taken(s))
            .unwrap()
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        parse::parse_poly(self, text)
    }

    /// Parses a constant expression (no variables).
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let p = self.parse(text)?;
        p.as_constant().ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("`{text}` is not a constant"),
        })
    }

    pub fn format(&self, p: &Poly) -> String {
        p.format_with(&self.vars)
    }
}
