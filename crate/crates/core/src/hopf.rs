//! Finite-dimensional Hopf algebras given by structure tensors on a named
//! basis.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::{CycRat, CyclotomicField};

/// Sparse coordinate vector in a Hopf algebra basis.
pub type Element = BTreeMap<usize, CycRat>;

/// Element of `H^{(x)k}`: basis index tuples to coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub legs: usize,
    pub terms: BTreeMap<Vec<usize>, CycRat>,
}

impl TensorElement {
    fn add(&mut self, key: Vec<usize>, c: CycRat) {
        add_to(&mut self.terms, key, c);
    }
}

fn add_to<K: Ord>(map: &mut BTreeMap<K, CycRat>, key: K, c: CycRat) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// A defining relation `sum_k c_k * word_k = 0` among the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub label: String,
    /// words are sequences of generator indices; the empty word is 1
    pub terms: Vec<(CycRat, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HopfKind {
    /// Taft algebra of order `n` with `g x = lambda x g`.
    Taft { n: u32, lambda: CycRat },
    /// Group algebra of a product of cyclic groups.
    Group { orders: Vec<u32> },
    /// Anything given by explicit tables, including duals.
    Explicit,
}

/// First axiom violation found by [`FiniteHopf::verify_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub at: String,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {}", self.axiom, self.at)
    }
}

/// Finite-dimensional Hopf algebra.
///
/// Besides the structure tensors it records a generating set, a word in the
/// generators for each basis element and defining relations, which is what
/// actions are specified and verified against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteHopf {
    field: Arc<CyclotomicField>,
    basis: Vec<String>,
    mult: Vec<Vec<Element>>,
    unit: Element,
    comult: Vec<Vec<(usize, usize, CycRat)>>,
    counit: Vec<CycRat>,
    antipode: Vec<Element>,
    generators: Vec<(String, usize)>,
    words: Vec<Vec<usize>>,
    relations: Vec<Relation>,
    kind: HopfKind,
}

fn power_name(sym: &str, e: u32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(sym.to_string()),
        _ => Some(format!("{sym}^{e}")),
    }
}

fn join_name(parts: impl IntoIterator<Item = Option<String>>) -> String {
    let v: Vec<String> = parts.into_iter().flatten().collect();
    if v.is_empty() {
        "1".into()
    } else {
        v.join("*")
    }
}

impl FiniteHopf {
    /// The Taft algebra `k<g, x | gx - lambda xg, g^n - 1, x^n>` with
    /// `lambda = z^(N/n)` for the field `Q(z_N)`, which must contain the
    /// n-th roots of unity.
    pub fn taft(field: &Arc<CyclotomicField>, n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("Taft order must be at least 2, got {n}")));
        }
        if !field.order().is_multiple_of(n) {
            return Err(Error::InvalidArgument(format!(
                "Q(z_{}) has no primitive {n}-th root of unity",
                field.order()
            )));
        }
        let lambda = CycRat::zeta_pow(field, (field.order() / n) as i64);
        let lambda_inv = lambda.inv()?;
        let nn = n as usize;
        let idx = |a: usize, b: usize| a * nn + b;
        let d = nn * nn;
        let one = CycRat::one(field);

        let mut basis = vec![String::new(); d];
        let mut words = vec![Vec::new(); d];
        for a in 0..nn {
            for b in 0..nn {
                basis[idx(a, b)] = join_name([power_name("g", a as u32), power_name("x", b as u32)]);
                words[idx(a, b)] = std::iter::repeat_n(0, a).chain(std::iter::repeat_n(1, b)).collect();
            }
        }
        // (g^a x^b)(g^c x^d) = lambda^(-bc) g^(a+c) x^(b+d)
        let mut mult = vec![vec![Element::new(); d]; d];
        for a in 0..nn {
            for b in 0..nn {
                for c in 0..nn {
                    for e in 0..nn {
                        if b + e >= nn {
                            continue;
                        }
                        let coeff = lambda_inv.pow((b * c % nn) as u32);
                        mult[idx(a, b)][idx(c, e)].insert(idx((a + c) % nn, b + e), coeff);
                    }
                }
            }
        }
        let g = idx(1, 0);
        let x = idx(0, 1);
        let unit: Element = [(idx(0, 0), one.clone())].into();
        let counit: Vec<CycRat> = (0..d)
            .map(|i| if i % nn == 0 { one.clone() } else { CycRat::zero(field) })
            .collect();

        let tmul = |a: &BTreeMap<(usize, usize), CycRat>, b: &BTreeMap<(usize, usize), CycRat>| {
            let mut out = BTreeMap::new();
            for ((i, j), c) in a {
                for ((k, l), e) in b {
                    for (p, cp) in &mult[*i][*k] {
                        for (q, cq) in &mult[*j][*l] {
                            add_to(&mut out, (*p, *q), &(&(c * e) * cp) * cq);
                        }
                    }
                }
            }
            out
        };
        let delta_g: BTreeMap<(usize, usize), CycRat> = [((g, g), one.clone())].into();
        let delta_x: BTreeMap<(usize, usize), CycRat> = [((g, x), one.clone()), ((x, 0), one.clone())].into();
        let mut comult = vec![Vec::new(); d];
        for a in 0..nn {
            for b in 0..nn {
                let mut t: BTreeMap<(usize, usize), CycRat> = [((0, 0), one.clone())].into();
                for _ in 0..a {
                    t = tmul(&t, &delta_g);
                }
                for _ in 0..b {
                    t = tmul(&t, &delta_x);
                }
                comult[idx(a, b)] = t.into_iter().map(|((i, j), c)| (i, j, c)).collect();
            }
        }

        let mul_el = |a: &Element, b: &Element| mul_elements(&mult, a, b);
        let s_g: Element = [(idx(nn - 1, 0), one.clone())].into();
        let s_x: Element = [(idx(nn - 1, 1), -&one)].into();
        let mut antipode = vec![Element::new(); d];
        for a in 0..nn {
            for b in 0..nn {
                // S is an anti-homomorphism: S(g^a x^b) = S(x)^b S(g)^a
                let mut s: Element = unit.clone();
                for _ in 0..b {
                    s = mul_el(&s, &s_x);
                }
                for _ in 0..a {
                    s = mul_el(&s, &s_g);
                }
                antipode[idx(a, b)] = s;
            }
        }

        let relations = vec![
            Relation {
                label: format!("g^{n} = 1"),
                terms: vec![(one.clone(), vec![0; nn]), (-&one, vec![])],
            },
            Relation {
                label: format!("x^{n} = 0"),
                terms: vec![(one.clone(), vec![1; nn])],
            },
            Relation {
                label: "g*x = lambda*x*g".into(),
                terms: vec![(one.clone(), vec![0, 1]), (-&lambda, vec![1, 0])],
            },
        ];
        Ok(FiniteHopf {
            field: field.clone(),
            basis,
            mult,
            unit,
            comult,
            counit,
            antipode,
            generators: vec![("g".into(), g), ("x".into(), x)],
            words,
            relations,
            kind: HopfKind::Taft { n, lambda },
        })
    }

    /// Group algebra of `Z/o_1 x ... x Z/o_k`. Generators are named `g` for
    /// a single factor and `g1, g2, ...` otherwise.
    pub fn group_algebra(field: &Arc<CyclotomicField>, orders: &[u32]) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidArgument("at least one cyclic factor is required".into()));
        }
        if orders.contains(&0) {
            return Err(Error::ZeroOrder);
        }
        let k = orders.len();
        let gen_names: Vec<String> = if k == 1 {
            vec!["g".into()]
        } else {
            (1..=k).map(|i| format!("g{i}")).collect()
        };
        let d: usize = orders.iter().map(|&o| o as usize).product();
        let digits = |mut i: usize| -> Vec<u32> {
            let mut out = vec![0; k];
            for (slot, &o) in out.iter_mut().zip(orders).rev() {
                *slot = (i % o as usize) as u32;
                i /= o as usize;
            }
            out
        };
        let index = |e: &[u32]| -> usize {
            e.iter().zip(orders).fold(0, |acc, (&a, &o)| acc * o as usize + (a % o) as usize)
        };
        let one = CycRat::one(field);
        let mut basis = Vec::with_capacity(d);
        let mut words = Vec::with_capacity(d);
        let mut mult = vec![vec![Element::new(); d]; d];
        let mut comult = Vec::with_capacity(d);
        let mut antipode = Vec::with_capacity(d);
        for i in 0..d {
            let e = digits(i);
            basis.push(join_name(e.iter().zip(&gen_names).map(|(&a, s)| power_name(s, a))));
            words.push(
                e.iter()
                    .enumerate()
                    .flat_map(|(g, &a)| std::iter::repeat_n(g, a as usize))
                    .collect(),
            );
            comult.push(vec![(i, i, one.clone())]);
            let inv: Vec<u32> = e.iter().zip(orders).map(|(&a, &o)| (o - a) % o).collect();
            antipode.push([(index(&inv), one.clone())].into());
            for j in 0..d {
                let f = digits(j);
                let sum: Vec<u32> = e.iter().zip(&f).map(|(a, b)| a + b).collect();
                mult[i][j].insert(index(&sum), one.clone());
            }
        }
        let mut relations = Vec::new();
        for (g, &o) in orders.iter().enumerate() {
            relations.push(Relation {
                label: format!("{}^{o} = 1", gen_names[g]),
                terms: vec![(one.clone(), vec![g; o as usize]), (-&one, vec![])],
            });
            for h in g + 1..k {
                relations.push(Relation {
                    label: format!("{0}*{1} = {1}*{0}", gen_names[g], gen_names[h]),
                    terms: vec![(one.clone(), vec![g, h]), (-&one, vec![h, g])],
                });
            }
        }
        let generators = gen_names
            .into_iter()
            .enumerate()
            .map(|(g, name)| {
                let mut e = vec![0; k];
                e[g] = 1;
                (name, index(&e))
            })
            .collect();
        Ok(FiniteHopf {
            field: field.clone(),
            basis,
            mult,
            unit: [(0, one.clone())].into(),
            comult,
            counit: vec![one; d],
            antipode,
            generators,
            words,
            relations,
            kind: HopfKind::Group {
                orders: orders.to_vec(),
            },
        })
    }

    /// Hopf algebra from explicit tables. Every basis element becomes a
    /// generator; the relations are the multiplication table and the unit.
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        field: &Arc<CyclotomicField>,
        basis: Vec<String>,
        mult: Vec<Vec<Element>>,
        unit: Element,
        comult: Vec<Vec<(usize, usize, CycRat)>>,
        counit: Vec<CycRat>,
        antipode: Vec<Element>,
    ) -> Result<Self> {
        let d = basis.len();
        if d == 0 {
            return Err(Error::InvalidStructure("empty basis".into()));
        }
        let bad = |what: &str| Error::InvalidStructure(format!("{what} has the wrong shape"));
        if mult.len() != d || mult.iter().any(|r| r.len() != d) {
            return Err(bad("multiplication table"));
        }
        if comult.len() != d || counit.len() != d || antipode.len() != d {
            return Err(bad("coalgebra data"));
        }
        let in_range = |e: &Element| e.keys().all(|&k| k < d);
        if !in_range(&unit)
            || !mult.iter().flatten().all(in_range)
            || !antipode.iter().all(in_range)
            || !comult.iter().flatten().all(|(j, k, _)| *j < d && *k < d)
        {
            return Err(Error::InvalidStructure("basis index out of range".into()));
        }
        let one = CycRat::one(field);
        let mut relations = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let mut terms = vec![(one.clone(), vec![i, j])];
                terms.extend(mult[i][j].iter().map(|(&k, c)| (-c, vec![k])));
                relations.push(Relation {
                    label: format!("{}*{}", basis[i], basis[j]),
                    terms,
                });
            }
        }
        let mut terms: Vec<(CycRat, Vec<usize>)> = unit.iter().map(|(&k, c)| (c.clone(), vec![k])).collect();
        terms.push((-&one, vec![]));
        relations.push(Relation {
            label: "unit".into(),
            terms,
        });
        Ok(FiniteHopf {
            field: field.clone(),
            generators: basis.iter().cloned().zip(0..d).collect(),
            words: (0..d).map(|i| vec![i]).collect(),
            basis,
            mult,
            unit,
            comult,
            counit,
            antipode,
            relations,
            kind: HopfKind::Explicit,
        })
    }

    /// Copy with `S(e_i)` replaced.
    pub fn with_antipode(&self, i: usize, image: Element) -> Self {
        let mut h = self.clone();
        h.antipode[i] = image;
        h
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn kind(&self) -> &HopfKind {
        &self.kind
    }

    /// `(name, basis index)` of each generator.
    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    /// The basis element `i` as a word in generator indices.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    /// Basis index of the unit, when the unit is a basis element.
    pub fn unit_index(&self) -> Option<usize> {
        match self.unit.iter().collect::<Vec<_>>().as_slice() {
            [(&i, c)] if c.is_one() => Some(i),
            _ => None,
        }
    }

    pub fn counit(&self, i: usize) -> &CycRat {
        &self.counit[i]
    }

    pub fn comult(&self, i: usize) -> &[(usize, usize, CycRat)] {
        &self.comult[i]
    }

    pub fn antipode(&self, i: usize) -> &Element {
        &self.antipode[i]
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Element {
        &self.mult[i][j]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        [(i, CycRat::one(&self.field))].into()
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        mul_elements(&self.mult, a, b)
    }

    pub fn counit_of(&self, a: &Element) -> CycRat {
        a.iter()
            .fold(CycRat::zero(&self.field), |acc, (&i, c)| &acc + &(c * &self.counit[i]))
    }

    pub fn format_element(&self, a: &Element) -> String {
        if a.is_empty() {
            return "0".into();
        }
        a.iter()
            .map(|(&i, c)| {
                if c.is_one() {
                    self.basis[i].clone()
                } else {
                    format!("({c})*{}", self.basis[i])
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn comult_element(&self, a: &Element) -> BTreeMap<(usize, usize), CycRat> {
        let mut out = BTreeMap::new();
        for (&i, c) in a {
            for (j, k, e) in &self.comult[i] {
                add_to(&mut out, (*j, *k), c * e);
            }
        }
        out
    }

    /// Iterated comultiplication `Delta^(k)(h)`, expanding the last leg at
    /// each step.
    pub fn sweedler_expand(&self, h: &Element, legs: usize) -> TensorElement {
        assert!(legs >= 1, "at least one leg");
        let mut t = TensorElement {
            legs: 1,
            terms: h.iter().filter(|(_, c)| !c.is_zero()).map(|(&i, c)| (vec![i], c.clone())).collect(),
        };
        while t.legs < legs {
            let mut next = TensorElement {
                legs: t.legs + 1,
                terms: BTreeMap::new(),
            };
            for (key, c) in &t.terms {
                let (last, head) = key.split_last().unwrap();
                for (j, k, e) in &self.comult[*last] {
                    let mut nk = head.to_vec();
                    nk.push(*j);
                    nk.push(*k);
                    next.add(nk, c * e);
                }
            }
            t = next;
        }
        t
    }

    /// Same as [`FiniteHopf::sweedler_expand`] but expanding the first leg.
    pub fn sweedler_expand_left(&self, h: &Element, legs: usize) -> TensorElement {
        assert!(legs >= 1, "at least one leg");
        let mut t = self.sweedler_expand(h, 1);
        while t.legs < legs {
            let mut next = TensorElement {
                legs: t.legs + 1,
                terms: BTreeMap::new(),
            };
            for (key, c) in &t.terms {
                for (j, k, e) in &self.comult[key[0]] {
                    let mut nk = vec![*j, *k];
                    nk.extend_from_slice(&key[1..]);
                    next.add(nk, c * e);
                }
            }
            t = next;
        }
        t
    }

    pub fn is_cocommutative(&self) -> bool {
        (0..self.dim()).all(|i| {
            let d: BTreeMap<(usize, usize), CycRat> =
                self.comult[i].iter().map(|(j, k, c)| ((*j, *k), c.clone())).collect();
            d.iter().all(|((j, k), c)| d.get(&(*k, *j)) == Some(c))
        })
    }

    /// The dual Hopf algebra on the dual basis `e_i*`, obtained by
    /// transposing the structure tensors.
    pub fn dual(&self) -> FiniteHopf {
        let d = self.dim();
        let mut mult = vec![vec![Element::new(); d]; d];
        for (i, terms) in self.comult.iter().enumerate() {
            for (j, k, c) in terms {
                add_to(&mut mult[*j][*k], i, c.clone());
            }
        }
        let mut comult: Vec<BTreeMap<(usize, usize), CycRat>> = vec![BTreeMap::new(); d];
        for j in 0..d {
            for k in 0..d {
                for (&i, c) in &self.mult[j][k] {
                    add_to(&mut comult[i], (j, k), c.clone());
                }
            }
        }
        let unit: Element = self
            .counit
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        let counit = (0..d)
            .map(|i| self.unit.get(&i).cloned().unwrap_or_else(|| CycRat::zero(&self.field)))
            .collect();
        let mut antipode = vec![Element::new(); d];
        for (j, img) in self.antipode.iter().enumerate() {
            for (&i, c) in img {
                add_to(&mut antipode[i], j, c.clone());
            }
        }
        let basis = self.basis.iter().map(|b| format!("{b}*")).collect();
        FiniteHopf::from_tables(
            &self.field,
            basis,
            mult,
            unit,
            comult
                .into_iter()
                .map(|m| m.into_iter().map(|((j, k), c)| (j, k, c)).collect())
                .collect(),
            counit,
            antipode,
        )
        .expect("transposed tables have the right shape")
    }

    /// Checks the Hopf algebra axioms on basis elements and returns the
    /// first failure.
    pub fn verify_axioms(&self) -> Option<AxiomFailure> {
        let d = self.dim();
        let name = |i: usize| self.basis[i].clone();
        let fail = |axiom, at| Some(AxiomFailure { axiom, at });
        let e = |i| self.basis_element(i);
        for i in 0..d {
            for j in 0..d {
                let ij = self.mul_basis(i, j);
                for k in 0..d {
                    let left = self.mul(ij, &e(k));
                    let right = self.mul(&e(i), self.mul_basis(j, k));
                    if left != right {
                        return fail("associativity", format!("({},{},{})", name(i), name(j), name(k)));
                    }
                }
            }
        }
        for i in 0..d {
            if self.mul(&self.unit, &e(i)) != e(i) || self.mul(&e(i), &self.unit) != e(i) {
                return fail("unit", name(i));
            }
        }
        for i in 0..d {
            if self.sweedler_expand(&e(i), 3) != self.sweedler_expand_left(&e(i), 3) {
                return fail("coassociativity", name(i));
            }
            let mut left = Element::new();
            let mut right = Element::new();
            for (j, k, c) in &self.comult[i] {
                add_to(&mut left, *k, c * &self.counit[*j]);
                add_to(&mut right, *j, c * &self.counit[*k]);
            }
            if left != e(i) || right != e(i) {
                return fail("counit", name(i));
            }
        }
        if self.counit_of(&self.unit) != CycRat::one(&self.field) {
            return fail("counit of unit", "1".into());
        }
        let mut unit_tensor = BTreeMap::new();
        for (i, c) in &self.unit {
            for (j, e2) in &self.unit {
                add_to(&mut unit_tensor, (*i, *j), c * e2);
            }
        }
        if self.comult_element(&self.unit) != unit_tensor {
            return fail("comultiplication of unit", "1".into());
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = self.comult_element(self.mul_basis(i, j));
                let mut rhs = BTreeMap::new();
                for (a, b, c) in &self.comult[i] {
                    for (p, q, r) in &self.comult[j] {
                        let cr = c * r;
                        for (s, cs) in &self.mult[*a][*p] {
                            for (t, ct) in &self.mult[*b][*q] {
                                add_to(&mut rhs, (*s, *t), &(&cr * cs) * ct);
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return fail("comultiplication is multiplicative", format!("({},{})", name(i), name(j)));
                }
                let eps = self.counit_of(self.mul_basis(i, j));
                if eps != &self.counit[i] * &self.counit[j] {
                    return fail("counit is multiplicative", format!("({},{})", name(i), name(j)));
                }
            }
        }
        for i in 0..d {
            let target: Element = self
                .unit
                .iter()
                .map(|(&k, c)| (k, c * &self.counit[i]))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            let mut left = Element::new();
            let mut right = Element::new();
            for (j, k, c) in &self.comult[i] {
                let scaled: Element = [(*k, c.clone())].into();
                for (s, cs) in self.mul(&self.antipode[*j], &scaled) {
                    add_to(&mut left, s, cs);
                }
                let scaled: Element = [(*j, c.clone())].into();
                for (s, cs) in self.mul(&scaled, &self.antipode[*k]) {
                    add_to(&mut right, s, cs);
                }
            }
            if left != target || right != target {
                return fail("antipode", name(i));
            }
        }
        None
    }
}

fn mul_elements(mult: &[Vec<Element>], a: &Element, b: &Element) -> Element {
    let mut out = Element::new();
    for (&i, ca) in a {
        for (&j, cb) in b {
            let c = ca * cb;
            for (&k, e) in &mult[i][j] {
                add_to(&mut out, k, &c * e);
            }
        }
    }
    out
}
