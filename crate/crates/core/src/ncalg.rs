//! Free associative algebras, finite presentations, rewriting to normal form
//! and graded dimension counts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::{is_identifier, RowSpace};
use crate::scalars::{push_term, CycRat, CyclotomicField, Scalar};

/// A word in the letters of an alphabet, by letter index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn weight(&self, weights: &[u32]) -> u32 {
        self.0.iter().map(|&i| weights[i]).sum()
    }

    /// Renders with repeated letters collapsed to powers, e.g. `x*t^2`.
    pub fn format_with(&self, names: &[impl AsRef<str>]) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut k = 0;
        while k < self.0.len() {
            let l = self.0[k];
            let run = self.0[k..].iter().take_while(|&&x| x == l).count();
            let n = names[l].as_ref();
            parts.push(if run == 1 { n.to_string() } else { format!("{n}^{run}") });
            k += run;
        }
        parts.join("*")
    }
}

/// Degree-lexicographic: shorter words are smaller, then letters compare by
/// declaration order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the free algebra on `nletters` letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreePoly {
    nletters: usize,
    terms: BTreeMap<Word, Scalar>,
}

impl FreePoly {
    pub fn zero(nletters: usize) -> Self {
        FreePoly {
            nletters,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nletters: usize, field: &Arc<CyclotomicField>) -> Self {
        Self::word(nletters, Word::empty(), Scalar::one(field))
    }

    pub fn letter(nletters: usize, i: usize, field: &Arc<CyclotomicField>) -> Self {
        assert!(i < nletters, "letter index out of range");
        Self::word(nletters, Word::letter(i), Scalar::one(field))
    }

    pub fn word(nletters: usize, w: Word, c: Scalar) -> Self {
        let mut p = Self::zero(nletters);
        p.add_term(w, c);
        p
    }

    pub fn from_terms(nletters: usize, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Self::zero(nletters);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn nletters(&self) -> usize {
        self.nletters
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

    /// Terms in ascending word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// The common weight of all terms, if there is one.
    pub fn homogeneous_weight(&self, weights: &[u32]) -> Option<u32> {
        let mut ws = self.terms.keys().map(|w| w.weight(weights));
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        assert!(w.0.iter().all(|&i| i < self.nletters), "letter index out of range");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
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

    fn check(&self, other: &Self) -> Result<()> {
        if self.nletters != other.nletters {
            return Err(Error::VariableMismatch(self.nletters, other.nletters));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Multiplication concatenates words.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.nletters);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.nletters, self.terms.iter().map(|(w, d)| (w.clone(), d * c)))
    }

    pub fn scale_num(&self, c: &CycRat) -> Self {
        self.scale(&Scalar::num(c.clone()))
    }

    /// `left * self * right` for words.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Self {
        Self::from_terms(
            self.nletters,
            self.terms.iter().map(|(w, c)| (left.concat(w).concat(right), c.clone())),
        )
    }

    /// Renders with the given letter names: longest words first, words of
    /// equal length in ascending order.
    pub fn format_with(&self, names: &[impl AsRef<str>]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<(&Word, &Scalar)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| a.0.cmp(&b.0)));
        let mut out = String::new();
        for (k, (w, c)) in terms.into_iter().enumerate() {
            push_term(&mut out, k == 0, c, &w.format_with(names));
        }
        out
    }
}

macro_rules! free_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl std::ops::$tr for &FreePoly {
            type Output = FreePoly;
            fn $method(self, rhs: &FreePoly) -> FreePoly {
                self.$try(rhs).expect("free polynomials over different alphabets")
            }
        }
    };
}

free_binop!(Add, add, try_add);
free_binop!(Sub, sub, try_sub);
free_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &FreePoly {
    type Output = FreePoly;
    fn neg(self) -> FreePoly {
        FreePoly::from_terms(self.nletters, self.terms.iter().map(|(w, c)| (w.clone(), -c)))
    }
}

/// Rewrite rule `lhs -> rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: FreePoly,
}

const MAX_REWRITES: usize = 1_000_000;

/// Rewrites every term with the first rule matching at the leftmost
/// position until no rule applies. Words longer than `degcap` are an error.
pub fn normal_form(rules: &[Rule], f: &FreePoly, degcap: usize) -> Result<FreePoly> {
    let n = f.nletters;
    let mut out = FreePoly::zero(n);
    let mut pending = f.clone();
    let mut steps = 0;
    while let Some((w, c)) = pending.terms.pop_last() {
        if w.len() > degcap {
            return Err(Error::DegreeOverflow {
                degree: w.len() as u32,
                bound: degcap as u32,
            });
        }
        let hit = (0..w.len())
            .find_map(|pos| rules.iter().find(|r| w.0[pos..].starts_with(&r.lhs.0)).map(|r| (pos, r)));
        match hit {
            None => out.add_term(w, c),
            Some((pos, rule)) => {
                steps += 1;
                if steps > MAX_REWRITES {
                    return Err(Error::InvalidStructure("rewriting does not terminate".into()));
                }
                let left = Word(w.0[..pos].to_vec());
                let right = Word(w.0[pos + rule.lhs.len()..].to_vec());
                for (v, d) in rule.rhs.sandwich(&left, &right).terms {
                    pending.add_term(v, &d * &c);
                }
            }
        }
    }
    Ok(out)
}

/// Finitely presented algebra `k<letters | relations>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    field: Arc<CyclotomicField>,
    letters: Vec<String>,
    weights: Vec<u32>,
    relations: Vec<FreePoly>,
}

impl Presentation {
    /// Letters of weight 1. Zero relations are dropped.
    pub fn new(field: &Arc<CyclotomicField>, letters: Vec<String>, relations: Vec<FreePoly>) -> Result<Self> {
        let k = letters.len();
        Self::with_weights(field, letters, vec![1; k], relations)
    }

    pub fn with_weights(
        field: &Arc<CyclotomicField>,
        letters: Vec<String>,
        weights: Vec<u32>,
        relations: Vec<FreePoly>,
    ) -> Result<Self> {
        for (i, l) in letters.iter().enumerate() {
            if !is_identifier(l) {
                return Err(Error::InvalidArgument(format!("bad letter name {l:?}")));
            }
            if letters[..i].contains(l) {
                return Err(Error::InvalidArgument(format!("duplicate letter {l}")));
            }
        }
        if weights.len() != letters.len() {
            return Err(Error::VariableMismatch(letters.len(), weights.len()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidStructure("weights must be positive".into()));
        }
        if let Some(r) = relations.iter().find(|r| r.nletters != letters.len()) {
            return Err(Error::VariableMismatch(letters.len(), r.nletters));
        }
        Ok(Presentation {
            field: field.clone(),
            letters,
            weights,
            relations: relations.into_iter().filter(|r| !r.is_zero()).collect(),
        })
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn relations(&self) -> &[FreePoly] {
        &self.relations
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == name)
    }

    /// The letter as an element of the free algebra.
    pub fn letter(&self, name: &str) -> Result<FreePoly> {
        let i = self.letter_index(name).ok_or_else(|| Error::UnknownSymbol(name.into()))?;
        Ok(FreePoly::letter(self.letters.len(), i, &self.field))
    }

    pub fn one(&self) -> FreePoly {
        FreePoly::one(self.letters.len(), &self.field)
    }

    pub fn zero(&self) -> FreePoly {
        FreePoly::zero(self.letters.len())
    }

    pub fn is_graded(&self) -> bool {
        self.relations.iter().all(|r| r.homogeneous_weight(&self.weights).is_some())
    }

    pub fn format(&self, f: &FreePoly) -> String {
        f.format_with(&self.letters)
    }

    /// Relations oriented by their degree-lexicographically largest word.
    pub fn rules(&self) -> Result<Vec<Rule>> {
        self.relations
            .iter()
            .map(|r| {
                let (lw, lc) = r.leading_term().expect("relations are nonzero");
                let inv = lc.inv()?;
                let mut rhs = -&r.scale(&inv);
                rhs.add_term(lw.clone(), Scalar::one(&self.field));
                Ok(Rule { lhs: lw.clone(), rhs })
            })
            .collect()
    }

    /// All words of weight exactly `d`, ascending.
    pub fn words_of_weight(&self, d: u32) -> Vec<Word> {
        let mut by_weight: Vec<Vec<Word>> = vec![vec![Word::empty()]];
        for w in 1..=d {
            let mut next = Vec::new();
            for (i, &wi) in self.weights.iter().enumerate() {
                if wi <= w {
                    for prefix in &by_weight[(w - wi) as usize] {
                        let mut v = prefix.0.clone();
                        v.push(i);
                        next.push(Word(v));
                    }
                }
            }
            next.sort();
            by_weight.push(next);
        }
        by_weight.swap_remove(d as usize)
    }

    /// Dimension of the weight-`d` component: the number of words minus the
    /// rank of all `w r w'` of weight `d`.
    pub fn graded_dimension(&self, d: u32) -> Result<usize> {
        if !self.is_graded() {
            return Err(Error::InvalidStructure("presentation is not graded".into()));
        }
        let words = self.words_of_weight(d);
        let cols: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut space = RowSpace::new(&self.field, words.len());
        let mut sides: Vec<Vec<Word>> = Vec::new();
        for w in 0..=d {
            sides.push(self.words_of_weight(w));
        }
        for r in &self.relations {
            let rw = r.homogeneous_weight(&self.weights).expect("graded");
            if rw > d {
                continue;
            }
            for lw in 0..=d - rw {
                for left in &sides[lw as usize] {
                    for right in &sides[(d - rw - lw) as usize] {
                        let mut row = Vec::with_capacity(r.len());
                        for (w, c) in r.terms() {
                            let full = left.concat(w).concat(right);
                            row.push((cols[&full], c.to_num(&self.field)?));
                        }
                        row.sort_by_key(|(i, _)| *i);
                        space.insert(row);
                    }
                }
            }
        }
        Ok(words.len() - space.rank())
    }

    /// Homogenizes every relation with a new central letter of weight 1
    /// appended at the end of each word. The graded pieces of the result
    /// count the filtered pieces of the original when it has the PBW
    /// property.
    pub fn homogenized(&self, name: &str) -> Result<Presentation> {
        if self.letters.iter().any(|l| l == name) {
            return Err(Error::InvalidArgument(format!("letter {name} already present")));
        }
        let k = self.letters.len();
        let n = k + 1;
        let mut relations = Vec::new();
        for r in &self.relations {
            let top = r.terms().map(|(w, _)| w.weight(&self.weights)).max().unwrap_or(0);
            relations.push(FreePoly::from_terms(
                n,
                r.terms().map(|(w, c)| {
                    let mut v = w.0.clone();
                    v.extend(std::iter::repeat_n(k, (top - w.weight(&self.weights)) as usize));
                    (Word(v), c.clone())
                }),
            ));
        }
        let one = Scalar::one(&self.field);
        for i in 0..k {
            relations.push(FreePoly::from_terms(
                n,
                [(Word(vec![i, k]), one.clone()), (Word(vec![k, i]), -&one)],
            ));
        }
        let mut letters = self.letters.clone();
        letters.push(name.into());
        let mut weights = self.weights.clone();
        weights.push(1);
        Presentation::with_weights(&self.field, letters, weights, relations)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relations.iter().map(|r| self.format(r)).collect();
        write!(f, "k< {} | {} >", self.letters.join(", "), rels.join(", "))
    }
}

/// `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(q: i64) -> Presentation {
        let f = CyclotomicField::rationals();
        let x = FreePoly::letter(2, 0, &f);
        let y = FreePoly::letter(2, 1, &f);
        let rel = &(&x * &y) - &(&y * &x).scale(&Scalar::from_int(&f, q));
        Presentation::new(&f, vec!["x".into(), "y".into()], vec![rel]).unwrap()
    }

    #[test]
    fn quantum_plane() {
        let p = plane(3);
        assert_eq!(p.to_string(), "k< x, y | x*y - 3*y*x >");
        assert_eq!(p.graded_dimension(2).unwrap(), 3);
        assert_eq!(p.graded_dimension(3).unwrap(), 4);
        let rules = p.rules().unwrap();
        let yx = FreePoly::word(2, Word(vec![1, 0]), Scalar::one(p.field()));
        let nf = normal_form(&rules, &yx, 8).unwrap();
        assert_eq!(p.format(&nf), "1/3*x*y");
    }

    #[test]
    fn powers_print_collapsed() {
        let f = CyclotomicField::rationals();
        let w = FreePoly::word(2, Word(vec![0, 1, 1]), Scalar::from_int(&f, -2));
        assert_eq!(w.format_with(&["x", "t"]), "-2*x*t^2");
    }

    #[test]
    fn degcap_overflow() {
        let p = plane(2);
        let w = FreePoly::word(2, Word(vec![1, 0, 1, 0]), Scalar::one(p.field()));
        assert!(matches!(
            normal_form(&p.rules().unwrap(), &w, 3),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 3), 0);
    }
}
