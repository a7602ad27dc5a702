use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;

use super::field::{CycRat, CyclotomicField};
use crate::error::{Error, Result};

/// A product of parameter symbols such as `b^2*c`.
///
/// Factors are kept sorted by name with positive exponents. Ordering is
/// graded lexicographic, so it is compatible with multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamMonomial(Vec<(Arc<str>, u32)>);

impl ParamMonomial {
    pub fn one() -> Self {
        ParamMonomial(Vec::new())
    }

    pub fn symbol(name: &str) -> Self {
        ParamMonomial(vec![(Arc::from(name), 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(Arc<str>, u32)] {
        &self.0
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.0
            .iter()
            .find(|(n, _)| &**n == name)
            .map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut merged: BTreeMap<Arc<str>, u32> = self.0.iter().cloned().collect();
        for (n, e) in &other.0 {
            *merged.entry(n.clone()).or_insert(0) += e;
        }
        ParamMonomial(merged.into_iter().collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut merged: BTreeMap<Arc<str>, u32> = self.0.iter().cloned().collect();
        for (n, e) in &other.0 {
            let slot = merged.get_mut(n)?;
            if *slot < *e {
                return None;
            }
            *slot -= e;
        }
        Some(ParamMonomial(
            merged.into_iter().filter(|(_, e)| *e > 0).collect(),
        ))
    }
}

impl Ord for ParamMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            // lex: the alphabetically first symbol with differing exponent decides
            let names: BTreeSet<&Arc<str>> =
                self.0.iter().chain(&other.0).map(|(n, _)| n).collect();
            for n in names {
                let c = self.exponent(n).cmp(&other.exponent(n));
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for ParamMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(n, e)| {
                if *e == 1 {
                    n.to_string()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// A coefficient: a polynomial in the declared parameter symbols with
/// cyclotomic coefficients. Purely numeric values take a fast path.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Zero,
    /// nonzero numeric value
    Num(CycRat),
    /// at least one term with a nontrivial parameter monomial
    Param(BTreeMap<ParamMonomial, CycRat>),
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<CycRat> for Scalar {
    fn from(c: CycRat) -> Self {
        Scalar::num(c)
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Zero)
    }

    pub fn num(c: CycRat) -> Self {
        if c.is_zero() {
            Scalar(Repr::Zero)
        } else {
            Scalar(Repr::Num(c))
        }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Scalar::num(CycRat::one(field))
    }

    pub fn from_int(field: &Arc<CyclotomicField>, n: i64) -> Self {
        Scalar::num(CycRat::from_int(field, n))
    }

    pub fn from_frac(field: &Arc<CyclotomicField>, num: i64, den: i64) -> Self {
        Scalar::num(CycRat::from_frac(field, num, den))
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: BigRational) -> Self {
        Scalar::num(CycRat::from_rational(field, q))
    }

    /// The parameter symbol `name` with coefficient 1.
    pub fn symbol(field: &Arc<CyclotomicField>, name: &str) -> Self {
        Self::from_terms(
            std::iter::once((ParamMonomial::symbol(name), CycRat::one(field))).collect(),
        )
    }

    pub fn monomial(m: ParamMonomial, c: CycRat) -> Self {
        Self::from_terms(std::iter::once((m, c)).collect())
    }

    fn from_terms(mut terms: BTreeMap<ParamMonomial, CycRat>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        match terms.len() {
            0 => Scalar(Repr::Zero),
            1 if terms.keys().next().unwrap().is_one() => {
                Scalar(Repr::Num(terms.into_values().next().unwrap()))
            }
            _ => Scalar(Repr::Param(terms)),
        }
    }

    /// Terms keyed by parameter monomial (empty for zero).
    pub fn terms(&self) -> BTreeMap<ParamMonomial, CycRat> {
        match &self.0 {
            Repr::Zero => BTreeMap::new(),
            Repr::Num(c) => std::iter::once((ParamMonomial::one(), c.clone())).collect(),
            Repr::Param(t) => t.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Num(c) if c.is_one())
    }

    pub fn is_numeric(&self) -> bool {
        !matches!(self.0, Repr::Param(_))
    }

    /// The numeric value; `None` for expressions involving parameters.
    /// Zero has no field attached and is reported as `Some(None)`.
    pub fn as_num(&self) -> Option<Option<&CycRat>> {
        match &self.0 {
            Repr::Zero => Some(None),
            Repr::Num(c) => Some(Some(c)),
            Repr::Param(_) => None,
        }
    }

    /// Numeric value in `field`, or an error naming the offending expression.
    pub fn to_num(&self, field: &Arc<CyclotomicField>) -> Result<CycRat> {
        match &self.0 {
            Repr::Zero => Ok(CycRat::zero(field)),
            Repr::Num(c) => Ok(c.clone()),
            Repr::Param(_) => Err(Error::NotNumeric(self.to_string())),
        }
    }

    pub fn field(&self) -> Option<&Arc<CyclotomicField>> {
        match &self.0 {
            Repr::Zero => None,
            Repr::Num(c) => Some(c.field()),
            Repr::Param(t) => t.values().next().map(CycRat::field),
        }
    }

    /// Parameter symbols occurring with nonzero coefficient.
    pub fn params(&self) -> BTreeSet<Arc<str>> {
        match &self.0 {
            Repr::Param(t) => t
                .keys()
                .flat_map(|m| m.0.iter().map(|(n, _)| n.clone()))
                .collect(),
            _ => BTreeSet::new(),
        }
    }

    /// Largest parameter monomial with its coefficient.
    pub fn leading_term(&self) -> Option<(ParamMonomial, CycRat)> {
        match &self.0 {
            Repr::Zero => None,
            Repr::Num(c) => Some((ParamMonomial::one(), c.clone())),
            Repr::Param(t) => t.iter().next_back().map(|(m, c)| (m.clone(), c.clone())),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(match (&self.0, &other.0) {
            (Repr::Zero, _) => other.clone(),
            (_, Repr::Zero) => self.clone(),
            (Repr::Num(a), Repr::Num(b)) => Scalar::num(a.try_add(b)?),
            _ => {
                let mut terms = self.terms();
                for (m, c) in other.terms() {
                    match terms.get_mut(&m) {
                        Some(slot) => *slot = slot.try_add(&c)?,
                        None => {
                            terms.insert(m, c);
                        }
                    }
                }
                Scalar::from_terms(terms)
            }
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        Ok(match (&self.0, &other.0) {
            (Repr::Zero, _) | (_, Repr::Zero) => Scalar::zero(),
            (Repr::Num(a), Repr::Num(b)) => Scalar::num(a.try_mul(b)?),
            _ => {
                let mut terms: BTreeMap<ParamMonomial, CycRat> = BTreeMap::new();
                for (ma, ca) in self.terms() {
                    for (mb, cb) in other.terms() {
                        let m = ma.mul(&mb);
                        let c = ca.try_mul(&cb)?;
                        match terms.get_mut(&m) {
                            Some(slot) => *slot = slot.try_add(&c)?,
                            None => {
                                terms.insert(m, c);
                            }
                        }
                    }
                }
                Scalar::from_terms(terms)
            }
        })
    }

    pub fn mul_num(&self, c: &CycRat) -> Self {
        match &self.0 {
            Repr::Zero => Scalar::zero(),
            Repr::Num(a) => Scalar::num(a * c),
            Repr::Param(t) => {
                Scalar::from_terms(t.iter().map(|(m, a)| (m.clone(), a * c)).collect())
            }
        }
    }

    /// Inverse of a numeric scalar.
    pub fn inv(&self) -> Result<Self> {
        match &self.0 {
            Repr::Zero => Err(Error::DivisionByZero),
            Repr::Num(c) => Ok(Scalar::num(c.inv()?)),
            Repr::Param(_) => Err(Error::NotNumeric(self.to_string())),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return match self.field() {
                Some(f) => Scalar::one(f),
                // 0^0; callers never rely on this
                None => Scalar::zero(),
            };
        }
        let mut out = self.clone();
        for _ in 1..e {
            out = &out * self;
        }
        out
    }

    /// Exact quotient in the polynomial ring of parameters; `None` when the
    /// division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Repr::Num(d) = &divisor.0 {
            return Ok(Some(self.mul_num(&d.inv()?)));
        }
        let (lm, lc) = divisor.leading_term().unwrap();
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Scalar::zero();
        while let Some((m, c)) = rem.leading_term() {
            let Some(qm) = m.div(&lm) else {
                return Ok(None);
            };
            let t = Scalar::monomial(qm, &c * &lc_inv);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Ok(Some(quot))
    }

    /// Substitutes numeric values for some or all parameters.
    pub fn substitute(&self, values: &BTreeMap<String, CycRat>) -> Self {
        let Repr::Param(t) = &self.0 else {
            return self.clone();
        };
        let mut out = Scalar::zero();
        for (m, c) in t {
            let mut kept = Vec::new();
            let mut coeff = c.clone();
            for (n, e) in &m.0 {
                match values.get(&**n) {
                    Some(v) => coeff = &coeff * &v.pow(*e),
                    None => kept.push((n.clone(), *e)),
                }
            }
            out = &out + &Scalar::monomial(ParamMonomial(kept), coeff);
        }
        out
    }

    /// Renders for use as a polynomial coefficient: returns the text and
    /// whether it needs parentheses when followed by `*`.
    pub(crate) fn coefficient_text(&self) -> (bool, String, bool) {
        // (negative, absolute text, needs_parens)
        match &self.0 {
            Repr::Zero => (false, "0".into(), false),
            Repr::Num(c) if c.is_monomial() => {
                if c.is_negative_monomial() {
                    (true, (-c).to_string(), false)
                } else {
                    (false, c.to_string(), false)
                }
            }
            Repr::Num(c) => (false, c.to_string(), true),
            Repr::Param(t) if t.len() == 1 => {
                let (m, c) = t.iter().next().unwrap();
                let (neg, c) = if c.is_negative_monomial() {
                    (true, -c)
                } else {
                    (false, c.clone())
                };
                let text = if c.is_one() {
                    m.to_string()
                } else if c.is_monomial() {
                    format!("{c}*{m}")
                } else {
                    format!("({c})*{m}")
                };
                (neg, text, false)
            }
            Repr::Param(_) => (false, self.to_string(), true),
        }
    }
}

/// Appends `c*body` to a sum being rendered; an empty body is a constant
/// term.
pub(crate) fn push_term(out: &mut String, first: bool, c: &Scalar, body: &str) {
    let (neg, text, parens) = c.coefficient_text();
    let term = if body.is_empty() {
        if parens && !first {
            format!("({text})")
        } else {
            text
        }
    } else if text == "1" && !parens {
        body.to_string()
    } else if parens {
        format!("({text})*{body}")
    } else {
        format!("{text}*{body}")
    };
    match (first, neg) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    out.push_str(&term);
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Zero => f.write_str("0"),
            Repr::Num(c) => write!(f, "{c}"),
            Repr::Param(t) => {
                // largest parameter monomial first
                for (k, (m, c)) in t.iter().rev().enumerate() {
                    let single = Scalar::monomial(m.clone(), c.clone());
                    let (neg, text, parens) = if m.is_one() {
                        (c.is_negative_monomial(), {
                            if c.is_negative_monomial() {
                                (-c).to_string()
                            } else {
                                c.to_string()
                            }
                        }, !c.is_monomial())
                    } else {
                        single.coefficient_text()
                    };
                    let text = if parens { format!("({text})") } else { text };
                    match (k, neg) {
                        (0, true) => write!(f, "-{text}")?,
                        (0, false) => write!(f, "{text}")?,
                        (_, true) => write!(f, " - {text}")?,
                        (_, false) => write!(f, " + {text}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("cyclotomic field mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_add(&-rhs).expect("cyclotomic field mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("cyclotomic field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Zero => Scalar::zero(),
            Repr::Num(c) => Scalar(Repr::Num(-c)),
            Repr::Param(t) => Scalar(Repr::Param(
                t.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            )),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Arc<CyclotomicField> {
        CyclotomicField::rationals()
    }

    #[test]
    fn numeric_fast_path_and_normalisation() {
        let f = q();
        let b = Scalar::symbol(&f, "b");
        let diff = &(&b + &Scalar::one(&f)) - &b;
        assert!(diff.is_one());
        assert!(diff.is_numeric());
        assert!((&b - &b).is_zero());
    }

    #[test]
    fn exact_division_of_parameter_polynomials() {
        let f = q();
        let b = Scalar::symbol(&f, "b");
        let c = Scalar::symbol(&f, "c");
        let prod = &(&b + &c) * &(&b - &c);
        assert_eq!(prod.exact_div(&(&b + &c)).unwrap(), Some(&b - &c));
        assert_eq!(prod.exact_div(&b).unwrap(), None);
    }

    #[test]
    fn display_parameters() {
        let f = q();
        let b = Scalar::symbol(&f, "b");
        let c = Scalar::symbol(&f, "c");
        let e = &(&(&b * &b) * &c) - &Scalar::from_frac(&f, 1, 2);
        assert_eq!(e.to_string(), "b^2*c - 1/2");
    }

    #[test]
    fn graded_lex_order() {
        let b = ParamMonomial::symbol("b");
        let c = ParamMonomial::symbol("c");
        assert!(b > c);
        assert!(c.mul(&c) > b);
        assert!(b.mul(&c) < b.mul(&b));
    }
}
