use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The cyclotomic field Q(z) with z a primitive n-th root of unity.
///
/// Elements are stored in the power basis `1, z, ..., z^(phi-1)` where `phi`
/// is the degree of the n-th cyclotomic polynomial.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u32,
    min_poly: Vec<BigInt>,
    /// `reductions[k]` is `x^k mod Phi_n` in the power basis.
    reductions: Vec<Vec<BigInt>>,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Result<Arc<Self>> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let min_poly = cyclotomic_polynomial(order);
        let phi = min_poly.len() - 1;
        let top = (order as usize).max(2 * phi);
        let mut reductions = Vec::with_capacity(top);
        let mut current = vec![BigInt::zero(); phi];
        current[0] = BigInt::one();
        for _ in 0..top {
            reductions.push(current.clone());
            // multiply by x and fold the overflowing coefficient back in
            let carry = current.pop().unwrap();
            current.insert(0, BigInt::zero());
            if !carry.is_zero() {
                for (c, m) in current.iter_mut().zip(&min_poly) {
                    *c -= &carry * m;
                }
            }
        }
        Ok(Arc::new(CyclotomicField {
            order,
            min_poly,
            reductions,
        }))
    }

    /// The field of rational numbers, viewed as Q(z_1).
    pub fn rationals() -> Arc<Self> {
        Self::new(1).expect("order 1 is valid")
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of the extension, Euler's totient of the order.
    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    /// Integer coefficients of the cyclotomic polynomial, constant term first.
    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }
}

/// Computes the n-th cyclotomic polynomial by dividing `x^n - 1` by all
/// `Phi_d` with `d | n`, `d < n`. Coefficients are listed constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n > 0);
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = int_poly_divrem_monic(&num, &cyclotomic_polynomial(d));
            debug_assert!(r.iter().all(Zero::is_zero));
            num = q;
        }
    }
    num
}

/// Long division of integer polynomials by a monic divisor.
pub(crate) fn int_poly_divrem_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    if num.len() <= dd {
        return (vec![BigInt::zero()], rem);
    }
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    rem.truncate(dd);
    (quot, rem)
}

/// An element of a cyclotomic field with exact rational coordinates.
#[derive(Clone)]
pub struct CycRat {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CycRat {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycRat {}

impl std::hash::Hash for CycRat {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycRat[{}]({})", self.field.order, self)
    }
}

impl CycRat {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        CycRat {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_int(field: &Arc<CyclotomicField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(field: &Arc<CyclotomicField>, num: i64, den: i64) -> Self {
        Self::from_rational(
            field,
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        )
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: BigRational) -> Self {
        let mut out = Self::zero(field);
        out.coeffs[0] = q;
        out
    }

    /// Builds an element from power-basis coordinates of any length; the
    /// coordinates are reduced modulo the cyclotomic polynomial.
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: Vec<BigRational>) -> Self {
        let mut out = Self::zero(field);
        for (k, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled_power(k, &c);
            }
        }
        out
    }

    /// `z^k` for the distinguished primitive root `z`; negative powers allowed.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let e = k.rem_euclid(field.order as i64) as usize;
        let mut out = Self::zero(field);
        out.add_scaled_power(e, &BigRational::one());
        out
    }

    fn add_scaled_power(&mut self, k: usize, c: &BigRational) {
        let phi = self.coeffs.len();
        if k < phi {
            self.coeffs[k] += c;
            return;
        }
        let red = if k < self.field.reductions.len() {
            std::borrow::Cow::Borrowed(&self.field.reductions[k])
        } else {
            std::borrow::Cow::Owned(self.field.reduce_power(k))
        };
        for (dst, r) in self.coeffs.iter_mut().zip(red.iter()) {
            if !r.is_zero() {
                *dst += c * BigRational::from_integer(r.clone());
            }
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.order == other.field.order {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.order, other.field.order))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycRat {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycRat {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let phi = self.coeffs.len();
        if phi == 1 {
            return Ok(CycRat {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut full = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] += a * b;
                }
            }
        }
        let mut out = CycRat {
            field: self.field.clone(),
            coeffs: full[..phi].to_vec(),
        };
        for (k, c) in full.iter().enumerate().skip(phi) {
            if !c.is_zero() {
                out.add_scaled_power(k, c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycRat {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic polynomial.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, q.recip()));
        }
        let modulus: Vec<BigRational> = self
            .field
            .min_poly
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let a = trim(self.coeffs.clone());
        // invariant: s * a == r (mod modulus)
        let (mut r0, mut r1) = (modulus, a);
        let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = qpoly_divrem(&r0, &r1);
            let s2 = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant because the modulus is irreducible
        let c = r1[0].recip();
        let coeffs = s1.into_iter().map(|x| x * &c).collect();
        Ok(Self::from_coeffs(&self.field, coeffs))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power, negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }

    /// True when the element prints without parentheses after a sign, i.e.
    /// it has a single nonzero coordinate.
    pub(crate) fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
    }

    /// Sign of the single nonzero coordinate, when the element is a monomial.
    pub(crate) fn is_negative_monomial(&self) -> bool {
        let mut nz = self.coeffs.iter().filter(|c| !c.is_zero());
        match (nz.next(), nz.next()) {
            (Some(c), None) => c.is_negative(),
            _ => false,
        }
    }
}

impl CyclotomicField {
    fn reduce_power(&self, k: usize) -> Vec<BigInt> {
        // z^order == 1
        let e = k % self.order as usize;
        self.reductions[e].clone()
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![BigRational::zero()], rem);
    }
    let lead_inv = b[db].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (i, d) in b.iter().enumerate() {
            let t = &c * d;
            rem[k + i] -= t;
        }
        quot[k] = c;
    }
    rem.truncate(db.max(1));
    (trim(quot), trim(rem))
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

impl Add for &CycRat {
    type Output = CycRat;
    fn add(self, rhs: &CycRat) -> CycRat {
        self.try_add(rhs).expect("cyclotomic field mismatch")
    }
}

impl Sub for &CycRat {
    type Output = CycRat;
    fn sub(self, rhs: &CycRat) -> CycRat {
        self.try_sub(rhs).expect("cyclotomic field mismatch")
    }
}

impl Mul for &CycRat {
    type Output = CycRat;
    fn mul(self, rhs: &CycRat) -> CycRat {
        self.try_mul(rhs).expect("cyclotomic field mismatch")
    }
}

impl Neg for &CycRat {
    type Output = CycRat;
    fn neg(self) -> CycRat {
        CycRat {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycRat {
    type Output = CycRat;
    fn neg(mut self) -> CycRat {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Prints in the power basis, e.g. `1/2 + 3*z^2`.
impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, abs) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let power = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&power)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), power)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
