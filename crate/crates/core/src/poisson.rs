//! Poisson brackets on polynomial rings.
//!
//! A [`PoissonAlgebra`] is determined by the structure polynomials
//! `f_ij = {u_i, u_j}` for `i < j`; the bracket of arbitrary polynomials is
//! the unique biderivation extending them.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polyring::{Monomial, Poly, PolyRing};
use crate::scalars::{CycRat, CyclotomicField, Scalar};

/// Polynomial Poisson algebra `k[u_1, ..., u_m]` with weighted grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonAlgebra {
    ring: PolyRing,
    weights: Vec<u32>,
    /// full antisymmetric table, `table[j][i] == -table[i][j]`
    table: Vec<Vec<Poly>>,
}

/// A derivation of the polynomial ring, given by the images of the
/// variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub images: Vec<Poly>,
}

impl Derivation {
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(f.nvars());
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            out = &out + &(&f.derivative(i) * img);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Poly::is_zero)
    }
}

/// A generator triple on which the Jacobi identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiFailure {
    pub triple: (usize, usize, usize),
    pub residual: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub failures: Vec<JacobiFailure>,
    /// Jacobiators of random products of degree at most 2 all vanished.
    pub sampled_ok: bool,
}

impl JacobiReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.sampled_ok
    }
}

/// The six filtered quadratic brackets on `k[u1, u2]` up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Filtered2 {
    One,
    U1,
    U1Squared,
    U1SquaredPlusOne,
    /// `q*u1*u2`
    Skew(Scalar),
    /// `q*u1*u2 + 1`
    SkewPlusOne(Scalar),
}

impl Filtered2 {
    pub fn all(q: Scalar) -> Vec<Filtered2> {
        vec![
            Filtered2::One,
            Filtered2::U1,
            Filtered2::U1Squared,
            Filtered2::U1SquaredPlusOne,
            Filtered2::Skew(q.clone()),
            Filtered2::SkewPlusOne(q),
        ]
    }
}

impl PoissonAlgebra {
    /// Builds an algebra from the entries `((i, j), f_ij)`. Entries with
    /// `i > j` are stored as `-f_ji`; missing entries are zero.
    pub fn new(
        ring: PolyRing,
        weights: Vec<u32>,
        entries: impl IntoIterator<Item = ((usize, usize), Poly)>,
    ) -> Result<Self> {
        let m = ring.nvars();
        if weights.len() != m {
            return Err(Error::VariableMismatch(m, weights.len()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidStructure("weights must be positive".into()));
        }
        let mut table = vec![vec![Poly::zero(m); m]; m];
        let mut given = vec![vec![false; m]; m];
        for ((i, j), f) in entries {
            if i >= m || j >= m {
                return Err(Error::InvalidStructure(format!(
                    "bracket index ({},{}) out of range",
                    i + 1,
                    j + 1
                )));
            }
            if f.nvars() != m {
                return Err(Error::VariableMismatch(m, f.nvars()));
            }
            if i == j {
                if !f.is_zero() {
                    return Err(Error::InvalidStructure(format!(
                        "diagonal bracket ({},{}) must vanish",
                        i + 1,
                        i + 1
                    )));
                }
                continue;
            }
            let (a, b, f) = if i < j { (i, j, f) } else { (j, i, -&f) };
            if given[a][b] && table[a][b] != f {
                return Err(Error::InvalidStructure(format!(
                    "conflicting entries for bracket ({},{})",
                    a + 1,
                    b + 1
                )));
            }
            given[a][b] = true;
            table[b][a] = -&f;
            table[a][b] = f;
        }
        Ok(PoissonAlgebra {
            ring,
            weights,
            table,
        })
    }

    /// Parses entries given as `((i, j), text)` with 0-based indices.
    pub fn parse(ring: PolyRing, weights: Vec<u32>, entries: &[((usize, usize), &str)]) -> Result<Self> {
        let parsed = entries
            .iter()
            .map(|(ij, s)| Ok((*ij, ring.parse(s)?)))
            .collect::<Result<Vec<_>>>()?;
        PoissonAlgebra::new(ring, weights, parsed)
    }

    /// The trivial bracket on variables `u1, ..., um`.
    pub fn trivial(field: &Arc<CyclotomicField>, m: usize) -> Self {
        let ring = PolyRing::numbered(field.clone(), "u", m);
        PoissonAlgebra::new(ring, vec![1; m], []).expect("valid")
    }

    /// The Weyl Poisson algebra on `u1..un, v1..vn` with `{u_i, v_j} = delta_ij`.
    pub fn weyl(field: &Arc<CyclotomicField>, n: usize) -> Self {
        let vars = (1..=n)
            .map(|i| format!("u{i}"))
            .chain((1..=n).map(|i| format!("v{i}")))
            .collect();
        let ring = PolyRing::new(field.clone(), vars, Vec::new()).expect("valid names");
        let one = ring.one();
        let entries: Vec<_> = (0..n).map(|i| ((i, n + i), one.clone())).collect();
        PoissonAlgebra::new(ring, vec![1; 2 * n], entries).expect("valid")
    }

    /// Skew-symmetric algebra `{u_i, u_j} = c_ij u_i u_j`; only the entries
    /// above the diagonal of `c` are read.
    pub fn skew(field: &Arc<CyclotomicField>, c: &[Vec<Scalar>]) -> Result<Self> {
        let m = c.len();
        if c.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidStructure("skew matrix must be square".into()));
        }
        let ring = ring_with_params(field, (1..=m).map(|i| format!("u{i}")).collect(), c.iter().flatten())?;
        let mut entries = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let f = (&ring.var(i) * &ring.var(j)).scale(&c[i][j]);
                entries.push(((i, j), f));
            }
        }
        PoissonAlgebra::new(ring, vec![1; m], entries)
    }

    /// `{u1,u2} = 0`, `{u2,u3} = u2`, `{u1,u3} = u1`.
    pub fn taft_linear(field: &Arc<CyclotomicField>) -> Self {
        let ring = PolyRing::numbered(field.clone(), "u", 3);
        PoissonAlgebra::parse(ring, vec![1; 3], &[((1, 2), "u2"), ((0, 2), "u1")]).expect("valid")
    }

    /// `{u1,u2} = 0`, `{u2,u3} = c u2 u3`, `{u1,u3} = c u1 u3`.
    pub fn taft_quadratic(field: &Arc<CyclotomicField>, c: Scalar) -> Self {
        let ring = ring_with_params(field, (1..=3).map(|i| format!("u{i}")).collect(), [&c])
            .expect("valid names");
        let f13 = ring.parse("u1*u3").unwrap().scale(&c);
        let f23 = ring.parse("u2*u3").unwrap().scale(&c);
        PoissonAlgebra::new(ring, vec![1; 3], [((0, 2), f13), ((1, 2), f23)]).expect("valid")
    }

    /// Filtered quadratic bracket on `k[u1, u2]`.
    pub fn filtered2(field: &Arc<CyclotomicField>, choice: &Filtered2) -> Self {
        let q = match choice {
            Filtered2::Skew(q) | Filtered2::SkewPlusOne(q) => Some(q.clone()),
            _ => None,
        };
        let ring = ring_with_params(field, vec!["u1".into(), "u2".into()], q.as_ref())
            .expect("valid names");
        let f = match choice {
            Filtered2::One => ring.one(),
            Filtered2::U1 => ring.var(0),
            Filtered2::U1Squared => ring.parse("u1^2").unwrap(),
            Filtered2::U1SquaredPlusOne => ring.parse("u1^2 + 1").unwrap(),
            Filtered2::Skew(q) => ring.parse("u1*u2").unwrap().scale(q),
            Filtered2::SkewPlusOne(q) => &ring.parse("u1*u2").unwrap().scale(q) + &ring.one(),
        };
        PoissonAlgebra::new(ring, vec![1, 1], [((0, 1), f)]).expect("valid")
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        self.ring.field()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// `{u_i, u_j}`.
    pub fn structure(&self, i: usize, j: usize) -> &Poly {
        &self.table[i][j]
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().flatten().all(Poly::is_zero)
    }

    /// `sum_{i<j} f_ij (d_i f d_j g - d_j f d_i g)`.
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Poly {
        let m = self.nvars();
        let df: Vec<Poly> = (0..m).map(|i| f.derivative(i)).collect();
        let dg: Vec<Poly> = (0..m).map(|i| g.derivative(i)).collect();
        let mut out = Poly::zero(m);
        for i in 0..m {
            for j in i + 1..m {
                let fij = &self.table[i][j];
                if fij.is_zero() {
                    continue;
                }
                let cross = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
                if !cross.is_zero() {
                    out = &out + &(fij * &cross);
                }
            }
        }
        out
    }

    /// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`.
    pub fn jacobiator(&self, f: &Poly, g: &Poly, h: &Poly) -> Poly {
        let a = self.bracket(f, &self.bracket(g, h));
        let b = self.bracket(g, &self.bracket(h, f));
        let c = self.bracket(h, &self.bracket(f, g));
        &(&a + &b) + &c
    }

    /// Evaluates the Jacobiator on every generator triple `i < j < k`, plus
    /// a seeded random check on products.
    pub fn check_jacobi(&self) -> JacobiReport {
        let m = self.nvars();
        let vars = self.ring.vars_polys();
        let mut failures = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let r = self.jacobiator(&vars[i], &vars[j], &vars[k]);
                    if !r.is_zero() {
                        failures.push(JacobiFailure {
                            triple: (i, j, k),
                            residual: r,
                        });
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let sampled_ok = (0..4).all(|_| {
            let f = random_poly(&self.ring, &mut rng, 2);
            let g = random_poly(&self.ring, &mut rng, 2);
            let h = random_poly(&self.ring, &mut rng, 2);
            self.jacobiator(&f, &g, &h).is_zero()
        });
        JacobiReport {
            failures,
            sampled_ok,
        }
    }

    /// `phi(u_i) = sum_j d/du_j {u_i, u_j}`.
    pub fn modular_derivation(&self) -> Derivation {
        let m = self.nvars();
        let images = (0..m)
            .map(|i| {
                (0..m).fold(Poly::zero(m), |acc, j| &acc + &self.table[i][j].derivative(j))
            })
            .collect();
        Derivation { images }
    }

    pub fn is_unimodular(&self) -> bool {
        self.modular_derivation().is_zero()
    }

    /// Checks that each `f_ij` has weighted degree at most `w_i + w_j`.
    pub fn check_filtration(&self) -> Result<()> {
        let m = self.nvars();
        for i in 0..m {
            for j in i + 1..m {
                let bound = self.weights[i] + self.weights[j];
                if let Some(d) = self.table[i][j].weighted_degree(&self.weights) {
                    if d > bound {
                        return Err(Error::FiltrationViolated {
                            i: i + 1,
                            j: j + 1,
                            degree: d,
                            bound,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// True when every `f_ij` is homogeneous of weighted degree `w_i + w_j`.
    pub fn is_graded(&self) -> bool {
        let m = self.nvars();
        (0..m).all(|i| {
            (i + 1..m).all(|j| {
                self.table[i][j].is_homogeneous(&self.weights, self.weights[i] + self.weights[j])
            })
        })
    }

    /// Rees algebra: adjoins a central variable `t` of weight 1 and
    /// homogenizes `f_ij` to degree `w_i + w_j`.
    pub fn rees(&self) -> Result<PoissonAlgebra> {
        self.check_filtration()?;
        let t = self.ring.fresh_name("t");
        let ring = self.ring.with_var(&t)?;
        let mut weights = self.weights.clone();
        weights.push(1);
        let m = self.nvars();
        let mut entries = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let d = self.weights[i] + self.weights[j];
                entries.push(((i, j), self.table[i][j].homogenize(&self.weights, d)?));
            }
        }
        PoissonAlgebra::new(ring, weights, entries)
    }

    /// Associated graded algebra for the weight filtration.
    pub fn assoc_graded(&self) -> Result<PoissonAlgebra> {
        self.check_filtration()?;
        let m = self.nvars();
        let mut entries = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let d = self.weights[i] + self.weights[j];
                let top = self.table[i][j]
                    .graded_parts(&self.weights)
                    .remove(&d)
                    .unwrap_or_else(|| Poly::zero(m));
                entries.push(((i, j), top));
            }
        }
        PoissonAlgebra::new(self.ring.clone(), self.weights.clone(), entries)
    }

    /// True iff every `f_ij` is homogeneous of degree `z_i + z_j` for the
    /// integer grading `deg u_i = z_i`.
    pub fn check_weight_grading(&self, z: &[i64]) -> bool {
        let m = self.nvars();
        assert_eq!(z.len(), m, "one weight per variable");
        let zdeg = |mono: &Monomial| -> i64 {
            mono.exponents().iter().zip(z).map(|(&e, &w)| e as i64 * w).sum()
        };
        (0..m).all(|i| {
            (i + 1..m).all(|j| self.table[i][j].terms().all(|(mono, _)| zdeg(mono) == z[i] + z[j]))
        })
    }

    /// Substitutes numeric values for parameters.
    pub fn specialize(&self, values: &BTreeMap<String, CycRat>) -> Result<PoissonAlgebra> {
        let remaining: Vec<String> = self
            .ring
            .params()
            .iter()
            .filter(|p| !values.contains_key(*p))
            .cloned()
            .collect();
        let ring = PolyRing::new(self.field().clone(), self.ring.vars().to_vec(), remaining)?;
        let m = self.nvars();
        let mut entries = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                entries.push(((i, j), self.table[i][j].substitute_params(values)));
            }
        }
        PoissonAlgebra::new(ring, self.weights.clone(), entries)
    }

    /// The bracket in new coordinates `w_a = new_coords[a]`, where
    /// `inverse[i]` expresses `u_i` as a polynomial in the `w`'s.
    pub fn change_of_variables(&self, new_coords: &[Poly], inverse: &[Poly]) -> Result<PoissonAlgebra> {
        let m = self.nvars();
        if new_coords.len() != m || inverse.len() != m {
            return Err(Error::VariableMismatch(m, new_coords.len().min(inverse.len())));
        }
        let mut entries = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let br = self.bracket(&new_coords[a], &new_coords[b]);
                entries.push(((a, b), br.substitute(inverse)?));
            }
        }
        PoissonAlgebra::new(self.ring.clone(), self.weights.clone(), entries)
    }

    /// One line `{ui,uj} = f` per nonzero bracket with `i < j`.
    pub fn format_table(&self) -> Vec<String> {
        let m = self.nvars();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let f = &self.table[i][j];
                if !f.is_zero() {
                    out.push(format!(
                        "{{{},{}}} = {}",
                        self.ring.vars()[i],
                        self.ring.vars()[j],
                        self.ring.format(f)
                    ));
                }
            }
        }
        out
    }
}

fn ring_with_params<'a>(
    field: &Arc<CyclotomicField>,
    vars: Vec<String>,
    scalars: impl IntoIterator<Item = &'a Scalar>,
) -> Result<PolyRing> {
    let mut params: Vec<String> = Vec::new();
    for s in scalars {
        for p in s.params() {
            if !params.iter().any(|q| **q == *p) {
                params.push(p.to_string());
            }
        }
    }
    params.sort();
    PolyRing::new(field.clone(), vars, params)
}

/// A random polynomial of degree at most `maxdeg` with a few small integer
/// coefficients.
pub(crate) fn random_poly(ring: &PolyRing, rng: &mut impl Rng, maxdeg: u32) -> Poly {
    let m = ring.nvars();
    let mut p = ring.zero();
    for _ in 0..3 {
        let d = rng.gen_range(0..=maxdeg);
        let mut e = vec![0u32; m];
        for _ in 0..d {
            e[rng.gen_range(0..m)] += 1;
        }
        let c = rng.gen_range(-3i64..=3);
        p.add_term(Monomial::from_exponents(e), ring.int(c));
    }
    p
}
