use std::collections::HashMap;

use super::HopfAction;
use crate::error::Result;
use crate::poisson::PoissonAlgebra;
use crate::polyring::{Monomial, Poly, PolyRing, RowSpace, SparseRow};
use crate::scalars::{ParamMonomial, Scalar};

/// Generators of the fixed subring found up to a degree bound, with their
/// brackets re-expressed in the generators where possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedRingReport {
    /// generators as polynomials in the original variables
    pub generators: Vec<Poly>,
    /// weighted degree of each generator
    pub degrees: Vec<u32>,
    /// ring on the generator names `v1, v2, ...`
    pub ring: PolyRing,
    /// `{v_a, v_b}` for `a < b` in the original variables
    pub raw_brackets: Vec<((usize, usize), Poly)>,
    /// the same brackets as polynomials in the generators, when they lie in
    /// the subalgebra generated within the degree bound
    pub brackets: Vec<((usize, usize), Option<Poly>)>,
    /// every bracket of generators is again invariant
    pub poisson_closed: bool,
    /// generation is only certified up to this degree
    pub maxdeg: u32,
}

impl FixedRingReport {
    /// The fixed ring as a Poisson algebra on `v1, v2, ...` when every
    /// bracket was re-expressed.
    pub fn presentation(&self) -> Option<PoissonAlgebra> {
        let entries: Option<Vec<_>> = self.brackets.iter().map(|(ij, p)| p.clone().map(|p| (*ij, p))).collect();
        PoissonAlgebra::new(self.ring.clone(), self.degrees.clone(), entries?).ok()
    }

    /// Lines `v1 = u1^2` followed by `{v1,v2} = ...`.
    pub fn format(&self, source: &PolyRing) -> Vec<String> {
        let mut out = Vec::new();
        for (name, g) in self.ring.vars().iter().zip(&self.generators) {
            out.push(format!("{name} = {}", source.format(g)));
        }
        for (((a, b), raw), (_, expr)) in self.raw_brackets.iter().zip(&self.brackets) {
            let lhs = format!("{{{},{}}}", self.ring.vars()[*a], self.ring.vars()[*b]);
            match expr {
                Some(p) => out.push(format!("{lhs} = {}", self.ring.format(p))),
                None => out.push(format!("{lhs} = {} (not expressed)", source.format(raw))),
            }
        }
        out
    }
}

fn numeric_row(p: &Poly, cols: &HashMap<&Monomial, usize>, pm: &ParamMonomial) -> SparseRow {
    let mut row: SparseRow = p
        .terms()
        .filter_map(|(m, c)| {
            let coeff = c.terms().remove(pm)?;
            Some((cols[m], coeff))
        })
        .collect();
    row.sort_by_key(|(i, _)| *i);
    row
}

impl HopfAction {
    /// Basis of the invariants of weighted degree `d`, in reduced echelon
    /// form with respect to the monomial order.
    pub fn fixed_subspace(&self, d: u32) -> Result<Vec<Poly>> {
        let ring = self.algebra.ring();
        let field = ring.field();
        let m = ring.nvars();
        let monos = Monomial::all_of_degree(m, self.algebra.weights(), d);
        let mut rows: HashMap<(usize, Monomial), SparseRow> = HashMap::new();
        for h in 0..self.hopf.dim() {
            let eps = Scalar::num(self.eps(h));
            for (col, mono) in monos.iter().enumerate() {
                let img = &self.act_monomial(h, mono) - &Poly::monomial(mono.clone(), eps.clone());
                for (target, c) in img.terms() {
                    let c = c.to_num(field)?;
                    rows.entry((h, target.clone())).or_default().push((col, c));
                }
            }
        }
        let mut space = RowSpace::new(field, monos.len());
        for row in rows.into_values() {
            space.insert(row);
        }
        let mut kernel = RowSpace::new(field, monos.len());
        for v in space.kernel() {
            kernel.insert_dense(&v);
        }
        Ok(kernel
            .rref()
            .into_iter()
            .map(|row| {
                Poly::from_terms(m, row.into_iter().map(|(i, c)| (monos[i].clone(), Scalar::num(c))))
            })
            .collect())
    }

    /// Greedy search for generators of the fixed subring up to weighted
    /// degree `maxdeg`.
    pub fn fixed_ring_report(&self, maxdeg: u32) -> Result<FixedRingReport> {
        let ring = self.algebra.ring();
        let field = ring.field();
        let m = ring.nvars();
        let weights = self.algebra.weights();
        let mut gens: Vec<(Poly, u32)> = Vec::new();
        for d in 1..=maxdeg {
            let basis = self.fixed_subspace(d)?;
            if basis.is_empty() {
                continue;
            }
            let monos = Monomial::all_of_degree(m, weights, d);
            let cols: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, x)| (x, i)).collect();
            let gen_weights: Vec<u32> = gens.iter().map(|(_, w)| *w).collect();
            let mut span = RowSpace::new(field, monos.len());
            for prod in Monomial::all_of_degree(gens.len(), &gen_weights, d) {
                let p = self.generator_product(&gens, &prod);
                span.insert(numeric_row(&p, &cols, &ParamMonomial::one()));
            }
            for b in basis {
                if span.insert(numeric_row(&b, &cols, &ParamMonomial::one())) {
                    gens.push((b, d));
                }
            }
        }
        gens.sort_by(|a, b| {
            let la = a.0.leading_term().map(|(x, _)| x.exponents().to_vec());
            let lb = b.0.leading_term().map(|(x, _)| x.exponents().to_vec());
            lb.cmp(&la)
        });
        let names: Vec<String> = (1..=gens.len()).map(|i| format!("v{i}")).collect();
        let gring = PolyRing::new(field.clone(), names, ring.params().to_vec())?;
        let degrees: Vec<u32> = gens.iter().map(|(_, w)| *w).collect();
        let mut raw_brackets = Vec::new();
        let mut brackets = Vec::new();
        let mut poisson_closed = true;
        for a in 0..gens.len() {
            for b in a + 1..gens.len() {
                let raw = self.algebra.bracket(&gens[a].0, &gens[b].0);
                poisson_closed &= self.is_invariant(&raw);
                brackets.push(((a, b), self.express_in_generators(&gens, &raw)?));
                raw_brackets.push(((a, b), raw));
            }
        }
        Ok(FixedRingReport {
            generators: gens.into_iter().map(|(p, _)| p).collect(),
            degrees,
            ring: gring,
            raw_brackets,
            brackets,
            poisson_closed,
            maxdeg,
        })
    }

    /// `h.f = eps(h) f` for every basis element `h`.
    pub fn is_invariant(&self, f: &Poly) -> bool {
        (0..self.hopf.dim()).all(|h| self.act(h, f) == f.scale_num(&self.eps(h)))
    }

    fn generator_product(&self, gens: &[(Poly, u32)], e: &Monomial) -> Poly {
        let field = self.algebra.field();
        let mut p = self.algebra.ring().one();
        for (k, &x) in e.exponents().iter().enumerate() {
            if x > 0 {
                p = &p * &gens[k].0.pow(x, field);
            }
        }
        p
    }

    /// Writes `f` as a polynomial in the generators, one homogeneous part and
    /// one parameter monomial at a time.
    fn express_in_generators(&self, gens: &[(Poly, u32)], f: &Poly) -> Result<Option<Poly>> {
        let ring = self.algebra.ring();
        let field = ring.field();
        let m = ring.nvars();
        let k = gens.len();
        let gen_weights: Vec<u32> = gens.iter().map(|(_, w)| *w).collect();
        let mut out = Poly::zero(k);
        for (d, part) in f.graded_parts(self.algebra.weights()) {
            let monos = Monomial::all_of_degree(m, self.algebra.weights(), d);
            let cols: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, x)| (x, i)).collect();
            let prods = Monomial::all_of_degree(k, &gen_weights, d);
            let mut span = RowSpace::new(field, monos.len());
            for prod in &prods {
                span.insert(numeric_row(&self.generator_product(gens, prod), &cols, &ParamMonomial::one()));
            }
            let pms: std::collections::BTreeSet<ParamMonomial> =
                part.terms().flat_map(|(_, c)| c.terms().into_keys()).collect();
            for pm in pms {
                let Some(combo) = span.express(numeric_row(&part, &cols, &pm)) else {
                    return Ok(None);
                };
                for (i, c) in combo {
                    out.add_term(prods[i].clone(), Scalar::monomial(pm.clone(), c));
                }
            }
        }
        Ok(Some(out))
    }
}
