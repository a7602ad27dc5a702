//! Equivariant bracket families: the brackets compatible with a given linear
//! Hopf action, found as the solution space of a linear system, and their
//! Jacobi obstructions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::action::HopfAction;
use crate::error::{Error, Result};
use crate::poisson::PoissonAlgebra;
use crate::polyring::{Monomial, Poly, RowSpace, SparseRow};
use crate::scalars::{CycRat, Scalar};

/// Degree of the unknown structure polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DegreeClass {
    Constant,
    Linear,
    Quadratic,
}

impl DegreeClass {
    pub fn degree(self) -> u32 {
        match self {
            DegreeClass::Constant => 0,
            DegreeClass::Linear => 1,
            DegreeClass::Quadratic => 2,
        }
    }
}

impl FromStr for DegreeClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "const" | "constant" => Ok(DegreeClass::Constant),
            "linear" => Ok(DegreeClass::Linear),
            "quadratic" => Ok(DegreeClass::Quadratic),
            _ => Err(Error::InvalidArgument(format!("unknown degree class {s:?}"))),
        }
    }
}

impl fmt::Display for DegreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegreeClass::Constant => "const",
            DegreeClass::Linear => "linear",
            DegreeClass::Quadratic => "quadratic",
        })
    }
}

/// A bracket table whose entries are linear in the parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketFamily {
    pub params: Vec<String>,
    pub algebra: PoissonAlgebra,
}

impl BracketFamily {
    /// Wraps a parametric algebra; its ring parameters become the family
    /// parameters.
    pub fn from_algebra(algebra: PoissonAlgebra) -> Self {
        BracketFamily {
            params: algebra.ring().params().to_vec(),
            algebra,
        }
    }

    /// Dimension of the solution space.
    pub fn dimension(&self) -> usize {
        self.params.len()
    }

    pub fn is_zero(&self) -> bool {
        self.algebra.is_trivial()
    }

    pub fn specialize(&self, values: &BTreeMap<String, CycRat>) -> Result<PoissonAlgebra> {
        self.algebra.specialize(values)
    }

    /// Coefficients in the parameters that must vanish for the Jacobi
    /// identity, each scaled so its leading coefficient is 1. Empty when
    /// every member is Poisson.
    pub fn jacobi_obstructions(&self) -> Vec<Scalar> {
        let ring = self.algebra.ring();
        let vars = ring.vars_polys();
        let m = vars.len();
        let mut out: Vec<Scalar> = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let jac = self.algebra.jacobiator(&vars[i], &vars[j], &vars[k]);
                    for (_, c) in jac.terms() {
                        let c = monic(c);
                        if !out.contains(&c) {
                            out.push(c);
                        }
                    }
                }
            }
        }
        out
    }
}

fn monic(c: &Scalar) -> Scalar {
    match c.leading_term() {
        Some((_, lc)) => c.mul_num(&lc.inv().expect("nonzero leading coefficient")),
        None => c.clone(),
    }
}

/// Parameter names `b, c, d, ...` avoiding the ring's symbols.
fn param_names(taken: &[String], k: usize) -> Vec<String> {
    ('b'..='y')
        .map(String::from)
        .filter(|s| s != "t" && !taken.contains(s))
        .chain((1..).map(|i| format!("p{i}")))
        .take(k)
        .collect()
}

/// Solves for all brackets with entries homogeneous of the given degree
/// that make `action` a Poisson action. The action's own bracket is
/// ignored; only its variables and generator images matter.
pub fn equivariant_families(action: &HopfAction, degclass: DegreeClass) -> Result<BracketFamily> {
    if !action.is_linear() {
        return Err(Error::NotLinear("equivariant families need a linear action".into()));
    }
    let hopf = action.hopf();
    let ring = action.algebra().ring();
    let field = ring.field();
    let m = ring.nvars();
    let monos = Monomial::all_of_degree(m, &vec![1; m], degclass.degree());
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let col = |p: usize, k: usize| p * monos.len() + k;
    let ncols = pairs.len() * monos.len();
    let pair_index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(p, &ij)| (ij, p)).collect();

    // linear coordinates of e_h . u_i
    let mut lin = vec![vec![Vec::new(); m]; hopf.dim()];
    for (h, row) in lin.iter_mut().enumerate() {
        for (i, slot) in row.iter_mut().enumerate() {
            let img = action.act(h, &ring.var(i));
            for (mono, c) in img.terms() {
                let k = mono.first_var().expect("linear image");
                slot.push((k, c.to_num(field)?));
            }
        }
    }

    let mut rows: HashMap<(usize, usize, usize, Monomial), SparseRow> = HashMap::new();
    let mut push = |key: (usize, usize, usize), target: &Monomial, c: CycRat, column: usize| {
        rows.entry((key.0, key.1, key.2, target.clone()))
            .or_default()
            .push((column, c));
    };
    for h in 0..hopf.dim() {
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    let (p, sign) = if i < j { (pair_index[&(i, j)], 1) } else { (pair_index[&(j, i)], -1) };
                    for (k, mono) in monos.iter().enumerate() {
                        let img = action.act(h, &Poly::monomial(mono.clone(), Scalar::one(field)));
                        for (target, c) in img.terms() {
                            let c = c.to_num(field)?;
                            let c = if sign < 0 { -c } else { c };
                            push((h, i, j), target, c, col(p, k));
                        }
                    }
                }
                for (a, b, c) in hopf.comult(h) {
                    for (k, ck) in &lin[*a][i] {
                        for (l, cl) in &lin[*b][j] {
                            if k == l {
                                continue;
                            }
                            let (p, coeff) = if k < l {
                                (pair_index[&(*k, *l)], -(&(c * ck) * cl))
                            } else {
                                (pair_index[&(*l, *k)], &(c * ck) * cl)
                            };
                            for (q, mono) in monos.iter().enumerate() {
                                push((h, i, j), mono, coeff.clone(), col(p, q));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut space = RowSpace::new(field, ncols);
    for (_, mut row) in rows {
        row.sort_by_key(|(c, _)| *c);
        let mut merged: SparseRow = Vec::new();
        for (c, v) in row {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv = &*lv + &v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        space.insert(merged);
    }
    let mut kernel = RowSpace::new(field, ncols);
    for v in space.kernel() {
        kernel.insert_dense(&v);
    }
    let basis = kernel.rref();
    let names = param_names(ring.vars(), basis.len());
    let pring = ring.with_params(&names)?;
    let mut entries: Vec<Poly> = vec![Poly::zero(m); pairs.len()];
    for (vec, name) in basis.iter().zip(&names) {
        let s = Scalar::symbol(field, name);
        for (column, c) in vec {
            let (p, k) = (column / monos.len(), column % monos.len());
            entries[p].add_term(monos[k].clone(), s.mul_num(c));
        }
    }
    let algebra = PoissonAlgebra::new(pring, vec![1; m], pairs.into_iter().zip(entries))?;
    Ok(BracketFamily { params: names, algebra })
}

/// Applies `u3' = -(b u2 + c u3)` to the member `(b, c)` of the quadratic
/// three-variable Taft family and returns the transformed algebra; for
/// `c != 0` it should be the quadratic Taft bracket with parameter `c`.
pub fn taft_quadratic_normal_form(family: &BracketFamily, b: &CycRat, c: &CycRat) -> Result<PoissonAlgebra> {
    if family.params.len() != 2 || family.algebra.nvars() != 3 {
        return Err(Error::InvalidArgument("expected a two-parameter family in three variables".into()));
    }
    let values: BTreeMap<String, CycRat> =
        [(family.params[0].clone(), b.clone()), (family.params[1].clone(), c.clone())].into();
    let member = family.specialize(&values)?;
    let ring = member.ring();
    let (u1, u2, u3) = (ring.var(0), ring.var(1), ring.var(2));
    let new3 = -&(&u2.scale_num(b) + &u3.scale_num(c));
    let old3 = (&u3 + &u2.scale_num(b)).scale_num(&-c.inv()?);
    member.change_of_variables(&[u1.clone(), u2.clone(), new3], &[u1, u2, old3])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::CyclotomicField;

    fn taft(m: usize, n: u32) -> HopfAction {
        let f = CyclotomicField::new(n).unwrap();
        HopfAction::taft_standard(PoissonAlgebra::trivial(&f, m), n).unwrap()
    }

    #[test]
    fn quadratic_family_three_vars() {
        let fam = equivariant_families(&taft(3, 2), DegreeClass::Quadratic).unwrap();
        assert_eq!(fam.params, ["b", "c"]);
        assert_eq!(
            fam.algebra.format_table(),
            ["{u1,u3} = b*u1*u2 + c*u1*u3", "{u2,u3} = b*u2^2 + c*u2*u3"]
        );
        assert!(fam.jacobi_obstructions().is_empty());
    }

    #[test]
    fn two_vars_only_zero() {
        for d in [DegreeClass::Constant, DegreeClass::Linear, DegreeClass::Quadratic] {
            assert!(equivariant_families(&taft(2, 3), d).unwrap().is_zero());
        }
    }
}
