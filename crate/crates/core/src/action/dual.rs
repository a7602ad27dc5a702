use std::collections::BTreeMap;
use std::sync::Arc;

use super::{HopfAction, VerificationReport};
use crate::error::{Error, Result};
use crate::hopf::FiniteHopf;
use crate::poisson::PoissonAlgebra;
use crate::polyring::Poly;

/// Right coaction `rho(u_j) = sum_k p_jk (x) c_k` of a finite-dimensional
/// Hopf algebra `C` on a polynomial Poisson algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coaction {
    hopf: Arc<FiniteHopf>,
    algebra: PoissonAlgebra,
    /// `images[j][k] = p_jk`
    images: Vec<Vec<Poly>>,
}

impl Coaction {
    /// `images[j]` lists `(k, p_jk)`; absent pairs are zero.
    pub fn new(
        hopf: impl Into<Arc<FiniteHopf>>,
        algebra: PoissonAlgebra,
        images: Vec<Vec<(usize, Poly)>>,
    ) -> Result<Self> {
        let hopf = hopf.into();
        let m = algebra.nvars();
        if images.len() != m {
            return Err(Error::VariableMismatch(m, images.len()));
        }
        let mut dense = vec![vec![Poly::zero(m); hopf.dim()]; m];
        for (j, row) in images.into_iter().enumerate() {
            for (k, p) in row {
                if k >= hopf.dim() {
                    return Err(Error::InvalidStructure(format!("basis index {k} out of range")));
                }
                if p.nvars() != m {
                    return Err(Error::VariableMismatch(m, p.nvars()));
                }
                dense[j][k] = &dense[j][k] + &p;
            }
        }
        Ok(Coaction {
            hopf,
            algebra,
            images: dense,
        })
    }

    /// Diagonal coaction of the cyclic group algebra `k Z_n`,
    /// `rho(u_i) = u_i (x) g^{z_i}`.
    pub fn diagonal_cyclic(algebra: PoissonAlgebra, n: u32, z: &[u32]) -> Result<Self> {
        let hopf = FiniteHopf::group_algebra(algebra.field(), &[n])?;
        if z.len() != algebra.nvars() {
            return Err(Error::VariableMismatch(algebra.nvars(), z.len()));
        }
        let images = z
            .iter()
            .enumerate()
            .map(|(i, &zi)| vec![((zi % n) as usize, algebra.ring().var(i))])
            .collect();
        Coaction::new(hopf, algebra, images)
    }

    pub fn hopf(&self) -> &FiniteHopf {
        &self.hopf
    }

    pub fn algebra(&self) -> &PoissonAlgebra {
        &self.algebra
    }

    /// `p_jk`.
    pub fn component(&self, j: usize, k: usize) -> &Poly {
        &self.images[j][k]
    }

    /// The corresponding left action of `C*`: `c_k* . u_j = p_jk`.
    pub fn to_action(&self) -> Result<HopfAction> {
        let dual = self.hopf.dual();
        let mut images = BTreeMap::new();
        for (k, (name, _)) in dual.generators().iter().enumerate() {
            let row = (0..self.algebra.nvars()).map(|j| (j, self.images[j][k].clone())).collect();
            images.insert(name.clone(), row);
        }
        HopfAction::new(dual, self.algebra.clone(), images)
    }

    /// Verifies the comodule Poisson algebra axioms through the dual action.
    pub fn verify(&self, maxdeg: u32) -> Result<VerificationReport> {
        Ok(self.to_action()?.verify_module_poisson(maxdeg))
    }
}

impl HopfAction {
    /// The corresponding right coaction of `H*`:
    /// `rho(u_j) = sum_k (e_k . u_j) (x) e_k*`.
    pub fn to_coaction(&self) -> Result<Coaction> {
        let dual = self.hopf.dual();
        let m = self.algebra.nvars();
        let images = (0..m)
            .map(|j| (0..self.hopf.dim()).map(|k| (k, self.act_var(k, j))).collect())
            .collect();
        Coaction::new(dual, self.algebra.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::CyclotomicField;

    #[test]
    fn round_trip_taft() {
        let f = CyclotomicField::new(3).unwrap();
        let a = HopfAction::taft_standard(PoissonAlgebra::trivial(&f, 3), 3).unwrap();
        let back = a.to_coaction().unwrap().to_action().unwrap();
        assert!(back.same_action_on_variables(&a));
        assert!(back.verify_module_poisson(2).ok());
    }

    #[test]
    fn diagonal_grading_coaction() {
        let f = CyclotomicField::new(3).unwrap();
        let alg = PoissonAlgebra::parse(
            crate::polyring::PolyRing::numbered(f.clone(), "u", 2),
            vec![1, 1],
            &[((0, 1), "u1^2*u2^2")],
        )
        .unwrap();
        // grading degrees 1 and 2 mod 3: {u1,u2} has degree 0, u1^2 u2^2 has degree 6 = 0
        let good = Coaction::diagonal_cyclic(alg.clone(), 3, &[1, 2]).unwrap();
        assert!(good.verify(3).unwrap().ok());
        let bad = Coaction::diagonal_cyclic(alg, 3, &[1, 1]).unwrap();
        assert!(!bad.verify(3).unwrap().ok());
    }
}
