//! Exact computations with polynomial Poisson algebras and actions of
//! finite-dimensional Hopf algebras on them.
//!
//! Scalars live in a cyclotomic field `Q(z_n)`, optionally extended by
//! formal parameters. On top of that the crate provides sparse polynomials
//! and exact linear algebra ([`polyring`]), Poisson brackets with Jacobi
//! checks, modular derivations and Rees algebras ([`poisson`]), Hopf
//! algebras given by structure tensors ([`hopf`]), actions with fixed rings
//! ([`action`]), equivariant bracket families ([`classify`]), free algebras
//! and presentations ([`ncalg`]), quantizations ([`quantize`]) and
//! enveloping algebras ([`envelope`]).
//!
//! ```
//! use hopf_poisson::{CyclotomicField, PoissonAlgebra};
//!
//! let q = CyclotomicField::rationals();
//! let weyl = PoissonAlgebra::weyl(&q, 2);
//! assert!(weyl.check_jacobi().ok());
//! assert!(weyl.is_unimodular());
//! ```

pub mod action;
pub mod classify;
pub mod envelope;
pub mod error;
pub mod hopf;
pub mod ncalg;
pub mod poisson;
pub mod polyring;
pub mod quantize;
pub mod scalars;

pub use action::{Coaction, HopfAction, VerificationReport};
pub use classify::{equivariant_families, BracketFamily, DegreeClass};
pub use envelope::EnvelopePresentation;
pub use error::{Error, Result};
pub use hopf::FiniteHopf;
pub use ncalg::{FreePoly, Presentation, Word};
pub use poisson::PoissonAlgebra;
pub use polyring::{Monomial, Poly, PolyRing};
pub use quantize::{quantization_relations, QuantizationResult};
pub use scalars::{CycRat, CyclotomicField, Scalar};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    mod scalars {}
    #[doc = include_str!("../../../book/src/poisson.md")]
    mod poisson {}
    #[doc = include_str!("../../../book/src/hopf.md")]
    mod hopf {}
    #[doc = include_str!("../../../book/src/actions.md")]
    mod actions {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/quantization.md")]
    mod quantization {}
    #[doc = include_str!("../../../book/src/envelopes.md")]
    mod envelopes {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
