//! Exact scalars: the cyclotomic field Q(z_n) and polynomial expressions in
//! named parameters over it.

mod field;
mod param;

pub use field::{cyclotomic_polynomial, CycRat, CyclotomicField};
pub use param::{ParamMonomial, Scalar};
pub(crate) use param::push_term;
