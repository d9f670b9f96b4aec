//! Exact rational polynomial kernel: monomials, sparse polynomials,
//! polynomial matrices and their determinants.

mod extension;
mod json;
mod linearize;
mod matrix;
mod monomial;
mod parse;
mod poly;

pub use extension::{QuadElem, QuadraticExtension};
pub use json::rational_json;
pub use linearize::{delinearize, linearize_quadratics, m_ring, QUADRATIC_BASIS};
pub use matrix::{linear_combination, DetMethod, PolyMatrix};
pub use monomial::{monomials_of_degree, Monomial, MonomialOrder};
pub use poly::{MPoly, Ring};
pub(crate) use poly::same_ring;
