//! Sparse polynomials, graded monomial bases and linear substitution.

mod monomial;
mod polynomial;
mod substitute;

pub use monomial::{component_dimension, monomial_basis, DegreeComponent, Monomial};
pub use polynomial::Polynomial;
pub use substitute::{action_matrix, substitute_linear};
