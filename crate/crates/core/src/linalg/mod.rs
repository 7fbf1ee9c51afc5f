//! Exact scalars and the matrix kernels built on them.

mod echelon;
mod hnf;
mod matrix;
mod ring;

pub use echelon::{determinant, inverse, nullspace, rank, rref, IncrementalEchelon};
pub use hnf::{hnf, integer_kernel, snf, SmithDecomposition};
pub(crate) use hnf::lattice_basis;
pub use matrix::ExactMatrix;
pub use ring::{is_prime, parse_ratio, Prime, RingDescriptor, Scalar};
