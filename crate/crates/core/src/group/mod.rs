//! Finite matrix groups: closure from generators, the action on
//! polynomials, reduction mod p and the JSON input document.

mod closure;
mod document;

pub use closure::{act, close_group, reduce_mod_p, GroupElement, MatrixGroup, Reduction, DEFAULT_CAP};
pub use document::{GroupDocument, RingSpec};
