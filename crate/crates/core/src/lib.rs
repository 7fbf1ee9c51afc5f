//! Rings of invariants of finite matrix groups over Z, Q and F_p, computed
//! degree by degree with exact linear algebra.

pub mod error;
pub mod linalg;
pub mod poly;
pub mod group;
pub mod invariants;
pub mod report;
pub mod catalog;
pub mod cli;

pub use error::{Error, Result};
