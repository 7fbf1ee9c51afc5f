//! Rings of invariants: graded pieces, algebra generators, parameter
//! systems and their certificates, module generators, Molien series and
//! base-change checks.

mod basis;
mod cm;
mod complement;
mod flatness;
mod generators;
mod hsop;
mod molien;
mod secondary;

pub use basis::{invariant_basis, InvariantBasis, InvariantSpaces};
pub use cm::{cm_probe, CmProbe, CmVerdict};
pub use flatness::{flatness_check, Discrepancy, FlatnessReport, FlatnessRow, ModularDimension};
pub use generators::{algebra_generators, GeneratorSet};
pub use hsop::{
    certify_over, complete_intersection_series, dade_hsop, lift_hsop_over_z, verify_hsop, CertifiedHsop, DadeOptions,
    Hsop, HsopCertificate, Provenance, Verdict,
};
pub use molien::{molien_series, MolienSeries};
pub use secondary::{secondary_generators, SecondaryGenerators};
