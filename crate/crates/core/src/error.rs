use thiserror::Error;

use crate::linalg::RingDescriptor;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation requires a field, got {0}")]
    NonFieldRing(RingDescriptor),
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch {
        left: RingDescriptor,
        right: RingDescriptor,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix is not invertible over {0}")]
    NotInvertibleOverRing(RingDescriptor),
    #[error("group closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("polynomial is not invariant: {0}")]
    NotInvariant(String),
    #[error("parameter candidate has degree 0: {0}")]
    ConstantElement(String),
    #[error("expected {expected} polynomials, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("no admissible linear forms found within the search budget")]
    SearchBudgetExceeded,
    #[error("residue field F_{0} too small for an admissible tuple of linear forms")]
    ResidueFieldTooSmall(u64),
    #[error("constructed parameters failed verification over {0}")]
    VerificationFailed(RingDescriptor),
    #[error("parameter system has no passing certificate over {0}")]
    UnverifiedHsop(RingDescriptor),
    #[error("characteristic {0} divides the group order")]
    ModularCharacteristic(u64),
    #[error("integer invariants do not span the rational invariants in degree {0}")]
    FlatnessViolation(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}
