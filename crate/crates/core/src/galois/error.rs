use thiserror::Error;

use crate::group::GroupError;
use crate::numfield::NumFieldError;
use crate::padic::PadicError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GaloisError {
    #[error("zeta_{m} is not in a field with {q} residues ({m} does not divide {q} - 1); enlarge residue degree")]
    RootOfUnityMissing { m: u32, q: String },
    #[error("vectors or coefficients live in different local fields")]
    FieldMismatch,
    #[error("vector has {got} entries, group has order {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("p = {p} divides the group order {order}")]
    PrimeDividesOrder { p: String, order: usize },
    #[error("inconsistent local match: {0}")]
    InconsistentLocalMatch(String),
    #[error("the local field is ramified; no canonical Frobenius")]
    Ramified,
    #[error("conjugate {index} of the input is not a unit (valuation {valuation})")]
    NotAUnit { index: usize, valuation: String },
    #[error("zero input")]
    ZeroInput,
    #[error("invalid character data: {0}")]
    InvalidCharacter(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    NumField(#[from] NumFieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
