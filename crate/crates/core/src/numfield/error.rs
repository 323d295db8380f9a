use thiserror::Error;

use crate::group::GroupError;
use crate::padic::PadicError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumFieldError {
    #[error("defining polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("defining polynomial {0} is not squarefree")]
    NotSquarefree(String),
    #[error("cannot certify irreducible: {0} splits modulo each of the first 25 primes")]
    CannotCertify(String),
    #[error("quadratic discriminant {0} is a square")]
    SquareDiscriminant(String),
    #[error("cannot certify that Q(sqrt {d}) is disjoint from Q[x]/({f})")]
    NotDisjoint { d: String, f: String },
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("element has {got} coefficients, field degree is {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("bad coefficient {index}: {text:?}")]
    Parse { index: usize, text: String },
    #[error("automorphism {index}: {reason}")]
    BadAutomorphism { index: usize, reason: String },
    #[error("expected {expected} automorphisms, got {got}")]
    WrongGroupSize { expected: usize, got: usize },
    #[error("automorphisms {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("composition of automorphisms {0} and {1} is not in the list")]
    NotClosed(usize, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("embedding: {0}")]
    Embedding(String),
    #[error("element embeds to zero at the working precision")]
    ZeroEmbedding,
    #[error(transparent)]
    Padic(#[from] PadicError),
}
