//! Number fields Q[θ, s]/(f(θ), s² − d) with verified automorphisms and
//! p-adic embeddings.

mod automorphism;
mod embedding;
mod error;
mod field;

pub use automorphism::{Automorphism, AutomorphismGroup};
pub use embedding::{prime_valuations, Embedding};
pub use error::NumFieldError;
pub use field::{NFElement, NumberField};
pub(crate) use embedding::first_irreducible;
pub(crate) use field::parse_rational;
