//! Decomposition groups, characters with cyclotomic values, and the
//! σ-indexed log-vector model acted on by group-algebra elements.
//!
//! Conventions: v_x(σ) = log ι(σx), and (a·v)(σ) = Σ_τ a_τ v(στ), so that
//! τ acting on x corresponds to right translation of its vector.  The entry
//! at σ of a mixed local vector reads the component at the prime σ⁻¹𝔭₁.

mod classfn;
mod cyclo;
mod decomposition;
mod error;
mod vectors;

pub use classfn::ClassFunction;
pub use cyclo::{cyclo_embed, root_of_unity, Cyclo};
pub(crate) use cyclo::embed_with;
pub use decomposition::{cosets, decomposition_group, frobenius_element, Decomposition};
pub use error::GaloisError;
pub use vectors::{AffineLogVector, GroupAlgebraElement, LogVector};
