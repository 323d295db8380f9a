//! Fixed-precision p-adic arithmetic: Q_p, its unramified extensions and
//! Q_p(sqrt(-p)).

mod element;
mod error;
mod field;
mod reconstruct;
mod roots;
mod series;

pub use element::{ElementRecord, LocalElement, EXACT_ZERO};
pub use error::PadicError;
pub use field::{FieldKind, LocalField, DEFAULT_MAX_DEGREE};
pub use reconstruct::{algebraic_reconstruct, rational_reconstruct};
pub use roots::{hensel_root, hensel_root_int, roots_in, roots_in_bounded, sqrt, DEFAULT_RESIDUE_BOUND};
pub use series::{log_iw, log_iw_with_guard, teichmuller};
pub use series::exp_series;
pub(crate) use element::residue_pow;
pub(crate) use field::format_poly;

/// Default number of base-p digits.
pub const DEFAULT_PRECISION: u32 = 40;
/// Default guard digits dropped from equality checks.
pub const DEFAULT_GUARD: u32 = 5;

#[cfg(test)]
mod tests;
