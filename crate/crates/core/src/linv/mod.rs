//! Analytic and Greenberg L-invariants of adjoint weight-one cases: the
//! regulator components, the closed-form corollaries, the universal-norm
//! linear system, and their comparison modulo Q^×.
//!
//! Everything is expressed through embedding-indexed log vectors (see
//! [`crate::galois`]).  The linear system is solved for X = log x, b and c in
//! Q_p; the solver output X + log ι(π) equals the closed form up to the
//! rational factor k = Σ_{δ∈D} θ_δ, which the report records.

mod case;
pub mod casefile;
mod compute;
mod equality;
mod error;
pub mod fixtures;
mod greenberg;
mod report;
mod solver;

pub use case::{CaseData, CaseSpec, CaseType, Constituent, EigenCharacter, SyntheticSpec};
pub use compute::UVComponents;
pub use equality::{check_equality, RatioClass, RATIO_HEIGHT};
pub use error::LinvError;
pub use greenberg::{field23_group, greenberg23, greenberg_value, GreenbergReport, S3_IMAGES_23};
pub use report::{
    conventions, run_case, CheckRecord, Choices, ComponentsRecord, DroppedFactor, LInvariantReport, NamedValue,
    ToolInfo, ValueRecord, TOOL_NAME, TOOL_VERSION,
};
pub use solver::{LinearSystem, MembershipSystem, Solution};

#[cfg(test)]
mod tests;
