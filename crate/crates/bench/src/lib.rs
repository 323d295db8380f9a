//! Inputs for the kernel benchmarks, built once outside the timed loops.

use linv_core::linv::{fixtures, CaseData, LinvError};
use linv_core::numfield::{Embedding, NFElement};
use linv_core::padic::{LocalElement, LocalField};

pub const PRECISIONS: [u32; 3] = [40, 60, 80];
pub const GUARD: u32 = 5;

/// A unit of Q_25 with all digits populated.
pub fn dense_unit(precision: u32) -> LocalElement {
    let f = LocalField::unramified(5, precision, vec![2.into(), 0.into(), 1.into()]).expect("valid field");
    let big = f.p().pow(precision) / 3u32;
    LocalElement::from_coords(&f, vec![big.clone() + 1u32, big])
}

pub struct EmbedInput {
    pub embedding: Embedding,
    pub element: NFElement,
}

/// The sextic field over d = −23 at p = 13, with the split fixture's π.
pub fn embed_input(precision: u32) -> Result<EmbedInput, LinvError> {
    let spec = fixtures::iq_split_23_13(precision, GUARD)?;
    let embedding = Embedding::canonical(spec.group.field(), 13, precision)?;
    Ok(EmbedInput { embedding, element: spec.pi })
}

pub fn split_case(precision: u32) -> Result<CaseData, LinvError> {
    fixtures::iq_split_23_13(precision, GUARD)?.build()
}

pub fn inert_case(precision: u32) -> Result<CaseData, LinvError> {
    fixtures::iq_inert_23_5(precision, GUARD)?.build()
}
