use num_bigint::BigInt;
use serde::Serialize;

use super::LinvError;
use crate::padic::{algebraic_reconstruct, rational_reconstruct, LocalElement};

/// Reconstruction height for both tiers.
pub const RATIO_HEIGHT: u64 = 1_000_000;

/// How a ratio of two L-invariants was recognized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RatioClass {
    Rational { u: String, w: String },
    /// Integer coefficients, constant term first.
    Quadratic { poly: Vec<String> },
    Unrecognized,
}

impl RatioClass {
    pub fn is_recognized(&self) -> bool {
        !matches!(self, RatioClass::Unrecognized)
    }
}

/// Classifies a/b: it must lie in Q_p to `digits`, then rational
/// reconstruction is tried before a degree-2 relation.
pub fn check_equality(a: &LocalElement, b: &LocalElement, digits: u32) -> Result<RatioClass, LinvError> {
    if b.is_zero() {
        return Err(LinvError::ZeroDenominator);
    }
    let r = a.checked_div(b)?;
    let coords = r.base_coords();
    let target = digits as i64;
    let zero = LocalElement::zero(coords[0].field());
    if coords.iter().skip(1).any(|c| !c.agrees_to(&zero, target)) {
        return Err(LinvError::RatioOutsideBase(
            coords
                .iter()
                .map(|c| c.val_units().map_or_else(|| "zero".to_string(), |v| v.to_string()))
                .collect(),
        ));
    }
    let r0 = coords[0].truncate_abs(target);
    let h = BigInt::from(RATIO_HEIGHT);
    if let Some((u, w)) = rational_reconstruct(&r0, &h)? {
        return Ok(RatioClass::Rational { u: u.to_string(), w: w.to_string() });
    }
    if let Some(poly) = algebraic_reconstruct(&r0, 2, &h)? {
        return Ok(RatioClass::Quadratic { poly: poly.iter().map(|c| c.to_string()).collect() });
    }
    Ok(RatioClass::Unrecognized)
}
