//! The p = 23 fixture for d = −23, f = x³ − x + 1, where 23 ramifies in K.
//! It sits outside the generic machinery and is evaluated directly:
//! 3(log π − [log(rπ/r²π)/log(rε/r²ε)]·log ε).

use serde::Serialize;

use super::case::{in_base, units};
use super::report::{conventions, CheckRecord, ToolInfo, ValueRecord};
use super::LinvError;
use crate::numfield::{AutomorphismGroup, Embedding, NFElement, NumberField};
use crate::padic::{hensel_root_int, log_iw, LocalElement, LocalField};

/// θ- and s-images of id, r, r², t, tr, tr² for x³ − x + 1 with s² = −23.
pub const S3_IMAGES_23: [([&str; 6], [&str; 6]); 6] = [
    (["0", "1", "0", "0", "0", "0"], ["0", "0", "0", "1", "0", "0"]),
    (["0", "-1/2", "0", "2/23", "-9/46", "-3/23"], ["0", "0", "0", "1", "0", "0"]),
    (["0", "-1/2", "0", "-2/23", "9/46", "3/23"], ["0", "0", "0", "1", "0", "0"]),
    (["0", "1", "0", "0", "0", "0"], ["0", "0", "0", "-1", "0", "0"]),
    (["0", "-1/2", "0", "-2/23", "9/46", "3/23"], ["0", "0", "0", "-1", "0", "0"]),
    (["0", "-1/2", "0", "2/23", "-9/46", "-3/23"], ["0", "0", "0", "-1", "0", "0"]),
];

/// Q(θ, √−23) with its verified Galois group in the order above.
pub fn field23_group() -> Result<AutomorphismGroup, LinvError> {
    let k = NumberField::from_i64(-23, &[1, -1, 0, 1])?;
    let images: Vec<(Vec<&str>, Option<Vec<&str>>)> =
        S3_IMAGES_23.iter().map(|(t, s)| (t.to_vec(), Some(s.to_vec()))).collect();
    Ok(AutomorphismGroup::parse(&k, &images)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreenbergReport {
    pub tool: ToolInfo,
    pub conventions: Vec<String>,
    pub case_type: &'static str,
    pub p: u64,
    pub precision: u32,
    pub guard: u32,
    pub local_field: String,
    pub coefficient: i64,
    pub value: ValueRecord,
    pub bracket_ratio: ValueRecord,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

/// Index of r in [`S3_IMAGES_23`].
const R: usize = 1;
const R2: usize = 2;

struct Fixture {
    group: AutomorphismGroup,
    emb: Embedding,
}

impl Fixture {
    fn new(precision: u32) -> Result<Self, LinvError> {
        let group = field23_group()?;
        let local = LocalField::eisenstein(23, precision)?;
        let r_theta = hensel_root_int(group.field().f(), &local, 20)?;
        let r_s = LocalElement::uniformizer(&local);
        let emb = Embedding::new(group.field(), r_theta, Some(r_s))?;
        Ok(Fixture { group, emb })
    }

    fn log(&self, x: &NFElement) -> Result<LocalElement, LinvError> {
        Ok(log_iw(&self.emb.embed(x))?)
    }

    /// log(r x / r² x).
    fn twisted(&self, x: &NFElement) -> Result<LocalElement, LinvError> {
        let q = self.group.apply(R, x).checked_div(&self.group.apply(R2, x))?;
        self.log(&q)
    }

    /// (value, bracketed ratio) for the given ε and π.
    fn evaluate(&self, eps: &NFElement, pi: &NFElement) -> Result<(LocalElement, LocalElement), LinvError> {
        let den = self.twisted(eps)?;
        if den.is_zero() {
            return Err(LinvError::VanishingDenominator);
        }
        let ratio = self.twisted(pi)?.checked_div(&den)?;
        let inner = &self.log(pi)? - &(&ratio * &self.log(eps)?);
        Ok((&LocalElement::from_int(inner.field(), 3) * &inner, ratio))
    }
}

/// The fixture's value and bracketed ratio at a precision, for ε^eps_power
/// and π·ε^pi_twist.
pub fn greenberg_value(precision: u32, eps_power: i64, pi_twist: i64) -> Result<(LocalElement, LocalElement), LinvError> {
    let fx = Fixture::new(precision)?;
    let theta = fx.group.field().theta();
    let eps = theta.pow(eps_power)?;
    let pi = (&fx.group.field().from_int(3) + &theta).checked_mul(&theta.pow(pi_twist)?)?;
    fx.evaluate(&eps, &pi)
}

pub fn greenberg23(precision: u32, guard: u32) -> Result<GreenbergReport, LinvError> {
    if precision <= 2 * guard {
        return Err(LinvError::InvalidCase(format!("precision {precision} must exceed twice the guard {guard}")));
    }
    let (value, ratio) = greenberg_value(precision, 1, 0)?;
    let field = value.field().clone();
    let target = units(&field, (precision - guard) as i64);
    let mut checks = vec![CheckRecord::new(
        "bracketed ratio lies in Q_23",
        in_base(&ratio, (precision - guard) as i64),
        format!("√−23-coordinate {:?}", ratio.base_coords().get(1).map(|c| c.to_string())),
    )];
    let (sq, _) = greenberg_value(precision, 2, 0)?;
    checks.push(CheckRecord::new("invariant under ε → ε²", sq.agrees_to(&value, target), String::new()));
    let (tw, _) = greenberg_value(precision, 1, 1)?;
    checks.push(CheckRecord::new("invariant under π → πε", tw.agrees_to(&value, target), String::new()));
    let (hi, _) = greenberg_value(precision + 20, 1, 0)?;
    let overlap = value.abs_precision().min(target);
    let same = hi.with_field(&field)?.agrees_to(&value, overlap);
    checks.push(CheckRecord::new(
        "stable at precision + 20",
        same,
        format!("agree to {overlap} (1/e units)"),
    ));
    let passed = checks.iter().all(|c| c.passed);
    Ok(GreenbergReport {
        tool: ToolInfo::default(),
        conventions: conventions(),
        case_type: "greenberg23",
        p: 23,
        precision,
        guard,
        local_field: field.to_string(),
        coefficient: 3,
        value: (&value).into(),
        bracket_ratio: (&ratio).into(),
        checks,
        passed,
    })
}
