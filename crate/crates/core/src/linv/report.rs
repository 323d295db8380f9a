//! Serializable reports and the per-case orchestration.

use num_bigint::BigInt;
use serde::Serialize;

use super::case::{in_base, CaseData, CaseType};
use super::equality::{check_equality, RatioClass};
use super::LinvError;
use crate::padic::{rational_reconstruct, ElementRecord, LocalElement};

pub const TOOL_NAME: &str = "linv";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// The conventions every report carries.
pub fn conventions() -> Vec<String> {
    [
        "log is the Iwasawa branch: log p = 0, log vanishes on roots of unity",
        "v_x(σ) = log ι(σx); the σ-entry reads the prime σ⁻¹𝔭₁",
        "(a·v)(σ) = Σ_τ a_τ v(στ); τ acting on x is right translation of its vector",
        "θ_χ = (dim χ/|Δ|) Σ_σ χ(σ⁻¹) σ; θ_{η,D} = (1/|D|) Σ_δ η(δ⁻¹) δ",
        "ζ_m embeds as the Teichmüller lift of the primitive m-th root with smallest residue index",
        "equalities are modulo Q^× (rational or quadratic reconstruction at height 10^6)",
        "valuations and precisions are in units of 1/e",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl Default for ToolInfo {
    fn default() -> Self {
        ToolInfo { name: TOOL_NAME, version: TOOL_VERSION }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckRecord { name: name.into(), passed, detail: detail.into() }
    }

    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(name, true, detail)
    }
}

/// A local element in display form and in the digit serialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueRecord {
    pub text: String,
    pub digits: ElementRecord,
}

impl From<&LocalElement> for ValueRecord {
    fn from(x: &LocalElement) -> Self {
        ValueRecord { text: x.to_string(), digits: x.to_record() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: ValueRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentsRecord {
    pub log_u1: ValueRecord,
    pub log_u_ba: Option<ValueRecord>,
    pub log_v1: ValueRecord,
    pub log_v_ba: Option<ValueRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Choices {
    pub sigma2: Option<usize>,
    pub sigma_tilde: Option<usize>,
    pub sigma_order: Vec<usize>,
}

/// A scalar the computation leaves out; all comparisons are projective.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DroppedFactor {
    pub name: String,
    pub value: String,
    pub applied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LInvariantReport {
    pub tool: ToolInfo,
    pub conventions: Vec<String>,
    pub case_type: String,
    pub synthetic: bool,
    pub p: u64,
    pub precision: u32,
    pub guard: u32,
    pub local_field: String,
    pub decomposition_group: Vec<usize>,
    pub frobenius: usize,
    pub hypotheses: Vec<CheckRecord>,
    pub components: ComponentsRecord,
    pub l_an: ValueRecord,
    pub l_gr_closed: ValueRecord,
    pub l_gr_solver: ValueRecord,
    pub unknowns: Vec<NamedValue>,
    /// Every solver residual is divisible by uniformizer^this (1/e units).
    pub solver_residual_valuation: i64,
    pub choices: Choices,
    pub ratio: RatioClass,
    pub dropped_factors: Vec<DroppedFactor>,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

fn rational_text(x: &LocalElement) -> String {
    let h = BigInt::from(1000);
    match x.to_base().ok().and_then(|b| rational_reconstruct(&b, &h).ok().flatten()) {
        Some((u, w)) if w == BigInt::from(1) => u.to_string(),
        Some((u, w)) => format!("{u}/{w}"),
        None => x.to_string(),
    }
}

/// Runs components, l_an, both Greenberg routes and the equality check.
pub fn run_case(case: &CaseData) -> Result<LInvariantReport, LinvError> {
    let digits = case.digits();
    let agree = case.agree_target();
    let uv = case.uv_components().map_err(LinvError::at("uv_components"))?;
    let l_an = case.l_an_from(&uv).map_err(LinvError::at("l_an"))?;
    let closed = case.l_gr_closed_from(&uv).map_err(LinvError::at("l_gr_closed"))?;
    let sys = case.membership_system().map_err(LinvError::at("l_gr_solver"))?;
    let sol = sys.system.solve(agree).map_err(LinvError::at("l_gr_solver"))?;
    let solver = case.l_gr_solver_from(&sol);
    let ratio = check_equality(&l_an, &closed, digits as u32).map_err(LinvError::at("check_equality"))?;

    let k = case.k_factor();
    let mut checks = Vec::new();
    let scaled = &k * &solver;
    checks.push(CheckRecord::new(
        "l_gr_closed = k·l_gr_solver",
        closed.agrees_to(&scaled, agree),
        format!("k = {}, to {} digits", rational_text(&k), case.precision - 2 * case.guard),
    ));
    checks.push(CheckRecord::new(
        "solver residuals vanish",
        sol.residual.vanishes_to(agree),
        format!("residuals ≡ 0 mod uniformizer^{}", sol.residual_valuation()),
    ));
    checks.push(CheckRecord::new("log ι(π) in Q_p", case.log_pi_in_base(), String::new()));
    if let (Some(u), Some(v)) = (&uv.log_u_ba, &uv.log_v_ba) {
        let expect = -&v.checked_div(u)?;
        checks.push(CheckRecord::new(
            "b = −log v_ba/log u_ba",
            sol.values[1].agrees_to(&expect, agree),
            String::new(),
        ));
    }
    if let Some(z) = &sys.z1 {
        checks.push(CheckRecord::new(
            "first coordinate of z₁ vanishes",
            case.vanishes(z.get(0)),
            format!("σ̃ = {}", sys.sigma_tilde.expect("set with z1")),
        ));
    }
    if case.case_type == CaseType::IqSplit {
        if let Some(e) = &case.v_eps {
            let u = case.theta.apply(e, &case.group)?;
            checks.push(CheckRecord::new("θ·v_ε vanishes (u₁ = 0)", u.vanishes_to(case.nonzero_target()), String::new()));
        }
    }
    checks.push(CheckRecord::new(
        "l_gr_solver in Q_p",
        in_base(&solver, case.nonzero_target()),
        String::new(),
    ));
    checks.push(CheckRecord::new(
        "ratio l_an/l_gr_closed recognized",
        ratio.is_recognized(),
        format!("{ratio:?}"),
    ));

    let q = case.local.q().clone();
    let dropped = vec![
        DroppedFactor {
            name: "k = Σ_{δ∈D} θ_δ relating the closed form to X + log ι(π)".into(),
            value: rational_text(&k),
            applied: false,
        },
        DroppedFactor { name: "π exponent N(𝔭₁) − 1".into(), value: (q - 1u32).to_string(), applied: false },
        DroppedFactor { name: "#D factor in front of log x".into(), value: case.dec.len().to_string(), applied: false },
        DroppedFactor { name: "sign of l_an relative to l_gr".into(), value: "-1".into(), applied: true },
    ];
    let passed = checks.iter().all(|c| c.passed);
    let opt = |x: &Option<LocalElement>| x.as_ref().map(ValueRecord::from);
    Ok(LInvariantReport {
        tool: ToolInfo::default(),
        conventions: conventions(),
        case_type: case.case_type.name().into(),
        synthetic: case.synthetic,
        p: case.local.p_u64(),
        precision: case.precision,
        guard: case.guard,
        local_field: case.local.to_string(),
        decomposition_group: case.dec.clone(),
        frobenius: case.frobenius,
        hypotheses: case.hypotheses.clone(),
        components: ComponentsRecord {
            log_u1: (&uv.log_u1).into(),
            log_u_ba: opt(&uv.log_u_ba),
            log_v1: (&uv.log_v1).into(),
            log_v_ba: opt(&uv.log_v_ba),
        },
        l_an: (&l_an).into(),
        l_gr_closed: (&closed).into(),
        l_gr_solver: (&solver).into(),
        unknowns: sys
            .system
            .names
            .iter()
            .zip(&sol.values)
            .map(|(n, v)| NamedValue { name: n.to_string(), value: v.into() })
            .collect(),
        solver_residual_valuation: sol.residual_valuation(),
        choices: Choices { sigma2: uv.sigma2, sigma_tilde: sys.sigma_tilde, sigma_order: case.sigma_order.clone() },
        ratio,
        dropped_factors: dropped,
        checks,
        passed,
    })
}
