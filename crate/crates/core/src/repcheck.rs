//! Character-theoretic audit of the dimension claims attached to a case:
//! the global count Σ_c [mult(c, Reg) − mult(c, units)] = 2 and the local
//! counts 3 and 1 on the decomposition group.

use serde::Serialize;
use thiserror::Error;

use crate::galois::{ClassFunction, Cyclo, GaloisError};
use crate::group::FiniteGroup;
use crate::linv::{CaseData, CaseType, CheckRecord, Constituent};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error("complex conjugation index {0} is not an element of order at most 2")]
    BadInvolution(usize),
    #[error("repcheck needs a complex conjugation (conjugation_index)")]
    MissingConjugation,
    #[error("multiplicity {0} is negative")]
    Negative(i64),
}

/// Induction from a subgroup via coset representatives:
/// Ind η(σ) = Σ_{x ∈ G/S, x⁻¹σx ∈ S} η(x⁻¹σx).
pub fn induced_character(eta: &ClassFunction, g: &FiniteGroup, sub: &[usize]) -> Result<ClassFunction, RepError> {
    let reps = g.left_coset_reps(sub).map_err(GaloisError::from)?;
    let vals = (0..g.order())
        .map(|s| {
            reps.iter().fold(Cyclo::zero(), |acc, &x| {
                let c = g.mul(g.mul(g.inv(x), s), x);
                if sub.contains(&c) {
                    &acc + eta.value(c)
                } else {
                    acc
                }
            })
        })
        .collect();
    Ok(ClassFunction::new(vals))
}

/// ⟨a, b⟩ over the whole group, certified integral.
pub fn multiplicity(a: &ClassFunction, b: &ClassFunction, g: &FiniteGroup) -> Result<i64, RepError> {
    Ok(a.multiplicity(b, g)?)
}

fn multiplicity_on(a: &ClassFunction, b: &ClassFunction, g: &FiniteGroup, sub: &[usize]) -> Result<i64, RepError> {
    let c = a.inner_on(b, g, sub);
    c.to_integer()
        .and_then(|n| i64::try_from(n).ok())
        .ok_or_else(|| GaloisError::InvalidCharacter(format!("inner product {c} on the subgroup is not an integer")).into())
}

fn nonneg(n: i64) -> Result<i64, RepError> {
    if n < 0 {
        Err(RepError::Negative(n))
    } else {
        Ok(n)
    }
}

/// Group data the audit reads.
#[derive(Clone, Debug)]
pub struct AuditInput {
    pub case_type: CaseType,
    pub group: FiniteGroup,
    pub constituents: Vec<Constituent>,
    pub conjugation: usize,
    pub decomposition: Vec<usize>,
    /// η on D, zero elsewhere.
    pub eta: ClassFunction,
}

impl AuditInput {
    pub fn from_case(case: &CaseData, conjugation: Option<usize>) -> Result<Self, RepError> {
        let tau = conjugation.or(case.conjugation()).ok_or(RepError::MissingConjugation)?;
        Ok(AuditInput {
            case_type: case.case_type(),
            group: case.group().clone(),
            constituents: case.constituents().to_vec(),
            conjugation: tau,
            decomposition: case.decomposition().to_vec(),
            eta: case.eta().clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstituentAudit {
    pub name: String,
    pub degree: i64,
    pub in_regular: i64,
    /// In Ind_D^Δ Reg_D, which is Reg_Δ again.
    pub in_induced_from_d: i64,
    /// In Ind_{⟨τ⟩}^Δ 1 − 1.
    pub in_units: i64,
    pub contribution: i64,
    pub expected: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityReport {
    pub case_type: String,
    pub conjugation: usize,
    pub constituents: Vec<ConstituentAudit>,
    pub global_dimension: i64,
    pub local_dimension: i64,
    pub w_dimension: i64,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

fn expected_contribution(case_type: CaseType, name: &str) -> Option<i64> {
    match (case_type, name) {
        (CaseType::IqSplit | CaseType::IqInert, "chi_K" | "Ind psi") => Some(1),
        (CaseType::RqInert | CaseType::RqSplit, "chi_K") => Some(0),
        (CaseType::RqInert | CaseType::RqSplit, "Ind psi") => Some(2),
        (CaseType::Exotic, "ad0") => Some(2),
        _ => None,
    }
}

pub fn verify_dimension_claims(input: &AuditInput) -> Result<MultiplicityReport, RepError> {
    let g = &input.group;
    let n = g.order();
    let tau = input.conjugation;
    if tau >= n || g.mul(tau, tau) != 0 {
        return Err(RepError::BadInvolution(tau));
    }
    let reg = ClassFunction::regular(n);
    let triv = ClassFunction::trivial(n);
    let tau_group: Vec<usize> = if tau == 0 { vec![0] } else { vec![0, tau] };
    let units = induced_character(&triv.restrict(&tau_group), g, &tau_group)?.sub(&triv);
    let d = &input.decomposition;
    let mut reg_d = vec![Cyclo::zero(); n];
    reg_d[0] = Cyclo::int(d.len() as i64);
    let reg_d = ClassFunction::new(reg_d);
    let ind_reg_d = induced_character(&reg_d, g, d)?;

    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for c in &input.constituents {
        let chi = &c.character;
        let degree = chi.degree().and_then(|r| r.to_integer().try_into().ok()).unwrap_or(0);
        let in_regular = nonneg(multiplicity(&reg, chi, g)?)?;
        let in_induced_from_d = nonneg(multiplicity(&ind_reg_d, chi, g)?)?;
        let in_units = nonneg(multiplicity(&units, chi, g)?)?;
        let contribution = in_regular - in_units;
        let expected = expected_contribution(input.case_type, &c.name);
        rows.push(ConstituentAudit {
            name: c.name.clone(),
            degree,
            in_regular,
            in_induced_from_d,
            in_units,
            contribution,
            expected,
        });
    }
    for r in &rows {
        checks.push(CheckRecord::new(
            format!("{} contributes {}", r.name, r.expected.map_or("?".into(), |e| e.to_string())),
            r.expected == Some(r.contribution),
            format!("mult in Reg {} − mult in units {} = {}", r.in_regular, r.in_units, r.contribution),
        ));
        checks.push(CheckRecord::new(
            format!("{} has multiplicity dim in Reg", r.name),
            r.in_regular == r.degree && r.in_induced_from_d == r.degree,
            format!("degree {}", r.degree),
        ));
    }
    let global_dimension: i64 = rows.iter().map(|r| r.contribution).sum();
    checks.push(CheckRecord::new("global dimension 2", global_dimension == 2, global_dimension.to_string()));

    // V/F⁺V restricted to D is 1 + η.
    let one_d = triv.restrict(d);
    let quotient = one_d.add(&input.eta.restrict(d));
    let local = one_d.add(&reg_d);
    let local_dimension = nonneg(multiplicity_on(&local, &quotient, g, d)?)?;
    let w_dimension = nonneg(multiplicity_on(&one_d, &quotient, g, d)?)?;
    checks.push(CheckRecord::new("local dimension 3", local_dimension == 3, local_dimension.to_string()));
    checks.push(CheckRecord::new("W dimension 1", w_dimension == 1, w_dimension.to_string()));

    let passed = checks.iter().all(|c| c.passed);
    Ok(MultiplicityReport {
        case_type: input.case_type.name().into(),
        conjugation: tau,
        constituents: rows,
        global_dimension,
        local_dimension,
        w_dimension,
        checks,
        passed,
    })
}

/// Character data for a real quadratic dihedral case with projective image
/// D4: K ↔ the rotations C4, ψ faithful of order 4, τ the half-turn (so
/// ψ(τ) = −1), and D generated by a reflection with η its sign.
pub fn d4_rq_input() -> AuditInput {
    // Elements as permutations of the square's vertices: r^k then r^k·s.
    let r = |k: usize| -> Vec<usize> { (0..4).map(|i| (i + k) % 4).collect() };
    let mut perms: Vec<Vec<usize>> = (0..4).map(r).collect();
    for k in 0..4 {
        let rk = r(k);
        perms.push((0..4).map(|i| rk[(4 - i) % 4]).collect());
    }
    let group = FiniteGroup::from_permutations(&perms).expect("D4");
    let rot: Vec<usize> = (0..4).collect();
    let psi = ClassFunction::new((0..8).map(|i| if i < 4 { Cyclo::zeta(4, i as i64) } else { Cyclo::zero() }).collect());
    let ind = induced_character(&psi, &group, &rot).expect("C4 is a subgroup");
    let chi_k = ClassFunction::new((0..8).map(|i| Cyclo::int(if i < 4 { 1 } else { -1 })).collect());
    let mut eta = vec![Cyclo::zero(); 8];
    eta[0] = Cyclo::one();
    eta[4] = Cyclo::int(-1);
    AuditInput {
        case_type: CaseType::RqInert,
        group,
        constituents: vec![
            Constituent { name: "chi_K".into(), character: chi_k },
            Constituent { name: "Ind psi".into(), character: ind },
        ],
        conjugation: 2,
        decomposition: vec![0, 4],
        eta: ClassFunction::new(eta),
    }
}
