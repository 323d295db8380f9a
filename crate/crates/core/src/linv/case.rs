//! Validated case data.  Real cases come from a number field with verified
//! automorphisms and a canonical embedding; synthetic exotic cases draw
//! random global-like log vectors on an abstract group.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::report::CheckRecord;
use super::LinvError;
use crate::galois::{decomposition_group, frobenius_element, ClassFunction, Cyclo, GroupAlgebraElement, LogVector};
use crate::group::FiniteGroup;
use crate::numfield::{first_irreducible, AutomorphismGroup, Embedding, NFElement, NumFieldError};
use crate::padic::{LocalElement, LocalField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseType {
    IqSplit,
    IqInert,
    RqInert,
    /// Accepted by the parser only so that it can be rejected with (B2).
    RqSplit,
    Exotic,
    Greenberg23,
}

impl CaseType {
    pub fn name(self) -> &'static str {
        match self {
            CaseType::IqSplit => "iq-split",
            CaseType::IqInert => "iq-inert",
            CaseType::RqInert => "rq-inert",
            CaseType::RqSplit => "rq-split",
            CaseType::Exotic => "exotic",
            CaseType::Greenberg23 => "greenberg23",
        }
    }

    pub fn is_dihedral(self) -> bool {
        matches!(self, CaseType::IqSplit | CaseType::IqInert | CaseType::RqInert | CaseType::RqSplit)
    }
}

/// The eigencharacter β/α of the decomposition group: g^j ↦ ζ_m^{exponent·j},
/// g the local generator (Frobenius).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenCharacter {
    pub exponent: i64,
    pub m: u32,
}

impl EigenCharacter {
    pub fn order(&self) -> u32 {
        let k = self.exponent.rem_euclid(self.m as i64) as u32;
        self.m / k.gcd(&self.m)
    }
}

/// A named irreducible constituent of ad⁰.
#[derive(Clone, Debug, PartialEq)]
pub struct Constituent {
    pub name: String,
    pub character: ClassFunction,
}

/// A case read from a number field.
#[derive(Clone, Debug)]
pub struct CaseSpec {
    pub case_type: CaseType,
    pub p: u64,
    pub precision: u32,
    pub guard: u32,
    pub group: AutomorphismGroup,
    /// ψ on Gal(H/K) for dihedral cases (zero off that subgroup).
    pub character: ClassFunction,
    pub eta: EigenCharacter,
    pub conjugation: Option<usize>,
    pub epsilon: Option<NFElement>,
    pub pi: NFElement,
    pub sigma_order: Option<Vec<usize>>,
}

/// An exotic case on an abstract permutation group, with random log vectors.
#[derive(Clone, Debug)]
pub struct SyntheticSpec {
    pub p: u64,
    pub precision: u32,
    pub guard: u32,
    pub group: FiniteGroup,
    pub frobenius: usize,
    /// The character χ of ad⁰.
    pub chi: ClassFunction,
    pub eta: EigenCharacter,
    pub conjugation: Option<usize>,
    pub seed: u64,
    pub sigma_order: Option<Vec<usize>>,
}

/// Everything the L-invariant computations need, independent of where the
/// log vectors came from.
#[derive(Clone, Debug)]
pub struct CaseData {
    pub(crate) case_type: CaseType,
    pub(crate) precision: u32,
    pub(crate) guard: u32,
    pub(crate) local: LocalField,
    pub(crate) group: FiniteGroup,
    pub(crate) dec: Vec<usize>,
    pub(crate) exponent: Vec<Option<u32>>,
    pub(crate) frobenius: usize,
    pub(crate) constituents: Vec<Constituent>,
    /// ψ (dihedral) or χ (exotic), as given.
    pub(crate) character: ClassFunction,
    pub(crate) theta: GroupAlgebraElement,
    pub(crate) eta: ClassFunction,
    pub(crate) eta_data: EigenCharacter,
    pub(crate) v_eps: Option<LogVector>,
    pub(crate) v_pi: LogVector,
    pub(crate) log_pi: LocalElement,
    pub(crate) sigma_order: Vec<usize>,
    pub(crate) conjugation: Option<usize>,
    pub(crate) hypotheses: Vec<CheckRecord>,
    pub(crate) synthetic: bool,
}

fn hyp(code: &'static str, detail: impl Into<String>) -> LinvError {
    LinvError::Hypothesis { code, detail: detail.into() }
}

fn check_prime_order(p: u64, n: usize) -> Result<CheckRecord, LinvError> {
    if (n as u64).is_multiple_of(p) {
        return Err(hyp("order", format!("p = {p} divides |Δ| = {n}")));
    }
    Ok(CheckRecord::pass("p does not divide |Δ|", format!("|Δ| = {n}")))
}

fn sigma_order(given: &Option<Vec<usize>>, n: usize) -> Result<Vec<usize>, LinvError> {
    match given {
        None => Ok((0..n).collect()),
        Some(v) => {
            let mut s = v.clone();
            s.sort_unstable();
            if s != (0..n).collect::<Vec<_>>() {
                return Err(LinvError::InvalidCase(format!("strategy.sigma_order must be a permutation of 0..{n}")));
            }
            Ok(v.clone())
        }
    }
}

/// Value of η on each group element: ζ_m^{k·j(δ)} on D, zero elsewhere.
fn eta_function(eta: &EigenCharacter, exponent: &[Option<u32>]) -> ClassFunction {
    ClassFunction::new(
        exponent
            .iter()
            .map(|j| match j {
                Some(j) => Cyclo::zeta(eta.m, eta.exponent * *j as i64),
                None => Cyclo::zero(),
            })
            .collect(),
    )
}

/// Shared validation of the character data against the decomposition group.
/// Returns the constituents of ad⁰, the character whose idempotent is θ,
/// η as a function on Δ, and the passed checks.
#[allow(clippy::type_complexity)]
fn validate_characters(
    case_type: CaseType,
    g: &FiniteGroup,
    dec: &[usize],
    exponent: &[Option<u32>],
    character: &ClassFunction,
    eta: &EigenCharacter,
) -> Result<(Vec<Constituent>, ClassFunction, ClassFunction, Vec<CheckRecord>), LinvError> {
    let n = g.order();
    let mut checks = Vec::new();
    if character.len() != n {
        return Err(LinvError::InvalidCase(format!("character has {} values, group has {n} elements", character.len())));
    }
    if eta.m == 0 {
        return Err(LinvError::InvalidCase("characters.m must be positive".into()));
    }
    if (eta.exponent * dec.len() as i64).rem_euclid(eta.m as i64) != 0 {
        return Err(LinvError::InvalidCase(format!(
            "ζ_{}^{} does not have order dividing |D| = {}",
            eta.m,
            eta.exponent,
            dec.len()
        )));
    }
    if eta.order() == 1 {
        return Err(hyp("B1", "the eigencharacter β/α is trivial on the decomposition group (α/β = 1)"));
    }
    checks.push(CheckRecord::pass("B1: β/α nontrivial", format!("order {}", eta.order())));
    if case_type == CaseType::Exotic {
        if eta.order() == 2 {
            return Err(hyp("B3", "the eigencharacter β/α has order 2 (α/β = −1)"));
        }
        checks.push(CheckRecord::pass("B3: β/α ≠ −1", format!("order {}", eta.order())));
    }

    let (constituents, theta_char) = if case_type.is_dihedral() {
        let hk: Vec<usize> = (0..n).filter(|&i| !character.value(i).is_zero()).collect();
        if hk.len() * 2 != n || !g.is_subgroup(&hk) {
            return Err(LinvError::InvalidCase("ψ must be supported on an index-2 subgroup Gal(H/K)".into()));
        }
        if !character.is_linear_on(g, &hk) {
            return Err(LinvError::InvalidCase("ψ is not a linear character of Gal(H/K)".into()));
        }
        let ind = character.induce(g, &hk)?;
        if !ind.is_irreducible(g) {
            return Err(LinvError::InvalidCase("Ind ψ is not irreducible".into()));
        }
        let chi_k = ClassFunction::new(
            (0..n).map(|i| if hk.contains(&i) { Cyclo::one() } else { Cyclo::int(-1) }).collect(),
        );
        checks.push(CheckRecord::pass("ψ linear with Ind ψ irreducible", format!("Gal(H/K) = {hk:?}")));
        let split = dec.iter().all(|d| hk.contains(d));
        let declared_split = matches!(case_type, CaseType::IqSplit | CaseType::RqSplit);
        if split != declared_split {
            return Err(LinvError::InvalidCase(format!(
                "case_type {} but p is {} in K",
                case_type.name(),
                if split { "split" } else { "inert" }
            )));
        }
        let theta_char = if case_type == CaseType::IqSplit { chi_k.clone() } else { ind.clone() };
        (
            vec![
                Constituent { name: "chi_K".into(), character: chi_k },
                Constituent { name: "Ind psi".into(), character: ind },
            ],
            theta_char,
        )
    } else {
        if !character.is_irreducible(g) || character.degree() != Some(BigRational::from_integer(3.into())) {
            return Err(LinvError::InvalidCase("χ must be an irreducible character of degree 3".into()));
        }
        checks.push(CheckRecord::pass("χ irreducible of degree 3", String::new()));
        (vec![Constituent { name: "ad0".into(), character: character.clone() }], character.clone())
    };

    let eta_cf = eta_function(eta, exponent);
    for &d in dec {
        let ad0 = constituents.iter().fold(Cyclo::zero(), |acc, c| &acc + c.character.value(d));
        let e = eta_cf.value(d);
        let expect = &(&Cyclo::one() + e) + &e.conj();
        if ad0 != expect {
            return Err(LinvError::InvalidCase(format!(
                "ad⁰ restricted to D is not 1 + η + η⁻¹ at element {d}: {ad0} vs {expect}"
            )));
        }
    }
    checks.push(CheckRecord::pass("Res_D ad⁰ = 1 + η + η⁻¹", format!("D = {dec:?}")));
    Ok((constituents, theta_char, eta_cf, checks))
}

fn legendre(d: &BigInt, p: u64) -> i32 {
    let p_big = BigInt::from(p);
    let a = d.mod_floor(&p_big);
    if a == BigInt::from(0) {
        return 0;
    }
    if a.modpow(&BigInt::from((p - 1) / 2), &p_big) == BigInt::from(1) {
        1
    } else {
        -1
    }
}

/// Digits-to-1/e-units helper for a field.
pub(crate) fn units(field: &LocalField, digits: i64) -> i64 {
    digits * field.e() as i64
}

/// Non-constant Q_p-coordinates vanish to `digits`.
pub(crate) fn in_base(x: &LocalElement, digits: i64) -> bool {
    let base = x.field().base_field();
    let z = LocalElement::zero(&base);
    x.base_coords().iter().skip(1).all(|c| c.agrees_to(&z, digits))
}

/// Log vector of π at full precision: ι(π) has positive valuation, so the
/// embedding is redone with that many extra digits before taking logs.
fn pi_vector(
    pi: &NFElement,
    group: &AutomorphismGroup,
    emb: &Embedding,
    p: u64,
    precision: u32,
) -> Result<(LogVector, Vec<i64>), LinvError> {
    let (v, vals) = LogVector::of_element(pi, group, emb)?;
    let local = emb.local_field();
    let e = local.e() as i64;
    let extra = ((vals.iter().copied().max().unwrap_or(0).max(0) + e - 1) / e) as u32;
    if extra == 0 {
        return Ok((v, vals));
    }
    let hi = Embedding::canonical(group.field(), p, precision + extra)?;
    let (w, _) = LogVector::of_element(pi, group, &hi)?;
    let moved: Vec<LocalElement> = w
        .entries()
        .iter()
        .map(|x| x.with_field(local))
        .collect::<Result<_, _>>()?;
    let moved = LogVector::new(local, moved)?;
    let low = v.entries().iter().map(|x| x.abs_precision()).min().unwrap_or(0);
    if !moved.add(&v.scale(&LocalElement::from_int(local, -1))?)?.vanishes_to(low) {
        return Err(LinvError::Certification("embedding changed when raising precision".into()));
    }
    Ok((moved, vals))
}

impl CaseSpec {
    pub fn build(&self) -> Result<CaseData, LinvError> {
        match self.case_type {
            CaseType::RqSplit => {
                return Err(hyp("B2", "induced from a character of a real quadratic field in which p splits"))
            }
            CaseType::Greenberg23 => {
                return Err(LinvError::InvalidCase("greenberg23 is a fixed fixture; use its own entry point".into()))
            }
            CaseType::Exotic => {
                return Err(LinvError::InvalidCase("exotic cases run in synthetic mode only".into()))
            }
            _ => {}
        }
        let g = self.group.group();
        let field = self.group.field();
        let n = g.order();
        let mut checks = vec![check_prime_order(self.p, n)?];
        if !field.has_sqrt() {
            return Err(LinvError::InvalidCase("dihedral cases need the quadratic field K = Q(√d)".into()));
        }
        let d = field.d();
        let leg = legendre(d, self.p);
        if leg == 0 {
            return Err(hyp("ramified", format!("p = {} ramifies in K", self.p)));
        }
        let real = d > &BigInt::from(0);
        if real && leg == 1 {
            return Err(hyp("B2", format!("K = Q(√{d}) is real and p = {} splits in it", self.p)));
        }
        let expect = match (real, leg) {
            (false, 1) => CaseType::IqSplit,
            (false, _) => CaseType::IqInert,
            (true, _) => CaseType::RqInert,
        };
        if expect != self.case_type {
            return Err(LinvError::InvalidCase(format!(
                "case_type {} does not match d = {d} and p = {} (expected {})",
                self.case_type.name(),
                self.p,
                expect.name()
            )));
        }
        checks.push(CheckRecord::pass("B2: not real quadratic split", format!("(d/p) = {leg}")));

        let emb = Embedding::canonical(field, self.p, self.precision).map_err(|e| match e {
            NumFieldError::Embedding(m) => hyp("ramified", m),
            e => e.into(),
        })?;
        let dec = decomposition_group(&self.group, &emb)?;
        let frobenius = frobenius_element(&dec)?;
        let exponent: Vec<Option<u32>> = (0..n).map(|i| dec.exponent(i)).collect();
        checks.push(CheckRecord::pass(
            "p unramified in H",
            format!("residue degree {} = |D|", emb.local_field().f()),
        ));

        let s = field.sqrt_d().expect("has sqrt");
        let fixes_s: Vec<usize> =
            (0..n).filter(|&i| self.group.get(i).s_image().is_none_or(|x| *x == s)).collect();
        let support: Vec<usize> = (0..n).filter(|&i| !self.character.value(i).is_zero()).collect();
        if support != fixes_s {
            return Err(LinvError::InvalidCase(format!(
                "ψ must be given exactly on Gal(H/K) = {fixes_s:?}, got support {support:?}"
            )));
        }
        let (constituents, theta_char, eta, more) =
            validate_characters(self.case_type, g, dec.elements(), &exponent, &self.character, &self.eta)?;
        checks.extend(more);

        let local = emb.local_field().clone();
        let digits = (self.precision - self.guard) as i64;
        let fixed = |x: &NFElement| dec.elements().iter().all(|&i| self.group.apply(i, x) == *x);

        let (v_pi, vals) = pi_vector(&self.pi, &self.group, &emb, self.p, self.precision)?;
        for i in 0..n {
            let on_d = dec.contains(i);
            if (vals[i] > 0) != on_d || vals[i] < 0 {
                return Err(LinvError::Certification(format!(
                    "π must generate a power of 𝔭₁ alone; conjugate {i} has valuation {}/{}",
                    vals[i],
                    local.e()
                )));
            }
        }
        if !fixed(&self.pi) {
            return Err(LinvError::Certification("π is not fixed by the decomposition group".into()));
        }
        let log_pi = v_pi.get(0).clone();
        if !in_base(&log_pi, units(&local, digits)) {
            return Err(LinvError::Certification("log ι(π) is not in Q_p".into()));
        }
        checks.push(CheckRecord::pass("π supported at 𝔭₁ only", format!("valuations {vals:?}")));

        let v_eps = match &self.epsilon {
            None if self.case_type == CaseType::IqInert => {
                return Err(LinvError::InvalidCase("units.epsilon is required for iq-inert".into()))
            }
            None => None,
            Some(eps) => {
                let v = LogVector::of_unit(eps, &self.group, &emb).map_err(|e| LinvError::Certification(e.to_string()))?;
                if v.vanishes_to(units(&local, digits)) {
                    return Err(LinvError::Certification("ε has vanishing log vector (torsion unit)".into()));
                }
                if self.case_type == CaseType::IqInert && !fixed(eps) {
                    return Err(LinvError::Certification("ε is not fixed by the decomposition group".into()));
                }
                checks.push(CheckRecord::pass("ε a non-torsion unit", String::new()));
                Some(v)
            }
        };
        if let Some(c) = self.conjugation {
            check_conjugation(g, c)?;
        }
        let theta = GroupAlgebraElement::idempotent(&theta_char, g, &local)?;
        Ok(CaseData {
            case_type: self.case_type,
            precision: self.precision,
            guard: self.guard,
            local,
            group: g.clone(),
            dec: dec.elements().to_vec(),
            exponent,
            frobenius,
            constituents,
            character: self.character.clone(),
            theta,
            eta,
            eta_data: self.eta,
            v_eps,
            v_pi,
            log_pi,
            sigma_order: sigma_order(&self.sigma_order, n)?,
            conjugation: self.conjugation,
            hypotheses: checks,
            synthetic: false,
        })
    }
}

fn check_conjugation(g: &FiniteGroup, c: usize) -> Result<(), LinvError> {
    if c >= g.order() || g.mul(c, c) != 0 {
        return Err(LinvError::InvalidCase(format!("conjugation_index {c} is not an involution")));
    }
    Ok(())
}

/// Random element p·u with u integral, standing in for the log of a
/// principal unit.
fn random_log(field: &LocalField, rng: &mut ChaCha8Rng) -> LocalElement {
    let p = field.p_u64();
    let coords = (0..field.degree())
        .map(|_| {
            (0..field.precision()).fold(BigInt::from(0), |acc, _| acc * p + rng.gen_range(0..p))
        })
        .collect();
    &LocalElement::from_coords(field, coords) * &LocalElement::from_int(field, p)
}

/// Random vector with v(δσ) = φ^{j(δ)} v(σ) and v(σδ) = v(σ).
fn random_global_like(
    field: &LocalField,
    g: &FiniteGroup,
    dec: &[usize],
    exponent: &[Option<u32>],
    rng: &mut ChaCha8Rng,
) -> LogVector {
    let n = g.order();
    let mut v: Vec<Option<LocalElement>> = vec![None; n];
    for s in 0..n {
        if v[s].is_some() {
            continue;
        }
        let r = random_log(field, rng);
        for &d in dec {
            v[g.mul(d, s)] = Some(r.local_galois(exponent[d].expect("member of D")));
        }
    }
    let v: Vec<LocalElement> = v.into_iter().map(|x| x.expect("covered")).collect();
    let scale = LocalElement::from_rational(field, &BigRational::new(1.into(), BigInt::from(dec.len())));
    let avg = (0..n)
        .map(|s| &scale * &dec.iter().fold(LocalElement::zero(field), |acc, &d| &acc + &v[g.mul(s, d)]))
        .collect();
    LogVector::new(field, avg).expect("same field")
}

impl SyntheticSpec {
    pub fn build(&self) -> Result<CaseData, LinvError> {
        let g = &self.group;
        let n = g.order();
        let mut checks = vec![check_prime_order(self.p, n)?];
        if self.frobenius >= n {
            return Err(LinvError::InvalidCase(format!("frobenius index {} out of range", self.frobenius)));
        }
        let f = g.element_order(self.frobenius);
        let mut exponent = vec![None; n];
        let mut x = 0;
        for j in 0..f {
            exponent[x] = Some(j as u32);
            x = g.mul(x, self.frobenius);
        }
        let dec: Vec<usize> = (0..n).filter(|&i| exponent[i].is_some()).collect();
        let local = if f == 1 {
            LocalField::base(self.p, self.precision)?
        } else {
            LocalField::unramified(self.p, self.precision, first_irreducible(self.p, f))?
        };
        let (constituents, theta_char, eta, more) =
            validate_characters(CaseType::Exotic, g, &dec, &exponent, &self.chi, &self.eta)?;
        checks.extend(more);
        if let Some(c) = self.conjugation {
            check_conjugation(g, c)?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let v_eps = random_global_like(&local, g, &dec, &exponent, &mut rng);
        let v_pi = random_global_like(&local, g, &dec, &exponent, &mut rng);
        let log_pi = v_pi.get(0).clone();
        checks.push(CheckRecord::pass(
            "synthetic log vectors global-like",
            format!("seed {}, |D| = {f}", self.seed),
        ));
        let theta = GroupAlgebraElement::idempotent(&theta_char, g, &local)?;
        Ok(CaseData {
            case_type: CaseType::Exotic,
            precision: self.precision,
            guard: self.guard,
            local,
            group: g.clone(),
            dec,
            exponent,
            frobenius: self.frobenius,
            constituents,
            character: self.chi.clone(),
            theta,
            eta,
            eta_data: self.eta,
            v_eps: Some(v_eps),
            v_pi,
            log_pi,
            sigma_order: sigma_order(&self.sigma_order, n)?,
            conjugation: self.conjugation,
            hypotheses: checks,
            synthetic: true,
        })
    }
}

impl CaseData {
    pub fn case_type(&self) -> CaseType {
        self.case_type
    }

    pub fn local_field(&self) -> &LocalField {
        &self.local
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn decomposition(&self) -> &[usize] {
        &self.dec
    }

    pub fn exponent(&self, i: usize) -> Option<u32> {
        self.exponent[i]
    }

    pub fn frobenius(&self) -> usize {
        self.frobenius
    }

    pub fn constituents(&self) -> &[Constituent] {
        &self.constituents
    }

    pub fn eta(&self) -> &ClassFunction {
        &self.eta
    }

    pub fn eta_data(&self) -> EigenCharacter {
        self.eta_data
    }

    pub fn conjugation(&self) -> Option<usize> {
        self.conjugation
    }

    pub fn theta(&self) -> &GroupAlgebraElement {
        &self.theta
    }

    pub fn v_eps(&self) -> Option<&LogVector> {
        self.v_eps.as_ref()
    }

    pub fn v_pi(&self) -> &LogVector {
        &self.v_pi
    }

    pub fn log_pi(&self) -> &LocalElement {
        &self.log_pi
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    pub fn hypotheses(&self) -> &[CheckRecord] {
        &self.hypotheses
    }

    pub fn is_synthetic(&self) -> bool {
        self.synthetic
    }

    /// Same case with a different σ̃/σ₂ search order.
    pub fn with_sigma_order(&self, order: Vec<usize>) -> Result<Self, LinvError> {
        let mut c = self.clone();
        c.sigma_order = sigma_order(&Some(order), self.group.order())?;
        Ok(c)
    }

    /// Replaces the π log vector, e.g. to inject corrupted data.
    pub fn with_v_pi(&self, v: LogVector) -> Self {
        let mut c = self.clone();
        c.log_pi = v.get(0).clone();
        c.v_pi = v;
        c
    }

    pub fn with_v_eps(&self, v: LogVector) -> Self {
        let mut c = self.clone();
        c.v_eps = Some(v);
        c
    }
}
