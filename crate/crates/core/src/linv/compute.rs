//! Regulator components, the analytic and closed-form L-invariants, and the
//! vectors entering the universal-norm linear system.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::case::{in_base, units, CaseData, CaseType};
use super::LinvError;
use crate::galois::{AffineLogVector, ClassFunction, Cyclo, GroupAlgebraElement, LogVector};
use crate::padic::LocalElement;

#[derive(Clone, Debug, PartialEq)]
pub struct UVComponents {
    /// Exactly zero in the split and real-quadratic cases.
    pub log_u1: LocalElement,
    pub log_u_ba: Option<LocalElement>,
    pub log_v1: LocalElement,
    pub log_v_ba: Option<LocalElement>,
    /// σ₂ used by the exotic double projection.
    pub sigma2: Option<usize>,
}

impl CaseData {
    pub(crate) fn digits(&self) -> i64 {
        (self.precision - self.guard) as i64
    }

    /// N − G digits in 1/e units: the "nonzero" threshold.
    pub(crate) fn nonzero_target(&self) -> i64 {
        units(&self.local, self.digits())
    }

    /// N − 2G digits in 1/e units: the agreement threshold.
    pub(crate) fn agree_target(&self) -> i64 {
        units(&self.local, self.precision as i64 - 2 * self.guard as i64)
    }

    pub(crate) fn vanishes(&self, x: &LocalElement) -> bool {
        x.agrees_to(&LocalElement::zero(&self.local), self.nonzero_target())
    }

    fn eps(&self) -> Result<&LogVector, LinvError> {
        self.v_eps.as_ref().ok_or_else(|| LinvError::InvalidCase("this case needs units.epsilon".into()))
    }

    /// σ⁻¹·v, i.e. (σ⁻¹·v)(ρ) = v(ρσ⁻¹).
    fn act_inv(&self, v: &LogVector, s: usize) -> LogVector {
        v.translate(&self.group, self.group.inv(s))
    }

    fn sub_idem(&self, eta: &ClassFunction) -> Result<GroupAlgebraElement, LinvError> {
        Ok(GroupAlgebraElement::sub_idempotent(eta, &self.group, &self.dec, &self.local)?)
    }

    /// (1/n) Σ_{σ ∈ Gal(H/K)} (ψ − ψ⁻¹)(σ) σ.
    fn psi_minus_dual(&self) -> Result<GroupAlgebraElement, LinvError> {
        let n = self.group.order();
        let vals: Vec<Cyclo> = (0..n)
            .map(|i| {
                let x = self.character.value(i);
                (x - &x.conj()).scale(&BigRational::new(1.into(), BigInt::from(n)))
            })
            .collect();
        let m = vals.iter().map(Cyclo::order).fold(1u32, num_integer::lcm);
        let zeta = crate::galois::root_of_unity(&self.local, m)?;
        let c = vals.iter().map(|v| crate::galois::embed_with(&v.lift(m), &zeta)).collect();
        Ok(GroupAlgebraElement::new(&self.local, c)?)
    }

    /// k = Σ_{δ ∈ D} θ_δ, so that the first coordinate of θ·1_D is k.
    pub fn k_factor(&self) -> LocalElement {
        self.theta.coeff_sum(&self.dec)
    }

    /// The exotic double projection (θ_{η,D} σ₂⁻¹ θ_χ v)(1) at the first
    /// admissible σ₂.
    fn exotic_ba(&self) -> Result<(usize, LocalElement, LocalElement), LinvError> {
        let g = &self.group;
        let proj = self.sub_idem(&self.eta)?;
        let ue = self.theta.apply(self.eps()?, g)?;
        let up = self.theta.apply(&self.v_pi, g)?;
        for &s in &self.sigma_order {
            let u = proj.apply(&self.act_inv(&ue, s), g)?.get(0).clone();
            if !self.vanishes(&u) {
                let v = proj.apply(&self.act_inv(&up, s), g)?.get(0).clone();
                return Ok((s, u, v));
            }
        }
        Err(LinvError::DegenerateProjection { what: "σ₂" })
    }

    pub fn uv_components(&self) -> Result<UVComponents, LinvError> {
        let g = &self.group;
        let first = |v: LogVector| v.get(0).clone();
        let log_v1 = first(self.theta.apply(&self.v_pi, g)?);
        let zero = LocalElement::zero(&self.local);
        Ok(match self.case_type {
            CaseType::IqSplit | CaseType::RqInert => {
                UVComponents { log_u1: zero, log_u_ba: None, log_v1, log_v_ba: None, sigma2: None }
            }
            CaseType::IqInert => {
                let a = self.psi_minus_dual()?;
                let eps = self.eps()?;
                UVComponents {
                    log_u1: first(self.theta.apply(eps, g)?),
                    log_u_ba: Some(first(a.apply(eps, g)?)),
                    log_v1,
                    log_v_ba: Some(first(a.apply(&self.v_pi, g)?)),
                    sigma2: None,
                }
            }
            CaseType::Exotic => {
                let (s, u, v) = self.exotic_ba()?;
                UVComponents {
                    log_u1: first(self.theta.apply(self.eps()?, g)?),
                    log_u_ba: Some(u),
                    log_v1,
                    log_v_ba: Some(v),
                    sigma2: Some(s),
                }
            }
            CaseType::RqSplit | CaseType::Greenberg23 => {
                return Err(LinvError::InvalidCase(format!("{} has no generic components", self.case_type.name())))
            }
        })
    }

    fn checked_u_ba<'a>(&self, uv: &'a UVComponents) -> Result<Option<(&'a LocalElement, &'a LocalElement)>, LinvError> {
        match (&uv.log_u_ba, &uv.log_v_ba) {
            (Some(u), Some(v)) => {
                if self.vanishes(u) {
                    return Err(LinvError::VanishingDenominator);
                }
                Ok(Some((u, v)))
            }
            _ => Ok(None),
        }
    }

    /// (log u₁·log v_ba − log u_ba·log v₁)/log u_ba, or −log v₁ when u₁ = 0.
    pub fn l_an_from(&self, uv: &UVComponents) -> Result<LocalElement, LinvError> {
        match self.checked_u_ba(uv)? {
            None => Ok(-&uv.log_v1),
            Some((u, v)) => Ok((&uv.log_u1 * v - u * &uv.log_v1).checked_div(u)?),
        }
    }

    /// log v₁, corrected by −(log v_ba/log u_ba)·log u₁ when u₁ enters.
    pub fn l_gr_closed_from(&self, uv: &UVComponents) -> Result<LocalElement, LinvError> {
        match self.checked_u_ba(uv)? {
            None => Ok(uv.log_v1.clone()),
            Some((u, v)) => Ok(&uv.log_v1 - &(v.checked_div(u)? * &uv.log_u1)),
        }
    }

    pub fn l_an(&self) -> Result<LocalElement, LinvError> {
        self.l_an_from(&self.uv_components()?)
    }

    pub fn l_gr_closed(&self) -> Result<LocalElement, LinvError> {
        self.l_gr_closed_from(&self.uv_components()?)
    }

    /// X·1_D + B with B = 0 on D and −log ι(σπ) off D.
    pub fn build_w_vector(&self) -> AffineLogVector {
        let n = self.group.order();
        let one = LocalElement::one(&self.local);
        let zero = LocalElement::zero(&self.local);
        let on_d = |i: usize| self.exponent[i].is_some();
        let coeff = (0..n).map(|i| if on_d(i) { one.clone() } else { zero.clone() }).collect();
        let constant = (0..n).map(|i| if on_d(i) { zero.clone() } else { -self.v_pi.get(i) }).collect();
        AffineLogVector {
            coeff: LogVector::new(&self.local, coeff).expect("same field"),
            constant: LogVector::new(&self.local, constant).expect("same field"),
        }
    }

    /// The local seed placed on D as δ ↦ φ^{j(δ)}(λ), zero elsewhere.
    fn seed(&self, sigma2: Option<usize>) -> Result<LogVector, LinvError> {
        let n = self.group.order();
        let zero = LocalElement::zero(&self.local);
        match self.case_type {
            CaseType::RqInert => {
                let t = LocalElement::generator(&self.local);
                let lambda = &t - &t.frobenius();
                let v = (0..n)
                    .map(|i| match self.exponent[i] {
                        Some(j) => lambda.local_galois(j),
                        None => zero.clone(),
                    })
                    .collect();
                Ok(LogVector::new(&self.local, v)?)
            }
            CaseType::Exotic => {
                let s = sigma2.ok_or(LinvError::DegenerateProjection { what: "σ₂" })?;
                let g = &self.group;
                let proj = self.sub_idem(&self.eta.dual(g))?;
                let y = proj.apply(&self.act_inv(&self.theta.apply(self.eps()?, g)?, s), g)?;
                let v = (0..n)
                    .map(|i| if self.exponent[i].is_some() { y.get(i).clone() } else { zero.clone() })
                    .collect();
                Ok(LogVector::new(&self.local, v)?)
            }
            _ => Err(LinvError::InvalidCase(format!("no z₁ vector for {}", self.case_type.name()))),
        }
    }

    /// z₁ = θ_{1,D} σ̃ θ·seed at the first σ̃ giving a nonzero vector.
    pub fn z1_vector(&self, sigma2: Option<usize>) -> Result<(usize, LogVector), LinvError> {
        let g = &self.group;
        let seed = self.theta.apply(&self.seed(sigma2)?, g)?;
        let avg = self.sub_idem(&ClassFunction::trivial(g.order()))?;
        for &s in &self.sigma_order {
            let z = avg.apply(&seed.translate(g, s), g)?;
            if !z.vanishes_to(self.nonzero_target()) {
                return Ok((s, z));
            }
        }
        Err(LinvError::DegenerateProjection { what: "σ̃" })
    }

    /// log ι(π) is in Q_p by certification; this re-checks it for injected data.
    pub(crate) fn log_pi_in_base(&self) -> bool {
        in_base(&self.log_pi, self.nonzero_target())
    }
}
