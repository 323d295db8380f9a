use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use super::{AutomorphismGroup, NFElement, NumFieldError, NumberField};
use crate::fp_poly::{mod_u64, FpPoly};
use crate::padic::{roots_in, LocalElement, LocalField};

/// A p-adic embedding θ ↦ r_θ, s ↦ r_s into one local field.
#[derive(Clone, Debug)]
pub struct Embedding {
    field: NumberField,
    local: LocalField,
    r_theta: LocalElement,
    r_s: Option<LocalElement>,
    basis: Vec<LocalElement>,
}

impl Embedding {
    /// Checks f(r_θ) = 0 and r_s² = d at the tracked precision.
    pub fn new(field: &NumberField, r_theta: LocalElement, r_s: Option<LocalElement>) -> Result<Self, NumFieldError> {
        let local = r_theta.field().clone();
        if r_s.as_ref().is_some_and(|s| s.field() != &local) {
            return Err(NumFieldError::Embedding("r_theta and r_s lie in different fields".into()));
        }
        if !r_theta.eval_poly(field.f()).is_zero() {
            return Err(NumFieldError::Embedding(format!("f(r_theta) != 0 for r_theta = {r_theta}")));
        }
        let r_s = match (field.has_sqrt(), r_s) {
            (true, Some(s)) => {
                let d = LocalElement::from_int(&local, field.d().clone());
                if !(&s * &s).checked_sub(&d)?.is_zero() {
                    return Err(NumFieldError::Embedding(format!("r_s^2 != {}", field.d())));
                }
                Some(s)
            }
            (true, None) => return Err(NumFieldError::Embedding("missing r_s".into())),
            (false, _) => None,
        };
        let mut pows = vec![LocalElement::one(&local)];
        for _ in 1..field.m() {
            let next = pows.last().unwrap() * &r_theta;
            pows.push(next);
        }
        let mut basis = pows.clone();
        if let Some(s) = &r_s {
            basis.extend(pows.iter().map(|x| x * s));
        }
        Ok(Embedding { field: field.clone(), local, r_theta, r_s, basis })
    }

    /// Embedding into the smallest unramified field containing a root of f
    /// and a square root of d.  The field's modulus is the first irreducible
    /// x^k + c_{k-1}x^{k-1} + .. + c_0 ordered by Σ c_i p^i; r_θ and r_s are the
    /// roots with the smallest residue index.
    pub fn canonical(field: &NumberField, p: u64, precision: u32) -> Result<Self, NumFieldError> {
        let fp = FpPoly::from_ints(p, field.f());
        if fp.degree() != Some(field.m()) || fp.gcd(&fp.derivative()).degree() != Some(0) {
            return Err(NumFieldError::Embedding(format!("{p} divides the discriminant of f")));
        }
        if field.has_sqrt() && mod_u64(field.d(), p) == 0 {
            return Err(NumFieldError::Embedding(format!("{p} divides d")));
        }
        let d_res = field.has_sqrt().then(|| residue_square(mod_u64(field.d(), p), p));
        let k = (1..=crate::padic::DEFAULT_MAX_DEGREE as usize)
            .find(|&k| has_root_in_degree(&fp, p, k) && (k % 2 == 0 || d_res != Some(false)))
            .ok_or_else(|| NumFieldError::Embedding("residue degree above 6".into()))?;
        let local = if k == 1 {
            LocalField::base(p, precision)?
        } else {
            LocalField::unramified(p, precision, first_irreducible(p, k))?
        };
        let pick = |poly: &[BigInt]| -> Result<LocalElement, NumFieldError> {
            roots_in(poly, &local)?
                .into_iter()
                .min_by_key(|r| r.residue_index())
                .ok_or_else(|| NumFieldError::Embedding("no root found".into()))
        };
        let r_theta = pick(field.f())?;
        let r_s = if field.has_sqrt() {
            Some(pick(&[-field.d().clone(), BigInt::zero(), BigInt::one()])?)
        } else {
            None
        };
        Self::new(field, r_theta, r_s)
    }

    pub fn number_field(&self) -> &NumberField {
        &self.field
    }

    pub fn local_field(&self) -> &LocalField {
        &self.local
    }

    pub fn r_theta(&self) -> &LocalElement {
        &self.r_theta
    }

    pub fn r_s(&self) -> Option<&LocalElement> {
        self.r_s.as_ref()
    }

    pub fn embed(&self, a: &NFElement) -> LocalElement {
        assert_eq!(a.field(), &self.field, "embedding applied to a foreign element");
        a.eval_with(&self.basis, LocalElement::zero(&self.local), |x, y| x + y, |c, b| {
            &LocalElement::from_rational(&self.local, c) * b
        })
    }

    pub fn embed_rational(&self, r: &BigRational) -> LocalElement {
        LocalElement::from_rational(&self.local, r)
    }
}

fn residue_square(a: u64, p: u64) -> bool {
    (1..p).any(|x| x * x % p == a % p)
}

fn has_root_in_degree(f: &FpPoly, p: u64, k: usize) -> bool {
    let x = FpPoly::x(p);
    let q = num_traits::pow(BigInt::from(p), k);
    let g = x.pow_mod(&q, f).sub(&x).gcd(f);
    g.degree().is_some_and(|d| d > 0) || g.is_zero()
}

pub(crate) fn first_irreducible(p: u64, k: usize) -> Vec<BigInt> {
    let mut n = 0u64;
    loop {
        let mut c: Vec<u64> = (0..k).map(|i| (n / p.pow(i as u32)) % p).collect();
        c.push(1);
        if FpPoly::new(p, c.clone()).smallest_factor_degree().is_none() {
            return c.into_iter().map(BigInt::from).collect();
        }
        n += 1;
    }
}

/// Valuation of embed(σ(a)) for every group element σ, in group order.
pub fn prime_valuations(
    a: &NFElement,
    group: &AutomorphismGroup,
    emb: &Embedding,
) -> Result<Vec<Ratio<i64>>, NumFieldError> {
    if a.is_zero() {
        return Err(NumFieldError::ZeroEmbedding);
    }
    (0..group.order())
        .map(|i| {
            let x = emb.embed(&group.apply(i, a));
            if x.is_zero() {
                return Err(NumFieldError::ZeroEmbedding);
            }
            Ok(x.valuation().unwrap_or_else(Ratio::zero))
        })
        .collect()
}
