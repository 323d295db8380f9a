//! The embedding-indexed model of the regular representation: vectors
//! v: Δ → F, and the group algebra F[Δ] acting by (a·v)(σ) = Σ_τ a_τ v(στ).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::cyclo::embed_all;
use super::{ClassFunction, GaloisError};
use crate::group::FiniteGroup;
use crate::numfield::{AutomorphismGroup, Embedding, NFElement};
use crate::padic::{log_iw, LocalElement, LocalField};

/// v(σ) for every group element σ, in group order.
#[derive(Clone, Debug, PartialEq)]
pub struct LogVector {
    field: LocalField,
    v: Vec<LocalElement>,
}

impl LogVector {
    pub fn new(field: &LocalField, v: Vec<LocalElement>) -> Result<Self, GaloisError> {
        if v.iter().any(|x| x.field() != field) {
            return Err(GaloisError::FieldMismatch);
        }
        Ok(LogVector { field: field.clone(), v })
    }

    pub fn zero(field: &LocalField, n: usize) -> Self {
        LogVector { field: field.clone(), v: vec![LocalElement::zero(field); n] }
    }

    /// v(σ) = log ι(σx); every conjugate must be a unit.
    pub fn of_unit(x: &NFElement, group: &AutomorphismGroup, emb: &Embedding) -> Result<Self, GaloisError> {
        let (v, vals) = Self::of_element(x, group, emb)?;
        if let Some(i) = vals.iter().position(|&k| k != 0) {
            return Err(GaloisError::NotAUnit { index: i, valuation: vals[i].to_string() });
        }
        Ok(v)
    }

    /// v(σ) = log ι(σx) for any nonzero x, with the valuations (in 1/e units)
    /// of the conjugates returned alongside.
    pub fn of_element(
        x: &NFElement,
        group: &AutomorphismGroup,
        emb: &Embedding,
    ) -> Result<(Self, Vec<i64>), GaloisError> {
        if x.is_zero() {
            return Err(GaloisError::ZeroInput);
        }
        let mut v = Vec::with_capacity(group.order());
        let mut vals = Vec::with_capacity(group.order());
        for i in 0..group.order() {
            let y = emb.embed(&group.apply(i, x));
            vals.push(y.val_units().ok_or(GaloisError::ZeroInput)?);
            v.push(log_iw(&y)?);
        }
        Ok((LogVector { field: emb.local_field().clone(), v }, vals))
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn get(&self, i: usize) -> &LocalElement {
        &self.v[i]
    }

    pub fn entries(&self) -> &[LocalElement] {
        &self.v
    }

    fn check(&self, o: &Self) -> Result<(), GaloisError> {
        if self.field != o.field {
            return Err(GaloisError::FieldMismatch);
        }
        if self.len() != o.len() {
            return Err(GaloisError::LengthMismatch { expected: self.len(), got: o.len() });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, GaloisError> {
        self.check(o)?;
        Ok(LogVector { field: self.field.clone(), v: self.v.iter().zip(&o.v).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, GaloisError> {
        self.check(o)?;
        Ok(LogVector { field: self.field.clone(), v: self.v.iter().zip(&o.v).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: &LocalElement) -> Result<Self, GaloisError> {
        if c.field() != &self.field {
            return Err(GaloisError::FieldMismatch);
        }
        Ok(LogVector { field: self.field.clone(), v: self.v.iter().map(|a| a * c).collect() })
    }

    /// (τ·v)(σ) = v(στ): the vector of τx when v is the vector of x.
    pub fn translate(&self, g: &FiniteGroup, tau: usize) -> Self {
        LogVector { field: self.field.clone(), v: (0..self.len()).map(|s| self.v[g.mul(s, tau)].clone()).collect() }
    }

    /// Entry-wise map, e.g. a local Galois automorphism.
    pub fn map(&self, f: impl Fn(&LocalElement) -> LocalElement) -> Self {
        LogVector { field: self.field.clone(), v: self.v.iter().map(f).collect() }
    }

    /// Smallest valuation (1/e units) among the entries; None for the zero vector.
    pub fn min_valuation(&self) -> Option<i64> {
        self.v.iter().filter(|x| !x.is_zero()).filter_map(|x| x.val_units()).min()
    }

    /// Every entry vanishes modulo uniformizer^target (1/e units).
    pub fn vanishes_to(&self, target: i64) -> bool {
        let z = LocalElement::zero(&self.field);
        self.v.iter().all(|x| x.agrees_to(&z, target))
    }

    pub fn agrees_to(&self, o: &Self, target: i64) -> bool {
        self.len() == o.len() && self.v.iter().zip(&o.v).all(|(a, b)| a.agrees_to(b, target))
    }
}

/// X·a + b with X an unknown scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineLogVector {
    pub coeff: LogVector,
    pub constant: LogVector,
}

impl AffineLogVector {
    pub fn evaluate(&self, x: &LocalElement) -> Result<LogVector, GaloisError> {
        self.coeff.scale(x)?.add(&self.constant)
    }
}

/// Σ_σ c_σ σ in F[Δ].
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement {
    field: LocalField,
    c: Vec<LocalElement>,
}

impl GroupAlgebraElement {
    pub fn new(field: &LocalField, c: Vec<LocalElement>) -> Result<Self, GaloisError> {
        if c.iter().any(|x| x.field() != field) {
            return Err(GaloisError::FieldMismatch);
        }
        Ok(GroupAlgebraElement { field: field.clone(), c })
    }

    pub fn zero(field: &LocalField, n: usize) -> Self {
        GroupAlgebraElement { field: field.clone(), c: vec![LocalElement::zero(field); n] }
    }

    /// The group element τ as an algebra element.
    pub fn element(field: &LocalField, n: usize, tau: usize) -> Self {
        let mut a = Self::zero(field, n);
        a.c[tau] = LocalElement::one(field);
        a
    }

    pub fn identity(field: &LocalField, n: usize) -> Self {
        Self::element(field, n, 0)
    }

    /// (dim χ/|Δ|) Σ_σ χ(σ⁻¹) σ.
    pub fn idempotent(chi: &ClassFunction, g: &FiniteGroup, field: &LocalField) -> Result<Self, GaloisError> {
        let all: Vec<usize> = (0..g.order()).collect();
        let dim = chi
            .degree()
            .ok_or_else(|| GaloisError::InvalidCharacter("degree is not rational".into()))?;
        Self::projector(chi, g, &all, &dim, field)
    }

    /// (1/|S|) Σ_{δ ∈ S} η(δ⁻¹) δ for a linear character η of the subgroup S.
    pub fn sub_idempotent(
        eta: &ClassFunction,
        g: &FiniteGroup,
        sub: &[usize],
        field: &LocalField,
    ) -> Result<Self, GaloisError> {
        Self::projector(eta, g, sub, &BigRational::from_integer(1.into()), field)
    }

    fn projector(
        chi: &ClassFunction,
        g: &FiniteGroup,
        support: &[usize],
        dim: &BigRational,
        field: &LocalField,
    ) -> Result<Self, GaloisError> {
        let order = BigInt::from(support.len());
        if (&order % field.p()).is_zero() {
            return Err(GaloisError::PrimeDividesOrder { p: field.p().to_string(), order: support.len() });
        }
        let vals: Vec<_> = support.iter().map(|&s| chi.value(g.inv(s)).clone()).collect();
        let emb = embed_all(&vals, field)?;
        let scale = LocalElement::from_rational(field, &(dim / BigRational::from_integer(order)));
        let mut a = Self::zero(field, g.order());
        for (&s, e) in support.iter().zip(emb) {
            a.c[s] = &scale * &e;
        }
        Ok(a)
    }

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    pub fn coeffs(&self) -> &[LocalElement] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> &LocalElement {
        &self.c[i]
    }

    /// Sum of the coefficients over a subset, e.g. the decomposition group.
    pub fn coeff_sum(&self, set: &[usize]) -> LocalElement {
        set.iter().fold(LocalElement::zero(&self.field), |acc, &i| &acc + &self.c[i])
    }

    pub fn add(&self, o: &Self) -> Result<Self, GaloisError> {
        if self.field != o.field {
            return Err(GaloisError::FieldMismatch);
        }
        Ok(GroupAlgebraElement { field: self.field.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, k: &LocalElement) -> Self {
        GroupAlgebraElement { field: self.field.clone(), c: self.c.iter().map(|a| a * k).collect() }
    }

    /// Convolution product: (ab)_μ = Σ_{τρ = μ} a_τ b_ρ, so (ab)·v = a·(b·v).
    pub fn mul(&self, o: &Self, g: &FiniteGroup) -> Result<Self, GaloisError> {
        if self.field != o.field {
            return Err(GaloisError::FieldMismatch);
        }
        let mut out = Self::zero(&self.field, g.order());
        for (t, a) in self.c.iter().enumerate().filter(|(_, a)| !a.is_exact_zero()) {
            for (r, b) in o.c.iter().enumerate().filter(|(_, b)| !b.is_exact_zero()) {
                let k = g.mul(t, r);
                out.c[k] = &out.c[k] + &(a * b);
            }
        }
        Ok(out)
    }

    /// (a·v)(σ) = Σ_τ a_τ v(στ).
    pub fn apply(&self, v: &LogVector, g: &FiniteGroup) -> Result<LogVector, GaloisError> {
        if self.field != v.field {
            return Err(GaloisError::FieldMismatch);
        }
        if v.len() != g.order() || self.c.len() != g.order() {
            return Err(GaloisError::LengthMismatch { expected: g.order(), got: v.len() });
        }
        let out = (0..g.order())
            .map(|s| {
                self.c
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| !a.is_exact_zero())
                    .fold(LocalElement::zero(&self.field), |acc, (t, a)| &acc + &(a * &v.v[g.mul(s, t)]))
            })
            .collect();
        Ok(LogVector { field: self.field.clone(), v: out })
    }

    pub fn apply_affine(&self, v: &AffineLogVector, g: &FiniteGroup) -> Result<AffineLogVector, GaloisError> {
        Ok(AffineLogVector { coeff: self.apply(&v.coeff, g)?, constant: self.apply(&v.constant, g)? })
    }
}
