//! Functions on a finite group with cyclotomic values: characters, their
//! inner products, restriction and induction.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Cyclo, GaloisError};
use crate::group::FiniteGroup;

/// One value per group element, in group order.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    values: Vec<Cyclo>,
}

impl ClassFunction {
    pub fn new(values: Vec<Cyclo>) -> Self {
        ClassFunction { values }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Cyclo::zero(); n])
    }

    /// Trivial character.
    pub fn trivial(n: usize) -> Self {
        Self::new(vec![Cyclo::one(); n])
    }

    /// Character of the regular representation.
    pub fn regular(n: usize) -> Self {
        let mut v = vec![Cyclo::zero(); n];
        v[0] = Cyclo::int(n as i64);
        Self::new(v)
    }

    /// Indicator of a subset of the group, e.g. a subgroup.
    pub fn indicator(n: usize, set: &[usize]) -> Self {
        let mut v = vec![Cyclo::zero(); n];
        for &i in set {
            v[i] = Cyclo::one();
        }
        Self::new(v)
    }

    /// Builds from (element index, m, [(exponent, coefficient)]) entries;
    /// elements not listed take the value 0.
    pub fn from_entries(
        n: usize,
        entries: &[(usize, u32, Vec<(i64, BigRational)>)],
    ) -> Result<Self, GaloisError> {
        let mut v = vec![Cyclo::zero(); n];
        let mut seen = vec![false; n];
        for (i, m, terms) in entries {
            if *i >= n {
                return Err(GaloisError::InvalidCharacter(format!("element index {i} out of range")));
            }
            if *m == 0 {
                return Err(GaloisError::InvalidCharacter(format!("order 0 at element {i}")));
            }
            if std::mem::replace(&mut seen[*i], true) {
                return Err(GaloisError::InvalidCharacter(format!("element {i} listed twice")));
            }
            v[*i] = Cyclo::new(*m, terms.iter().cloned());
        }
        Ok(Self::new(v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, i: usize) -> &Cyclo {
        &self.values[i]
    }

    pub fn values(&self) -> &[Cyclo] {
        &self.values
    }

    /// χ(1) when it is a rational number.
    pub fn degree(&self) -> Option<BigRational> {
        self.values[0].to_rational()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.values.iter().zip(&o.values).map(|(a, b)| a - b).collect())
    }

    /// Pointwise product (tensor product of representations).
    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.values.iter().zip(&o.values).map(|(a, b)| a * b).collect())
    }

    /// σ ↦ χ(σ⁻¹).
    pub fn dual(&self, g: &FiniteGroup) -> Self {
        Self::new((0..self.len()).map(|i| self.values[g.inv(i)].clone()).collect())
    }

    pub fn is_class_function(&self, g: &FiniteGroup) -> bool {
        (0..g.order()).all(|a| g.conjugacy_class(a).iter().all(|&b| self.values[a] == self.values[b]))
    }

    /// (1/|S|) Σ_{σ ∈ S} χ(σ)ψ(σ⁻¹) over a subgroup S.
    pub fn inner_on(&self, o: &Self, g: &FiniteGroup, sub: &[usize]) -> Cyclo {
        let sum = sub.iter().fold(Cyclo::zero(), |acc, &s| &acc + &(&self.values[s] * &o.values[g.inv(s)]));
        sum.scale(&BigRational::new(1.into(), BigInt::from(sub.len())))
    }

    pub fn inner(&self, o: &Self, g: &FiniteGroup) -> Cyclo {
        let all: Vec<usize> = (0..g.order()).collect();
        self.inner_on(o, g, &all)
    }

    /// ⟨χ, ψ⟩ certified to be an integer.
    pub fn multiplicity(&self, o: &Self, g: &FiniteGroup) -> Result<i64, GaloisError> {
        let c = self.inner(o, g);
        c.to_integer()
            .and_then(|n| i64::try_from(n).ok())
            .ok_or_else(|| GaloisError::InvalidCharacter(format!("inner product {c} is not an integer")))
    }

    pub fn is_irreducible(&self, g: &FiniteGroup) -> bool {
        self.is_class_function(g) && self.inner(self, g) == Cyclo::one()
    }

    /// Induction from a subgroup, reading `self` only on `sub`:
    /// Ind(σ) = (1/|S|) Σ_{x ∈ G, x⁻¹σx ∈ S} η(x⁻¹σx).
    pub fn induce(&self, g: &FiniteGroup, sub: &[usize]) -> Result<Self, GaloisError> {
        if !g.is_subgroup(sub) {
            return Err(GaloisError::Group(crate::group::GroupError::NotASubgroup(sub.to_vec())));
        }
        let mut member = vec![false; g.order()];
        for &s in sub {
            member[s] = true;
        }
        let scale = BigRational::new(1.into(), BigInt::from(sub.len()));
        let vals = (0..g.order())
            .map(|s| {
                let sum = (0..g.order()).fold(Cyclo::zero(), |acc, x| {
                    let c = g.mul(g.mul(g.inv(x), s), x);
                    if member[c] {
                        &acc + &self.values[c]
                    } else {
                        acc
                    }
                });
                sum.scale(&scale)
            })
            .collect();
        Ok(Self::new(vals))
    }

    /// Values off `sub` set to zero.
    pub fn restrict(&self, sub: &[usize]) -> Self {
        let mut v = vec![Cyclo::zero(); self.len()];
        for &s in sub {
            v[s] = self.values[s].clone();
        }
        Self::new(v)
    }

    /// Checks η(ab) = η(a)η(b) on a subgroup, with values roots of unity.
    pub fn is_linear_on(&self, g: &FiniteGroup, sub: &[usize]) -> bool {
        sub.iter().all(|&a| sub.iter().all(|&b| self.values[g.mul(a, b)] == &self.values[a] * &self.values[b]))
            && self.values[0] == Cyclo::one()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclo::is_zero)
    }
}

