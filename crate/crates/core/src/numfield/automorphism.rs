use num_rational::BigRational;

use super::{NFElement, NumFieldError, NumberField};
use crate::group::FiniteGroup;

/// A field automorphism given by the images of θ and s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    theta: NFElement,
    s: Option<NFElement>,
    /// Images of the basis {θ^i s^j}, in basis order.
    basis: Vec<NFElement>,
}

impl Automorphism {
    /// Builds the map and checks the defining relations.  Whether it is a ring
    /// map is checked by [`AutomorphismGroup::verify`] on basis products.
    pub fn new(theta: NFElement, s: Option<NFElement>) -> Result<Self, String> {
        let field = theta.field().clone();
        if s.as_ref().is_some_and(|x| x.field() != &field) {
            return Err("images lie in different fields".into());
        }
        let f_of = field
            .f()
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| &(&acc * &theta) + &field.from_rational(BigRational::from_integer(c.clone())));
        if !f_of.is_zero() {
            return Err("f(image of theta) != 0".into());
        }
        let s = match (field.has_sqrt(), s) {
            (true, Some(s)) => {
                let d = field.from_rational(BigRational::from_integer(field.d().clone()));
                if &s * &s != d {
                    return Err("(image of s)^2 != d".into());
                }
                Some(s)
            }
            (true, None) => return Err("missing image of s".into()),
            (false, _) => None,
        };
        let m = field.m();
        let mut pows = vec![field.one()];
        for _ in 1..m {
            let next = pows.last().unwrap() * &theta;
            pows.push(next);
        }
        let mut basis = pows.clone();
        if let Some(s) = &s {
            basis.extend(pows.iter().map(|x| x * s));
        }
        Ok(Automorphism { theta, s, basis })
    }

    pub fn identity(field: &NumberField) -> Self {
        Self::new(field.theta(), field.sqrt_d()).expect("identity satisfies the relations")
    }

    pub fn theta_image(&self) -> &NFElement {
        &self.theta
    }

    pub fn s_image(&self) -> Option<&NFElement> {
        self.s.as_ref()
    }

    pub fn apply(&self, a: &NFElement) -> NFElement {
        let field = self.theta.field();
        assert_eq!(a.field(), field, "automorphism applied to a foreign element");
        a.eval_with(&self.basis, field.zero(), |x, y| x + y, |c, b| b.scale(c))
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Self) -> Self {
        Automorphism::new(self.apply(&other.theta), other.s.as_ref().map(|s| self.apply(s)))
            .expect("composition of automorphisms satisfies the relations")
    }
}

/// A verified list of automorphisms closed under composition, with its
/// Cayley table (identity at index 0).
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    field: NumberField,
    auts: Vec<Automorphism>,
    group: FiniteGroup,
}

impl AutomorphismGroup {
    /// Verifies `images` (pairs of θ-image and s-image) as the full Galois group.
    pub fn verify(field: &NumberField, images: Vec<(NFElement, Option<NFElement>)>) -> Result<Self, NumFieldError> {
        let n = field.degree();
        if images.len() != n {
            return Err(NumFieldError::WrongGroupSize { expected: n, got: images.len() });
        }
        let mut auts = Vec::with_capacity(n);
        for (index, (t, s)) in images.into_iter().enumerate() {
            if t.field() != field || s.as_ref().is_some_and(|s| s.field() != field) {
                return Err(NumFieldError::BadAutomorphism { index, reason: "image in a different field".into() });
            }
            let a = Automorphism::new(t, s).map_err(|reason| NumFieldError::BadAutomorphism { index, reason })?;
            auts.push(a);
        }
        if auts[0] != Automorphism::identity(field) {
            return Err(NumFieldError::BadAutomorphism { index: 0, reason: "index 0 must be the identity".into() });
        }
        for (index, a) in auts.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let bi = field.basis(i % field.m(), i / field.m());
                    let bj = field.basis(j % field.m(), j / field.m());
                    if a.apply(&(&bi * &bj)) != &a.basis[i] * &a.basis[j] {
                        return Err(NumFieldError::BadAutomorphism {
                            index,
                            reason: format!("not multiplicative on basis elements {i}, {j}"),
                        });
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                if auts[i] == auts[j] {
                    return Err(NumFieldError::Duplicate(j, i));
                }
            }
        }
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let c = auts[i].compose(&auts[j]);
                table[i][j] = auts.iter().position(|a| *a == c).ok_or(NumFieldError::NotClosed(i, j))?;
            }
        }
        let group = FiniteGroup::from_table(table)?;
        Ok(AutomorphismGroup { field: field.clone(), auts, group })
    }

    /// Same as [`Self::verify`] with s-images always present or always absent,
    /// parsed from "num/den" strings.
    pub fn parse<S: AsRef<str>>(field: &NumberField, images: &[(Vec<S>, Option<Vec<S>>)]) -> Result<Self, NumFieldError> {
        let mut out = Vec::with_capacity(images.len());
        for (index, (t, s)) in images.iter().enumerate() {
            let wrap = |e: NumFieldError| NumFieldError::BadAutomorphism { index, reason: e.to_string() };
            let t = field.parse(t).map_err(wrap)?;
            let s = s.as_ref().map(|s| field.parse(s)).transpose().map_err(wrap)?;
            out.push((t, s));
        }
        Self::verify(field, out)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.auts.len()
    }

    pub fn get(&self, i: usize) -> &Automorphism {
        &self.auts[i]
    }

    pub fn automorphisms(&self) -> &[Automorphism] {
        &self.auts
    }

    pub fn apply(&self, i: usize, a: &NFElement) -> NFElement {
        self.auts[i].apply(a)
    }
}
