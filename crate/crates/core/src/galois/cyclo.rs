//! Elements of cyclotomic fields Q(ζ_m) and their p-adic images.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::GaloisError;
use crate::padic::{residue_pow, teichmuller, LocalElement, LocalField};
use crate::poly::QPoly;

/// Σ c_e ζ_m^e, kept as an element of Q[Z/m] and compared modulo Φ_m.
#[derive(Clone)]
pub struct Cyclo {
    m: u32,
    terms: BTreeMap<u32, BigRational>,
}

pub(crate) fn cyclotomic_poly(m: u32) -> QPoly {
    let mut c = vec![BigRational::zero(); m as usize + 1];
    c[0] = -BigRational::one();
    c[m as usize] = BigRational::one();
    let mut f = QPoly::new(c);
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        f = f.divrem(&cyclotomic_poly(d)).0;
    }
    f
}

fn prime_factors(mut m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= m {
        if m.is_multiple_of(k) {
            out.push(k);
            while m.is_multiple_of(k) {
                m /= k;
            }
        }
        k += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

impl Cyclo {
    pub fn new(m: u32, terms: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        assert!(m > 0, "order must be positive");
        let mut out = Cyclo { m, terms: BTreeMap::new() };
        for (e, c) in terms {
            out.add_term(e.rem_euclid(m as i64) as u32, c);
        }
        out
    }

    fn add_term(&mut self, e: u32, c: BigRational) {
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn rational(r: BigRational) -> Self {
        Self::new(1, [(0, r)])
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    /// ζ_m^e.
    pub fn zeta(m: u32, e: i64) -> Self {
        Self::new(m, [(e, BigRational::one())])
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Same value written over ζ_n with m | n.
    pub fn lift(&self, n: u32) -> Self {
        assert!(n.is_multiple_of(self.m), "{} does not divide {n}", self.m);
        let k = n / self.m;
        Cyclo { m: n, terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect() }
    }

    /// Complex conjugate ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        Self::new(self.m, self.terms.iter().map(|(e, c)| (-(*e as i64), c.clone())))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(self.m, self.terms.iter().map(|(e, c)| (*e as i64, c * r)))
    }

    /// Coefficients of the reduction modulo Φ_m.
    pub fn reduced(&self) -> QPoly {
        let mut c = vec![BigRational::zero(); self.m as usize];
        for (e, x) in &self.terms {
            c[*e as usize] += x;
        }
        QPoly::new(c).rem(&cyclotomic_poly(self.m))
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().is_zero()
    }

    /// The value as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        let r = self.reduced();
        match r.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(r.coeff(0)),
            _ => None,
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    fn common(&self, o: &Self) -> (Self, Self) {
        let n = self.m.lcm(&o.m);
        (self.lift(n), o.lift(n))
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, o: &Self) -> bool {
        (self - o).is_zero()
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| if *e == 0 { c.to_string() } else { format!("({c})z{}^{e}", self.m) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, o: &Cyclo) -> Cyclo {
        let (mut a, b) = self.common(o);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, o: &Cyclo) -> Cyclo {
        self + &(-o)
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, o: &Cyclo) -> Cyclo {
        let (a, b) = self.common(o);
        let mut out = Cyclo { m: a.m, terms: BTreeMap::new() };
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                out.add_term((e1 + e2) % a.m, c1 * c2);
            }
        }
        out
    }
}

/// The Teichmüller lift of the primitive m-th root of unity with the
/// smallest residue index.
pub fn root_of_unity(field: &LocalField, m: u32) -> Result<LocalElement, GaloisError> {
    let q = field.q().clone();
    let qm1: BigInt = &q - 1u32;
    if !(&qm1 % m).is_zero() {
        return Err(GaloisError::RootOfUnityMissing { m, q: q.to_string() });
    }
    if m == 1 {
        return Ok(LocalElement::one(field));
    }
    let mut one = vec![BigInt::zero(); field.degree() as usize];
    one[0] = BigInt::one();
    let primes = prime_factors(m);
    let mut k = BigInt::one();
    while k < q {
        let c = field.residue_coords(&k);
        let is_one = |e: u32| residue_pow(field, &c, &BigInt::from(e)) == one;
        if is_one(m) && primes.iter().all(|l| !is_one(m / l)) {
            return Ok(teichmuller(&LocalElement::residue(field, &k))?);
        }
        k += 1u32;
    }
    unreachable!("a primitive root exists when m divides q - 1")
}

/// Image of a cyclotomic value under ζ_m ↦ [`root_of_unity`].
pub fn cyclo_embed(c: &Cyclo, field: &LocalField) -> Result<LocalElement, GaloisError> {
    let zeta = root_of_unity(field, c.m)?;
    Ok(embed_with(c, &zeta))
}

pub(crate) fn embed_with(c: &Cyclo, zeta: &LocalElement) -> LocalElement {
    let field = zeta.field();
    c.terms.iter().fold(LocalElement::zero(field), |acc, (e, x)| {
        &acc + &(&LocalElement::from_rational(field, x) * &zeta.pow(*e as i64))
    })
}

/// Embeds a batch of values sharing a root of unity of order lcm of theirs.
pub(crate) fn embed_all(vals: &[Cyclo], field: &LocalField) -> Result<Vec<LocalElement>, GaloisError> {
    let m = vals.iter().fold(1u32, |acc, c| acc.lcm(&c.m));
    let zeta = root_of_unity(field, m)?;
    Ok(vals.iter().map(|c| embed_with(&c.lift(m), &zeta)).collect())
}
