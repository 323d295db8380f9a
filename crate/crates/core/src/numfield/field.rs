use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::NumFieldError;
use crate::fp_poly::{mod_u64, FpPoly};
use crate::padic::format_poly;
use crate::poly::QPoly;

const CERT_PRIMES: usize = 25;
const DISJOINT_PRIMES: usize = 400;

/// The compositum of Q[x]/(f) and Q(sqrt d); `d = 0` means no quadratic layer.
#[derive(Clone)]
pub struct NumberField(Arc<Inner>);

struct Inner {
    d: BigInt,
    f: Vec<BigInt>,
    fq: QPoly,
    cert_prime: Option<u64>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "NumberField(d = {}, f = {})", self.0.d, format_poly(&self.0.f, "x"))
    }
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.0.d == o.0.d && self.0.f == o.0.f)
    }
}
impl Eq for NumberField {}

pub(crate) fn small_primes(n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let mut k = 2u64;
    while out.len() < n {
        if (2..k).take_while(|q| q * q <= k).all(|q| !k.is_multiple_of(q)) {
            out.push(k);
        }
        k += 1;
    }
    out
}

fn is_square(d: &BigInt) -> bool {
    !d.is_negative() && {
        let r = d.sqrt();
        &(&r * &r) == d
    }
}

fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let mut r = 1u64;
    let mut b = a;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

impl NumberField {
    /// Validates and builds the field. `f` holds integer coefficients, low to high.
    pub fn new(d: impl Into<BigInt>, f: Vec<BigInt>) -> Result<Self, NumFieldError> {
        let d = d.into();
        if f.len() < 2 || !f.last().is_some_and(|c| c.is_one()) {
            return Err(NumFieldError::NotMonic);
        }
        let fq = QPoly::from_ints(&f);
        let fs = format_poly(&f, "x");
        if !fq.is_squarefree() {
            return Err(NumFieldError::NotSquarefree(fs));
        }
        let m = f.len() - 1;
        let cert_prime = if m == 1 {
            None
        } else {
            let p = small_primes(CERT_PRIMES)
                .into_iter()
                .find(|&p| FpPoly::from_ints(p, &f).smallest_factor_degree().is_none())
                .ok_or(NumFieldError::CannotCertify(fs.clone()))?;
            Some(p)
        };
        if !d.is_zero() {
            if is_square(&d) {
                return Err(NumFieldError::SquareDiscriminant(d.to_string()));
            }
            // If sqrt d lay in Q[x]/(f), d would be a square modulo every good
            // prime at which f has a simple root.  One prime where it is not
            // certifies disjointness.
            if m > 1 {
                let disjoint = small_primes(DISJOINT_PRIMES).into_iter().skip(1).any(|p| {
                    let fp = FpPoly::from_ints(p, &f);
                    legendre(mod_u64(&d, p), p) == -1
                        && fp.gcd(&fp.derivative()).degree() == Some(0)
                        && !fp.roots().is_empty()
                });
                if !disjoint {
                    return Err(NumFieldError::NotDisjoint { d: d.to_string(), f: fs });
                }
            }
        }
        Ok(NumberField(Arc::new(Inner { d, f, fq, cert_prime })))
    }

    pub fn from_i64(d: i64, f: &[i64]) -> Result<Self, NumFieldError> {
        Self::new(d, f.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn d(&self) -> &BigInt {
        &self.0.d
    }

    pub fn f(&self) -> &[BigInt] {
        &self.0.f
    }

    pub(crate) fn fq(&self) -> &QPoly {
        &self.0.fq
    }

    /// Degree of f.
    pub fn m(&self) -> usize {
        self.0.f.len() - 1
    }

    pub fn has_sqrt(&self) -> bool {
        !self.0.d.is_zero()
    }

    pub fn degree(&self) -> usize {
        self.m() * if self.has_sqrt() { 2 } else { 1 }
    }

    /// Prime modulo which f was found irreducible (none when f is linear).
    pub fn certificate_prime(&self) -> Option<u64> {
        self.0.cert_prime
    }

    pub fn zero(&self) -> NFElement {
        NFElement { field: self.clone(), c: vec![BigRational::zero(); self.degree()] }
    }

    pub fn one(&self) -> NFElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> NFElement {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(&self, r: BigRational) -> NFElement {
        let mut z = self.zero();
        z.c[0] = r;
        z
    }

    /// θ^i s^j.
    pub fn basis(&self, i: usize, j: usize) -> NFElement {
        let mut z = self.zero();
        z.c[i + j * self.m()] = BigRational::one();
        z
    }

    pub fn theta(&self) -> NFElement {
        if self.m() == 1 {
            self.from_rational(BigRational::from_integer(-self.0.f[0].clone()))
        } else {
            self.basis(1, 0)
        }
    }

    pub fn sqrt_d(&self) -> Option<NFElement> {
        self.has_sqrt().then(|| self.basis(0, 1))
    }

    pub fn element(&self, c: Vec<BigRational>) -> Result<NFElement, NumFieldError> {
        if c.len() != self.degree() {
            return Err(NumFieldError::WrongLength { expected: self.degree(), got: c.len() });
        }
        Ok(NFElement { field: self.clone(), c })
    }

    pub fn element_from_ints(&self, c: &[i64]) -> Result<NFElement, NumFieldError> {
        self.element(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    /// Parses "num/den" or integer strings in basis order.
    pub fn parse<S: AsRef<str>>(&self, text: &[S]) -> Result<NFElement, NumFieldError> {
        let c = text
            .iter()
            .enumerate()
            .map(|(index, t)| {
                parse_rational(t.as_ref())
                    .ok_or_else(|| NumFieldError::Parse { index, text: t.as_ref().to_string() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.element(c)
    }

    fn from_parts(&self, a: QPoly, b: QPoly) -> NFElement {
        let m = self.m();
        let mut c = Vec::with_capacity(self.degree());
        c.extend((0..m).map(|i| a.coeff(i)));
        if self.has_sqrt() {
            c.extend((0..m).map(|i| b.coeff(i)));
        }
        NFElement { field: self.clone(), c }
    }
}

pub(crate) fn parse_rational(t: &str) -> Option<BigRational> {
    let t = t.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (t.parse::<BigInt>().ok()?, BigInt::one()),
    };
    (!d.is_zero()).then(|| BigRational::new(n, d))
}

/// Element a + s·b of the field, stored as rational coordinates in the basis
/// {1, θ, .., θ^(m-1), s, sθ, ..}.
#[derive(Clone, PartialEq, Eq)]
pub struct NFElement {
    field: NumberField,
    c: Vec<BigRational>,
}

impl fmt::Debug for NFElement {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{:?}", self.to_strings())
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "[{}]", self.to_strings().join(", "))
    }
}

impl NFElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.c.iter().map(|x| x.to_string()).collect()
    }

    fn parts(&self) -> (QPoly, QPoly) {
        let m = self.field.m();
        let a = QPoly::new(self.c[..m].to_vec());
        let b = if self.field.has_sqrt() { QPoly::new(self.c[m..].to_vec()) } else { QPoly::zero() };
        (a, b)
    }

    fn check(&self, o: &Self) -> Result<(), NumFieldError> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(NumFieldError::FieldMismatch)
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, NumFieldError> {
        self.check(o)?;
        let c = self.c.iter().zip(&o.c).map(|(x, y)| x + y).collect();
        Ok(NFElement { field: self.field.clone(), c })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, NumFieldError> {
        self.checked_add(&-o)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, NumFieldError> {
        self.check(o)?;
        let f = self.field.fq();
        let (a, b) = self.parts();
        let (c, e) = o.parts();
        let d = BigRational::from_integer(self.field.d().clone());
        let re = (&(&a * &c) + &(&b * &e).scale(&d)).rem(f);
        let im = (&(&a * &e) + &(&b * &c)).rem(f);
        Ok(self.field.from_parts(re, im))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        NFElement { field: self.field.clone(), c: self.c.iter().map(|x| x * r).collect() }
    }

    /// A² − d·B² reduced mod f: the relative norm down to Q[θ].
    fn rel_norm(&self) -> QPoly {
        let (a, b) = self.parts();
        if !self.field.has_sqrt() {
            return a;
        }
        let d = BigRational::from_integer(self.field.d().clone());
        (&(&a * &a) - &(&b * &b).scale(&d)).rem(self.field.fq())
    }

    pub fn inv(&self) -> Result<Self, NumFieldError> {
        if self.is_zero() {
            return Err(NumFieldError::ZeroInverse);
        }
        let (a, b) = self.parts();
        let n_inv = self.rel_norm().inverse_mod(self.field.fq()).ok_or(NumFieldError::ZeroInverse)?;
        if !self.field.has_sqrt() {
            return Ok(self.field.from_parts(n_inv, QPoly::zero()));
        }
        let f = self.field.fq();
        Ok(self.field.from_parts((&a * &n_inv).rem(f), (&(-&b) * &n_inv).rem(f)))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, NumFieldError> {
        self.checked_mul(&o.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self, NumFieldError> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Product of all conjugates, as Res(f, A² − dB²) (f is monic).
    pub fn norm(&self) -> BigRational {
        self.field.fq().resultant(&self.rel_norm())
    }

    /// Trace of the multiplication-by-self map.
    pub fn trace(&self) -> BigRational {
        let n = self.field.degree();
        let m = self.field.m();
        (0..n)
            .map(|k| {
                let b = self.field.basis(k % m, k / m);
                (self * &b).c[k].clone()
            })
            .sum()
    }

    /// Evaluates the coordinate polynomial at (t, s) in any ring with the needed
    /// operations; used by automorphisms and embeddings.
    pub(crate) fn eval_with<T: Clone>(
        &self,
        basis: &[T],
        zero: T,
        add: impl Fn(&T, &T) -> T,
        smul: impl Fn(&BigRational, &T) -> T,
    ) -> T {
        self.c
            .iter()
            .zip(basis)
            .filter(|(c, _)| !c.is_zero())
            .fold(zero, |acc, (c, b)| add(&acc, &smul(c, b)))
    }
}

macro_rules! nf_op {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr for &NFElement {
            type Output = NFElement;
            fn $m(self, o: &NFElement) -> NFElement {
                self.$f(o).expect("elements of different number fields")
            }
        }
        impl $tr for NFElement {
            type Output = NFElement;
            fn $m(self, o: NFElement) -> NFElement {
                (&self).$f(&o).expect("elements of different number fields")
            }
        }
    };
}
nf_op!(Add, add, checked_add);
nf_op!(Sub, sub, checked_sub);
nf_op!(Mul, mul, checked_mul);

impl Neg for &NFElement {
    type Output = NFElement;
    fn neg(self) -> NFElement {
        NFElement { field: self.field.clone(), c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Neg for NFElement {
    type Output = NFElement;
    fn neg(self) -> NFElement {
        -&self
    }
}
