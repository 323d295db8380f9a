use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::field::format_poly;
use super::{LocalField, PadicError};
use crate::fp_poly::inv_mod_u64;

/// Valuation stored for an exact zero.
pub const EXACT_ZERO: i64 = i64::MAX / 4;

/// Element of a [`LocalField`]: uniformizer^val * unit, the unit known modulo
/// uniformizer^rel.  Valuations and precisions are counted in units of 1/e.
///
/// A zero element has `rel == 0` and stores its absolute precision in `val`.
#[derive(Clone)]
pub struct LocalElement {
    field: LocalField,
    val: i64,
    rel: u32,
    unit: Vec<BigInt>,
}

impl LocalElement {
    // ---- construction ----

    pub fn zero(field: &LocalField) -> Self {
        Self::zero_at(field, EXACT_ZERO)
    }

    /// Zero known modulo uniformizer^abs.
    pub fn zero_at(field: &LocalField, abs: i64) -> Self {
        LocalElement {
            field: field.clone(),
            val: abs.min(EXACT_ZERO),
            rel: 0,
            unit: vec![BigInt::zero(); field.degree() as usize],
        }
    }

    pub fn one(field: &LocalField) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &LocalField, n: impl Into<BigInt>) -> Self {
        let mut c = vec![BigInt::zero(); field.degree() as usize];
        c[0] = n.into();
        Self::from_coords(field, c)
    }

    pub fn from_rational(field: &LocalField, r: &BigRational) -> Self {
        let num = Self::from_int(field, r.numer().clone());
        let den = Self::from_int(field, r.denom().clone());
        &num / &den
    }

    /// Exact integral element from coordinates in the power basis of the
    /// generator (t for unramified fields, the uniformizer for the ramified one).
    pub fn from_coords(field: &LocalField, coords: Vec<BigInt>) -> Self {
        assert_eq!(coords.len(), field.degree() as usize, "coordinate count");
        let mut c = coords;
        if c.iter().all(|x| x.is_zero()) {
            return Self::zero(field);
        }
        let mut val = 0i64;
        while !field.is_unit_coords(&c) {
            c = field.strip_once(&c);
            val += 1;
        }
        let rel = field.full_rel();
        field.reduce(&mut c, rel);
        LocalElement { field: field.clone(), val, rel, unit: c }
    }

    /// uniformizer^val * c, known modulo uniformizer^abs.
    pub(crate) fn from_coords_abs(field: &LocalField, mut c: Vec<BigInt>, mut val: i64, abs: i64) -> Self {
        loop {
            if val >= abs {
                return Self::zero_at(field, abs);
            }
            let rel = (abs - val) as u32;
            field.reduce(&mut c, rel);
            if c.iter().all(|x| x.is_zero()) {
                return Self::zero_at(field, abs);
            }
            if field.is_unit_coords(&c) {
                return LocalElement { field: field.clone(), val, rel, unit: c };
            }
            c = field.strip_once(&c);
            val += 1;
        }
    }

    /// uniformizer^val * unit with relative precision rel; `unit` must be a unit.
    pub(crate) fn from_unit(field: &LocalField, unit: Vec<BigInt>, val: i64, rel: u32) -> Self {
        if rel == 0 {
            return Self::zero_at(field, val);
        }
        let mut unit = unit;
        field.reduce(&mut unit, rel);
        debug_assert!(field.is_unit_coords(&unit));
        LocalElement { field: field.clone(), val, rel, unit }
    }

    /// The generator of the ring of integers over Z_p: t, or the uniformizer.
    pub fn generator(field: &LocalField) -> Self {
        let n = field.degree() as usize;
        if n == 1 {
            return Self::from_int(field, field.p().clone());
        }
        let mut c = vec![BigInt::zero(); n];
        c[1] = BigInt::one();
        Self::from_coords(field, c)
    }

    pub fn uniformizer(field: &LocalField) -> Self {
        if field.is_eisenstein() {
            Self::generator(field)
        } else {
            Self::from_int(field, field.p().clone())
        }
    }

    /// Exact lift of the residue with canonical index `k`.
    pub fn residue(field: &LocalField, k: &BigInt) -> Self {
        Self::from_coords(field, field.residue_coords(k))
    }

    /// Embed an element of Q_p into `field`.
    pub fn from_base(field: &LocalField, a: &LocalElement) -> Self {
        assert!(a.field.is_base(), "from_base expects a Q_p element");
        let e = field.e() as i64;
        if a.is_zero() {
            return Self::zero_at(field, a.val.saturating_mul(e).min(EXACT_ZERO));
        }
        let mut c = vec![BigInt::zero(); field.degree() as usize];
        c[0] = a.unit[0].clone();
        if e == 2 && a.val.rem_euclid(2) == 1 {
            c[0] = -&c[0];
        }
        Self::from_unit(field, c, a.val * e, a.rel * e as u32)
    }

    // ---- accessors ----

    pub fn field(&self) -> &LocalField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.rel == 0
    }

    pub fn is_exact_zero(&self) -> bool {
        self.rel == 0 && self.val >= EXACT_ZERO
    }

    /// Valuation in units of 1/e, `None` for zero.
    pub fn val_units(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// Valuation normalized so that val(p) = 1.
    pub fn valuation(&self) -> Option<Ratio<i64>> {
        self.val_units().map(|v| Ratio::new(v, self.field.e() as i64))
    }

    /// Relative precision in units of 1/e.
    pub fn rel_precision(&self) -> u32 {
        self.rel
    }

    /// Absolute precision in units of 1/e.
    pub fn abs_precision(&self) -> i64 {
        if self.is_zero() {
            self.val
        } else {
            self.val + self.rel as i64
        }
    }

    /// Unit-part coordinates (canonical representatives).
    pub fn unit_coords(&self) -> &[BigInt] {
        &self.unit
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.val == 0
    }

    /// Coordinates of an integral element, exact modulo uniformizer^abs.
    pub fn integral_coords(&self) -> Option<Vec<BigInt>> {
        if self.is_zero() {
            return Some(vec![BigInt::zero(); self.unit.len()]);
        }
        if self.val < 0 {
            return None;
        }
        Some(self.field.shift_coords(&self.unit, self.val as u32))
    }

    /// Canonical index of the residue class of an integral element.
    pub fn residue_index(&self) -> BigInt {
        let c = match self.integral_coords() {
            Some(c) => c,
            None => return BigInt::zero(),
        };
        let p = self.field.p();
        let mut idx = BigInt::zero();
        for x in c.iter().take(self.field.f() as usize).rev() {
            idx = idx * p + x.mod_floor(p);
        }
        idx
    }

    /// True when `self - other` vanishes modulo uniformizer^target (1/e units).
    pub fn agrees_to(&self, other: &Self, target: i64) -> bool {
        match self.checked_sub(other) {
            Ok(d) => d.val >= target,
            Err(_) => false,
        }
    }

    /// Agreement to `digits` base-p digits of absolute precision.
    pub fn agrees_to_digits(&self, other: &Self, digits: u32) -> bool {
        self.agrees_to(other, digits as i64 * self.field.e() as i64)
    }

    /// Drop precision to absolute precision `abs` (1/e units).
    pub fn truncate_abs(&self, abs: i64) -> Self {
        if abs >= self.abs_precision() {
            return self.clone();
        }
        Self::from_coords_abs(&self.field, self.unit.clone(), self.val, abs)
    }

    /// The same element in a field that differs only in precision; the
    /// relative precision is capped by the target field.
    pub fn with_field(&self, field: &LocalField) -> Result<Self, PadicError> {
        if field.p() != self.field.p() || field.kind() != self.field.kind() {
            return Err(PadicError::FieldMismatch);
        }
        if self.rel == 0 {
            return Ok(Self::zero_at(field, self.val));
        }
        Ok(Self::from_unit(field, self.unit.clone(), self.val, self.rel.min(field.full_rel())))
    }

    // ---- arithmetic ----

    fn same_field(&self, o: &Self) -> Result<(), PadicError> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(PadicError::FieldMismatch)
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, PadicError> {
        self.same_field(o)?;
        if self.is_zero() && o.is_zero() {
            return Ok(Self::zero_at(&self.field, self.val.min(o.val)));
        }
        let abs = self.abs_precision().min(o.abs_precision());
        if o.is_zero() {
            return Ok(self.truncate_abs(abs));
        }
        if self.is_zero() {
            return Ok(o.truncate_abs(abs));
        }
        let vmin = self.val.min(o.val);
        let a = self.field.shift_coords(&self.unit, (self.val - vmin) as u32);
        let b = self.field.shift_coords(&o.unit, (o.val - vmin) as u32);
        let c = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        Ok(Self::from_coords_abs(&self.field, c, vmin, abs))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, PadicError> {
        self.checked_add(&o.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut unit: Vec<BigInt> = self.unit.iter().map(|x| -x).collect();
        self.field.reduce(&mut unit, self.rel);
        LocalElement { field: self.field.clone(), val: self.val, rel: self.rel, unit }
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, PadicError> {
        self.same_field(o)?;
        if self.is_zero() || o.is_zero() {
            let abs = if self.is_exact_zero() || o.is_exact_zero() {
                EXACT_ZERO
            } else {
                (self.val + o.val).min(EXACT_ZERO)
            };
            return Ok(Self::zero_at(&self.field, abs));
        }
        let rel = self.rel.min(o.rel);
        let unit = self.field.mul_coords(&self.unit, &o.unit);
        Ok(Self::from_unit(&self.field, unit, self.val + o.val, rel))
    }

    pub fn inv(&self) -> Result<Self, PadicError> {
        if self.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        let unit = unit_inverse(&self.field, &self.unit, self.rel);
        Ok(Self::from_unit(&self.field, unit, -self.val, self.rel))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, PadicError> {
        self.same_field(o)?;
        self.checked_mul(&o.inv()?)
    }

    /// Non-negative integer power.
    pub fn pow_big(&self, n: &BigInt) -> Self {
        assert!(!n.is_negative(), "negative exponent");
        if n.is_zero() {
            return Self::one(&self.field).truncate_abs(if self.is_zero() { EXACT_ZERO } else { self.rel as i64 });
        }
        if self.is_zero() {
            let abs = if self.is_exact_zero() {
                EXACT_ZERO
            } else {
                self.val.saturating_mul(n.to_i64().unwrap_or(i64::MAX / 8)).min(EXACT_ZERO)
            };
            return Self::zero_at(&self.field, abs);
        }
        let unit = unit_pow(&self.field, &self.unit, n, self.rel);
        let nv = n.to_i64().expect("exponent fits in i64");
        Self::from_unit(&self.field, unit, self.val * nv, self.rel)
    }

    pub fn pow(&self, n: i64) -> Self {
        if n < 0 {
            self.inv().expect("inverse of zero").pow_big(&BigInt::from(-n))
        } else {
            self.pow_big(&BigInt::from(n))
        }
    }

    /// The unit part as an element of valuation zero.
    pub fn unit_part(&self) -> Result<Self, PadicError> {
        if self.is_zero() {
            return Err(PadicError::LogOfZero);
        }
        Ok(LocalElement { field: self.field.clone(), val: 0, rel: self.rel, unit: self.unit.clone() })
    }

    /// Evaluate an integer polynomial (low to high) at `self`.
    pub fn eval_poly(&self, f: &[BigInt]) -> Self {
        let mut acc = Self::zero(&self.field);
        for c in f.iter().rev() {
            acc = &(&acc * self) + &Self::from_int(&self.field, c.clone());
        }
        acc
    }

    // ---- Galois action ----

    /// Arithmetic Frobenius; the identity on Q_p and on the ramified field.
    pub fn frobenius(&self) -> Self {
        if self.field.f() == 1 || self.is_zero() {
            return self.clone();
        }
        let t_img = frobenius_of_generator(&self.field);
        let n = self.unit.len();
        let mut acc = vec![BigInt::zero(); n];
        let mut power = {
            let mut one = vec![BigInt::zero(); n];
            one[0] = BigInt::one();
            one
        };
        for (i, c) in self.unit.iter().enumerate() {
            if i > 0 {
                power = self.field.mul_coords(&power, t_img);
                self.field.reduce(&mut power, self.rel);
            }
            for (slot, x) in acc.iter_mut().zip(&power) {
                *slot += c * x;
            }
        }
        Self::from_unit(&self.field, acc, self.val, self.rel)
    }

    /// The nontrivial automorphism pi -> -pi of the ramified field; identity otherwise.
    pub fn conjugate(&self) -> Self {
        if !self.field.is_eisenstein() || self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.unit[0].clone(), -&self.unit[1]];
        if self.val.rem_euclid(2) == 1 {
            c = c.into_iter().map(|x| -x).collect();
        }
        Self::from_unit(&self.field, c, self.val, self.rel)
    }

    /// Apply generator^j of Gal(F/Q_p): Frobenius for unramified fields,
    /// conjugation for the ramified one.
    pub fn local_galois(&self, j: u32) -> Self {
        if self.field.is_eisenstein() {
            if j % 2 == 1 {
                self.conjugate()
            } else {
                self.clone()
            }
        } else {
            let mut x = self.clone();
            for _ in 0..(j % self.field.f()) {
                x = x.frobenius();
            }
            x
        }
    }

    // ---- Q_p structure ----

    /// Coordinates over Q_p in the basis 1, g, ..., g^(ef-1) of the generator g.
    pub fn base_coords(&self) -> Vec<LocalElement> {
        let base = self.field.base_field();
        let n = self.unit.len();
        if self.is_zero() {
            let e = self.field.e() as i64;
            let abs = if self.is_exact_zero() { EXACT_ZERO } else { self.val.div_euclid(e) };
            return vec![Self::zero_at(&base, abs); n];
        }
        if self.field.e() == 1 {
            return self
                .unit
                .iter()
                .map(|c| Self::from_coords_abs(&base, vec![c.clone()], self.val, self.val + self.rel as i64))
                .collect();
        }
        let k = self.val.div_euclid(2);
        let odd = self.val.rem_euclid(2) == 1;
        let sign = |x: &BigInt, k: i64| if k.rem_euclid(2) == 1 { -x } else { x.clone() };
        let d0 = self.field.coord_digits(0, self.rel) as i64;
        let d1 = self.field.coord_digits(1, self.rel) as i64;
        if odd {
            let a = Self::from_coords_abs(&base, vec![sign(&self.unit[1], k + 1)], k + 1, k + 1 + d1);
            let b = Self::from_coords_abs(&base, vec![sign(&self.unit[0], k)], k, k + d0);
            vec![a, b]
        } else {
            let a = Self::from_coords_abs(&base, vec![sign(&self.unit[0], k)], k, k + d0);
            let b = Self::from_coords_abs(&base, vec![sign(&self.unit[1], k)], k, k + d1);
            vec![a, b]
        }
    }

    /// The element as a member of Q_p, if every non-constant coordinate
    /// vanishes to the available precision.
    pub fn to_base(&self) -> Result<LocalElement, PadicError> {
        if self.field.is_base() {
            return Ok(self.clone());
        }
        let mut coords = self.base_coords();
        for (i, c) in coords.iter().enumerate().skip(1) {
            if !c.is_zero() {
                return Err(PadicError::NotInBaseField {
                    index: i,
                    valuation: c.val.to_string(),
                });
            }
        }
        Ok(coords.swap_remove(0))
    }

    /// Serializable record with canonical base-p digits.
    pub fn to_record(&self) -> ElementRecord {
        let p = self.field.p();
        let coeffs = self
            .unit
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut digits = Vec::new();
                let mut r = c.mod_floor(&self.field.p_pow(self.field.coord_digits(i, self.rel)));
                for _ in 0..self.field.coord_digits(i, self.rel) {
                    let (q, d) = r.div_mod_floor(p);
                    digits.push(d.to_u64().unwrap_or(0));
                    r = q;
                }
                digits
            })
            .collect();
        ElementRecord {
            p: self.field.p_u64(),
            e: self.field.e(),
            f: self.field.f(),
            precision: self.rel,
            val: if self.is_zero() { None } else { Some(self.val) },
            abs_precision: self.abs_precision().min(EXACT_ZERO),
            coeffs,
        }
    }
}

/// Bit-exact serialized form of a [`LocalElement`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementRecord {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    /// Relative precision of the unit part, in units of 1/e.
    pub precision: u32,
    /// e * valuation, absent for zero.
    pub val: Option<i64>,
    pub abs_precision: i64,
    /// One digit sequence per coordinate, least significant first.
    pub coeffs: Vec<Vec<u64>>,
}

pub(crate) fn residue_pow(field: &LocalField, c: &[BigInt], e: &BigInt) -> Vec<BigInt> {
    unit_pow(field, c, e, 1)
}

/// u^n for coordinates u, reduced at relative precision `rel`.
fn unit_pow(field: &LocalField, u: &[BigInt], n: &BigInt, rel: u32) -> Vec<BigInt> {
    let mut result = vec![BigInt::zero(); u.len()];
    result[0] = BigInt::one();
    let mut base = u.to_vec();
    field.reduce(&mut base, rel);
    for i in (0..n.bits()).rev() {
        result = field.mul_coords(&result, &result);
        field.reduce(&mut result, rel);
        if n.bit(i) {
            result = field.mul_coords(&result, &base);
            field.reduce(&mut result, rel);
        }
    }
    field.reduce(&mut result, rel);
    result
}

fn unit_inverse(field: &LocalField, u: &[BigInt], rel: u32) -> Vec<BigInt> {
    let p = field.p_u64();
    let mut y = if field.f() == 1 {
        let r = crate::fp_poly::mod_u64(&u[0], p);
        let mut y = vec![BigInt::zero(); u.len()];
        y[0] = BigInt::from(inv_mod_u64(r, p).expect("unit residue"));
        y
    } else {
        residue_pow(field, u, &(field.q() - 2u32))
    };
    let two = {
        let mut t = vec![BigInt::zero(); u.len()];
        t[0] = BigInt::from(2);
        t
    };
    let mut k = 1u32;
    while k < rel {
        k = (2 * k).min(rel);
        let uy = field.mul_coords(u, &y);
        let corr: Vec<BigInt> = two.iter().zip(&uy).map(|(a, b)| a - b).collect();
        y = field.mul_coords(&y, &corr);
        field.reduce(&mut y, k);
    }
    field.reduce(&mut y, rel);
    y
}

/// Coordinates of the Frobenius image of t, at full precision.
fn frobenius_of_generator(field: &LocalField) -> &Vec<BigInt> {
    field.frobenius_cell().get_or_init(|| {
        let n = field.degree() as usize;
        let mut t = vec![BigInt::zero(); n];
        t[1] = BigInt::one();
        let seed = residue_pow(field, &t, field.p());
        let g = field.modulus();
        let gp: Vec<BigInt> = g.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
        let mut r = LocalElement::from_coords(field, seed);
        let steps = 64 - (field.full_rel() as u64).leading_zeros() + 1;
        for _ in 0..steps {
            let num = r.eval_poly(g);
            let den = r.eval_poly(&gp);
            r = &r - &(&num / &den);
        }
        r.integral_coords().expect("integral root")
    })
}

fn panic_on<T>(r: Result<T, PadicError>) -> T {
    match r {
        Ok(x) => x,
        Err(e) => panic!("{e}"),
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&LocalElement> for &LocalElement {
            type Output = LocalElement;
            fn $m(self, o: &LocalElement) -> LocalElement {
                panic_on(self.$checked(o))
            }
        }
        impl $tr<LocalElement> for LocalElement {
            type Output = LocalElement;
            fn $m(self, o: LocalElement) -> LocalElement {
                panic_on(self.$checked(&o))
            }
        }
        impl $tr<&LocalElement> for LocalElement {
            type Output = LocalElement;
            fn $m(self, o: &LocalElement) -> LocalElement {
                panic_on(self.$checked(o))
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &LocalElement {
    type Output = LocalElement;
    fn neg(self) -> LocalElement {
        self.neg_ref()
    }
}

impl Neg for LocalElement {
    type Output = LocalElement;
    fn neg(self) -> LocalElement {
        self.neg_ref()
    }
}

impl PartialEq for LocalElement {
    /// Equal when the difference vanishes to the precision of both operands.
    fn eq(&self, other: &Self) -> bool {
        match self.checked_sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

impl fmt::Debug for LocalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LocalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.field.p();
        let var = if self.field.is_eisenstein() { "pi" } else { "t" };
        if self.is_zero() {
            return if self.is_exact_zero() {
                write!(f, "0")
            } else {
                write!(f, "O({})", uniformizer_power(self.field.e(), p, self.val))
            };
        }
        let body = if self.unit.len() == 1 {
            self.unit[0].to_string()
        } else {
            format!("({})", format_poly(&self.unit, var))
        };
        if self.val == 0 {
            write!(f, "{body}")?;
        } else {
            write!(f, "{}*{body}", uniformizer_power(self.field.e(), p, self.val))?;
        }
        write!(f, " + O({})", uniformizer_power(self.field.e(), p, self.abs_precision()))
    }
}

fn uniformizer_power(e: u32, p: &BigInt, k: i64) -> String {
    if e == 2 {
        format!("pi^{k}")
    } else {
        format!("{p}^{k}")
    }
}
