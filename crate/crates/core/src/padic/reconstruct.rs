use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use super::{LocalElement, PadicError};
use crate::lattice::lll;

/// Integer representative of the unit part and its digit count.
fn unit_integer(a: &LocalElement) -> (BigInt, u32) {
    (a.unit_coords()[0].clone(), a.rel_precision())
}

/// Small-height fraction u/w equal to `a`, by the half-extended Euclidean
/// algorithm on the unit part. `None` when no pair of height <= `height` exists.
pub fn rational_reconstruct(
    a: &LocalElement,
    height: &BigInt,
) -> Result<Option<(BigInt, BigInt)>, PadicError> {
    let a = a.to_base()?;
    if a.is_zero() {
        return Ok(Some((BigInt::zero(), BigInt::one())));
    }
    let (unit, digits) = unit_integer(&a);
    let p = a.field().p().clone();
    let m: BigInt = Pow::pow(&p, digits);
    if BigInt::from(2) * height * height >= m {
        return Err(PadicError::HeightTooLarge { height: height.to_string(), digits });
    }
    let (mut r0, mut r1) = (m.clone(), unit.mod_floor(&m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while &r1 > height {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if s1.is_zero() || s1.abs() > *height || !r1.gcd(&s1).is_one() {
        return Ok(None);
    }
    let (mut u, mut w) = if s1.is_negative() { (-r1, -s1) } else { (r1, s1) };
    debug_assert!((&u - &unit * &w).mod_floor(&m).is_zero());
    let v = a.val_units().expect("nonzero");
    if v > 0 {
        u *= Pow::pow(&p, v as u32);
    } else if v < 0 {
        w *= Pow::pow(&p, (-v) as u32);
    }
    if u.abs() > *height || w > *height {
        return Ok(None);
    }
    Ok(Some((u, w)))
}

fn primitive(mut c: Vec<BigInt>) -> Vec<BigInt> {
    let g = c.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        c = c.into_iter().map(|x| x / &g).collect();
    }
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.last().is_some_and(|x| x.is_negative()) {
        c = c.into_iter().map(|x| -x).collect();
    }
    c
}

/// Primitive integer polynomial (low to high) of degree <= `degree` (1 or 2)
/// with coefficients bounded by `height` that vanishes at `a`.
pub fn algebraic_reconstruct(
    a: &LocalElement,
    degree: u32,
    height: &BigInt,
) -> Result<Option<Vec<BigInt>>, PadicError> {
    let a = a.to_base()?;
    if a.is_zero() {
        return Ok(Some(vec![BigInt::zero(), BigInt::one()]));
    }
    let v = a.val_units().expect("nonzero");
    if v < 0 {
        let inv = a.inv()?;
        return Ok(algebraic_reconstruct(&inv, degree, height)?.map(|mut c| {
            c.reverse();
            primitive(c)
        }));
    }
    let p = a.field().p().clone();
    let digits = a.abs_precision() as u32;
    let m: BigInt = Pow::pow(&p, digits);
    if m < BigInt::from(2) * height * height * height {
        return Err(PadicError::PrecisionTooLow { height: height.to_string() });
    }
    match rational_reconstruct(&a, height) {
        Ok(Some((u, w))) => return Ok(Some(primitive(vec![-u, w]))),
        Ok(None) | Err(PadicError::HeightTooLarge { .. }) => {}
        Err(e) => return Err(e),
    }
    if degree < 2 {
        return Ok(None);
    }
    let x = (&a.unit_coords()[0] * Pow::pow(&p, v as u32)).mod_floor(&m);
    let x2 = (&x * &x).mod_floor(&m);
    let z = BigInt::zero;
    let reduced = lll(vec![
        vec![m.clone(), z(), z()],
        vec![x.clone(), BigInt::one(), z()],
        vec![x2.clone(), z(), BigInt::one()],
    ]);
    let mut best: Option<Vec<BigInt>> = None;
    for row in reduced {
        let c = vec![-row[0].clone(), row[1].clone(), row[2].clone()];
        if c[2].is_zero() || c.iter().any(|t| t.abs() > *height) {
            continue;
        }
        let val = (&c[0] + &c[1] * &x + &c[2] * &x2).mod_floor(&m);
        if !val.is_zero() {
            continue;
        }
        let c = primitive(c);
        let size = |c: &Vec<BigInt>| c.iter().map(|t| t * t).sum::<BigInt>();
        if best.as_ref().is_none_or(|b| size(&c) < size(b)) {
            best = Some(c);
        }
    }
    Ok(best)
}
