use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{LocalElement, PadicError, DEFAULT_GUARD};

/// Largest k with p^k <= n.
fn ilog(p: u64, n: u64) -> i64 {
    let mut k = 0;
    let mut x = n;
    while x >= p {
        x /= p;
        k += 1;
    }
    k
}

fn split_p(p: u64, mut n: u64) -> (u32, u64) {
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    (k, n)
}

fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.extended_gcd(m);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(m)
}

/// Iwasawa logarithm (log p = 0 and log of the ramified uniformizer = 0),
/// with the default guard.
pub fn log_iw(x: &LocalElement) -> Result<LocalElement, PadicError> {
    log_iw_with_guard(x, DEFAULT_GUARD)
}

/// Iwasawa logarithm. The result is known modulo uniformizer^T where T is the
/// relative precision of `x`; `guard` extra digits are carried while summing.
pub fn log_iw_with_guard(x: &LocalElement, guard: u32) -> Result<LocalElement, PadicError> {
    if x.is_zero() {
        return Err(PadicError::LogOfZero);
    }
    let field = x.field().clone();
    let u = x.unit_part()?;
    let t = u.rel_precision() as i64;
    let e = field.e() as i64;
    let p = field.p_u64();
    let q1: BigInt = field.q() - 1u32;
    let z = &u.pow_big(&q1) - &LocalElement::one(&field);
    if z.is_zero() {
        return Ok(LocalElement::zero_at(&field, t));
    }
    let vz = z.val_units().expect("nonzero");
    debug_assert!(vz >= 1);
    let target = t + e * guard as i64;
    // n*vz - e*log_p(n) increases for n >= 1, so once the bound below is met
    // every later term is negligible.
    let mut stop: u64 = 1;
    while (stop as i64) * vz - e * (ilog(p, stop) + 1) < target {
        stop += 1;
    }
    let kmax = ilog(p, stop) as u32;
    let digits = (target as u32).div_ceil(e as u32) + kmax + 1;
    let modulus = field.p_pow(digits);
    let zc: Vec<BigInt> = z
        .integral_coords()
        .expect("integral")
        .into_iter()
        .map(|c| c.mod_floor(&modulus))
        .collect();
    let mut power = zc.clone();
    let mut acc = vec![BigInt::zero(); zc.len()];
    for n in 1..stop {
        if n > 1 {
            power = field.mul_coords(&power, &zc);
            for c in power.iter_mut() {
                *c = c.mod_floor(&modulus);
            }
        }
        let (k, cof) = split_p(p, n);
        let pk = field.p_pow(k);
        let scale = inv_mod(&BigInt::from(cof), &modulus);
        for (slot, c) in acc.iter_mut().zip(&power) {
            debug_assert!(c.is_multiple_of(&pk));
            let term = (c / &pk) * &scale;
            if n % 2 == 1 {
                *slot += term;
            } else {
                *slot -= term;
            }
        }
        for c in acc.iter_mut() {
            *c = c.mod_floor(&modulus);
        }
    }
    let scale = inv_mod(&q1, &modulus);
    let out = acc.into_iter().map(|c| (c * &scale).mod_floor(&modulus)).collect();
    Ok(LocalElement::from_coords_abs(&field, out, 0, t))
}

/// v_p(n!) by Legendre's formula.
fn factorial_val(p: u64, n: u64) -> u64 {
    let mut s = 0;
    let mut x = n / p;
    while x > 0 {
        s += x;
        x /= p;
    }
    s
}

/// exp(z) for val(z) > 1/(p-1); used to check the logarithm.
pub fn exp_series(z: &LocalElement, guard: u32) -> Result<LocalElement, PadicError> {
    let field = z.field().clone();
    let t = z.abs_precision();
    let one = LocalElement::one(&field);
    if z.is_zero() {
        return Ok(one.truncate_abs(t));
    }
    let vz = z.val_units().expect("nonzero");
    let e = field.e() as i64;
    let p = field.p_u64();
    if vz * (p as i64 - 1) <= e {
        return Err(PadicError::ExpDiverges);
    }
    let target = t + e * guard as i64;
    let mut stop: u64 = 1;
    // v_p(n!) <= (n-1)/(p-1)
    while (stop as i64) * vz - e * ((stop as i64 - 1) / (p as i64 - 1)) < target {
        stop += 1;
    }
    let kmax = factorial_val(p, stop) as u32;
    let digits = (target as u32).div_ceil(e as u32) + kmax + 1;
    let modulus = field.p_pow(digits);
    let zc: Vec<BigInt> = z
        .integral_coords()
        .expect("integral")
        .into_iter()
        .map(|c| c.mod_floor(&modulus))
        .collect();
    let mut acc = vec![BigInt::zero(); zc.len()];
    acc[0] = BigInt::one();
    let mut power = acc.clone();
    let mut fact_k = 0u32;
    let mut fact_cof = BigInt::one();
    for n in 1..stop {
        power = field.mul_coords(&power, &zc);
        for c in power.iter_mut() {
            *c = c.mod_floor(&modulus);
        }
        let (k, cof) = split_p(p, n);
        fact_k += k;
        fact_cof = (fact_cof * cof).mod_floor(&modulus);
        let pk = field.p_pow(fact_k);
        let scale = inv_mod(&fact_cof, &modulus);
        for (slot, c) in acc.iter_mut().zip(&power) {
            debug_assert!(c.is_multiple_of(&pk));
            *slot = (&*slot + (c / &pk) * &scale).mod_floor(&modulus);
        }
    }
    Ok(LocalElement::from_coords_abs(&field, acc, 0, t))
}

/// The Teichmüller representative of a unit: the (q-1)-th root of unity
/// congruent to it, found by iterating x -> x^q until it stabilizes.
pub fn teichmuller(a: &LocalElement) -> Result<LocalElement, PadicError> {
    if !a.is_unit() {
        return Err(PadicError::NotAUnit(
            a.valuation().map_or("infinity".into(), |v| v.to_string()),
        ));
    }
    let q = a.field().q().clone();
    let mut x = a.clone();
    for _ in 0..=a.rel_precision() + 1 {
        let y = x.pow_big(&q);
        if y.unit_coords() == x.unit_coords() {
            return Ok(y);
        }
        x = y;
    }
    Ok(x)
}
