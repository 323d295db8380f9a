use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{LocalElement, LocalField, PadicError};
use crate::poly::QPoly;

/// Default bound on the residue field size searched by [`roots_in`].
pub const DEFAULT_RESIDUE_BOUND: u64 = 1_000_000;

fn derivative(f: &[BigInt]) -> Vec<BigInt> {
    f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// Whether the integer polynomial vanishes at the residue with the given
/// coordinates, modulo the maximal ideal.
fn residue_vanishes(field: &LocalField, f: &[BigInt], x: &[BigInt]) -> bool {
    let n = x.len();
    let mut acc = vec![BigInt::zero(); n];
    for c in f.iter().rev() {
        acc = field.mul_coords(&acc, x);
        acc[0] += c;
        field.reduce(&mut acc, 1);
    }
    acc.iter().all(|c| c.is_zero())
}

fn seed_name(seed: &LocalElement) -> String {
    seed.residue_index().to_string()
}

/// Newton-lift a simple residue root of `f` to full precision.
pub fn hensel_root(f: &[BigInt], seed: &LocalElement) -> Result<LocalElement, PadicError> {
    let field = seed.field().clone();
    if seed.val_units().is_some_and(|v| v < 0) {
        return Err(PadicError::NotARoot(seed.to_string()));
    }
    let fr = seed.eval_poly(f);
    if fr.val_units().is_some_and(|v| v < 1) {
        return Err(PadicError::NotARoot(seed_name(seed)));
    }
    let df = derivative(f);
    let dfr = seed.eval_poly(&df);
    if !dfr.is_unit() {
        return Err(PadicError::NonSimpleSeed(seed_name(seed)));
    }
    let full = field.full_rel();
    let steps = 32 - full.saturating_sub(1).leading_zeros() + 1;
    let mut r = seed.clone();
    for _ in 0..steps {
        let num = r.eval_poly(f);
        if num.is_exact_zero() {
            break;
        }
        let den = r.eval_poly(&df);
        r = &r - &(&num / &den);
    }
    let check = r.eval_poly(f);
    if !check.is_zero() || check.abs_precision() < full as i64 {
        return Err(PadicError::NoConvergence);
    }
    Ok(r)
}

/// Convenience wrapper taking the seed as an integer.
pub fn hensel_root_int(f: &[BigInt], field: &LocalField, seed: i64) -> Result<LocalElement, PadicError> {
    hensel_root(f, &LocalElement::from_int(field, seed))
}

/// Square root in the field, if one exists.
pub fn sqrt(a: &LocalElement) -> Result<Option<LocalElement>, PadicError> {
    let field = a.field().clone();
    if a.is_zero() {
        return Ok(Some(a.clone()));
    }
    let v = a.val_units().expect("nonzero");
    if v % 2 != 0 {
        return Ok(None);
    }
    let u = a.unit_part()?;
    let q = field.q().to_u64().ok_or_else(|| PadicError::ResidueFieldTooLarge {
        size: field.q().to_string(),
        bound: DEFAULT_RESIDUE_BOUND,
    })?;
    let target = u.integral_coords().expect("unit");
    let square = |k: u64| {
        let c = field.residue_coords(&BigInt::from(k));
        let mut s = field.mul_coords(&c, &c);
        for (x, y) in s.iter_mut().zip(&target) {
            *x -= y;
        }
        field.reduce(&mut s, 1);
        s.iter().all(|x| x.is_zero())
    };
    let Some(k) = (1..q).find(|&k| square(k)) else {
        return Ok(None);
    };
    let mut r = LocalElement::residue(&field, &BigInt::from(k));
    let half = LocalElement::from_int(&field, 2).inv()?;
    let steps = 32 - u.rel_precision().leading_zeros() + 1;
    for _ in 0..steps {
        r = &(&r + &(&u / &r)) * &half;
    }
    let shift = LocalElement::uniformizer(&field).pow(v / 2);
    let root = &r * &shift;
    if (&root * &root) == *a {
        Ok(Some(root))
    } else {
        Ok(None)
    }
}

/// All roots of an integer polynomial in `field`, with the default residue bound.
pub fn roots_in(f: &[BigInt], field: &LocalField) -> Result<Vec<LocalElement>, PadicError> {
    roots_in_bounded(f, field, DEFAULT_RESIDUE_BOUND)
}

/// Roots of `f` in `field`: simple residue roots are Hensel-lifted; any
/// remaining quadratic factor is solved by completing the square.
pub fn roots_in_bounded(
    f: &[BigInt],
    field: &LocalField,
    bound: u64,
) -> Result<Vec<LocalElement>, PadicError> {
    let q = field.q();
    if q > &BigInt::from(bound) {
        return Err(PadicError::ResidueFieldTooLarge { size: q.to_string(), bound });
    }
    if !QPoly::from_ints(f).is_squarefree() {
        return Err(PadicError::NotSquarefree);
    }
    let q = q.to_u64().expect("bounded");
    let df = derivative(f);
    let mut simple = Vec::new();
    let mut multiple = 0usize;
    for k in 0..q {
        let c = field.residue_coords(&BigInt::from(k));
        if residue_vanishes(field, f, &c) {
            if residue_vanishes(field, &df, &c) {
                multiple += 1;
            } else {
                simple.push(k);
            }
        }
    }
    let mut roots = Vec::new();
    for k in simple {
        roots.push(hensel_root(f, &LocalElement::residue(field, &BigInt::from(k)))?);
    }
    if multiple > 0 {
        let mut g: Vec<LocalElement> = f.iter().map(|c| LocalElement::from_int(field, c.clone())).collect();
        for r in &roots {
            g = deflate(&g, r);
        }
        if g.len() == 3 {
            roots.extend(solve_quadratic(&g)?);
        }
    }
    roots.sort_by_key(|r| r.to_record().coeffs);
    Ok(roots)
}

/// Divide by (x - r), dropping the remainder.
fn deflate(g: &[LocalElement], r: &LocalElement) -> Vec<LocalElement> {
    let n = g.len() - 1;
    let mut out = vec![g[n].clone(); n];
    for i in (0..n - 1).rev() {
        out[i] = &g[i + 1] + &(&out[i + 1] * r);
    }
    out
}

fn solve_quadratic(g: &[LocalElement]) -> Result<Vec<LocalElement>, PadicError> {
    let field = g[0].field();
    let (c, b, a) = (&g[0], &g[1], &g[2]);
    let four = LocalElement::from_int(field, 4);
    let disc = &(b * b) - &(&four * &(a * c));
    if disc.is_zero() {
        return Ok(vec![]);
    }
    let Some(s) = sqrt(&disc)? else {
        return Ok(vec![]);
    };
    let two_a = &LocalElement::from_int(field, 2) * a;
    let r1 = &(&s - b) / &two_a;
    let r2 = &(&(-b) - &s) / &two_a;
    Ok(vec![r1, r2])
}
