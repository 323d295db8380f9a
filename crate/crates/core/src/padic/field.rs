use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use super::PadicError;
use crate::fp_poly::FpPoly;

/// Largest e*f accepted by default.
pub const DEFAULT_MAX_DEGREE: u32 = 6;

/// Shape of the local field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldKind {
    /// Q_p itself.
    Base,
    /// Q_p(t) with t a root of the given monic polynomial (low to high).
    Unramified(Vec<BigInt>),
    /// Q_p(pi) with pi^2 = -p.
    Eisenstein,
}

struct Inner {
    p: BigInt,
    p_small: u64,
    precision: u32,
    kind: FieldKind,
    e: u32,
    f: u32,
    q: BigInt,
    /// Monic polynomial presenting the ring of integers over Z_p.
    modulus: Vec<BigInt>,
    frobenius: OnceLock<Vec<BigInt>>,
}

/// A fixed-precision completion: Q_p, an unramified extension, or Q_p(sqrt(-p)).
#[derive(Clone)]
pub struct LocalField(Arc<Inner>);

impl PartialEq for LocalField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.precision == other.0.precision
                && self.0.kind == other.0.kind)
    }
}
impl Eq for LocalField {}

impl fmt::Debug for LocalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LocalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            FieldKind::Base => write!(f, "Q_{} (N={})", self.0.p, self.0.precision),
            FieldKind::Unramified(g) => write!(
                f,
                "Q_{}[t]/({}) (N={})",
                self.0.p,
                format_poly(g, "t"),
                self.0.precision
            ),
            FieldKind::Eisenstein => write!(
                f,
                "Q_{}(pi), pi^2 = -{} (N={})",
                self.0.p, self.0.p, self.0.precision
            ),
        }
    }
}

pub(crate) fn format_poly(c: &[BigInt], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let body = if mono.is_empty() {
            a.abs().to_string()
        } else if a.abs().is_one() {
            mono
        } else {
            format!("{}*{}", a.abs(), mono)
        };
        let sign = if a.is_negative() { "-" } else { "+" };
        if terms.is_empty() {
            terms.push(if a.is_negative() { format!("-{body}") } else { body });
        } else {
            terms.push(format!("{sign} {body}"));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" ")
    }
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl LocalField {
    pub fn new(p: u64, precision: u32, kind: FieldKind) -> Result<Self, PadicError> {
        Self::with_degree_bound(p, precision, kind, DEFAULT_MAX_DEGREE)
    }

    pub fn base(p: u64, precision: u32) -> Result<Self, PadicError> {
        Self::new(p, precision, FieldKind::Base)
    }

    pub fn unramified(p: u64, precision: u32, g: Vec<BigInt>) -> Result<Self, PadicError> {
        Self::new(p, precision, FieldKind::Unramified(g))
    }

    pub fn eisenstein(p: u64, precision: u32) -> Result<Self, PadicError> {
        Self::new(p, precision, FieldKind::Eisenstein)
    }

    /// Like [`LocalField::new`] with an explicit bound on e*f.
    pub fn with_degree_bound(
        p: u64,
        precision: u32,
        kind: FieldKind,
        max_degree: u32,
    ) -> Result<Self, PadicError> {
        if p >= (1 << 31) || !is_odd_prime(p) {
            return Err(PadicError::UnsupportedPrime(p.to_string()));
        }
        if precision == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        let pb = BigInt::from(p);
        let (e, f, modulus) = match &kind {
            FieldKind::Base => (1, 1, vec![BigInt::zero(), BigInt::one()]),
            FieldKind::Eisenstein => (2, 1, vec![pb.clone(), BigInt::zero(), BigInt::one()]),
            FieldKind::Unramified(g) => {
                let deg = g.len().saturating_sub(1) as u32;
                if deg < 2 || deg > max_degree || !g.last().is_some_and(|c| c.is_one()) {
                    return Err(PadicError::BadModulus {
                        got: format_poly(g, "x"),
                        max: max_degree,
                    });
                }
                let red = FpPoly::from_ints(p, g);
                if let Some(k) = red.smallest_factor_degree() {
                    let witness = if k == 1 {
                        format!("root {}", red.roots().first().copied().unwrap_or(0))
                    } else {
                        format!("irreducible factor of degree {k}")
                    };
                    return Err(PadicError::ReducibleModulus {
                        poly: format_poly(g, "x"),
                        p,
                        witness,
                    });
                }
                (1, deg, g.clone())
            }
        };
        if e * f > max_degree {
            return Err(PadicError::BadModulus {
                got: format!("degree {}", e * f),
                max: max_degree,
            });
        }
        let q = Pow::pow(&pb, f);
        Ok(LocalField(Arc::new(Inner {
            p: pb,
            p_small: p,
            precision,
            kind,
            e,
            f,
            q,
            modulus,
            frobenius: OnceLock::new(),
        })))
    }

    /// Same kind, different precision.
    pub fn with_precision(&self, precision: u32) -> Result<Self, PadicError> {
        Self::with_degree_bound(self.p_u64(), precision, self.0.kind.clone(), self.degree().max(DEFAULT_MAX_DEGREE))
    }

    /// Q_p at the same precision.
    pub fn base_field(&self) -> LocalField {
        if self.is_base() {
            return self.clone();
        }
        Self::base(self.p_u64(), self.precision()).expect("validated prime")
    }

    pub fn p(&self) -> &BigInt {
        &self.0.p
    }
    pub fn p_u64(&self) -> u64 {
        self.0.p_small
    }
    pub fn precision(&self) -> u32 {
        self.0.precision
    }
    pub fn kind(&self) -> &FieldKind {
        &self.0.kind
    }
    pub fn e(&self) -> u32 {
        self.0.e
    }
    pub fn f(&self) -> u32 {
        self.0.f
    }
    /// Residue field size.
    pub fn q(&self) -> &BigInt {
        &self.0.q
    }
    /// [F : Q_p] = e*f.
    pub fn degree(&self) -> u32 {
        self.0.e * self.0.f
    }
    pub fn is_base(&self) -> bool {
        matches!(self.0.kind, FieldKind::Base)
    }
    pub fn is_eisenstein(&self) -> bool {
        matches!(self.0.kind, FieldKind::Eisenstein)
    }
    pub fn is_unramified(&self) -> bool {
        self.0.e == 1
    }
    /// Relative precision of exact elements, in units of 1/e.
    pub fn full_rel(&self) -> u32 {
        self.0.e * self.0.precision
    }
    pub(crate) fn modulus(&self) -> &[BigInt] {
        &self.0.modulus
    }
    pub(crate) fn frobenius_cell(&self) -> &OnceLock<Vec<BigInt>> {
        &self.0.frobenius
    }

    pub(crate) fn p_pow(&self, k: u32) -> BigInt {
        Pow::pow(&self.0.p, k)
    }

    /// Number of p-adic digits carried by coordinate `i` at relative precision `rel`.
    pub(crate) fn coord_digits(&self, i: usize, rel: u32) -> u32 {
        if self.0.e == 1 {
            rel
        } else if i == 0 {
            rel.div_ceil(2)
        } else {
            rel / 2
        }
    }

    pub(crate) fn reduce(&self, c: &mut [BigInt], rel: u32) {
        for (i, x) in c.iter_mut().enumerate() {
            let m = self.p_pow(self.coord_digits(i, rel));
            *x = x.mod_floor(&m);
        }
    }

    pub(crate) fn is_unit_coords(&self, c: &[BigInt]) -> bool {
        let p = &self.0.p;
        if self.0.e == 2 {
            !c[0].mod_floor(p).is_zero()
        } else {
            c.iter().any(|x| !x.mod_floor(p).is_zero())
        }
    }

    /// Divide by the uniformizer; the input must be a non-unit.
    pub(crate) fn strip_once(&self, c: &[BigInt]) -> Vec<BigInt> {
        let p = &self.0.p;
        if self.0.e == 2 {
            vec![c[1].clone(), -(&c[0] / p)]
        } else {
            c.iter().map(|x| x / p).collect()
        }
    }

    /// Multiply by uniformizer^d.
    pub(crate) fn shift_coords(&self, c: &[BigInt], d: u32) -> Vec<BigInt> {
        if d == 0 {
            return c.to_vec();
        }
        if self.0.e == 1 {
            let m = self.p_pow(d);
            return c.iter().map(|x| x * &m).collect();
        }
        let k = d / 2;
        let m: BigInt = Pow::pow(&(-&self.0.p), k);
        let mut out: Vec<BigInt> = c.iter().map(|x| x * &m).collect();
        if d % 2 == 1 {
            out = vec![-(&self.0.p) * &out[1], out[0].clone()];
        }
        out
    }

    /// Product in Z_p[x]/(modulus), without reduction mod p^k.
    pub(crate) fn mul_coords(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = self.degree() as usize;
        if n == 1 {
            return vec![&a[0] * &b[0]];
        }
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        let g = &self.0.modulus;
        for k in (n..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                prod[k - n + j] -= &c * &g[j];
            }
        }
        prod.truncate(n);
        prod
    }

    /// Coordinates of the residue with index `k` in the canonical order
    /// (base-p digits of `k`, least significant coordinate first).
    pub fn residue_coords(&self, k: &BigInt) -> Vec<BigInt> {
        let n = self.degree() as usize;
        let mut out = vec![BigInt::zero(); n];
        let mut r = k.clone();
        for slot in out.iter_mut().take(self.0.f as usize) {
            let (qq, rr) = r.div_mod_floor(&self.0.p);
            *slot = rr;
            r = qq;
        }
        out
    }
}
