//! Dense polynomials over a prime field F_p with p < 2^32.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

pub(crate) fn mod_u64(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap_or(0)
}

pub(crate) fn inv_mod_u64(a: u64, p: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128, p as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(p as i128) as u64)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        let mut out = FpPoly { p, c };
        out.trim();
        out
    }

    pub fn from_ints(p: u64, c: &[BigInt]) -> Self {
        Self::new(p, c.iter().map(|x| mod_u64(x, p)).collect())
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.c.iter().rev() {
            acc = (self.mulm(acc, x) + c) % self.p;
        }
        acc
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0u64; n];
        for (i, slot) in c.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            *slot = (a + self.p - b) % self.p;
        }
        Self::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + self.mulm(a, b)) % self.p;
            }
        }
        Self::new(self.p, c)
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| self.mulm(a, i as u64 % self.p))
            .collect();
        Self::new(self.p, c)
    }

    /// Euclidean division; divisor must be nonzero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = inv_mod_u64(d.c[dd], self.p).expect("p prime");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::new(self.p, vec![]), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = self.mulm(r[k + dd], lead_inv);
            q[k] = coef;
            if coef != 0 {
                for (j, &dc) in d.c.iter().enumerate() {
                    let sub = self.mulm(coef, dc);
                    r[k + j] = (r[k + j] + self.p - sub) % self.p;
                }
            }
        }
        (Self::new(self.p, q), Self::new(self.p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&l) => {
                let li = inv_mod_u64(l, self.p).expect("p prime");
                Self::new(self.p, self.c.iter().map(|&a| self.mulm(a, li)).collect())
            }
        }
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`, exponent given as a big integer.
    pub fn pow_mod(&self, e: &BigInt, m: &Self) -> Self {
        let mut result = Self::new(self.p, vec![1]).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    /// Degree of the smallest irreducible factor when `self` is not irreducible,
    /// or `None` when it is.  Uses distinct-degree splitting.
    pub fn smallest_factor_degree(&self) -> Option<usize> {
        let n = self.degree()?;
        if n == 0 {
            return Some(0);
        }
        let g = self.monic();
        let dg = g.derivative();
        if dg.is_zero() || g.gcd(&dg).degree() != Some(0) {
            return Some(1.min(n));
        }
        let p_big = BigInt::from(self.p);
        let x = Self::x(self.p);
        let mut xp = x.clone();
        for i in 1..=n / 2 {
            xp = xp.pow_mod(&p_big, &g);
            let h = xp.sub(&x).gcd(&g);
            if h.degree() != Some(0) {
                return Some(i);
            }
        }
        None
    }

    /// Roots in F_p by exhaustive search.
    pub fn roots(&self) -> Vec<u64> {
        (0..self.p).filter(|&t| self.eval(t) == 0).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x2_plus_2_irreducible_mod_5() {
        let g = FpPoly::new(5, vec![2, 0, 1]);
        assert_eq!(g.smallest_factor_degree(), None);
        assert!(g.roots().is_empty());
    }

    #[test]
    fn cubic_with_double_root_mod_23() {
        let f = FpPoly::new(23, vec![1, 22, 0, 1]);
        assert_eq!(f.roots(), vec![13, 20]);
        assert_eq!(f.derivative().eval(13), 0);
        assert_eq!(f.derivative().eval(20), 3);
    }

    #[test]
    fn quartic_product_of_quadratics() {
        let a = FpPoly::new(7, vec![1, 0, 1]);
        let b = FpPoly::new(7, vec![3, 1, 1]);
        assert_eq!(a.mul(&b).smallest_factor_degree(), Some(2));
    }
}
