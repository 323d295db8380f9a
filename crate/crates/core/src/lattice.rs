//! Exact LLL reduction (delta = 3/4) for small integer lattices, using the
//! all-integer variant that tracks Gram determinants d_i and scaled
//! Gram-Schmidt coefficients lambda_ij.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct State {
    b: Vec<Vec<BigInt>>,
    // 1-based: d[0] = 1, d[i] for row i
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
}

impl State {
    fn row(&self, i: usize) -> &Vec<BigInt> {
        &self.b[i - 1]
    }

    fn reduce(&mut self, k: usize, l: usize) {
        let two_l: BigInt = &self.lam[k][l] * 2;
        if two_l.abs() <= self.d[l] {
            return;
        }
        // q = round(lam / d_l)
        let q = (&two_l + &self.d[l]).div_floor(&(&self.d[l] * 2));
        let bl = self.row(l).clone();
        for (x, y) in self.b[k - 1].iter_mut().zip(&bl) {
            *x -= &q * y;
        }
        self.lam[k][l] = &self.lam[k][l] - &q * &self.d[l];
        for i in 1..l {
            self.lam[k][i] = &self.lam[k][i] - &q * &self.lam[l][i];
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k - 1, k - 2);
        for j in 1..k - 1 {
            let t = std::mem::take(&mut self.lam[k][j]);
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], t);
        }
        let lam = self.lam[k][k - 1].clone();
        let bb = (&self.d[k - 2] * &self.d[k] + &lam * &lam) / &self.d[k - 1];
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (&self.d[k] * &self.lam[i][k - 1] - &lam * &t) / &self.d[k - 1];
            self.lam[i][k - 1] = (&bb * &t + &lam * &self.lam[i][k]) / &self.d[k];
        }
        self.d[k - 1] = bb;
    }
}

/// LLL-reduce the rows of a full-rank integer basis.
pub(crate) fn lll(b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = b.len();
    if n < 2 {
        return b;
    }
    let mut s = State {
        d: vec![BigInt::zero(); n + 1],
        lam: vec![vec![BigInt::zero(); n + 1]; n + 1],
        b,
    };
    s.d[0] = BigInt::from(1);
    s.d[1] = dot(s.row(1), s.row(1));
    let mut k = 2;
    let mut kmax = 1;
    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(s.row(k), s.row(j));
                for i in 1..j {
                    u = (&s.d[i] * &u - &s.lam[k][i] * &s.lam[j][i]) / &s.d[i - 1];
                }
                if j < k {
                    s.lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "basis vectors are linearly dependent");
                    s.d[k] = u;
                }
            }
        }
        s.reduce(k, k - 1);
        let lhs: BigInt = &s.d[k] * &s.d[k - 2] * 4;
        let rhs: BigInt = &s.d[k - 1] * &s.d[k - 1] * 3 - &s.lam[k][k - 1] * &s.lam[k][k - 1] * 4;
        if lhs < rhs {
            s.swap(k, kmax);
            k = (k - 1).max(2);
        } else {
            for l in (1..k - 1).rev() {
                s.reduce(k, l);
            }
            k += 1;
        }
    }
    s.b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn finds_short_vector_for_sqrt_minus_one() {
        // 182^2 = -1 mod 625
        let m = 625;
        let a = 182i64;
        let red = lll(vec![row(&[m, 0, 0]), row(&[a, 1, 0]), row(&[(a * a) % m, 0, 1])]);
        let best = red.iter().map(|v| dot(v, v)).min().unwrap();
        assert_eq!(best, BigInt::from(2));
    }

    #[test]
    fn reduced_basis_spans_same_lattice() {
        let basis = vec![row(&[1, 1, 1]), row(&[-1, 0, 2]), row(&[3, 5, 6])];
        let red = lll(basis.clone());
        let det = |m: &[Vec<BigInt>]| {
            &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
                - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
                + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
        };
        assert_eq!(det(&basis).abs(), det(&red).abs());
        assert!(red.iter().all(|v| dot(v, v) <= BigInt::from(5)));
    }
}
