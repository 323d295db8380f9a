//! Finite groups given by a Cayley table, identity at index 0.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("Cayley table is not a valid group table: {0}")]
    InvalidTable(String),
    #[error("elements {0:?} do not form a subgroup")]
    NotASubgroup(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    /// table[i][j] = g_i * g_j, where (g_i * g_j)(x) = g_i(g_j(x)).
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(GroupError::InvalidTable("shape".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row[0] != i || table[0][i] != i {
                return Err(GroupError::InvalidTable("index 0 is not the identity".into()));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(GroupError::InvalidTable(format!("row {i} repeats {x}")));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::InvalidTable(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let inv = (0..n)
            .map(|i| (0..n).find(|&j| table[i][j] == 0).expect("latin square"))
            .collect();
        Ok(FiniteGroup { table, inv })
    }

    /// Group of permutations of {0..k}, closed under composition; the identity
    /// must come first.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = perms.len();
        let find = |p: &Vec<usize>| perms.iter().position(|q| q == p);
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let comp: Vec<usize> = perms[j].iter().map(|&x| perms[i][x]).collect();
                table[i][j] = find(&comp)
                    .ok_or_else(|| GroupError::InvalidTable(format!("{i}*{j} not in the list")))?;
            }
        }
        Self::from_table(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        !h.is_empty()
            && h.contains(&0)
            && h.iter().all(|&a| h.iter().all(|&b| h.contains(&self.mul(a, self.inv(b)))))
    }

    /// Left coset representatives of `h`: identity first, then the first
    /// element of each new coset in index order.
    pub fn left_coset_reps(&self, h: &[usize]) -> Result<Vec<usize>, GroupError> {
        if !self.is_subgroup(h) {
            return Err(GroupError::NotASubgroup(h.to_vec()));
        }
        let mut covered = vec![false; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for &x in h {
                covered[self.mul(g, x)] = true;
            }
        }
        Ok(reps)
    }

    pub fn conjugacy_class(&self, a: usize) -> Vec<usize> {
        let mut c: Vec<usize> = (0..self.order())
            .map(|g| self.mul(self.mul(g, a), self.inv(g)))
            .collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// Subgroup generated by the given elements, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut h = vec![0];
        let mut i = 0;
        while i < h.len() {
            for &g in gens {
                let x = self.mul(h[i], g);
                if !h.contains(&x) {
                    h.push(x);
                }
            }
            i += 1;
        }
        h.sort_unstable();
        h
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// S3 acting on {0,1,2}: id, r, r^2, t, tr, tr^2.
    pub(crate) fn s3() -> FiniteGroup {
        let r = vec![1, 2, 0];
        let t = vec![1, 0, 2];
        let id = vec![0, 1, 2];
        let comp = |a: &Vec<usize>, b: &Vec<usize>| b.iter().map(|&x| a[x]).collect::<Vec<_>>();
        let r2 = comp(&r, &r);
        let perms = vec![id, r.clone(), r2.clone(), t.clone(), comp(&t, &r), comp(&t, &r2)];
        FiniteGroup::from_permutations(&perms).unwrap()
    }

    #[test]
    fn s3_structure() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert_eq!(g.element_order(1), 3);
        assert_eq!(g.element_order(3), 2);
        assert_eq!(g.conjugacy_class(3).len(), 3);
        assert_eq!(g.left_coset_reps(&[0, 3]).unwrap().len(), 3);
        assert_eq!(g.left_coset_reps(&[0, 1, 2]).unwrap(), vec![0, 3]);
        assert_eq!(g.left_coset_reps(&(0..6).collect::<Vec<_>>()).unwrap(), vec![0]);
        assert!(g.left_coset_reps(&[0, 1]).is_err());
    }
}
