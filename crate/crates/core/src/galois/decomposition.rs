//! The decomposition group of the prime singled out by an embedding.

use super::GaloisError;
use crate::numfield::{AutomorphismGroup, Embedding};
use crate::padic::LocalElement;

/// Δ_𝔭 together with the local exponent j(σ), defined by ι∘σ = g^j∘ι where g
/// generates Gal(F/Q_p) (Frobenius, or π ↦ −π for the ramified field).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    elements: Vec<usize>,
    exponent: Vec<Option<u32>>,
    local_degree: u32,
    unramified: bool,
}

fn same(a: &LocalElement, b: &LocalElement, digits: i64) -> bool {
    match a.checked_sub(b) {
        Ok(d) => d.is_zero() && d.abs_precision() >= digits,
        Err(_) => false,
    }
}

pub fn decomposition_group(group: &AutomorphismGroup, emb: &Embedding) -> Result<Decomposition, GaloisError> {
    let local = emb.local_field();
    let n_loc = local.degree();
    let need = (local.precision() as i64 * local.e() as i64) / 2;
    let local_images: Vec<(LocalElement, Option<LocalElement>)> = (0..n_loc)
        .map(|j| (emb.r_theta().local_galois(j), emb.r_s().map(|s| s.local_galois(j))))
        .collect();
    let mut exponent = vec![None; group.order()];
    for (i, slot) in exponent.iter_mut().enumerate() {
        let aut = group.get(i);
        let t = emb.embed(aut.theta_image());
        let s = aut.s_image().map(|s| emb.embed(s));
        let hits: Vec<u32> = (0..n_loc)
            .filter(|&j| {
                let (lt, ls) = &local_images[j as usize];
                same(&t, lt, need)
                    && match (&s, ls) {
                        (Some(a), Some(b)) => same(a, b, need),
                        _ => true,
                    }
            })
            .collect();
        match hits.as_slice() {
            [] => {}
            [j] => *slot = Some(*j),
            _ => {
                return Err(GaloisError::InconsistentLocalMatch(format!(
                    "automorphism {i} matches several local automorphisms; the embedding field is larger than the completion"
                )))
            }
        }
    }
    let elements: Vec<usize> = (0..group.order()).filter(|&i| exponent[i].is_some()).collect();
    let g = group.group();
    if elements.len() as u32 != n_loc {
        return Err(GaloisError::InconsistentLocalMatch(format!(
            "{} automorphisms fix the prime, local degree is {n_loc}",
            elements.len()
        )));
    }
    if !g.is_subgroup(&elements) {
        return Err(GaloisError::InconsistentLocalMatch("stabilizer is not a subgroup".into()));
    }
    for &a in &elements {
        for &b in &elements {
            let (ja, jb, jab) = (exponent[a].unwrap(), exponent[b].unwrap(), exponent[g.mul(a, b)].unwrap());
            if (ja + jb) % n_loc != jab {
                return Err(GaloisError::InconsistentLocalMatch(format!("exponents of {a} and {b} do not add")));
            }
        }
    }
    Ok(Decomposition { elements, exponent, local_degree: n_loc, unramified: !local.is_eisenstein() })
}

impl Decomposition {
    /// Members in group order; the identity comes first.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.exponent[i].is_some()
    }

    pub fn exponent(&self, i: usize) -> Option<u32> {
        self.exponent[i]
    }

    pub fn local_degree(&self) -> u32 {
        self.local_degree
    }

    /// The member acting as the generator of Gal(F/Q_p), whether Frobenius
    /// or the ramified conjugation.
    pub fn local_generator(&self) -> usize {
        let target = 1 % self.local_degree;
        self.elements.iter().copied().find(|&i| self.exponent[i] == Some(target)).expect("cyclic")
    }
}

/// The arithmetic Frobenius at the chosen prime.
pub fn frobenius_element(dec: &Decomposition) -> Result<usize, GaloisError> {
    if !dec.unramified {
        return Err(GaloisError::Ramified);
    }
    Ok(dec.local_generator())
}

/// Left coset representatives of Δ_𝔭, identity first.
pub fn cosets(group: &AutomorphismGroup, dec: &Decomposition) -> Result<Vec<usize>, GaloisError> {
    Ok(group.group().left_coset_reps(dec.elements())?)
}
