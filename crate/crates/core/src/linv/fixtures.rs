//! Built-in desk cases, mirrored by the JSON fixtures shipped with the CLI.

use num_rational::BigRational;

use super::case::{CaseSpec, CaseType, EigenCharacter, SyntheticSpec};
use super::greenberg::field23_group;
use super::LinvError;
use crate::galois::{ClassFunction, Cyclo};
use crate::group::FiniteGroup;
use crate::numfield::{AutomorphismGroup, NFElement};

/// ψ on Gal(H/K) = {id, r, r²}: r ↦ ζ₃.
fn psi23(n: usize) -> ClassFunction {
    let one = BigRational::from_integer(1.into());
    ClassFunction::from_entries(n, &[(0, 1, vec![(0, one.clone())]), (1, 3, vec![(1, one.clone())]), (2, 3, vec![(2, one)])])
        .expect("valid entries")
}

fn spec23(
    case_type: CaseType,
    p: u64,
    precision: u32,
    guard: u32,
    eta: EigenCharacter,
    epsilon: Option<NFElement>,
    pi: NFElement,
) -> Result<CaseSpec, LinvError> {
    let group: AutomorphismGroup = field23_group()?;
    Ok(CaseSpec {
        case_type,
        p,
        precision,
        guard,
        character: psi23(group.order()),
        group,
        eta,
        conjugation: Some(3),
        epsilon,
        pi,
        sigma_order: None,
    })
}

/// d = −23, p = 13: p splits in K and is inert in H/K.  π = 37 − 6√−23
/// generates the cube of a prime of K above 13.
pub fn iq_split_23_13(precision: u32, guard: u32) -> Result<CaseSpec, LinvError> {
    let k = field23_group()?.field().clone();
    let pi = k.element_from_ints(&[37, 0, 0, -6, 0, 0])?;
    spec23(CaseType::IqSplit, 13, precision, guard, EigenCharacter { exponent: 1, m: 3 }, Some(k.theta()), pi)
}

/// d = −23, p = 5: p is inert in K.  ε = θ and π = θ + 2, of norm 5.
pub fn iq_inert_23_5(precision: u32, guard: u32) -> Result<CaseSpec, LinvError> {
    let k = field23_group()?.field().clone();
    let pi = k.element_from_ints(&[2, 1, 0, 0, 0, 0])?;
    spec23(CaseType::IqInert, 5, precision, guard, EigenCharacter { exponent: 1, m: 2 }, Some(k.theta()), pi)
}

/// The even permutations of {0,1,2,3} in lexicographic order.
pub fn a4_permutations() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = vec![a, b, c, d];
                    let mut s = p.clone();
                    s.sort_unstable();
                    if s != [0, 1, 2, 3] {
                        continue;
                    }
                    let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                    if inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// The degree-3 character of A4: 3, −1 on double transpositions, 0 on 3-cycles.
pub fn a4_chi(perms: &[Vec<usize>]) -> ClassFunction {
    ClassFunction::new(
        perms
            .iter()
            .map(|p| match (0..4).filter(|&i| p[i] == i).count() {
                4 => Cyclo::int(3),
                0 => Cyclo::int(-1),
                _ => Cyclo::zero(),
            })
            .collect(),
    )
}

/// Synthetic exotic case on A4 at p = 7 with Frobenius the 3-cycle (1 2 3)
/// and τ = (0 1)(2 3).
pub fn exotic_synthetic(precision: u32, guard: u32, seed: u64) -> Result<SyntheticSpec, LinvError> {
    let perms = a4_permutations();
    let group = FiniteGroup::from_permutations(&perms).map_err(crate::galois::GaloisError::from)?;
    let frobenius = perms.iter().position(|p| p == &[0, 2, 3, 1]).expect("in A4");
    let conjugation = perms.iter().position(|p| p == &[1, 0, 3, 2]).expect("in A4");
    Ok(SyntheticSpec {
        p: 7,
        precision,
        guard,
        chi: a4_chi(&perms),
        group,
        frobenius,
        eta: EigenCharacter { exponent: 1, m: 3 },
        conjugation: Some(conjugation),
        seed,
        sigma_order: None,
    })
}

/// Galois group of the splitting field of a depressed cubic x³ + ax + b with
/// square-free discriminant d, in the order id, r, r², t, tr, tr²: the other
/// roots are (−θ ± s/f′(θ))/2.
pub fn depressed_cubic_group(a: i64, b: i64) -> Result<AutomorphismGroup, LinvError> {
    let d = -4 * a * a * a - 27 * b * b;
    let k = crate::numfield::NumberField::from_i64(d, &[b, a, 0, 1])?;
    let theta = k.theta();
    let s = k.sqrt_d().expect("quadratic part");
    let fprime = k.element_from_ints(&[a, 0, 3, 0, 0, 0])?;
    let half = BigRational::new(1.into(), 2.into());
    let w = s.checked_mul(&fprime.inv()?)?;
    let t2 = (&w - &theta).scale(&half);
    let t3 = (&(-&w) - &theta).scale(&half);
    let images = vec![
        (theta.clone(), Some(s.clone())),
        (t2.clone(), Some(s.clone())),
        (t3.clone(), Some(s.clone())),
        (theta, Some(-&s)),
        (t3, Some(-&s)),
        (t2, Some(-&s)),
    ];
    Ok(AutomorphismGroup::verify(&k, images)?)
}

/// d = 229, f = x³ − 4x + 1, p = 7 inert in the real field K.  π is the
/// conjugate of θ − 4 (norm −49) supported at the chosen prime.
pub fn rq_inert_229_7(precision: u32, guard: u32) -> Result<CaseSpec, LinvError> {
    let group = depressed_cubic_group(-4, 1)?;
    let k = group.field().clone();
    let pi = k.element_from_ints(&[-4, 1, 0, 0, 0, 0])?;
    Ok(CaseSpec {
        case_type: CaseType::RqInert,
        p: 7,
        precision,
        guard,
        character: psi23(group.order()),
        group,
        eta: EigenCharacter { exponent: 1, m: 2 },
        conjugation: None,
        epsilon: None,
        pi,
        sigma_order: None,
    })
}
