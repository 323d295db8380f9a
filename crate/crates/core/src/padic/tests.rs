use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Pow, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn q5(n: u32) -> LocalField {
    LocalField::base(5, n).unwrap()
}

/// Integer representative of an integral element of Q_p modulo p^abs.
fn as_int(a: &LocalElement) -> BigInt {
    a.integral_coords().unwrap()[0].mod_floor(&a.field().p_pow(a.abs_precision() as u32))
}

#[test]
fn field_construction() {
    let f = LocalField::unramified(5, 8, ints(&[2, 0, 1])).unwrap();
    assert_eq!(f.q(), &BigInt::from(25));
    assert_eq!((f.e(), f.f()), (1, 2));
    let g = LocalField::eisenstein(23, 40).unwrap();
    assert_eq!((g.e(), g.f(), g.degree()), (2, 1, 2));
    assert!(matches!(LocalField::base(2, 10), Err(PadicError::UnsupportedPrime(_))));
    assert!(matches!(LocalField::base(9, 10), Err(PadicError::UnsupportedPrime(_))));
    match LocalField::unramified(5, 8, ints(&[1, 0, 1])) {
        Err(PadicError::ReducibleModulus { witness, .. }) => assert_eq!(witness, "root 2"),
        other => panic!("expected reducible error, got {other:?}"),
    }
}

#[test]
fn squares_mod_5_oracle() {
    // -2 is a non-residue mod 5 exactly when no square hits 3
    let squares: Vec<u64> = (0..5u64).map(|x| x * x % 5).collect();
    assert!(!squares.contains(&3));
    assert!(LocalField::unramified(5, 8, ints(&[2, 0, 1])).is_ok());
}

#[test]
fn inverse_of_three() {
    let f = q5(4);
    let inv = LocalElement::from_int(&f, 3).inv().unwrap();
    assert_eq!(as_int(&inv), BigInt::from(417));
    let g = BigInt::from(3).extended_gcd(&BigInt::from(625));
    assert_eq!(g.x.mod_floor(&BigInt::from(625)), BigInt::from(417));
}

#[test]
fn valuations() {
    let f = q5(8);
    assert_eq!(LocalElement::from_int(&f, 50).valuation(), Some(Ratio::from_integer(2)));
    let e = LocalField::eisenstein(23, 10).unwrap();
    assert_eq!(LocalElement::uniformizer(&e).valuation(), Some(Ratio::new(1, 2)));
    assert_eq!(LocalElement::from_int(&e, 23).valuation(), Some(Ratio::from_integer(1)));
    assert_eq!(LocalElement::from_int(&e, 46 * 23).val_units(), Some(4));
}

#[test]
fn arithmetic_errors() {
    let a = LocalElement::one(&q5(4));
    let b = LocalElement::one(&LocalField::base(7, 4).unwrap());
    assert_eq!(a.checked_add(&b).unwrap_err(), PadicError::FieldMismatch);
    assert_eq!(LocalElement::zero(&q5(4)).inv().unwrap_err(), PadicError::DivisionByZero);
}

#[test]
fn precision_tracking() {
    let f = q5(4);
    // 1/5 has relative precision 4, so 5*(1/5) is 1 to 4 digits
    let a = LocalElement::from_int(&f, 5).inv().unwrap();
    assert_eq!(a.val_units(), Some(-1));
    let one = &a * &LocalElement::from_int(&f, 5);
    assert_eq!(one.abs_precision(), 4);
    // cancellation loses absolute precision only through the operands
    let x = LocalElement::from_int(&f, 26);
    let y = LocalElement::from_int(&f, 1);
    let d = &x - &y;
    assert_eq!(d.val_units(), Some(2));
    assert_eq!(d.abs_precision(), 4);
}

#[test]
fn teichmuller_examples() {
    let f = q5(4);
    let w = teichmuller(&LocalElement::from_int(&f, 2)).unwrap();
    assert_eq!(as_int(&w), BigInt::from(182));
    // oracle: iterate x -> x^5 mod 625 directly
    let m = BigInt::from(625);
    let mut x = BigInt::from(2);
    for _ in 0..10 {
        x = x.modpow(&BigInt::from(5), &m);
    }
    assert_eq!(x, BigInt::from(182));
    assert_eq!((&x * &x + 1u32).mod_floor(&m), BigInt::zero());
    assert_eq!(teichmuller(&LocalElement::one(&f)).unwrap(), LocalElement::one(&f));
    assert_eq!(teichmuller(&w).unwrap(), w);
    assert!(teichmuller(&LocalElement::from_int(&f, 5)).is_err());
}

#[test]
fn log_examples() {
    let f = q5(4);
    assert!(log_iw(&LocalElement::from_int(&f, 5)).unwrap().is_zero());
    let w = teichmuller(&LocalElement::from_int(&f, 3)).unwrap();
    assert!(log_iw(&w).unwrap().is_zero());
    // oracle: exact rational partial sums of log(1 + 5)
    let mut s = BigRational::zero();
    for n in 1..40i64 {
        let t = BigRational::new(Pow::pow(BigInt::from(5), n as u32), BigInt::from(n));
        s = if n % 2 == 1 { s + t } else { s - t };
    }
    let m = BigInt::from(625);
    let inv_den = s.denom().extended_gcd(&m).x;
    let oracle = (s.numer() * inv_den).mod_floor(&m);
    assert_eq!(oracle, BigInt::from(555));
    let l = log_iw(&LocalElement::from_int(&f, 6)).unwrap();
    assert_eq!(as_int(&l), BigInt::from(555));
    assert_eq!(log_iw(&LocalElement::zero(&f)).unwrap_err(), PadicError::LogOfZero);
}

#[test]
fn log_kernel_in_eisenstein_field() {
    let e = LocalField::eisenstein(23, 20).unwrap();
    assert!(log_iw(&LocalElement::uniformizer(&e)).unwrap().is_zero());
    assert!(log_iw(&LocalElement::from_int(&e, -23)).unwrap().is_zero());
    let w = teichmuller(&LocalElement::from_int(&e, 5)).unwrap();
    assert!(log_iw(&w).unwrap().is_zero());
    let pi = LocalElement::uniformizer(&e);
    let one_plus_pi = &LocalElement::one(&e) + &pi;
    assert!(!log_iw(&one_plus_pi).unwrap().is_zero());
}

#[test]
fn hensel_examples() {
    let f = LocalField::base(7, 3).unwrap();
    let r = hensel_root_int(&ints(&[-2, 0, 1]), &f, 3).unwrap();
    assert_eq!(as_int(&r), BigInt::from(108));
    assert_eq!(BigInt::from(108 * 108 - 2) % 343, BigInt::zero());

    let cubic = ints(&[1, -1, 0, 1]);
    let g = LocalField::base(23, 20).unwrap();
    assert!(hensel_root_int(&cubic, &g, 20).is_ok());
    assert_eq!((3 * 20 * 20 - 1) % 23, 3);
    match hensel_root_int(&cubic, &g, 13) {
        Err(PadicError::NonSimpleSeed(s)) => assert_eq!(s, "13"),
        other => panic!("expected non-simple seed, got {other:?}"),
    }
}

#[test]
fn roots_examples() {
    let cubic = ints(&[1, -1, 0, 1]);
    let g = LocalField::base(23, 20).unwrap();
    let r = roots_in(&cubic, &g).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].residue_index(), BigInt::from(20));

    let e = LocalField::eisenstein(23, 20).unwrap();
    let r = roots_in(&cubic, &e).unwrap();
    assert_eq!(r.len(), 3);
    let prod = r.iter().fold(LocalElement::one(&e), |a, b| &a * b);
    assert!(prod.agrees_to_digits(&LocalElement::from_int(&e, -1), 15));
    for x in &r {
        assert!(x.eval_poly(&cubic).val_units().is_none_or(|v| v >= 30));
    }

    let r = roots_in(&ints(&[1, 0, 1]), &q5(10)).unwrap();
    assert_eq!(r.len(), 2);
    assert!(matches!(
        roots_in(&ints(&[1, 2, 1]), &q5(10)),
        Err(PadicError::NotSquarefree)
    ));
    assert!(matches!(
        roots_in_bounded(&cubic, &LocalField::unramified(5, 4, ints(&[2, 0, 1])).unwrap(), 10),
        Err(PadicError::ResidueFieldTooLarge { .. })
    ));
}

#[test]
fn roots_of_unity_in_unramified_field() {
    let f = LocalField::unramified(5, 10, ints(&[2, 0, 1])).unwrap();
    // x^24 - 1 splits completely in Q_25
    let mut poly = vec![BigInt::zero(); 25];
    poly[0] = BigInt::from(-1);
    poly[24] = BigInt::one();
    assert_eq!(roots_in(&poly, &f).unwrap().len(), 24);
}

#[test]
fn frobenius_properties() {
    // cubes mod 7 are 0, 1, 6 so x^3 - 2 has no root
    let f = LocalField::unramified(7, 15, ints(&[-2, 0, 0, 1])).unwrap();
    let t = LocalElement::generator(&f);
    let g = match f.kind() {
        FieldKind::Unramified(g) => g.clone(),
        _ => unreachable!(),
    };
    let ft = t.frobenius();
    assert!(ft.eval_poly(&g).is_zero());
    // congruent to t^7
    assert!(ft.agrees_to(&t.pow(7), 1));
    assert_eq!(ft.frobenius().frobenius(), t);
    let a = &t + &LocalElement::from_int(&f, 4);
    assert_eq!((&a * &t).frobenius(), &a.frobenius() * &ft);
}

#[test]
fn rational_examples() {
    let f = q5(4);
    let h = BigInt::from(17);
    let rr = |n: i64| rational_reconstruct(&LocalElement::from_int(&f, n), &h).unwrap();
    assert_eq!(rr(417), Some((BigInt::from(1), BigInt::from(3))));
    assert_eq!(rr(312), Some((BigInt::from(-1), BigInt::from(2))));
    assert_eq!(rr(555), None);
    // exhaustive oracle: the exact integer 555 carries 4 digits on its unit
    // part, so it is 555 + O(5^5); no u/w with |u|, |w| <= 17 matches that
    let m = 3125i64;
    let hit = (-17i64..=17)
        .flat_map(|u| (1i64..=17).map(move |w| (u, w)))
        .any(|(u, w)| (u - 555 * w).rem_euclid(m) == 0);
    assert!(!hit);
    assert!(matches!(
        rational_reconstruct(&LocalElement::from_int(&f, 3), &BigInt::from(18)),
        Err(PadicError::HeightTooLarge { .. })
    ));
}

#[test]
fn algebraic_examples() {
    let f = q5(4);
    let h = BigInt::from(5);
    let a = |n: i64| algebraic_reconstruct(&LocalElement::from_int(&f, n), 2, &h).unwrap();
    assert_eq!(a(417), Some(ints(&[-1, 3])));
    assert_eq!(a(182), Some(ints(&[1, 0, 1])));
    assert!(matches!(
        algebraic_reconstruct(&LocalElement::from_int(&f, 2), 2, &BigInt::from(8)),
        Err(PadicError::PrecisionTooLow { .. })
    ));
}

#[test]
fn algebraic_random_residues_have_no_small_relation() {
    let f = LocalField::base(5, 40).unwrap();
    let m: BigInt = Pow::pow(BigInt::from(5), 40u32);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let h = BigInt::from(1000);
    let mut found = 0;
    for _ in 0..100 {
        let digits: Vec<u8> = (0..40).map(|_| rng.gen_range(0..5)).collect();
        let mut x = BigInt::zero();
        for d in digits.iter().rev() {
            x = x * 5 + d;
        }
        let x = x.mod_floor(&m);
        if algebraic_reconstruct(&LocalElement::from_int(&f, x), 2, &h).unwrap().is_some() {
            found += 1;
        }
    }
    assert_eq!(found, 0);
}

#[test]
fn record_digits() {
    let f = q5(4);
    let r = LocalElement::from_int(&f, 417).to_record();
    assert_eq!(r.coeffs, vec![vec![2, 3, 1, 3]]);
    assert_eq!(r.val, Some(0));
    let e = LocalField::eisenstein(23, 2).unwrap();
    let r = LocalElement::uniformizer(&e).to_record();
    assert_eq!(r.val, Some(1));
    assert_eq!(r.coeffs, vec![vec![1, 0], vec![0, 0]]);
}

#[test]
fn base_coordinates_of_ramified_elements() {
    let e = LocalField::eisenstein(23, 10).unwrap();
    let pi = LocalElement::uniformizer(&e);
    let x = &LocalElement::from_int(&e, 7) + &(&pi * &LocalElement::from_int(&e, 46));
    let c = x.base_coords();
    let base = e.base_field();
    assert_eq!(c[0], LocalElement::from_int(&base, 7));
    assert_eq!(c[1], LocalElement::from_int(&base, 46));
    let y = &pi * &x;
    let c = y.base_coords();
    assert_eq!(c[0], LocalElement::from_int(&base, -46 * 23));
    assert_eq!(c[1], LocalElement::from_int(&base, 7));
    assert!(y.to_base().is_err());
    assert_eq!(LocalElement::from_int(&e, 23 * 4).to_base().unwrap(), LocalElement::from_int(&base, 92));
}

fn unit_strategy(p: u64, n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(0i64..(p as i64).pow(6), n).prop_filter("unit", move |v| {
        v.iter().any(|x| x % p as i64 != 0)
    })
}

fn element(field: &LocalField, c: &[i64]) -> LocalElement {
    LocalElement::from_coords(field, c.iter().map(|&x| BigInt::from(x)).collect())
}

fn fields() -> Vec<LocalField> {
    vec![
        LocalField::base(5, 40).unwrap(),
        LocalField::unramified(5, 40, ints(&[2, 0, 1])).unwrap(),
        LocalField::eisenstein(23, 40).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn log_is_a_homomorphism(which in 0usize..3, a in unit_strategy(5, 2), b in unit_strategy(5, 2)) {
        let f = &fields()[which];
        let n = f.degree() as usize;
        let mut a = a[..n].to_vec();
        let mut b = b[..n].to_vec();
        // keep both units in the ramified field
        if f.is_eisenstein() { a[0] = a[0] * 23 + 1; b[0] = b[0] * 23 + 2; }
        if f.is_base() { a[0] = a[0] * 5 + 3; b[0] = b[0] * 5 + 4; }
        let (x, y) = (element(f, &a), element(f, &b));
        prop_assume!(x.is_unit() && y.is_unit());
        let lhs = log_iw(&(&x * &y)).unwrap();
        let rhs = &log_iw(&x).unwrap() + &log_iw(&y).unwrap();
        prop_assert!(lhs.agrees_to_digits(&rhs, DEFAULT_PRECISION - DEFAULT_GUARD));
    }

    #[test]
    fn exp_inverts_log(which in 0usize..3, a in unit_strategy(5, 2)) {
        let f = &fields()[which];
        let n = f.degree() as usize;
        let p2 = (f.p_u64() * f.p_u64()) as i64;
        let c: Vec<i64> = a[..n].iter().map(|x| x * p2).collect();
        let mut c = c;
        c[0] += 1;
        let x = element(f, &c);
        let l = log_iw(&x).unwrap();
        let back = exp_series(&l, DEFAULT_GUARD).unwrap();
        prop_assert!(back.agrees_to_digits(&x, DEFAULT_PRECISION - DEFAULT_GUARD));
    }

    #[test]
    fn hensel_matches_digitwise_lifting(a in 1i64..1000) {
        // x^2 - a*a' with a' a square residue: compare Newton against naive digit search
        let p = 11u64;
        let sq = a * a;
        prop_assume!(sq % p as i64 != 0);
        let f = LocalField::base(p, 6).unwrap();
        let poly = ints(&[-(sq + 11 * 11 * 11), 0, 1]);
        let seed = a % p as i64;
        let r = hensel_root_int(&poly, &f, seed).unwrap();
        let target = sq + 1331;
        let mut x = seed;
        let mut m = p as i64;
        for _ in 1..6 {
            let next = m * p as i64;
            x = (0..p as i64).map(|d| x + d * m).find(|&y| (y * y - target).rem_euclid(next) == 0).unwrap();
            m = next;
        }
        prop_assert_eq!(as_int(&r), BigInt::from(x));
    }

    #[test]
    fn rational_round_trip(u in -1000i64..=1000, w in 1i64..=1000) {
        prop_assume!(num_integer::gcd(u, w) == 1);
        let f = LocalField::base(5, 20).unwrap();
        let x = LocalElement::from_rational(&f, &BigRational::new(BigInt::from(u), BigInt::from(w)));
        let got = rational_reconstruct(&x, &BigInt::from(1000)).unwrap();
        prop_assert_eq!(got, Some((BigInt::from(u), BigInt::from(w))));
    }

    #[test]
    fn precision_is_monotone(a in unit_strategy(7, 1)) {
        let lo = LocalField::base(7, 15).unwrap();
        let hi = LocalField::base(7, 30).unwrap();
        let c = a[0] * 7 + 3;
        let l_lo = log_iw(&element(&lo, &[c])).unwrap();
        let l_hi = log_iw(&element(&hi, &[c])).unwrap();
        let m = lo.p_pow(15);
        let x = as_int(&l_lo).mod_floor(&m);
        let y = as_int(&l_hi).mod_floor(&m);
        prop_assert_eq!(x, y);
        let i_lo = element(&lo, &[c]).inv().unwrap();
        let i_hi = element(&hi, &[c]).inv().unwrap();
        prop_assert_eq!(as_int(&i_lo).mod_floor(&m), as_int(&i_hi).mod_floor(&m));
        let moved = l_hi.with_field(&lo).unwrap();
        prop_assert!(moved.agrees_to(&l_lo, l_lo.abs_precision()));
        prop_assert!(l_lo.with_field(&LocalField::base(5, 15).unwrap()).is_err());
    }
}
