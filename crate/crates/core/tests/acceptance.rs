//! One line per acceptance criterion; exits non-zero if any fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use linv_core::galois::{ClassFunction, Cyclo, GroupAlgebraElement, LogVector};
use linv_core::linv::casefile::CaseFile;
use linv_core::linv::{
    check_equality, field23_group, fixtures, greenberg23, greenberg_value, run_case, CaseData, CaseSpec, CaseType,
    LinvError, RatioClass,
};
use linv_core::numfield::Embedding;
use linv_core::padic::{
    algebraic_reconstruct, exp_series, hensel_root_int, log_iw, rational_reconstruct, teichmuller, LocalElement,
    LocalField, PadicError,
};
use linv_core::repcheck::{d4_rq_input, verify_dimension_claims, AuditInput};

const N: u32 = 40;
const G: u32 = 5;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn fields() -> Result<Vec<LocalField>, String> {
    Ok(vec![
        LocalField::base(5, N).map_err(err)?,
        LocalField::unramified(5, N, vec![2.into(), 0.into(), 1.into()]).map_err(err)?,
        LocalField::eisenstein(23, N).map_err(err)?,
    ])
}

fn random_unit(rng: &mut ChaCha8Rng, f: &LocalField) -> LocalElement {
    let p = f.p_u64() as i64;
    loop {
        let c: Vec<BigInt> = (0..f.degree()).map(|_| BigInt::from(rng.gen_range(0..p.pow(8)))).collect();
        let x = LocalElement::from_coords(f, c);
        if x.is_unit() {
            return x;
        }
    }
}

fn log_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for f in fields()? {
        // Exact means every tracked digit is zero and none were lost.
        let full = (N * f.e()) as i64;
        let p = LocalElement::from_int(&f, f.p().clone());
        let l = log_iw(&p).map_err(err)?;
        ensure(l.is_zero() && l.abs_precision() >= full, || format!("log p = {l} in {f}"))?;
        for _ in 0..5 {
            let w = teichmuller(&random_unit(&mut rng, &f)).map_err(err)?;
            let l = log_iw(&w).map_err(err)?;
            ensure(l.is_zero() && l.abs_precision() >= full, || format!("log ω = {l} in {f}"))?;
        }
        for _ in 0..200 {
            let (x, y) = (random_unit(&mut rng, &f), random_unit(&mut rng, &f));
            let lhs = log_iw(&(&x * &y)).map_err(err)?;
            let rhs = &log_iw(&x).map_err(err)? + &log_iw(&y).map_err(err)?;
            ensure(lhs.agrees_to_digits(&rhs, N - 5), || format!("log(xy) ≠ log x + log y in {f}"))?;
        }
    }
    // Partial sums of log(1 + 5) as exact rationals, reduced mod 5^4.
    let mut s = BigRational::zero();
    for n in 1..40u32 {
        let t = BigRational::new(Pow::pow(BigInt::from(5), n), BigInt::from(n));
        s = if n % 2 == 1 { s + t } else { s - t };
    }
    let m = BigInt::from(625);
    let oracle = (s.numer() * s.denom().extended_gcd(&m).x).mod_floor(&m);
    ensure(oracle == BigInt::from(555), || format!("partial sums give {oracle}"))?;
    let f4 = LocalField::base(5, 4).map_err(err)?;
    let l = log_iw(&LocalElement::from_int(&f4, 6)).map_err(err)?;
    ensure(l.agrees_to(&LocalElement::from_int(&f4, 555), 4), || format!("log_5 6 = {l}"))?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(5), || format!("took {t:?}"))?;
    Ok("log p = 0, log ω = 0, 600 pairs to N − 5, log_5 6 ≡ 555".into())
}

fn exp_and_hensel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for f in fields()? {
        let p2 = LocalElement::from_int(&f, f.p() * f.p());
        for _ in 0..50 {
            let x = &LocalElement::one(&f) + &(&p2 * &random_unit(&mut rng, &f));
            let back = exp_series(&log_iw(&x).map_err(err)?, G).map_err(err)?;
            ensure(back.agrees_to_digits(&x, N - 5), || format!("exp(log x) ≠ x in {f} for {x}"))?;
        }
    }
    let f = LocalField::base(7, N).map_err(err)?;
    let r = hensel_root_int(&[(-2).into(), 0.into(), 1.into()], &f, 3).map_err(err)?;
    let fr = &(&r * &r) - &LocalElement::from_int(&f, 2);
    ensure(fr.is_zero(), || format!("r² − 2 = {fr}"))?;
    ensure(r.agrees_to(&LocalElement::from_int(&f, 108), 3), || format!("root {r} is not 108 mod 343"))?;
    let f5 = LocalField::base(5, N).map_err(err)?;
    let i = hensel_root_int(&[1.into(), 0.into(), 1.into()], &f5, 2).map_err(err)?;
    let fi = &(&i * &i) + &LocalElement::one(&f5);
    ensure(fi.is_zero(), || format!("i² + 1 = {fi}"))?;
    Ok("150 samples to N − 5; x² − 2 at 7 gives 108 mod 343".into())
}

fn reconstruction() -> Outcome {
    // 5^10 > 2·10^6.
    let f = LocalField::base(5, 10).map_err(err)?;
    let h = BigInt::from(1000);
    let mut count = 0u64;
    for w in 1..=1000i64 {
        for u in -1000..=1000i64 {
            if num_integer::gcd(u, w) != 1 {
                continue;
            }
            let x = LocalElement::from_rational(&f, &BigRational::new(u.into(), w.into()));
            let got = rational_reconstruct(&x, &h).map_err(err)?;
            ensure(got == Some((u.into(), w.into())), || format!("{u}/{w} reconstructed as {got:?}"))?;
            count += 1;
        }
    }
    let f4 = LocalField::base(5, 4).map_err(err)?;
    let a = algebraic_reconstruct(&LocalElement::from_int(&f4, 182), 2, &BigInt::from(5)).map_err(err)?;
    let expect = vec![BigInt::one(), BigInt::zero(), BigInt::one()];
    ensure(a.as_ref() == Some(&expect), || format!("182 mod 5^4 gave {a:?}"))?;
    Ok(format!("{count} fractions at 5^10; x² + 1 from 182 mod 5^4"))
}

fn desk_check() -> Outcome {
    let mut out = Vec::new();
    for (spec, k) in [
        (fixtures::iq_split_23_13(N, G).map_err(err)?, (1, 2)),
        (fixtures::iq_inert_23_5(N, G).map_err(err)?, (2, 3)),
    ] {
        let start = Instant::now();
        let case = spec.build().map_err(err)?;
        let r = run_case(&case).map_err(err)?;
        let t = start.elapsed();
        let name = r.case_type.clone();
        let f = case.local_field().clone();
        let closed = case.l_gr_closed().map_err(err)?;
        let solver = case.l_gr_solver().map_err(err)?;
        // Projective equality: the closed form is the solver output times a
        // logged rational factor.
        let kk = LocalElement::from_rational(&f, &BigRational::new(k.0.into(), k.1.into()));
        ensure(case.k_factor().agrees_to(&kk, (N - G) as i64), || format!("{name}: k = {}", case.k_factor()))?;
        ensure(closed.agrees_to_digits(&(&kk * &solver), N - 10), || format!("{name}: closed ≠ k·solver"))?;
        let ratio = check_equality(&closed, &solver, N - 10).map_err(err)?;
        let k_ratio = RatioClass::Rational { u: k.0.to_string(), w: k.1.to_string() };
        ensure(ratio == k_ratio, || format!("{name}: closed/solver = {ratio:?}"))?;
        ensure(r.solver_residual_valuation >= (N - 10) as i64 * f.e() as i64, || {
            format!("{name}: residuals only vanish to {}", r.solver_residual_valuation)
        })?;
        ensure(r.ratio.is_recognized(), || format!("{name}: ratio {:?}", r.ratio))?;
        ensure(r.passed, || format!("{name}: {:?}", r.checks.iter().find(|c| !c.passed)))?;
        ensure(t < Duration::from_secs(10), || format!("{name}: took {t:?}"))?;
        out.push(format!("{name} k = {}/{} ratio {:?} in {:.2} s", k.0, k.1, r.ratio, t.as_secs_f64()));
    }
    Ok(out.join("; "))
}

fn all_three(c: &CaseData) -> Result<[LocalElement; 3], String> {
    Ok([c.l_an().map_err(err)?, c.l_gr_closed().map_err(err)?, c.l_gr_solver().map_err(err)?])
}

fn scaling_laws() -> Outcome {
    let digits = N - 5;
    for spec in [fixtures::iq_split_23_13(N, G).map_err(err)?, fixtures::iq_inert_23_5(N, G).map_err(err)?] {
        let base = all_three(&spec.build().map_err(err)?)?;
        for k in [2i64, 3] {
            let mut powered: CaseSpec = spec.clone();
            powered.pi = spec.pi.pow(k).map_err(err)?;
            let kk = LocalElement::from_int(base[0].field(), k);
            for (a, b) in base.iter().zip(all_three(&powered.build().map_err(err)?)?) {
                ensure(b.agrees_to_digits(&(&kk * a), digits), || format!("π^{k} does not scale by {k}"))?;
            }
            if let Some(eps) = &spec.epsilon {
                let mut powered = spec.clone();
                powered.epsilon = Some(eps.pow(k).map_err(err)?);
                for (a, b) in base.iter().zip(all_three(&powered.build().map_err(err)?)?) {
                    ensure(b.agrees_to_digits(a, digits), || format!("ε^{k} changed an output"))?;
                }
            }
        }
    }
    for case in [
        fixtures::exotic_synthetic(N, G, 1).and_then(|s| s.build()).map_err(err)?,
        fixtures::rq_inert_229_7(N, G).and_then(|s| s.build()).map_err(err)?,
    ] {
        let base = all_three(&case)?;
        let first = run_case(&case).map_err(err)?.choices;
        let rev = case.with_sigma_order((0..case.group().order()).rev().collect()).map_err(err)?;
        let second = run_case(&rev).map_err(err)?.choices;
        ensure(first.sigma2 != second.sigma2 || first.sigma_tilde != second.sigma_tilde, || {
            "reversed order picked the same σ₂ and σ̃".into()
        })?;
        for (a, b) in base.iter().zip(all_three(&rev)?) {
            ensure(b.agrees_to_digits(a, digits), || "σ₂/σ̃ choice changed an output".into())?;
        }
    }
    Ok("π^k scales by k, ε^k is invisible (k = 2, 3); σ choices on exotic and rq".into())
}

fn greenberg() -> Outcome {
    let r = greenberg23(N, G).map_err(err)?;
    ensure(r.passed, || format!("{:?}", r.checks.iter().find(|c| !c.passed)))?;
    ensure(r.coefficient == 3, || format!("coefficient {}", r.coefficient))?;
    let (_, ratio) = greenberg_value(N, 1, 0).map_err(err)?;
    let coords = ratio.base_coords();
    ensure(coords[1].is_zero() && coords[1].abs_precision() >= (N - 5) as i64, || {
        format!("√−23-coordinate {}", coords[1])
    })?;
    let base = greenberg_value(N, 1, 0).map_err(err)?.0;
    for (e, t, what) in [(2, 0, "ε → ε²"), (1, 1, "π → πε")] {
        let v = greenberg_value(N, e, t).map_err(err)?.0;
        ensure(v.agrees_to_digits(&base, N - 5), || format!("{what} changed the value"))?;
    }
    let vals: Vec<LocalElement> =
        [30, 40, 60].iter().map(|&n| greenberg_value(n, 1, 0).map(|v| v.0)).collect::<Result<_, _>>().map_err(err)?;
    for w in vals.windows(2) {
        let hi = w[1].with_field(w[0].field()).map_err(err)?;
        ensure(hi.agrees_to(&w[0], w[0].abs_precision() - 2 * G as i64), || "precisions disagree".into())?;
    }
    Ok("ratio in Q_23, ε² and πε invariant, 30/40/60 overlap, coefficient 3".into())
}

fn repcheck() -> Outcome {
    let mut out = Vec::new();
    let shipped = [
        (fixtures::iq_split_23_13(N, G).and_then(|s| s.build()).map_err(err)?, vec![1, 1]),
        (fixtures::iq_inert_23_5(N, G).and_then(|s| s.build()).map_err(err)?, vec![1, 1]),
        (fixtures::exotic_synthetic(N, G, 1).and_then(|s| s.build()).map_err(err)?, vec![2]),
    ];
    for (case, expect) in shipped {
        let r = verify_dimension_claims(&AuditInput::from_case(&case, None).map_err(err)?).map_err(err)?;
        let got: Vec<i64> = r.constituents.iter().map(|c| c.contribution).collect();
        ensure(got == expect, || format!("{}: contributions {got:?}", r.case_type))?;
        ensure(r.global_dimension == 2 && r.local_dimension == 3 && r.w_dimension == 1, || {
            format!("{}: dims {} {} {}", r.case_type, r.global_dimension, r.local_dimension, r.w_dimension)
        })?;
        ensure(r.passed, || format!("{} audit failed", r.case_type))?;
        out.push(format!("{} {got:?}", r.case_type));
    }
    // Odd real-quadratic data: D4 with complex conjugation the half-turn.
    let r = verify_dimension_claims(&d4_rq_input()).map_err(err)?;
    let got: Vec<i64> = r.constituents.iter().map(|c| c.contribution).collect();
    ensure(got == vec![0, 2] && r.passed, || format!("rq contributions {got:?}"))?;
    ensure(r.local_dimension == 3 && r.w_dimension == 1, || "rq local dimensions".into())?;
    out.push(format!("rq (D4) {got:?}"));
    // The d = 229 field is totally real; the audit must notice.
    let real = fixtures::rq_inert_229_7(N, G).and_then(|s| s.build()).map_err(err)?;
    let r = verify_dimension_claims(&AuditInput::from_case(&real, Some(0)).map_err(err)?).map_err(err)?;
    ensure(!r.passed && r.local_dimension == 3 && r.w_dimension == 1, || "229 field audit".into())?;
    out.push("229 field flagged even".into());
    Ok(out.join(", "))
}

fn cli_fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/fixtures").join(name)
}

fn negative() -> Outcome {
    let case = fixtures::iq_inert_23_5(N, G).and_then(|s| s.build()).map_err(err)?;
    let f = case.local_field().clone();
    let off = (0..case.group().order()).find(|i| !case.decomposition().contains(i)).expect("D is proper");
    let mut v = case.v_pi().entries().to_vec();
    let bump = &(&LocalElement::generator(&f) + &LocalElement::one(&f)) * &LocalElement::from_int(&f, f.p().pow(N / 2));
    v[off] = &v[off] + &bump;
    let bad = case.with_v_pi(LogVector::new(&f, v).map_err(err)?);
    let e = bad.l_gr_solver().err();
    ensure(matches!(e, Some(LinvError::InconsistentSystem { .. })), || format!("perturbed input gave {e:?}"))?;
    ensure(e.unwrap().to_string().contains("inconsistent system"), || "message".into())?;

    let mut spec = fixtures::iq_inert_23_5(N, G).map_err(err)?;
    spec.eta.exponent = 0;
    let e = spec.build().err().map(|e| e.to_string()).unwrap_or_default();
    ensure(e.contains("(B1) violated"), || format!("trivial η gave {e:?}"))?;

    let mut file = CaseFile::load(&cli_fixture("iq_inert_23_5.json")).map_err(err)?;
    file.case_type = CaseType::RqSplit;
    let e = match file.resolve(None, None) {
        Ok(l) => l.build().err().map(|e| e.to_string()).unwrap_or_default(),
        Err(e) => e.to_string(),
    };
    ensure(e.contains("(B2) violated"), || format!("rq-split file gave {e:?}"))?;

    let g = LocalField::base(23, N).map_err(err)?;
    let cubic: Vec<BigInt> = [1, -1, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
    let h = hensel_root_int(&cubic, &g, 13);
    ensure(matches!(h, Err(PadicError::NonSimpleSeed(_))), || format!("double root seed gave {h:?}"))?;
    Ok("inconsistent system, (B1), (B2) from a case file, double-root seed".into())
}

fn equivariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let g = field23_group().map_err(err)?;
    let emb = Embedding::canonical(g.field(), 13, N).map_err(err)?;
    let mut tried = 0;
    while tried < 20 {
        let c: Vec<i64> = (0..6).map(|_| rng.gen_range(-9..=9)).collect();
        if c.iter().all(|&x| x == 0) {
            continue;
        }
        let x = g.field().element_from_ints(&c).map_err(err)?;
        let (vx, _) = LogVector::of_element(&x, &g, &emb).map_err(err)?;
        for tau in 0..6 {
            let (vt, _) = LogVector::of_element(&g.apply(tau, &x), &g, &emb).map_err(err)?;
            ensure(vt == vx.translate(g.group(), tau), || format!("v_(τx) ≠ v_x(·τ) for τ = {tau}, x = {c:?}"))?;
        }
        tried += 1;
    }
    let f = emb.local_field();
    let chars = [
        ClassFunction::trivial(6),
        ClassFunction::new([1, 1, 1, -1, -1, -1].iter().map(|&v| Cyclo::int(v)).collect()),
        ClassFunction::new([2, -1, -1, 0, 0, 0].iter().map(|&v| Cyclo::int(v)).collect()),
    ];
    let es: Vec<GroupAlgebraElement> = chars
        .iter()
        .map(|c| GroupAlgebraElement::idempotent(c, g.group(), f))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    for (i, a) in es.iter().enumerate() {
        for (j, b) in es.iter().enumerate() {
            let prod = a.mul(b, g.group()).map_err(err)?;
            let expect = if i == j { a.clone() } else { GroupAlgebraElement::zero(f, 6) };
            let ok = prod.coeffs().iter().zip(expect.coeffs()).all(|(x, y)| x.agrees_to_digits(y, N - 5));
            ensure(ok, || format!("e_{i}·e_{j} wrong"))?;
        }
    }
    Ok("20 elements × 6 τ exact; S3 idempotents orthogonal to N − 5".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Iwasawa log suite", log_suite),
        ("exp∘log and Hensel", exp_and_hensel),
        ("rational and algebraic reconstruction", reconstruction),
        ("desk check iq-split and iq-inert", desk_check),
        ("scaling laws", scaling_laws),
        ("Greenberg p = 23 fixture", greenberg),
        ("repcheck dimensions", repcheck),
        ("negative tests", negative),
        ("equivariance and idempotents", equivariance),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("[PASS] {} {name}: {d} ({t:.2} s)", i + 1),
            Err(d) => {
                failed += 1;
                println!("[FAIL] {} {name}: {d} ({t:.2} s)", i + 1)
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
