//! A deterministic property sweep over the whole stack, run by `linv selftest`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::galois::{ClassFunction, Cyclo, GroupAlgebraElement, LogVector};
use crate::linv::{fixtures, run_case, CheckRecord};
use crate::numfield::Embedding;
use crate::padic::{
    algebraic_reconstruct, exp_series, hensel_root_int, log_iw, rational_reconstruct, teichmuller, LocalElement,
    LocalField, PadicError,
};
use crate::repcheck::{d4_rq_input, induced_character, verify_dimension_claims, AuditInput};

/// Test hooks that damage one layer so the sweep can be seen to fail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Corruption {
    /// Every logarithm is shifted by p^(N/2) times the residue of its argument.
    pub log_table: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub precision: u32,
    pub guard: u32,
    pub properties: Vec<CheckRecord>,
    pub passed: bool,
}

impl SelftestReport {
    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.properties.iter().find(|c| !c.passed)
    }
}

struct Sweep {
    n: u32,
    guard: u32,
    corruption: Corruption,
    rng: ChaCha8Rng,
}

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

impl Sweep {
    fn log(&self, x: &LocalElement) -> Result<LocalElement, PadicError> {
        let l = log_iw(x)?;
        if !self.corruption.log_table {
            return Ok(l);
        }
        let f = x.field();
        let r = x.unit_coords()[0].mod_floor(f.p());
        let shift = LocalElement::from_int(f, f.p().pow(self.n / 2) * (r + 1u32));
        Ok(&l + &shift)
    }

    fn digits(&self) -> u32 {
        self.n - self.guard
    }

    fn fields(&self) -> Result<Vec<LocalField>, PadicError> {
        Ok(vec![
            LocalField::base(5, self.n)?,
            LocalField::unramified(5, self.n, vec![2.into(), 0.into(), 1.into()])?,
            LocalField::eisenstein(23, self.n)?,
        ])
    }

    fn random_unit(&mut self, f: &LocalField) -> LocalElement {
        let p = f.p_u64() as i64;
        loop {
            let c: Vec<BigInt> = (0..f.degree()).map(|_| BigInt::from(self.rng.gen_range(0..p.pow(6)))).collect();
            let x = LocalElement::from_coords(f, c);
            if x.is_unit() {
                return x;
            }
        }
    }

    fn log_kernel(&mut self) -> Outcome {
        for f in self.fields().map_err(err)? {
            let p = LocalElement::from_int(&f, f.p().clone());
            ensure(self.log(&p).map_err(err)?.is_zero(), || format!("log p ≠ 0 in {f}"))?;
            let u = self.random_unit(&f);
            let w = teichmuller(&u).map_err(err)?;
            ensure(self.log(&w).map_err(err)?.is_zero(), || format!("log of a Teichmüller lift ≠ 0 in {f}"))?;
        }
        Ok("Q_5, Q_25, Q_23(√−23)".into())
    }

    fn log_homomorphism(&mut self) -> Outcome {
        let digits = self.digits();
        for f in self.fields().map_err(err)? {
            for _ in 0..200 {
                let (x, y) = (self.random_unit(&f), self.random_unit(&f));
                let lhs = self.log(&(&x * &y)).map_err(err)?;
                let rhs = &self.log(&x).map_err(err)? + &self.log(&y).map_err(err)?;
                ensure(lhs.agrees_to_digits(&rhs, digits), || format!("log(xy) ≠ log x + log y in {f} for x = {x}"))?;
            }
        }
        Ok(format!("200 pairs per field to {digits} digits"))
    }

    fn log_six(&mut self) -> Outcome {
        let mut s = BigRational::zero();
        for n in 1..40u32 {
            let t = BigRational::new(Pow::pow(BigInt::from(5), n), BigInt::from(n));
            s = if n % 2 == 1 { s + t } else { s - t };
        }
        let m = BigInt::from(625);
        let oracle = (s.numer() * s.denom().extended_gcd(&m).x).mod_floor(&m);
        let f = LocalField::base(5, self.n).map_err(err)?;
        let l = self.log(&LocalElement::from_int(&f, 6)).map_err(err)?;
        let got = LocalElement::from_int(&f, oracle.clone());
        ensure(l.agrees_to(&got, 4), || format!("log_5 6 = {l}, partial sums give {oracle} mod 5^4"))?;
        ensure(oracle == BigInt::from(555), || format!("partial sums give {oracle}"))?;
        Ok("555 mod 5^4".into())
    }

    fn exp_log(&mut self) -> Outcome {
        let digits = self.digits();
        for f in self.fields().map_err(err)? {
            let p2 = f.p() * f.p();
            for _ in 0..20 {
                let u = self.random_unit(&f);
                let z = &LocalElement::from_int(&f, p2.clone()) * &u;
                let x = &LocalElement::one(&f) + &z;
                let back = exp_series(&self.log(&x).map_err(err)?, self.guard).map_err(err)?;
                ensure(back.agrees_to_digits(&x, digits), || format!("exp(log x) ≠ x in {f} for x = {x}"))?;
            }
        }
        Ok(format!("1 + p²·unit samples to {digits} digits"))
    }

    fn hensel(&mut self) -> Outcome {
        let f = LocalField::base(7, self.n).map_err(err)?;
        let poly: Vec<BigInt> = vec![(-2).into(), 0.into(), 1.into()];
        let r = hensel_root_int(&poly, &f, 3).map_err(err)?;
        let val = &(&r * &r) - &LocalElement::from_int(&f, 2);
        ensure(val.is_zero(), || format!("r² − 2 = {val}"))?;
        let low = r.truncate_abs(3);
        ensure(low.agrees_to(&LocalElement::from_int(&f, 108), 3), || format!("root {r} is not 108 mod 343"))?;
        let cubic: Vec<BigInt> = [1, -1, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        let g = LocalField::base(23, self.n).map_err(err)?;
        ensure(matches!(hensel_root_int(&cubic, &g, 13), Err(PadicError::NonSimpleSeed(_))), || {
            "double root accepted as a Hensel seed".into()
        })?;
        Ok("x² − 2 at 7 gives 108 mod 343".into())
    }

    fn reconstruction(&mut self) -> Outcome {
        let f = LocalField::base(5, self.n).map_err(err)?;
        let h = BigInt::from(1000);
        for _ in 0..2000 {
            let u: i64 = self.rng.gen_range(-1000..=1000);
            let w: i64 = self.rng.gen_range(1..=1000);
            if num_integer::gcd(u, w) != 1 || w % 5 == 0 {
                continue;
            }
            let x = LocalElement::from_rational(&f, &BigRational::new(u.into(), w.into()));
            let got = rational_reconstruct(&x, &h).map_err(err)?;
            ensure(got == Some((u.into(), w.into())), || format!("{u}/{w} reconstructed as {got:?}"))?;
        }
        let f4 = LocalField::base(5, 4).map_err(err)?;
        let a = algebraic_reconstruct(&LocalElement::from_int(&f4, 182), 2, &BigInt::from(5)).map_err(err)?;
        let expect: Vec<BigInt> = vec![BigInt::one(), BigInt::zero(), BigInt::one()];
        ensure(a.as_ref() == Some(&expect), || format!("182 mod 5^4 gave {a:?}"))?;
        Ok("rational round trips and x² + 1 from 182".into())
    }

    fn equivariance(&mut self) -> Outcome {
        let g = crate::linv::field23_group().map_err(err)?;
        let emb = Embedding::canonical(g.field(), 13, self.n).map_err(err)?;
        for _ in 0..20 {
            let c: Vec<i64> = (0..6).map(|_| self.rng.gen_range(-6..=6)).collect();
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            let x = g.field().element_from_ints(&c).map_err(err)?;
            let (vx, _) = LogVector::of_element(&x, &g, &emb).map_err(err)?;
            for tau in 0..6 {
                let (vt, _) = LogVector::of_element(&g.apply(tau, &x), &g, &emb).map_err(err)?;
                ensure(vt == vx.translate(g.group(), tau), || format!("v_(τx) ≠ translate for τ = {tau}, x = {c:?}"))?;
            }
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
        let digits = self.digits();
        for (i, a) in es.iter().enumerate() {
            for (j, b) in es.iter().enumerate() {
                let prod = a.mul(b, g.group()).map_err(err)?;
                let expect = if i == j { a.clone() } else { GroupAlgebraElement::zero(f, 6) };
                let ok = prod.coeffs().iter().zip(expect.coeffs()).all(|(x, y)| x.agrees_to_digits(y, digits));
                ensure(ok, || format!("e_{i}·e_{j} is not {}", if i == j { "e_i" } else { "0" }))?;
            }
        }
        Ok("20 elements, all τ; S3 idempotents orthogonal".into())
    }

    fn repcheck(&mut self) -> Outcome {
        let (n, gd) = (30, 5);
        let cases = [
            fixtures::iq_split_23_13(n, gd).and_then(|s| s.build()),
            fixtures::iq_inert_23_5(n, gd).and_then(|s| s.build()),
            fixtures::exotic_synthetic(n, gd, 0).and_then(|s| s.build()),
        ];
        for case in cases {
            let case = case.map_err(err)?;
            let r = verify_dimension_claims(&AuditInput::from_case(&case, None).map_err(err)?).map_err(err)?;
            ensure(r.passed, || format!("{} audit failed", r.case_type))?;
        }
        let d4 = d4_rq_input();
        let r = verify_dimension_claims(&d4).map_err(err)?;
        ensure(r.passed, || "D4 audit failed".into())?;
        // Frobenius reciprocity for η on D against each constituent.
        for c in &d4.constituents {
            let ind = induced_character(&d4.eta, &d4.group, &d4.decomposition).map_err(err)?;
            let lhs = ind.inner(&c.character, &d4.group);
            let rhs = d4.eta.inner_on(&c.character.restrict(&d4.decomposition), &d4.group, &d4.decomposition);
            ensure(lhs == rhs, || format!("reciprocity fails for {}", c.name))?;
        }
        Ok("iq, exotic and D4 audits".into())
    }

    fn synthetic_exotic(&mut self) -> Outcome {
        for seed in 0..3 {
            let case = fixtures::exotic_synthetic(self.n, self.guard, seed).and_then(|s| s.build()).map_err(err)?;
            let r = run_case(&case).map_err(err)?;
            ensure(r.passed, || format!("seed {seed}: {:?}", r.checks.iter().find(|c| !c.passed)))?;
        }
        Ok("seeds 0, 1, 2".into())
    }
}

/// Runs every property in order; each failure is recorded, not fatal.
pub fn run(precision: u32, guard: u32, corruption: Corruption) -> SelftestReport {
    let mut sweep = Sweep { n: precision, guard, corruption, rng: ChaCha8Rng::seed_from_u64(0x5eed) };
    type Prop = fn(&mut Sweep) -> Outcome;
    let props: [(&str, Prop); 9] = [
        ("log kills p and roots of unity", Sweep::log_kernel),
        ("log is a homomorphism", Sweep::log_homomorphism),
        ("log_5 6 against partial sums", Sweep::log_six),
        ("exp inverts log", Sweep::exp_log),
        ("Hensel lifting", Sweep::hensel),
        ("rational and algebraic reconstruction", Sweep::reconstruction),
        ("equivariance and idempotents", Sweep::equivariance),
        ("repcheck oracles", Sweep::repcheck),
        ("synthetic exotic pipeline", Sweep::synthetic_exotic),
    ];
    let properties: Vec<CheckRecord> = props
        .iter()
        .map(|(name, f)| match f(&mut sweep) {
            Ok(d) => CheckRecord::pass(*name, d),
            Err(d) => CheckRecord::new(*name, false, d),
        })
        .collect();
    let passed = properties.iter().all(|c| c.passed);
    SelftestReport { precision, guard, properties, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_sweep_passes() {
        let r = run(30, 5, Corruption::default());
        assert!(r.passed, "{:#?}", r.first_failure());
        assert_eq!(r.properties.len(), 9);
    }

    #[test]
    fn corrupted_logs_fail_first_property() {
        let r = run(30, 5, Corruption { log_table: true });
        assert!(!r.passed);
        assert_eq!(r.first_failure().unwrap().name, "log kills p and roots of unity");
        assert!(!r.properties[1].passed);
    }
}
