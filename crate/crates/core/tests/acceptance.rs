//! The ten acceptance criteria, each checked exactly and under its time budget.
//!
//! Runs without the libtest harness so the per-criterion lines always print;
//! any failure makes the process exit nonzero.

use deltastab::arith::{
    factor::factorize, hn_posint, hn_posint_engine, NatSubtraction, PosIntDivision, VecSpace,
};
use deltastab::binom::{convolution_euler, is_positive_system, split_convolution, BinomPoly, HomTable};
use deltastab::bounds::{
    bogomolov, hodge_check, lan_inequality, mmin, pbar, rank_deg_slopes, rr_growth_witness,
    AmbientGeometry, ChernSurface, NumericalClass,
};
use deltastab::hn::{
    compare_slopes, hn_decompose, seesaw_check, verify_hn, CategoryInstance, DeltaStep, Seesaw,
};
use deltastab::p1::{kronecker_dim, kronecker_slope, tilt_p1, SheafP1, TiltedObjP1};
use deltastab::rational::{frac, from_big, int, Rational};
use deltastab::tilt::{central_charge, compare_phase, tilted_coeffs, TiltParams};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rand_q(r: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    frac(r.gen_range(-num..=num), r.gen_range(1..=den))
}

fn c1_pbar() -> Check {
    let amb = AmbientGeometry::p2();
    let mut r = rng(1);
    for _ in 0..1000 {
        let m = rand_q(&mut r, 10_000, 997);
        let want = &m * (&m - int(1)) / int(2);
        let got = pbar(&m, &amb);
        ensure(got == want, || format!("pbar({m}) = {got}, expected {want}"))?;
    }
    Ok(())
}

fn c2_mmin() -> Check {
    let amb = AmbientGeometry::p2();
    for (m1, m2, want) in [(0, 1, 1), (2, 1, 2)] {
        let got = mmin(&BigInt::from(m1), &BigInt::from(m2), &amb).map_err(|e| e.to_string())?;
        ensure(got == BigInt::from(want), || format!("mmin({m1}, {m2}) = {got}, expected {want}"))?;
    }
    Ok(())
}

fn c3_engine_vs_factorization() -> Check {
    for n in 2u32..=10_000 {
        let n = BigUint::from(n);
        let engine = hn_posint_engine(&n).map_err(|e| e.to_string())?;
        let direct = hn_posint(&n).map_err(|e| e.to_string())?;
        ensure(engine == direct, || format!("{n}: engine {engine:?} vs direct {direct:?}"))?;
        let product: BigUint = engine.factors.iter().product();
        ensure(product == n, || format!("{n}: factors multiply to {product}"))?;
        // one factor per prime, primes strictly descending
        let primes: Vec<BigUint> = engine
            .factors
            .iter()
            .map(|f| {
                let pf = factorize(f);
                assert_eq!(pf.len(), 1, "{f} is not a prime power");
                pf[0].0.clone()
            })
            .collect();
        ensure(primes.windows(2).all(|w| w[0] > w[1]), || format!("{n}: primes {primes:?}"))?;
    }
    Ok(())
}

fn seesaw_and_verify<C: CategoryInstance>(inst: &C, step: &DeltaStep<C::Object>) -> Check {
    let s = seesaw_check(|o| inst.slope(o), step);
    ensure(s != Seesaw::Violation, || format!("seesaw violation on {step:?}"))?;
    let seq = hn_decompose(inst, &step.whole).map_err(|e| e.to_string())?;
    let rep = verify_hn(inst, &seq);
    ensure(rep.is_ok(), || format!("verify_hn on {:?}: {:?}", step.whole, rep.violations))
}

fn c4_seesaw_suite() -> Check {
    let mut r = rng(4);
    let small_primes = [2u32, 3, 5, 7, 11, 13];
    for k in 0..10_000 {
        match k % 3 {
            0 => {
                let draw = |r: &mut ChaCha8Rng| -> BigUint {
                    let mut v = BigUint::one();
                    for _ in 0..r.gen_range(1..=4) {
                        v *= small_primes[r.gen_range(0..small_primes.len())];
                    }
                    v
                };
                let a = draw(&mut r);
                let b = draw(&mut r);
                let whole = &a * &b;
                let inst = PosIntDivision::covering([&a, &b, &whole]);
                seesaw_and_verify(&inst, &DeltaStep::new(a, whole, b))?;
            }
            1 => {
                let a: u64 = r.gen_range(1..=1000);
                let b: u64 = r.gen_range(1..=1000);
                seesaw_and_verify(&NatSubtraction, &DeltaStep::new(a, a + b, b))?;
            }
            _ => {
                let pool: Vec<u64> = (0..r.gen_range(2..=8)).map(|_| r.gen_range(0..40)).collect();
                let all: BTreeSet<u64> = pool.iter().copied().collect();
                if all.len() < 2 {
                    continue;
                }
                let mut a = BTreeSet::new();
                let mut b = BTreeSet::new();
                for &i in &all {
                    if r.gen_bool(0.5) {
                        a.insert(i);
                    } else {
                        b.insert(i);
                    }
                }
                if a.is_empty() || b.is_empty() {
                    let first = *all.iter().next().unwrap();
                    a = BTreeSet::from([first]);
                    b = all.iter().copied().filter(|&i| i != first).collect();
                }
                let inst = VecSpace::new(all.iter().copied());
                seesaw_and_verify(&inst, &DeltaStep::new(a, all, b))?;
            }
        }
    }
    Ok(())
}

fn random_heart_p1(r: &mut ChaCha8Rng) -> TiltedObjP1 {
    loop {
        let plain: Vec<i64> = (0..r.gen_range(0..=3)).map(|_| r.gen_range(0..=6)).collect();
        let shifted: Vec<i64> = (0..r.gen_range(0..=3)).map(|_| r.gen_range(-6..=-1)).collect();
        let torsion: Vec<(String, u64)> = (0..r.gen_range(0..=2))
            .map(|_| (["p", "q", "r"][r.gen_range(0..3)].to_string(), r.gen_range(1..=3)))
            .collect();
        let obj = TiltedObjP1::new(
            SheafP1::bundles(&shifted),
            SheafP1::new(plain, torsion).expect("positive lengths"),
        )
        .expect("heart fixture");
        if !obj.is_zero() {
            return obj;
        }
    }
}

fn c5_kronecker() -> Check {
    let mut gens: Vec<TiltedObjP1> = (0..=8).map(|a| tilt_p1(&SheafP1::line(a))).collect();
    gens.extend((-8..=-1).map(|a| tilt_p1(&SheafP1::line(a))));
    gens.push(tilt_p1(&SheafP1::skyscraper("p", 1)));
    for g in &gens {
        ensure(kronecker_slope(g) > 0, || format!("slope of generator {g:?} not positive"))?;
    }
    let mut r = rng(5);
    for _ in 0..10_000 {
        let obj = random_heart_p1(&mut r);
        ensure(kronecker_slope(&obj) > 0, || format!("slope of {obj:?} not positive"))?;
    }
    let o = kronecker_dim(&tilt_p1(&SheafP1::line(0)));
    let o1 = kronecker_dim(&tilt_p1(&SheafP1::line(1)));
    let om1 = kronecker_dim(&tilt_p1(&SheafP1::line(-1)));
    ensure(o1 == (2, 1) && o == (1, 0) && om1 == (0, 1), || {
        format!("dims O(1) {o1:?}, O {o:?}, O(-1)[1] {om1:?}")
    })?;
    let sum = (o.0 + o.0 + om1.0, o.1 + o.1 + om1.1);
    ensure(sum == o1, || format!("{sum:?} != {o1:?}"))
}

fn c6_lan() -> Check {
    let mut r = rng(6);
    for _ in 0..100_000 {
        let mut slopes: Vec<Rational> = (0..r.gen_range(1..=5)).map(|_| rand_q(&mut r, 50, 7)).collect();
        slopes.sort_by(|a, b| b.cmp(a));
        slopes.dedup();
        let weights: Vec<Rational> = slopes.iter().map(|_| frac(r.gen_range(1..=50), r.gen_range(1..=7))).collect();
        let rep = lan_inequality(&weights, &slopes).map_err(|e| e.to_string())?;
        ensure(rep.holds, || format!("fails on r={weights:?} mu={slopes:?}: {rep:?}"))?;
    }
    let rep = lan_inequality(&[int(1), int(1)], &[int(1), int(0)]).map_err(|e| e.to_string())?;
    ensure(rep.holds && rep.lhs == rep.rhs, || format!("no equality at (1,1),(1,0): {rep:?}"))
}

fn c7_bogomolov() -> Check {
    for a in -5i64..=5 {
        for b in -5i64..=5 {
            let rep = bogomolov(&ChernSurface::split_p2(&[a, b]));
            let want = BigInt::from((a - b) * (a - b));
            ensure(rep.discriminant == want, || format!("Delta(O({a}) + O({b})) = {}", rep.discriminant))?;
            ensure(rep.certificate.is_some() == (a != b), || {
                format!("certificate mismatch at ({a}, {b}): {:?}", rep.certificate)
            })?;
        }
    }
    Ok(())
}

fn c8_hodge() -> Check {
    let b = BigInt::from;
    let m = rr_growth_witness(&b(1), &b(0), &b(1), &int(10));
    ensure(m == Some(b(5)), || format!("witness {m:?}"))?;
    let h = hodge_check(&b(1), &b(0), &b(1)).map_err(|e| e.to_string())?;
    ensure(!h, || "hodge_check returned true".into())
}

fn c9_polys_and_euler() -> Check {
    let mut r = rng(9);
    for _ in 0..1000 {
        let deg = r.gen_range(0..=6);
        let p = BinomPoly::new((0..=deg).map(|_| int(r.gen_range(-1000..=1000))).collect());
        let samples: Vec<Rational> = (0..=6).map(|t| p.evaluate(&int(t))).collect();
        let back = BinomPoly::from_samples(&samples).map_err(|e| e.to_string())?;
        ensure(back == p, || format!("round trip {p:?} -> {back:?}"))?;
    }
    for _ in 0..1000 {
        let n = r.gen_range(0..=4);
        let width = r.gen_range(1..=6);
        let table = HomTable {
            offset: r.gen_range(-4..=4),
            rows: (0..=n).map(|_| (0..width).map(|_| r.gen_range(0..=9)).collect()).collect(),
        };
        let (mut dims, lo) = split_convolution(&table, n);
        // a nonzero differential cancels equal amounts in adjacent degrees
        if dims.len() >= 2 {
            let j = r.gen_range(0..dims.len() - 1);
            let k = dims[j].min(dims[j + 1]);
            let k = r.gen_range(0..=k);
            dims[j] -= k;
            dims[j + 1] -= k;
            let extra = r.gen_range(0..=3);
            let j = r.gen_range(0..dims.len() - 1);
            dims[j] += extra;
            dims[j + 1] += extra;
        }
        let rep = convolution_euler(&dims, lo, &table, n).map_err(|e| e.to_string())?;
        ensure(rep.equal, || format!("euler mismatch on {table:?}: {rep:?}"))?;
    }
    Ok(())
}

/// Class with `a_2 = r d`, `a_1 = muhat a_2`, `a_0 = chi`.
fn class_of(a2: &BigInt, a1: &BigInt, a0: &BigInt) -> NumericalClass {
    NumericalClass::new(vec![a2.clone(), -a1.clone(), a0.clone()])
}

/// A random nonzero sum of heart generators for the tilt at `q = m1/m2`:
/// torsion classes, sheaves with `muhat > q`, and shifted sheaves with
/// `muhat < q` or on the boundary with `chi <= r d pbar(q)`.
fn random_heart_class(r: &mut ChaCha8Rng, tp: &TiltParams, amb: &AmbientGeometry) -> NumericalClass {
    let q = tp.q();
    let d = from_big(&amb.d);
    let mut total = NumericalClass::from_ints(&[0, 0, 0]);
    for _ in 0..r.gen_range(1..=3) {
        let g = match r.gen_range(0..5) {
            0 => {
                let a1 = r.gen_range(0..=4);
                let a0 = if a1 == 0 { r.gen_range(1..=5) } else { r.gen_range(-20..=20) };
                NumericalClass::from_ints(&[0, -a1, a0])
            }
            1 | 2 => {
                // torsion-free, either side of q
                let rank = r.gen_range(1..=4);
                let a2 = &d * int(rank);
                let mut a1 = (&q * &a2).floor() + int(r.gen_range(-6..=6));
                let above = r.gen_bool(0.5);
                if above && a1 <= &q * &a2 {
                    a1 = (&q * &a2).floor() + int(1);
                } else if !above && a1 >= &q * &a2 {
                    a1 = (&q * &a2).ceil() - int(1);
                }
                let cls = class_of(&a2.to_integer(), &a1.to_integer(), &BigInt::from(r.gen_range(-30..=30)));
                if above {
                    cls
                } else {
                    cls.neg()
                }
            }
            _ => {
                // semistable of slope exactly q, shifted
                let m2 = tp.m2.clone();
                let rank = &m2 * BigInt::from(r.gen_range(1..=3));
                let a2 = &amb.d * &rank;
                let a1 = (&q * from_big(&a2)).to_integer();
                let cap = (from_big(&a2) * pbar(&q, amb)).floor().to_integer();
                let a0 = cap - BigInt::from(r.gen_range(0..=5));
                class_of(&a2, &a1, &a0).neg()
            }
        };
        total = total.add(&g);
    }
    if total.chi.iter().all(Zero::is_zero) {
        return NumericalClass::from_ints(&[0, 0, 1]);
    }
    total
}

fn c10_tilted_positivity() -> Check {
    let amb = AmbientGeometry::p2();
    let mut r = rng(10);
    // sanity: the class builder agrees with the slope convention
    let probe = class_of(&BigInt::from(3), &BigInt::from(5), &BigInt::from(1));
    let s = rank_deg_slopes(&probe, &amb).map_err(|e| e.to_string())?;
    ensure(s.muhat == frac(5, 3), || format!("class builder gives muhat {}", s.muhat))?;
    for _ in 0..100 {
        let m2: i64 = r.gen_range(1..=4);
        let m1: i64 = r.gen_range(-8..=8);
        let floor = mmin(&BigInt::from(m1), &BigInt::from(m2), &amb).map_err(|e| e.to_string())?;
        let m0 = floor + BigInt::from(r.gen_range(0..=4));
        let tp = TiltParams::new(m0, BigInt::from(m1), BigInt::from(m2)).map_err(|e| e.to_string())?;
        let classes: Vec<NumericalClass> = (0..10).map(|_| random_heart_class(&mut r, &tp, &amb)).collect();
        let coeffs = classes
            .iter()
            .map(|c| tilted_coeffs(c, &tp, &amb))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let tuples: Vec<Vec<Rational>> = coeffs.iter().map(|c| vec![from_big(&c.c1), from_big(&c.c0)]).collect();
        let rep = is_positive_system(&tuples).map_err(|e| e.to_string())?;
        ensure(rep.positive && rep.exhaustive, || format!("{tp:?}: {rep:?} on {classes:?}"))?;
        let charges = classes
            .iter()
            .map(|c| central_charge(c, &tp, &amb))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let slopes = coeffs
            .iter()
            .map(|c| c.slope_vector())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        for i in 0..classes.len() {
            for j in 0..classes.len() {
                let by_phase = compare_phase(&charges[i], &charges[j]).map_err(|e| e.to_string())?;
                let by_slope = compare_slopes(&slopes[i], &slopes[j]).map_err(|e| e.to_string())?;
                ensure(by_phase == by_slope, || {
                    format!("{tp:?}: phase {by_phase:?} vs slope {by_slope:?} on {i}, {j}")
                })?;
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("pbar matches the closed form on P^2", c1_pbar, Duration::from_secs(1)),
        ("mmin values on P^2", c2_mmin, Duration::from_secs(1)),
        ("HN engine equals factorization up to 10^4", c3_engine_vs_factorization, Duration::from_secs(10)),
        ("seesaw and HN verification on random steps", c4_seesaw_suite, Duration::from_secs(10)),
        ("Kronecker positivity and dimension additivity", c5_kronecker, Duration::from_secs(5)),
        ("weighted spread inequality and equality case", c6_lan, Duration::from_secs(10)),
        ("Bogomolov discriminants and certificates", c7_bogomolov, Duration::from_secs(1)),
        ("Hodge index witness", c8_hodge, Duration::from_secs(1)),
        ("polynomial round trip and convolution Euler", c9_polys_and_euler, Duration::from_secs(5)),
        ("tilted positivity and phase order", c10_tilted_positivity, Duration::from_secs(5)),
    ];
    let mut failed = Vec::new();
    for (k, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = check();
        let took = start.elapsed();
        let res = res.and_then(|_| {
            ensure(took <= *budget, || format!("took {took:?}, budget {budget:?}"))
        });
        match &res {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({took:.2?})", k + 1),
            Err(e) => {
                println!("criterion {:>2}: FAIL  {name} ({took:.2?}): {e}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
