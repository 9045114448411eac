//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or exceeds its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gapbound::conic::{
    enumerate_points, example1_asymptotics, example1_generate, remark3_determinant, triangle_check,
    ConicPoint,
};
use gapbound::gaps::combinatorics::{shifted_split_min, valuation_split_min};
use gapbound::gaps::{
    admissible_s, cor2_check, prop1_check, t_formula, theorem2_subset_check, BoundPremise,
    SizedRing,
};
use gapbound::overlap::{
    cor4_check, cor5_check, prop2_check, prop2_sides, prop2_sides_sorted, MeasureSpace,
    OverlapIntInstance,
};
use gapbound::report::Quantity;
use gapbound::rings::arith::divisors_u64;
use gapbound::rings::{QuadRing, Rational, Ring};
use gapbound::vandermonde::random::{random_instance, AnyInstance, RingChoice, Rng64};
use gapbound::vandermonde::{
    arc_exponent, bound_exponent, k_by_enumeration, k_function, verify_identity, IdentityInstance,
};
use gapbound::Error;
use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};

/// Seed shared by every randomized criterion.
const SEED: u64 = 0x5eed_2024;

/// Accepted band for the asymptotic ratios at t = 1000.
const RATIO_LOW: (i64, i64) = (98, 100);
const RATIO_HIGH: (i64, i64) = (102, 100);

/// `c` in `det₁ = c·√−d` for the parametric triples.
const DET1_CONSTANT: i64 = 8;

type Outcome = Result<String, String>;

/// Id, name, check and time budget in seconds.
type Criterion = (u32, &'static str, fn() -> Outcome, u64);

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn identity_all_k<R: Ring>(inst: &IdentityInstance<R>) -> Result<usize, String> {
    for k in 0..inst.m() {
        let report = verify_identity(inst, k).map_err(|e| e.to_string())?;
        ensure(report.passed(), || {
            format!("identity fails at k = {k}: {report}")
        })?;
    }
    Ok(inst.m())
}

fn criterion_1() -> Outcome {
    let mut rings = vec![RingChoice::Integer];
    rings.extend([1, 2, 3, 5, 7].map(RingChoice::Quadratic));
    rings.extend([RingChoice::Univariate, RingChoice::Bivariate]);
    let mut rng = Rng64::seed_from_u64(SEED);
    let mut equalities = 0;
    for choice in &rings {
        for i in 0..500 {
            let m = 2 + i % 5;
            equalities += match random_instance(*choice, &mut rng, m) {
                AnyInstance::Integer(x) => identity_all_k(&x),
                AnyInstance::Quadratic(x) => identity_all_k(&x),
                AnyInstance::Polynomial(x) => identity_all_k(&x),
            }
            .map_err(|e| format!("{choice}, instance {i}: {e}"))?;
        }
    }
    Ok(format!(
        "{} rings x 500 instances, {equalities} exact equalities",
        rings.len()
    ))
}

fn criterion_2() -> Outcome {
    let mut grid = 0;
    for m in 2..=50usize {
        for j in 0..=(8 * m as i64) {
            let s = rat(j, 8);
            let k = k_function(&s, m).map_err(|e| e.to_string())?;
            let (brute, maximizers) = k_by_enumeration(&s, m);
            ensure(k.value == brute && maximizers.contains(&k.argmax_k), || {
                format!("closed form differs from enumeration at m = {m}, s = {j}/8")
            })?;
            grid += 1;
        }
    }
    for m in (3..=199usize).step_by(2) {
        // oracle: 1/4 − 1/(8⌊m/2⌋+4) written out independently
        let h = (m / 2) as i64;
        let expected = rat(1, 4) - rat(1, 8 * h + 4);
        let got = bound_exponent(&rat(1, 2), m).map_err(|e| e.to_string())?;
        ensure(got == expected && arc_exponent(m) == expected, || {
            format!("K(m/2,m)/C(m,2) mismatch at m = {m}")
        })?;
    }
    for m in 2..=50usize {
        let mr = Rational::from_integer((m - 1).into());
        for j in 0..=16 {
            let s = rat(j, 16);
            let e = bound_exponent(&s, m).map_err(|e| e.to_string())?;
            let mid = &s * &s - &s * (Rational::one() - &s) / &mr;
            let low = &s * &s - Rational::one() / (rat(4, 1) * &mr);
            ensure(e >= mid && mid >= low, || {
                format!("lower bound chain fails at m = {m}, s = {j}/16")
            })?;
        }
    }
    Ok(format!(
        "{grid} grid points, 99 odd m, 49x17 lower-bound points"
    ))
}

fn prop1_holds<R: SizedRing>(inst: &IdentityInstance<R>) -> Result<bool, String> {
    let phi = R::NATURAL_SIZE;
    let s = admissible_s(inst, phi, 8).map_err(|e| e.to_string())?;
    let report = prop1_check(inst, phi, &BoundPremise::trivial(s.clone(), phi))
        .map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("bound fails: {report}"))?;
    Ok(!s.is_zero())
}

fn criterion_3() -> Outcome {
    let mut rng = Rng64::seed_from_u64(SEED ^ 3);
    let rings = [
        RingChoice::Integer,
        RingChoice::Quadratic(1),
        RingChoice::Quadratic(2),
        RingChoice::Quadratic(3),
        RingChoice::Quadratic(5),
        RingChoice::Quadratic(7),
        RingChoice::Univariate,
        RingChoice::Bivariate,
    ];
    let mut nontrivial = 0;
    for i in 0..1000usize {
        let choice = rings[i % rings.len()];
        let m = 2 + (i / rings.len()) % 5;
        let s_positive = match random_instance(choice, &mut rng, m) {
            AnyInstance::Integer(x) => prop1_holds(&x),
            AnyInstance::Quadratic(x) => prop1_holds(&x),
            AnyInstance::Polynomial(x) => prop1_holds(&x),
        }
        .map_err(|e| format!("instance {i} ({choice}, m = {m}): {e}"))?;
        nontrivial += usize::from(s_positive);
    }
    Ok(format!("1000 instances, {nontrivial} with s > 0"))
}

fn criterion_4() -> Outcome {
    let mut conics = 0;
    let mut triples = 0u64;
    // the R² form is stronger and false; record where it fails
    let mut literal_failures = Vec::new();
    for d in [1u64, 2, 3, 5] {
        for r in 1..=5000u64 {
            let rb = BigInt::from(r);
            let points = enumerate_points(d, &rb).map_err(|e| e.to_string())?;
            if points.len() < 3 {
                continue;
            }
            let report = theorem2_subset_check(d, &rb, &points, 3).map_err(|e| e.to_string())?;
            // oracle: N^(1/2) ≥ R^(1/6) cleared to N³ ≥ R, in integers
            let norm = |p: &ConicPoint, q: &ConicPoint| {
                let (dx, dy) = (&p.x - &q.x, &p.y - &q.y);
                &dx * &dx + BigInt::from(d) * &dy * &dy
            };
            let worst = points
                .iter()
                .tuple_combinations()
                .map(|(a, b, c)| norm(a, b).max(norm(a, c)).max(norm(b, c)))
                .min()
                .expect("at least one triple");
            let cube = worst.pow(3);
            let oracle = cube >= rb;
            ensure(report.passed() && oracle, || {
                format!(
                    "d = {d}, R = {r}: library {}, oracle {oracle}",
                    report.passed()
                )
            })?;
            if cube < rb.pow(2) {
                literal_failures.push(format!("d={d} R={r} maxN={worst}"));
            }
            conics += 1;
            let n = points.len() as u64;
            triples += n * (n - 1) * (n - 2) / 6;
        }
    }
    let literal = match literal_failures.first() {
        Some(first) => format!(
            "(maxN)^3 >= R^2 form fails on {} conics, first {first}",
            literal_failures.len()
        ),
        None => "(maxN)^3 >= R^2 form also holds".into(),
    };
    Ok(format!(
        "{conics} conics, {triples} triples, (maxN)^3 >= R everywhere; {literal}"
    ))
}

fn criterion_5() -> Outcome {
    let mut families = 0;
    for d in 1..=10u64 {
        let ring = QuadRing::order(d).map_err(|e| e.to_string())?;
        let expected = ring.element(0, DET1_CONSTANT);
        let first = remark3_determinant(1, d).map_err(|e| e.to_string())?;
        for t in 1..=50u64 {
            let fam = example1_generate(t, d).map_err(|e| e.to_string())?;
            let distinct = fam.points.iter().all_unique();
            let on = fam
                .points
                .iter()
                .all(|p| &p.x * &p.x + BigInt::from(d) * &p.y * &p.y == fam.r);
            ensure(distinct && on, || format!("t = {t}, d = {d}: bad family"))?;
            let det = remark3_determinant(t, d).map_err(|e| e.to_string())?;
            ensure(det.real().is_zero(), || {
                format!("t = {t}, d = {d}: det1 = {det} has a real part")
            })?;
            ensure(det == first, || {
                format!("t = {t}, d = {d}: det1 = {det} differs from t = 1")
            })?;
            ensure(det == expected, || {
                format!("t = {t}, d = {d}: det1 = {det}, expected {expected}")
            })?;
            families += 1;
        }
    }
    let (low, high) = (
        rat(RATIO_LOW.0, RATIO_LOW.1),
        rat(RATIO_HIGH.0, RATIO_HIGH.1),
    );
    let mut ratios = Vec::new();
    for d in [1u64, 2] {
        let (ratio_r, ratio_d) = example1_asymptotics(1000, d).map_err(|e| e.to_string())?;
        for (name, r) in [("ratio_R", &ratio_r), ("ratio_D_sq", &ratio_d)] {
            ensure(*r >= low && *r <= high, || {
                format!("d = {d}: {name} out of band")
            })?;
        }
        ratios.push(format!(
            "d={d}: R {:.5}, D^2 {:.5}",
            to_f64(&ratio_r),
            to_f64(&ratio_d)
        ));
    }
    Ok(format!(
        "{families} families, det1 = {DET1_CONSTANT}*sqrt(-d); {}",
        ratios.join("; ")
    ))
}

fn to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

fn criterion_6() -> Outcome {
    let mut rng = Rng64::seed_from_u64(SEED ^ 6);
    let mut checks = 0;
    for i in 0..10_000 {
        let m = rng.gen_range(2..=8);
        let a: Vec<Rational> = (0..m)
            .map(|_| rat(rng.gen_range(0..=60), rng.gen_range(1..=12)))
            .collect();
        for k in 0..m {
            let report = prop2_check(&a, k).map_err(|e| e.to_string())?;
            let (lhs, rhs) = prop2_sides(&a, k).map_err(|e| e.to_string())?;
            let (ls, rs, slack) = prop2_sides_sorted(&a, k).map_err(|e| e.to_string())?;
            let sorted_pass = ls >= rs && slack >= Rational::zero();
            ensure(
                report.passed() && sorted_pass && lhs == ls && rhs == rs,
                || format!("vector {i}, k = {k}: routes disagree or inequality fails"),
            )?;
            checks += 1;
        }
    }
    let mut spaces = 0;
    while spaces < 1000 {
        let atoms = rng.gen_range(1..=16);
        let raw: Vec<i64> = (0..atoms).map(|_| rng.gen_range(0..=9)).collect();
        let total: i64 = raw.iter().sum();
        if total == 0 {
            continue;
        }
        let weights = raw.iter().map(|&w| rat(w, total)).collect();
        let m = rng.gen_range(2..=6);
        let sets = (0..m)
            .map(|_| (0..atoms).filter(|_| rng.gen_bool(0.5)).collect())
            .collect();
        let space = MeasureSpace::new(weights, sets).map_err(|e| e.to_string())?;
        let report = cor4_check(&space).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("space {spaces}: {report}"))?;
        spaces += 1;
    }
    let tight = MeasureSpace::new(vec![Rational::one()], vec![vec![0], vec![0]])
        .and_then(|s| cor4_check(&s))
        .map_err(|e| e.to_string())?;
    let c = tight.conclusion.as_ref().expect("asserted");
    ensure(
        tight.passed()
            && c.is_tight()
            && c.lhs == Quantity::Rational(Rational::one())
            && c.rhs == Quantity::Rational(Rational::one()),
        || format!("tight witness not reproduced: {tight}"),
    )?;
    Ok(format!(
        "{checks} vector checks, 1000 spaces, tight witness 1 >= 1"
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = Rng64::seed_from_u64(SEED ^ 7);
    let mut checks = 0;
    for i in 0..10_000 {
        let c: u64 = rng.gen_range(1..=1_000_000_000_000);
        let divs = divisors_u64(c);
        let m = rng.gen_range(2..=6);
        let a = (0..m)
            .map(|_| BigInt::from(divs[rng.gen_range(0..divs.len())]))
            .collect();
        let inst = OverlapIntInstance::new(BigInt::from(c), a).map_err(|e| e.to_string())?;
        for k in 0..m {
            let report = cor5_check(&inst, k, None).map_err(|e| e.to_string())?;
            ensure(report.passed(), || {
                format!("instance {i}, k = {k}: {report}")
            })?;
            checks += 1;
        }
    }
    for (c, a) in [(6, vec![2, 3, 6]), (12, vec![4, 6])] {
        let inst = OverlapIntInstance::new(
            BigInt::from(c),
            a.iter().map(|&x| BigInt::from(x)).collect(),
        )
        .map_err(|e| e.to_string())?;
        let report = cor5_check(&inst, 1, None).map_err(|e| e.to_string())?;
        ensure(
            report.passed() && report.note_value("quotient") == Some("1"),
            || format!("tight witness c = {c} not reproduced: {report}"),
        )?;
    }
    Ok(format!("{checks} divisibility checks, 2 tight witnesses"))
}

fn criterion_8() -> Outcome {
    let qs = [3u64, 4, 5, 7, 8, 11, 12];
    let ss = [rat(1, 4), rat(1, 3), rat(1, 2)];
    let (mut checked, mut premise_skips) = (0u64, 0u64);
    for n in 1..=20_000u64 {
        let divs = divisors_u64(n);
        let nb = BigInt::from(n);
        for &q in &qs {
            for a in (0..q).filter(|a| a.gcd(&q) == 1) {
                let class: Vec<BigInt> = divs
                    .iter()
                    .filter(|&&x| x % q == a)
                    .map(|&x| BigInt::from(x))
                    .collect();
                if class.len() < 2 {
                    continue;
                }
                for s in &ss {
                    match cor2_check(&nb, &BigInt::from(q), &BigInt::from(a), s, Some(&class)) {
                        Ok(report) => {
                            ensure(report.passed(), || {
                                format!("N = {n}, q = {q}, a = {a}: {report}")
                            })?;
                            checked += 1;
                        }
                        Err(Error::PremiseFailed(_)) => premise_skips += 1,
                        Err(e) => return Err(format!("N = {n}, q = {q}, a = {a}: {e}")),
                    }
                }
            }
        }
    }
    ensure(checked > 0, || "no class satisfied the premise".into())?;
    Ok(format!(
        "{checked} classes checked, {premise_skips} skipped by the premise"
    ))
}

fn criterion_9() -> Outcome {
    let mut triples = 0u64;
    for r in 1..=2000u64 {
        let points = enumerate_points(1, &BigInt::from(r)).map_err(|e| e.to_string())?;
        for (a, b, c) in points.iter().tuple_combinations() {
            let report =
                triangle_check(1, &[a.clone(), b.clone(), c.clone()]).map_err(|e| e.to_string())?;
            ensure(report.passed(), || format!("R = {r}: {report}"))?;
            triples += 1;
        }
    }
    let worked = [
        ConicPoint::new(1, 7),
        ConicPoint::new(5, 5),
        ConicPoint::new(-1, 7),
    ];
    let report = triangle_check(1, &worked).map_err(|e| e.to_string())?;
    let c = report.conclusion.as_ref().expect("asserted");
    ensure(
        report.passed()
            && c.lhs == Quantity::Integer(64.into())
            && report.note_value("shoelace") == Some("4"),
        || format!("worked instance: {report}"),
    )?;
    Ok(format!("{triples} triples, worked instance 64 = 4*16"))
}

fn criterion_10() -> Outcome {
    for m in (3..=21usize).step_by(2) {
        let t = t_formula(m);
        let (vp, _) = valuation_split_min(m);
        let (vp2, _) = shifted_split_min(m);
        ensure(vp == t && vp2 >= t, || {
            format!("m = {m}: mins {vp}, {vp2}, t = {t}")
        })?;
    }
    let (even_min, _) = valuation_split_min(4);
    ensure(even_min == 2 && t_formula(4) == 3, || {
        format!(
            "even-m discrepancy not reproduced: min {even_min}, t(4) = {}",
            t_formula(4)
        )
    })?;
    Ok("odd m in 3..=21 exact; known even-m gap: m = 4 gives 2 < t(4) = 3".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "identity suite", criterion_1, 60),
        (2, "K-function", criterion_2, 60),
        (3, "generic gap bound", criterion_3, 60),
        (4, "conic scan", criterion_4, 300),
        (5, "parametric triples", criterion_5, 30),
        (6, "overlap", criterion_6, 60),
        (7, "divisibility in Z", criterion_7, 60),
        (8, "divisor gaps", criterion_8, 300),
        (9, "triangle formula", criterion_9, 120),
        (10, "valuation minima", criterion_10, 1),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failures = 0;
    for (id, name, run, budget) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| *f == id.to_string()) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {id:>2} [{name}]: {status} ({:.2} s / {budget} s) {detail}",
            elapsed.as_secs_f64()
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
