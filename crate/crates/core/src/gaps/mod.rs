//! Lower bounds for the largest gap `sup φ(α_i − α_j)` and their
//! specializations to quadratic norms, divisors in residue classes,
//! polynomial divisors and lattice points on conics.

pub mod combinatorics;
mod size;

pub use size::{SizeFunction, SizeValue, SizedRing};

use std::cmp::Ordering;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::conic::ConicPoint;
use crate::error::{out_of_range, Error, Result};
use crate::report::{CheckReport, Conclusion, Quantity, Witness};
use crate::rings::arith::{binomial, binomial2, divisors};
use crate::rings::{format_rational, ExactPower, MultiPoly, QuadInt, Rational, Ring};
use crate::vandermonde::{arc_exponent, bound_exponent, det_k, IdentityInstance};

/// Largest number of subsets a single subset check may enumerate.
pub const MAX_SUBSETS: u64 = 1_000_000;

/// Caller-supplied part of the premise: the exponent `s` in
/// `φ(α_i) ≥ φ(γ)^s` and the lower bound `L ≤ φ(det_k)`. The remaining
/// quantities (`m`, `φ(γ)`) are read off the instance and echoed in the
/// report.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundPremise {
    pub s: Rational,
    pub l: SizeValue,
}

impl BoundPremise {
    /// `L = 1`, which every nonzero determinant satisfies.
    pub fn trivial(s: Rational, phi: SizeFunction) -> Self {
        Self {
            s,
            l: SizeValue::one_for(phi),
        }
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn check_unit_interval(what: &'static str, s: &Rational, open: bool) -> Result<()> {
    let bad = if open {
        !s.is_positive() || *s >= Rational::one()
    } else {
        s.is_negative() || *s > Rational::one()
    };
    if bad {
        let interval = if open { "(0, 1)" } else { "[0, 1]" };
        return Err(out_of_range(
            what,
            format!("{} not in {interval}", format_rational(s)),
        ));
    }
    Ok(())
}

/// Index pair maximizing `key` over `i < j`; the lexicographically first
/// pair wins ties.
fn max_pair<T: Ord, F: FnMut(usize, usize) -> T>(m: usize, mut key: F) -> (usize, usize, T) {
    let mut best: Option<(usize, usize, T)> = None;
    for i in 0..m {
        for j in i + 1..m {
            let v = key(i, j);
            if best.as_ref().is_none_or(|(_, _, b)| v > *b) {
                best = Some((i, j, v));
            }
        }
    }
    best.expect("at least one pair")
}

fn pair_witness<T: ToString>(label: &str, items: &[T], i: usize, j: usize) -> Witness {
    Witness::new(label, [items[i].to_string(), items[j].to_string()])
}

/// Largest `s` on the grid `{j/den : 0 ≤ j ≤ den}` with `φ(α_i) ≥ φ(γ)^s`
/// for every `i`.
pub fn admissible_s<R: SizedRing>(
    instance: &IdentityInstance<R>,
    phi: SizeFunction,
    den: u32,
) -> Result<Rational> {
    let phi_gamma = instance.gamma().size(phi)?;
    let sizes = instance
        .alpha()
        .iter()
        .map(|a| a.size(phi))
        .collect::<Result<Vec<_>>>()?;
    for j in (0..=den).rev() {
        let s = rat(j.into(), den.into());
        let target = phi_gamma.pow(&s)?;
        let mut ok = true;
        for v in &sizes {
            if v.compare(&target)? == Ordering::Less {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(s);
        }
    }
    unreachable!("s = 0 is always admissible")
}

/// `sup φ(α_i − α_j) ≥ L^{1/C(m,2)} · φ(γ)^{K(sm,m)/C(m,2)}`, asserted only
/// once `φ(α_i) ≥ φ(γ)^s` and `φ(det_k) ≥ L` have been verified for every
/// `i` and `k`.
pub fn prop1_check<R: SizedRing>(
    instance: &IdentityInstance<R>,
    phi: SizeFunction,
    premise: &BoundPremise,
) -> Result<CheckReport> {
    check_unit_interval("s", &premise.s, false)?;
    let m = instance.m();
    let phi_gamma = instance.gamma().size(phi)?;
    if premise.l.compare(&SizeValue::one_for(phi))? == Ordering::Less {
        return Err(out_of_range("L", format!("{} < 1", premise.l)));
    }
    let c = Rational::from_integer(binomial2(m).into());
    let exponent = bound_exponent(&premise.s, m)?;

    let mut report = CheckReport::new("prop1");
    report
        .note("ring", instance.tag())
        .note("phi", phi)
        .note("m", m)
        .note("s", format_rational(&premise.s))
        .note("L", &premise.l)
        .note("phi_gamma", &phi_gamma)
        .note("exponent", format_rational(&exponent));

    let target = phi_gamma.pow(&premise.s)?;
    for (i, a) in instance.alpha().iter().enumerate() {
        let pass = a.size(phi)?.compare(&target)? != Ordering::Less;
        report.premise(format!("phi(alpha_{i}) >= phi(gamma)^s"), pass);
    }
    for k in 0..m {
        let det = det_k(instance, k)?;
        let pass = det.size(phi)?.compare(&premise.l)? != Ordering::Less;
        report.premise(format!("phi(det_{k}) >= L"), pass);
    }
    if !report.premises_hold() {
        return Ok(report);
    }

    let alpha = instance.alpha();
    let diffs: Vec<Vec<Option<SizeValue>>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| (j > i).then(|| alpha[i].minus(&alpha[j]).size(phi)))
                .map(Option::transpose)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut best = (0, 1);
    for i in 0..m {
        for j in i + 1..m {
            let (bi, bj) = best;
            let cur = diffs[i][j].as_ref().expect("upper triangle");
            let top = diffs[bi][bj].as_ref().expect("upper triangle");
            if cur.compare(top)? == Ordering::Greater {
                best = (i, j);
            }
        }
    }
    let lhs = diffs[best.0][best.1].clone().expect("upper triangle");
    let rhs = premise
        .l
        .pow(&(Rational::one() / c))?
        .mul(&phi_gamma.pow(&exponent)?)?;
    let ordering = lhs.compare(&rhs)?;
    report.conclusion = Some(Conclusion::at_least(
        lhs.to_quantity(),
        rhs.to_quantity(),
        ordering,
    ));
    report.witness = Some(pair_witness("max pair", alpha, best.0, best.1));
    Ok(report)
}

/// Norm form of the bound in `Z[√−d]`: for `m` distinct points of norm `R`,
/// `sup |N(α_i − α_j)|^{1/2} ≥ R^{K(m/2,m)/C(m,2)}`. With more than `m`
/// points the supremum runs over all of them.
pub fn cor1_check(points: &[QuadInt], m: usize) -> Result<CheckReport> {
    if m < 2 {
        return Err(Error::TooFew { needed: 2, got: m });
    }
    if points.len() < m {
        return Err(Error::TooFew {
            needed: m,
            got: points.len(),
        });
    }
    let d = points[0].d();
    if let Some(p) = points.iter().find(|p| p.d() != d) {
        return Err(Error::RingMismatch(format!("{p} is not in Z[sqrt(-{d})]")));
    }
    if points.iter().any(Ring::vanishes) {
        return Err(Error::Zero("points"));
    }
    let r = points[0].norm();
    if let Some(p) = points.iter().find(|p| p.norm() != r) {
        return Err(out_of_range(
            "norm",
            format!("N({p}) = {} differs from {r}", p.norm()),
        ));
    }
    for (i, j) in (0..points.len()).tuple_combinations() {
        if points[i] == points[j] {
            return Err(Error::NotDistinct(i, j));
        }
    }
    let exponent = bound_exponent(&rat(1, 2), m)?;
    let (i, j, sup) = max_pair(points.len(), |i, j| points[i].minus(&points[j]).norm());
    let lhs = ExactPower::power(sup, rat(1, 2))?;
    let rhs = ExactPower::power(r.clone(), exponent.clone())?;
    let ordering = lhs.compare(&rhs);

    let mut report = CheckReport::new("cor1");
    report
        .note("d", d)
        .note("R", &r)
        .note("m", m)
        .note("points", points.len())
        .note("exponent", format_rational(&exponent));
    report.conclusion = Some(Conclusion::at_least(
        Quantity::Power(lhs),
        Quantity::Power(rhs),
        ordering,
    ));
    report.witness = Some(pair_witness("max pair", points, i, j));
    Ok(report)
}

/// Divisors of `n` in the class `a mod q`, ascending.
pub fn divisors_in_class(n: &BigInt, q: &BigInt, a: &BigInt) -> Result<Vec<BigInt>> {
    let a = a.mod_floor(q);
    Ok(divisors(n)?
        .into_iter()
        .filter(|x| x.mod_floor(q) == a)
        .collect())
}

/// Gap bound for divisors of `N` in a reduced residue class mod `q`:
/// `sup |d_i − d_j| ≥ q·N^{K(sm,m)/C(m,2)}` given `d_i ≥ N^s`. Also asserts
/// that the smallest gap is a multiple of `q`.
///
/// With `subset = None` every divisor in the class is used.
pub fn cor2_check(
    n: &BigInt,
    q: &BigInt,
    a: &BigInt,
    s: &Rational,
    subset: Option<&[BigInt]>,
) -> Result<CheckReport> {
    if !n.is_positive() {
        return Err(out_of_range("N", format!("{n} < 1")));
    }
    if !q.is_positive() {
        return Err(out_of_range("q", format!("{q} < 1")));
    }
    if !a.gcd(q).is_one() {
        return Err(out_of_range("a", format!("gcd({a}, {q}) != 1")));
    }
    check_unit_interval("s", s, true)?;
    let class = a.mod_floor(q);
    let mut selected: Vec<BigInt> = match subset {
        None => divisors_in_class(n, q, a)?,
        Some(list) => {
            for x in list {
                if !x.is_positive() || !(n % x).is_zero() {
                    return Err(Error::NotDivisible(format!(
                        "{x} is not a positive divisor of {n}"
                    )));
                }
                if x.mod_floor(q) != class {
                    return Err(out_of_range(
                        "divisor",
                        format!("{x} is not {class} mod {q}"),
                    ));
                }
            }
            list.to_vec()
        }
    };
    selected.sort();
    if let Some(w) = selected.windows(2).position(|w| w[0] == w[1]) {
        return Err(Error::NotDistinct(w, w + 1));
    }
    let m = selected.len();
    if m < 2 {
        return Err(Error::TooFew { needed: 2, got: m });
    }

    let (num, den) = (s.numer(), s.denom());
    let (num_u, den_u) = (
        num.to_u32()
            .ok_or_else(|| out_of_range("s", "numerator too large"))?,
        den.to_u32()
            .ok_or_else(|| out_of_range("s", "denominator too large"))?,
    );
    let n_pow = n.pow(num_u);
    let mut report = CheckReport::new("cor2");
    for x in &selected {
        let pass = x.pow(den_u) >= n_pow;
        if !pass {
            return Err(Error::PremiseFailed(format!(
                "{x}^{den} < {n}^{num}, so {x} < N^s"
            )));
        }
        report.premise(format!("{x} >= N^{}", format_rational(s)), pass);
    }

    let exponent = bound_exponent(s, m)?;
    let max_gap = &selected[m - 1] - &selected[0];
    let (min_at, min_gap) = selected
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .enumerate()
        .min_by(|x, y| x.1.cmp(&y.1))
        .expect("m >= 2");
    let lhs = ExactPower::integer(max_gap.clone())?;
    let rhs = ExactPower::integer(q.clone())?.mul(&ExactPower::power(n.clone(), exponent.clone())?);
    let ordering = lhs.compare(&rhs);
    report
        .note("N", n)
        .note("q", q)
        .note("a", &class)
        .note("s", format_rational(s))
        .note("m", m)
        .note("exponent", format_rational(&exponent))
        .note("min_gap", &min_gap)
        .note(
            "min_pair",
            format!("{}, {}", selected[min_at], selected[min_at + 1]),
        );
    report.conclusion = Some(Conclusion::at_least(
        Quantity::Power(lhs),
        Quantity::Power(rhs),
        ordering,
    ));
    report.auxiliary.push((
        "min gap divisible by q".into(),
        Conclusion::divisible_by(min_gap, q.clone()),
    ));
    report.witness = Some(pair_witness("max pair", &selected, 0, m - 1));
    Ok(report)
}

/// Degree form for polynomial divisors of a common multiple `R`:
/// `sup deg(P_i − P_j) ≥ deg(R)·K(sm,m)/C(m,2)` given `deg P_i ≥ s·deg R`.
pub fn cor3_check(polys: &[MultiPoly], common: &MultiPoly, s: &Rational) -> Result<CheckReport> {
    check_unit_interval("s", s, false)?;
    let m = polys.len();
    if m < 2 {
        return Err(Error::TooFew { needed: 2, got: m });
    }
    if common.is_zero() {
        return Err(Error::Zero("common multiple"));
    }
    if polys.iter().any(MultiPoly::is_zero) {
        return Err(Error::Zero("polynomials"));
    }
    if let Some(p) = polys.iter().find(|p| p.arity() != common.arity()) {
        return Err(Error::RingMismatch(format!(
            "{p} has {} variables, R has {}",
            p.arity(),
            common.arity()
        )));
    }
    for (i, j) in (0..m).tuple_combinations() {
        if polys[i] == polys[j] {
            return Err(Error::NotDistinct(i, j));
        }
    }
    for p in polys {
        if common.exact_div(p).is_none() {
            return Err(Error::NotDivisible(format!("{p} does not divide {common}")));
        }
    }
    let deg = |p: &MultiPoly| Rational::from_integer(p.degree().finite().expect("nonzero").into());
    let deg_r = deg(common);
    let threshold = s * &deg_r;
    let mut report = CheckReport::new("cor3");
    for p in polys {
        if deg(p) < threshold {
            return Err(Error::PremiseFailed(format!(
                "deg({p}) < {} = s * deg(R)",
                format_rational(&threshold)
            )));
        }
        report.premise(format!("deg({p}) >= s*deg(R)"), true);
    }
    let exponent = bound_exponent(s, m)?;
    let (i, j, sup) = max_pair(m, |i, j| polys[i].minus(&polys[j]).degree());
    let lhs = Rational::from_integer(sup.finite().expect("distinct").into());
    let rhs = &deg_r * &exponent;
    let ordering = lhs.cmp(&rhs);
    report
        .note("deg_R", format_rational(&deg_r))
        .note("s", format_rational(s))
        .note("m", m)
        .note("exponent", format_rational(&exponent));
    report.conclusion = Some(Conclusion::at_least(
        Quantity::Rational(lhs),
        Quantity::Rational(rhs),
        ordering,
    ));
    report.witness = Some(pair_witness("max pair", polys, i, j));
    Ok(report)
}

/// The arc exponent `s(m)` and the refined constants `t(m)`, `l(m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem2Constants {
    pub m: usize,
    pub s_m: Rational,
    pub t_m: u64,
    pub l_m: Rational,
    /// The odd value `t` and `l` were evaluated at (`m` or `m + 1`).
    pub odd_m: usize,
}

/// `⌊(m²/2 − m)/2⌋ + 1`, the raw formula with no parity convention.
pub fn t_formula(m: usize) -> u64 {
    let m = m as u64;
    (m * m).saturating_sub(2 * m) / 4 + 1
}

pub fn theorem2_constants(m: usize) -> Result<Theorem2Constants> {
    if m < 2 {
        return Err(out_of_range("m", format!("{m} < 2")));
    }
    let odd_m = if m % 2 == 1 { m } else { m + 1 };
    let t_m = t_formula(odd_m);
    let c = Rational::from_integer(binomial2(odd_m).into());
    let l_m = rat(1, 2) * (Rational::one() - Rational::from_integer(t_m.into()) / c);
    Ok(Theorem2Constants {
        m,
        s_m: arc_exponent(m),
        t_m,
        l_m,
        odd_m,
    })
}

/// Every `m`-subset of points on `X² + dY² = R` has
/// `max |N(α_i − α_j)|^{1/2} ≥ R^{s(m)}`. The witness is the subset with the
/// smallest maximum, lexicographically first among ties. Fewer than `m`
/// points is a vacuous pass.
pub fn theorem2_subset_check(
    d: u64,
    r: &BigInt,
    points: &[ConicPoint],
    m: usize,
) -> Result<CheckReport> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(out_of_range("m", format!("{m} is not an odd integer >= 3")));
    }
    if d == 0 {
        return Err(out_of_range("d", "0 < 1"));
    }
    for p in points {
        p.check_on(d, r)?;
    }
    for (i, j) in (0..points.len()).tuple_combinations() {
        if points[i] == points[j] {
            return Err(Error::NotDistinct(i, j));
        }
    }
    let n = points.len();
    let mut report = CheckReport::new(format!("theorem2[d={d}, R={r}, m={m}]"));
    let exponent = arc_exponent(m);
    report
        .note("d", d)
        .note("R", r)
        .note("m", m)
        .note("points", n)
        .note("s_m", format_rational(&exponent));
    if n < m {
        return Ok(report);
    }
    let subsets = binomial(n, m);
    if subsets > MAX_SUBSETS {
        return Err(Error::TooLarge(format!(
            "C({n}, {m}) = {subsets} subsets exceeds {MAX_SUBSETS}"
        )));
    }
    report.note("subsets", subsets);

    let norms: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| points[i].diff_norm(&points[j], d)).collect())
        .collect();
    let subset_max = |idx: &[usize]| {
        idx.iter()
            .tuple_combinations()
            .map(|(&i, &j)| &norms[i][j])
            .max()
            .expect("m >= 3")
            .clone()
    };
    let mut best: Option<(Vec<usize>, BigInt)> = None;
    for idx in (0..n).combinations(m) {
        let v = subset_max(&idx);
        if best.as_ref().is_none_or(|(_, b)| v < *b) {
            best = Some((idx, v));
        }
    }
    let (idx, min_max) = best.expect("n >= m");
    let lhs = ExactPower::power(min_max, rat(1, 2))?;
    let rhs = ExactPower::power(r.clone(), exponent)?;
    let ordering = lhs.compare(&rhs);
    if ordering == Ordering::Less {
        let failing = (0..n)
            .combinations(m)
            .filter(|idx| {
                ExactPower::power(subset_max(idx), rat(1, 2))
                    .map(|v| v.compare(&rhs) == Ordering::Less)
                    .unwrap_or(true)
            })
            .count();
        report.note("failing_subsets", failing);
    }
    report.conclusion = Some(Conclusion::at_least(
        Quantity::Power(lhs),
        Quantity::Power(rhs),
        ordering,
    ));
    report.witness = Some(Witness::new("min subset", idx.iter().map(|&i| &points[i])));
    Ok(report)
}
