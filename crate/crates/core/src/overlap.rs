//! Overlap inequalities: the elementary bound on `Σ inf(a_i, a_j)`, its
//! integrated form on finite probability spaces, and the gcd form for
//! divisors of a common multiple in `Z`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{out_of_range, Error, Result};
use crate::report::{CheckReport, Conclusion, Quantity, Witness};
use crate::rings::{format_rational, ExactPower, Rational};
use crate::vandermonde::{bound_exponent, k_function};

fn triangular(k: usize) -> Rational {
    Rational::from_integer(BigInt::from(k * (k + 1) / 2))
}

fn validate_vector(a: &[Rational], k: usize) -> Result<()> {
    if a.len() < 2 {
        return Err(Error::TooFew {
            needed: 2,
            got: a.len(),
        });
    }
    if let Some(x) = a.iter().find(|x| x.is_negative()) {
        return Err(out_of_range("a_i", format!("{} < 0", format_rational(x))));
    }
    if k >= a.len() {
        return Err(out_of_range(
            "k",
            format!("{k} not in [0, {}]", a.len() - 1),
        ));
    }
    Ok(())
}

/// Both sides of `k(k+1)/2·sup a_i + Σ_{i<j} inf(a_i, a_j) ≥ k·Σ a_i`,
/// evaluated pair by pair.
pub fn prop2_sides(a: &[Rational], k: usize) -> Result<(Rational, Rational)> {
    validate_vector(a, k)?;
    let sup = a.iter().max().expect("nonempty").clone();
    let overlaps: Rational = a
        .iter()
        .tuple_combinations()
        .map(|(x, y)| x.min(y).clone())
        .sum();
    let total: Rational = a.iter().sum();
    let kr = Rational::from_integer(k.into());
    Ok((triangular(k) * sup + overlaps, kr * total))
}

/// The same two sides via sorting: with `b` descending, `Σ inf = Σ_j j·b_j`
/// (0-based), and the difference of the sides splits as
/// `Σ_{j ≤ k} (k − j)(b_0 − b_j) + Σ_{j > k} (j − k)·b_j`, a sum of
/// nonnegative terms.
pub fn prop2_sides_sorted(a: &[Rational], k: usize) -> Result<(Rational, Rational, Rational)> {
    validate_vector(a, k)?;
    let mut b = a.to_vec();
    b.sort_by(|x, y| y.cmp(x));
    let idx = |j: usize| Rational::from_integer(j.into());
    let kr = idx(k);
    let lhs = triangular(k) * &b[0]
        + b.iter()
            .enumerate()
            .map(|(j, x)| idx(j) * x)
            .sum::<Rational>();
    let rhs = &kr * b.iter().sum::<Rational>();
    let slack: Rational = b
        .iter()
        .enumerate()
        .map(|(j, x)| {
            if j <= k {
                (&kr - idx(j)) * (&b[0] - x)
            } else {
                (idx(j) - &kr) * x
            }
        })
        .sum();
    Ok((lhs, rhs, slack))
}

pub fn prop2_check(a: &[Rational], k: usize) -> Result<CheckReport> {
    let (lhs, rhs) = prop2_sides(a, k)?;
    let ordering = lhs.cmp(&rhs);
    let mut report = CheckReport::new(format!("prop2[k={k}]"));
    report.note("m", a.len()).note("k", k);
    report.conclusion = Some(Conclusion::at_least(
        Quantity::Rational(lhs),
        Quantity::Rational(rhs),
        ordering,
    ));
    Ok(report)
}

/// A finite probability space with `m` events given as atom index lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureSpace {
    weights: Vec<Rational>,
    sets: Vec<Vec<usize>>,
}

impl MeasureSpace {
    pub fn new(weights: Vec<Rational>, sets: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(out_of_range(
                "weight",
                format!("{} < 0", format_rational(w)),
            ));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(out_of_range(
                "weights",
                format!("sum to {}, not 1", format_rational(&total)),
            ));
        }
        for (i, set) in sets.iter().enumerate() {
            if let Some(&x) = set.iter().find(|&&x| x >= weights.len()) {
                return Err(out_of_range("atom index", format!("{x} in set {i}")));
            }
            if set.iter().duplicates().next().is_some() {
                return Err(out_of_range("set", format!("set {i} repeats an atom")));
            }
        }
        Ok(Self { weights, sets })
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    fn indicator(&self, i: usize) -> Vec<bool> {
        let mut v = vec![false; self.weights.len()];
        for &x in &self.sets[i] {
            v[x] = true;
        }
        v
    }

    fn measure_where(&self, pred: impl Fn(usize) -> bool) -> Rational {
        (0..self.weights.len())
            .filter(|&x| pred(x))
            .map(|x| self.weights[x].clone())
            .sum()
    }

    pub fn measure(&self, i: usize) -> Rational {
        let ind = self.indicator(i);
        self.measure_where(|x| ind[x])
    }
}

/// `Σ_{i<j} μ(A_i ∩ A_j) ≥ K(Σ μ(A_i), m)`, plus for every `k` the
/// integrated pointwise form
/// `k(k+1)/2·μ(∪ A_i) + Σ_{i<j} μ(A_i ∩ A_j) ≥ k·Σ μ(A_i)`.
pub fn cor4_check(space: &MeasureSpace) -> Result<CheckReport> {
    let m = space.sets.len();
    if m < 2 {
        return Err(Error::TooFew { needed: 2, got: m });
    }
    let ind: Vec<Vec<bool>> = (0..m).map(|i| space.indicator(i)).collect();
    let mut overlaps = Rational::zero();
    let mut best = (0, 1, Rational::from_integer((-1).into()));
    for (i, j) in (0..m).tuple_combinations() {
        let v = space.measure_where(|x| ind[i][x] && ind[j][x]);
        if v > best.2 {
            best = (i, j, v.clone());
        }
        overlaps += v;
    }
    let total: Rational = (0..m).map(|i| space.measure(i)).sum();
    let union = space.measure_where(|x| ind.iter().any(|s| s[x]));
    let k = k_function(&total, m)?;

    let mut report = CheckReport::new("cor4");
    report
        .note("m", m)
        .note("atoms", space.weights.len())
        .note("sum_measure", format_rational(&total))
        .note("union_measure", format_rational(&union))
        .note("argmax_k", k.argmax_k);
    let kr = |k: usize| Rational::from_integer(k.into());
    for kk in 0..m {
        let lhs = triangular(kk) * &union + &overlaps;
        let rhs = kr(kk) * &total;
        let ordering = lhs.cmp(&rhs);
        report.auxiliary.push((
            format!("pointwise[k={kk}]"),
            Conclusion::at_least(Quantity::Rational(lhs), Quantity::Rational(rhs), ordering),
        ));
    }
    let ordering = overlaps.cmp(&k.value);
    report.conclusion = Some(Conclusion::at_least(
        Quantity::Rational(overlaps),
        Quantity::Rational(k.value),
        ordering,
    ));
    report.witness = Some(Witness::new(
        "largest overlap",
        [format!("A_{}", best.0), format!("A_{}", best.1)],
    ));
    Ok(report)
}

/// Positive integers `a_i`, each dividing `c`; repeats are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapIntInstance {
    c: BigInt,
    a: Vec<BigInt>,
}

impl OverlapIntInstance {
    pub fn new(c: BigInt, a: Vec<BigInt>) -> Result<Self> {
        if !c.is_positive() {
            return Err(out_of_range("c", format!("{c} < 1")));
        }
        if a.len() < 2 {
            return Err(Error::TooFew {
                needed: 2,
                got: a.len(),
            });
        }
        for x in &a {
            if !x.is_positive() {
                return Err(out_of_range("a_i", format!("{x} < 1")));
            }
            if !(&c % x).is_zero() {
                return Err(Error::NotDivisible(format!("{x} does not divide c = {c}")));
            }
        }
        Ok(Self { c, a })
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn a(&self) -> &[BigInt] {
        &self.a
    }
}

/// `∏ a_i^k` divides `c^{k(k+1)/2}·∏_{i<j} gcd(a_i, a_j)`. With `s`, also
/// `max gcd(a_i, a_j) ≥ c^{K(sm,m)/C(m,2)}` given `a_i ≥ c^s`.
pub fn cor5_check(
    inst: &OverlapIntInstance,
    k: usize,
    s: Option<&Rational>,
) -> Result<CheckReport> {
    let m = inst.a.len();
    if k >= m {
        return Err(out_of_range("k", format!("{k} not in [0, {}]", m - 1)));
    }
    let mut report = CheckReport::new(format!("cor5[k={k}]"));
    report.note("c", &inst.c).note("m", m).note("k", k);

    let gcds: Vec<(usize, usize, BigInt)> = (0..m)
        .tuple_combinations()
        .map(|(i, j)| (i, j, inst.a[i].gcd(&inst.a[j])))
        .collect();
    let gcd_prod = gcds.iter().fold(BigInt::one(), |acc, (_, _, g)| acc * g);
    let k32 = k as u32;
    let lhs = inst.c.pow(k32 * (k32 + 1) / 2) * gcd_prod;
    let rhs = inst.a.iter().fold(BigInt::one(), |acc, x| acc * x.pow(k32));
    let divisible = Conclusion::divisible_by(lhs.clone(), rhs.clone());
    if divisible.holds {
        report.note("quotient", &lhs / &rhs);
    }
    report.conclusion = Some(divisible);

    if let Some(s) = s {
        if s.is_negative() || *s > Rational::one() {
            return Err(out_of_range(
                "s",
                format!("{} not in [0, 1]", format_rational(s)),
            ));
        }
        let num = s
            .numer()
            .to_u32()
            .ok_or_else(|| out_of_range("s", "numerator too large"))?;
        let den = s
            .denom()
            .to_u32()
            .ok_or_else(|| out_of_range("s", "denominator too large"))?;
        let c_pow = inst.c.pow(num);
        for x in &inst.a {
            if x.pow(den) < c_pow {
                return Err(Error::PremiseFailed(format!(
                    "{x}^{den} < {}^{num}, so {x} < c^s",
                    inst.c
                )));
            }
            report.premise(format!("{x} >= c^{}", format_rational(s)), true);
        }
        let exponent = bound_exponent(s, m)?;
        let (i, j, g) = gcds
            .iter()
            .fold(None::<&(usize, usize, BigInt)>, |best, cur| match best {
                Some(b) if b.2 >= cur.2 => Some(b),
                _ => Some(cur),
            })
            .expect("m >= 2")
            .clone();
        let lhs = ExactPower::integer(g)?;
        let rhs = ExactPower::power(inst.c.clone(), exponent.clone())?;
        let ordering = lhs.compare(&rhs);
        report
            .note("s", format_rational(s))
            .note("exponent", format_rational(&exponent));
        report.auxiliary.push((
            "max gcd bound".into(),
            Conclusion::at_least(Quantity::Power(lhs), Quantity::Power(rhs), ordering),
        ));
        report.witness = Some(Witness::new("max gcd pair", [&inst.a[i], &inst.a[j]]));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn rv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| r(x)).collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn prop2_examples() {
        assert_eq!(prop2_sides(&rv(&[3, 1, 2]), 1).unwrap(), (r(7), r(6)));
        let report = prop2_check(&rv(&[1, 1]), 1).unwrap();
        assert!(report.passed() && report.conclusion.unwrap().is_tight());
        assert!(prop2_check(&rv(&[5, 0, 9]), 0).unwrap().passed());
        assert!(prop2_check(&rv(&[1, -1]), 0).is_err());
        assert!(prop2_check(&rv(&[1, 1]), 2).is_err());
        assert!(prop2_check(&rv(&[1]), 0).is_err());
    }

    #[test]
    fn sorted_route_agrees() {
        let a = rv(&[3, 1, 2, 7, 7, 0]);
        for k in 0..6 {
            let (l, rr) = prop2_sides(&a, k).unwrap();
            let (ls, rs, slack) = prop2_sides_sorted(&a, k).unwrap();
            assert_eq!((&l, &rr), (&ls, &rs));
            assert_eq!(l - rr, slack);
        }
    }

    #[test]
    fn cor4_examples() {
        let space = MeasureSpace::new(rv(&[1]), vec![vec![0], vec![0]]).unwrap();
        let report = cor4_check(&space).unwrap();
        assert!(report.passed());
        assert!(report.conclusion.as_ref().unwrap().is_tight());

        let quarter = Rational::new(1.into(), 4.into());
        let w = vec![quarter; 4];
        let pairs: Vec<Vec<usize>> = (0..4)
            .tuple_combinations()
            .map(|(a, b)| vec![a, b])
            .collect();
        let space = MeasureSpace::new(w.clone(), pairs).unwrap();
        let report = cor4_check(&space).unwrap();
        assert!(report.passed());
        let c = report.conclusion.unwrap();
        // 15 pairs of 2-sets: 12 share one atom, 3 are disjoint
        assert_eq!(c.lhs, Quantity::Rational(r(3)));
        assert_eq!(c.rhs, Quantity::Rational(r(3)));

        let disjoint = MeasureSpace::new(w, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert!(cor4_check(&disjoint).unwrap().passed());
    }

    #[test]
    fn measure_space_validation() {
        assert!(MeasureSpace::new(rv(&[1, 1]), vec![]).is_err());
        assert!(MeasureSpace::new(rv(&[1]), vec![vec![1]]).is_err());
        assert!(MeasureSpace::new(rv(&[1]), vec![vec![0, 0]]).is_err());
        assert!(MeasureSpace::new(rv(&[2, -1]), vec![vec![0]]).is_err());
    }

    #[test]
    fn cor5_examples() {
        let inst = OverlapIntInstance::new(BigInt::from(6), ints(&[2, 3, 6])).unwrap();
        let report = cor5_check(&inst, 1, None).unwrap();
        assert!(report.passed());
        assert_eq!(report.note_value("quotient"), Some("1"));
        assert!(cor5_check(&inst, 0, None).unwrap().passed());

        let inst = OverlapIntInstance::new(BigInt::from(12), ints(&[4, 6])).unwrap();
        let report = cor5_check(&inst, 1, None).unwrap();
        assert_eq!(report.note_value("quotient"), Some("1"));

        let inst = OverlapIntInstance::new(BigInt::from(36), ints(&[12, 18, 36])).unwrap();
        let half = Rational::new(1.into(), 2.into());
        let report = cor5_check(&inst, 1, Some(&half)).unwrap();
        assert!(report.passed());
        assert_eq!(report.witness.unwrap().items, vec!["18", "36"]);
        let inst = OverlapIntInstance::new(BigInt::from(36), ints(&[2, 36])).unwrap();
        assert!(matches!(
            cor5_check(&inst, 1, Some(&half)),
            Err(Error::PremiseFailed(_))
        ));
    }

    #[test]
    fn cor5_validation() {
        assert!(OverlapIntInstance::new(BigInt::from(6), ints(&[4, 3])).is_err());
        assert!(OverlapIntInstance::new(BigInt::from(0), ints(&[1, 1])).is_err());
        assert!(OverlapIntInstance::new(BigInt::from(6), ints(&[6])).is_err());
        let inst = OverlapIntInstance::new(BigInt::from(6), ints(&[6, 6])).unwrap();
        assert!(cor5_check(&inst, 2, None).is_err());
    }
}
