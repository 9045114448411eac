//! Products of rational powers of positive integers, compared exactly.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// `∏ baseᵢ^expᵢ` with integer bases ≥ 1 and rational exponents ≥ 0.
///
/// Factors with base 1 or exponent 0 are dropped on construction, so the
/// empty product is the value 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExactPower {
    factors: Vec<(BigUint, Rational)>,
}

impl ExactPower {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new<I>(factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigUint, Rational)>,
    {
        let mut out = Self::one();
        for (base, exp) in factors {
            out.push(base, exp)?;
        }
        Ok(out)
    }

    /// `base^exp` for a positive integer base.
    pub fn power(base: impl Into<BigInt>, exp: Rational) -> Result<Self> {
        let base = base.into();
        if !base.is_positive() {
            return Err(Error::Zero("exact power base (must be >= 1)"));
        }
        Self::new([(base.magnitude().clone(), exp)])
    }

    /// The integer `n ≥ 1` as `n^1`.
    pub fn integer(n: impl Into<BigInt>) -> Result<Self> {
        Self::power(n, Rational::one())
    }

    fn push(&mut self, base: BigUint, exp: Rational) -> Result<()> {
        if base.is_zero() {
            return Err(Error::Zero("exact power base (must be >= 1)"));
        }
        if exp.is_negative() {
            return Err(Error::OutOfRange {
                what: "exact power exponent",
                detail: format!("{} is negative", format_rational(&exp)),
            });
        }
        if !base.is_one() && !exp.is_zero() {
            self.factors.push((base, exp));
        }
        Ok(())
    }

    pub fn factors(&self) -> &[(BigUint, Rational)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product of two exact powers.
    pub fn mul(&self, other: &ExactPower) -> ExactPower {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        ExactPower { factors }
    }

    /// Raises to a nonnegative rational power by scaling every exponent.
    pub fn pow(&self, exp: &Rational) -> Result<ExactPower> {
        ExactPower::new(self.factors.iter().map(|(b, e)| (b.clone(), e * exp)))
    }

    /// Decides the order of the two real values exactly.
    ///
    /// Every exponent is scaled by the lcm of all denominators, common bases
    /// are cancelled across the two sides, the remaining integer exponents
    /// are divided by their gcd, and the two big-integer products are
    /// compared.
    pub fn compare(&self, other: &ExactPower) -> Ordering {
        let lcm = self
            .factors
            .iter()
            .chain(other.factors.iter())
            .fold(BigInt::one(), |acc, (_, e)| acc.lcm(e.denom()));

        // base -> net integer exponent (lhs minus rhs)
        let mut net: BTreeMap<&BigUint, BigInt> = BTreeMap::new();
        for (base, exp) in &self.factors {
            *net.entry(base).or_default() += exp.numer() * (&lcm / exp.denom());
        }
        for (base, exp) in &other.factors {
            *net.entry(base).or_default() -= exp.numer() * (&lcm / exp.denom());
        }
        net.retain(|_, e| !e.is_zero());
        let g = net.values().fold(BigInt::zero(), |acc, e| acc.gcd(e));
        if g.is_zero() {
            return Ordering::Equal;
        }

        let mut lhs = BigUint::one();
        let mut rhs = BigUint::one();
        for (base, e) in net {
            let e = (e / &g)
                .to_i64()
                .expect("exact power exponent beyond 64 bits");
            let e_abs =
                u32::try_from(e.unsigned_abs()).expect("exact power exponent beyond 32 bits");
            let term = num_traits::pow::Pow::pow(base, e_abs);
            if e > 0 {
                lhs *= term;
            } else {
                rhs *= term;
            }
        }
        lhs.cmp(&rhs)
    }
}

/// Exact comparison of two products of rational powers.
pub fn exact_power_compare(lhs: &ExactPower, rhs: &ExactPower) -> Ordering {
    lhs.compare(rhs)
}

impl fmt::Display for ExactPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(b, e)| {
                if e.is_one() {
                    b.to_string()
                } else if e.is_integer() {
                    format!("{b}^{}", e.numer())
                } else {
                    format!("{b}^({})", format_rational(e))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Parses the [`Display`](fmt::Display) form, e.g. `"4 * 1155^(1/6)"` or
/// `"2^1/2"`.
impl FromStr for ExactPower {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Self::one());
        }
        let mut out = Self::one();
        for part in s.split('*') {
            let part = part.trim();
            let (base, exp) = match part.split_once('^') {
                Some((b, e)) => {
                    let e = e.trim().trim_start_matches('(').trim_end_matches(')');
                    (b.trim(), parse_rational(e)?)
                }
                None => (part, Rational::one()),
            };
            let base: BigUint = base
                .parse()
                .map_err(|_| Error::Parse(format!("bad exact power base {base:?}")))?;
            out.push(base, exp)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ep(s: &str) -> ExactPower {
        s.parse().unwrap()
    }

    #[test]
    fn comparison_examples() {
        // 2^(1/2) vs 3^(1/3): 2^3 = 8 < 3^2 = 9
        assert_eq!(ep("2^(1/2)").compare(&ep("3^(1/3)")), Ordering::Less);
        assert_eq!(ep("7^(3/5)").compare(&ep("7^(3/5)")), Ordering::Equal);
        // 28^6 = 481890304 vs 4^6 * 1155 = 4730880
        assert_eq!(ep("28").compare(&ep("4 * 1155^(1/6)")), Ordering::Greater);
    }

    #[test]
    fn trivial_factors_are_dropped() {
        assert!(ep("1^(5/3) * 9^0").is_one());
        assert_eq!(ep("1").compare(&ExactPower::one()), Ordering::Equal);
        assert_eq!(ep("4^(1/2)").compare(&ep("2")), Ordering::Equal);
        assert_eq!(ep("8^(1/3) * 3").compare(&ep("6")), Ordering::Equal);
    }

    #[test]
    fn invalid_inputs() {
        assert!("0^2".parse::<ExactPower>().is_err());
        assert!("2^(-1/2)".parse::<ExactPower>().is_err());
        assert!("x^2".parse::<ExactPower>().is_err());
        assert!(ExactPower::power(0, Rational::one()).is_err());
        assert!(ExactPower::power(-3, Rational::one()).is_err());
    }

    #[test]
    fn display_round_trips() {
        let v = ep("4 * 1155^(1/6) * 2^3");
        assert_eq!(v.to_string(), "4 * 1155^(1/6) * 2^3");
        assert_eq!(v.to_string().parse::<ExactPower>().unwrap(), v);
    }

    #[test]
    fn pow_and_mul() {
        let v = ep("50").pow(&Rational::new(1.into(), 6.into())).unwrap();
        assert_eq!(v.to_string(), "50^(1/6)");
        let w = v.mul(&ep("2"));
        assert_eq!(w.compare(&ep("50^(1/6) * 2")), Ordering::Equal);
    }
}
