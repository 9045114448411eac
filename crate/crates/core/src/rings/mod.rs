//! Exact arithmetic substrate: the [`Ring`] abstraction and its three
//! instances (rational integers, `Z[√−d]`, multivariate integer
//! polynomials), plus exact powers and integer utilities.

pub mod arith;
pub mod poly;
pub mod power;
pub mod quad;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

pub use num_bigint::BigInt as Int;
pub use num_rational::BigRational as Rational;

pub use poly::{Degree, MultiPoly};
pub use power::ExactPower;
pub use quad::{quad_norm, QuadInt, QuadRing};

/// Which ring an element lives in, with the parameter that must match for
/// two elements to interoperate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "ring", rename_all = "snake_case")]
pub enum RingTag {
    Integer,
    Quadratic { d: u64 },
    Polynomial { arity: usize },
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Integer => write!(f, "Z"),
            RingTag::Quadratic { d } => write!(f, "Z[sqrt(-{d})]"),
            RingTag::Polynomial { arity } => write!(f, "Z[{arity} vars]"),
        }
    }
}

/// A commutative integral domain with exact division where it exists.
///
/// Binary operations assume both operands carry the same [`RingTag`];
/// mixing rings is a programming error and panics.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    /// Fraction-free elimination is used for large integer determinants.
    const FRACTION_FREE_DET: bool = false;

    fn tag(&self) -> RingTag;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// `Some(q)` with `q * other == self`, `None` when `other` does not divide.
    fn exact_div(&self, other: &Self) -> Option<Self>;

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.times(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

impl Ring for BigInt {
    const FRACTION_FREE_DET: bool = true;

    fn tag(&self) -> RingTag {
        RingTag::Integer
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = self.div_rem(other);
        Zero::is_zero(&r).then_some(q)
    }
}

/// Parses an exact rational from `"num/den"` or a plain integer string.
pub fn parse_rational(text: &str) -> crate::Result<Rational> {
    let text = text.trim();
    let bad = || crate::Error::Parse(format!("expected a rational \"num/den\", got {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if Zero::is_zero(&d) {
                return Err(crate::Error::Zero("denominator"));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// `"num/den"` for proper fractions, plain integer otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing_is_exact() {
        assert_eq!(
            parse_rational("3/2").unwrap(),
            Rational::new(3.into(), 2.into())
        );
        assert_eq!(
            parse_rational(" 6/4 ").unwrap(),
            Rational::new(3.into(), 2.into())
        );
        assert_eq!(
            parse_rational("-5").unwrap(),
            Rational::from_integer((-5).into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert_eq!(format_rational(&parse_rational("10/4").unwrap()), "5/2");
        assert_eq!(format_rational(&parse_rational("8/4").unwrap()), "2");
    }

    #[test]
    fn integer_exact_division() {
        let a = BigInt::from(12);
        assert_eq!(a.exact_div(&BigInt::from(-4)), Some(BigInt::from(-3)));
        assert_eq!(a.exact_div(&BigInt::from(5)), None);
        assert_eq!(a.exact_div(&BigInt::from(0)), None);
        assert_eq!(BigInt::from(-3).pow(3), BigInt::from(-27));
    }
}
