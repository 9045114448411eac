use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::report::Quantity;
use crate::rings::arith::exact_sqrt;
use crate::rings::{ExactPower, MultiPoly, QuadInt, Rational, Ring};

/// The multiplicative sizes `φ` with `φ(x) ≥ 1` for `x ≠ 0` that the bounds
/// are evaluated with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SizeFunction {
    /// `|x|` on `Z`.
    Abs,
    /// `|N(x)|^{1/2}` on `Z[√−d]`.
    QuadNormSqrt,
    /// `exp(deg x)` on polynomial rings, handled additively in degrees.
    ExpDegree,
}

impl fmt::Display for SizeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SizeFunction::Abs => write!(f, "abs"),
            SizeFunction::QuadNormSqrt => write!(f, "norm^(1/2)"),
            SizeFunction::ExpDegree => write!(f, "exp(deg)"),
        }
    }
}

/// An exact value of some `φ`: a product of rational powers, or `exp(x)`
/// for rational `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SizeValue {
    Power(ExactPower),
    Exp(Rational),
}

impl SizeValue {
    pub fn one() -> Self {
        SizeValue::Power(ExactPower::one())
    }

    /// `1` in the representation used by `phi`.
    pub fn one_for(phi: SizeFunction) -> Self {
        match phi {
            SizeFunction::ExpDegree => SizeValue::Exp(Rational::from_integer(0.into())),
            _ => Self::one(),
        }
    }

    fn kind_mismatch() -> Error {
        Error::RingMismatch("size values of different kinds (power vs exp)".into())
    }

    pub fn mul(&self, other: &SizeValue) -> Result<SizeValue> {
        match (self, other) {
            (SizeValue::Power(a), SizeValue::Power(b)) => Ok(SizeValue::Power(a.mul(b))),
            (SizeValue::Exp(a), SizeValue::Exp(b)) => Ok(SizeValue::Exp(a + b)),
            _ => Err(Self::kind_mismatch()),
        }
    }

    pub fn pow(&self, exp: &Rational) -> Result<SizeValue> {
        match self {
            SizeValue::Power(a) => Ok(SizeValue::Power(a.pow(exp)?)),
            SizeValue::Exp(a) => Ok(SizeValue::Exp(a * exp)),
        }
    }

    pub fn compare(&self, other: &SizeValue) -> Result<Ordering> {
        match (self, other) {
            (SizeValue::Power(a), SizeValue::Power(b)) => Ok(a.compare(b)),
            (SizeValue::Exp(a), SizeValue::Exp(b)) => Ok(a.cmp(b)),
            _ => Err(Self::kind_mismatch()),
        }
    }

    pub fn to_quantity(&self) -> Quantity {
        match self {
            SizeValue::Power(p) => Quantity::Power(p.clone()),
            SizeValue::Exp(r) => Quantity::Exp(r.clone()),
        }
    }
}

impl fmt::Display for SizeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_quantity().fmt(f)
    }
}

/// Rings carrying one of the [`SizeFunction`]s.
pub trait SizedRing: Ring {
    const NATURAL_SIZE: SizeFunction;

    /// `φ(x)` for nonzero `x`.
    fn size(&self, phi: SizeFunction) -> Result<SizeValue>;
}

fn require(phi: SizeFunction, expected: SizeFunction, ring: &str) -> Result<()> {
    if phi != expected {
        return Err(Error::RingMismatch(format!(
            "size {phi} is not defined on {ring}; use {expected}"
        )));
    }
    Ok(())
}

impl SizedRing for BigInt {
    const NATURAL_SIZE: SizeFunction = SizeFunction::Abs;

    fn size(&self, phi: SizeFunction) -> Result<SizeValue> {
        require(phi, SizeFunction::Abs, "Z")?;
        Ok(SizeValue::Power(ExactPower::integer(self.abs())?))
    }
}

impl SizedRing for QuadInt {
    const NATURAL_SIZE: SizeFunction = SizeFunction::QuadNormSqrt;

    fn size(&self, phi: SizeFunction) -> Result<SizeValue> {
        require(phi, SizeFunction::QuadNormSqrt, "Z[sqrt(-d)]")?;
        let norm = self.norm();
        if let Some(root) = exact_sqrt(&norm) {
            return Ok(SizeValue::Power(ExactPower::integer(root)?));
        }
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        Ok(SizeValue::Power(ExactPower::power(norm, half)?))
    }
}

impl SizedRing for MultiPoly {
    const NATURAL_SIZE: SizeFunction = SizeFunction::ExpDegree;

    fn size(&self, phi: SizeFunction) -> Result<SizeValue> {
        require(phi, SizeFunction::ExpDegree, "polynomial rings")?;
        match self.degree().finite() {
            Some(d) => Ok(SizeValue::Exp(Rational::from_integer(d.into()))),
            None => Err(Error::Zero("size argument")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::QuadRing;

    #[test]
    fn sizes() {
        assert_eq!(
            BigInt::from(-6).size(SizeFunction::Abs).unwrap(),
            SizeValue::Power(ExactPower::integer(6).unwrap())
        );
        assert!(BigInt::from(0).size(SizeFunction::Abs).is_err());
        assert!(BigInt::from(3).size(SizeFunction::ExpDegree).is_err());
        let z = QuadRing::new(1).unwrap();
        let v = z.element(1, 7).size(SizeFunction::QuadNormSqrt).unwrap();
        assert_eq!(v.to_string(), "50^(1/2)");
        let p = MultiPoly::parse("X^2*Y - 1", 2).unwrap();
        assert_eq!(
            p.size(SizeFunction::ExpDegree).unwrap().to_string(),
            "exp(3)"
        );
        assert!(MultiPoly::zero(2).size(SizeFunction::ExpDegree).is_err());
    }

    #[test]
    fn mixed_kinds_are_rejected() {
        let a = SizeValue::one();
        let b = SizeValue::one_for(SizeFunction::ExpDegree);
        assert!(a.compare(&b).is_err());
        assert!(a.mul(&b).is_err());
    }
}
