//! The imaginary quadratic order `Z[√−d] = Z[X]/(X² + d)`.
//!
//! Elements are `a + b·√−d` with integer `a`, `b`. This is the order
//! `Z[√−d]`, not the maximal order, even when `−d ≡ 1 (mod 4)`: lattice
//! points on `X² + dY² = R` have integer coordinates, and the gap bounds only
//! need an integral domain with a multiplicative size.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::arith::{is_squarefree, MAX_RING_D};
use super::{Ring, RingTag};
use crate::error::{out_of_range, Error, Result};

/// A validated ring context; the only way to build [`QuadInt`] values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadRing {
    d: u64,
}

impl QuadRing {
    /// `Z[√−d]` for squarefree `1 ≤ d ≤ 10¹²`.
    pub fn new(d: u64) -> Result<Self> {
        if !is_squarefree(d)? {
            return Err(Error::NotSquarefree(d));
        }
        Ok(Self { d })
    }

    /// `Z[√−d]` for any `1 ≤ d ≤ 10¹²`, squarefree or not. `X² + d` is
    /// irreducible over `Z` for every positive `d`, so this is still an
    /// integral domain.
    pub fn order(d: u64) -> Result<Self> {
        if d == 0 || d > MAX_RING_D {
            return Err(out_of_range(
                "ring parameter d",
                format!("{d} not in [1, 10^12]"),
            ));
        }
        Ok(Self { d })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn element(&self, a: impl Into<BigInt>, b: impl Into<BigInt>) -> QuadInt {
        QuadInt {
            a: a.into(),
            b: b.into(),
            d: self.d,
        }
    }

    pub fn from_int(&self, a: impl Into<BigInt>) -> QuadInt {
        self.element(a, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    a: BigInt,
    b: BigInt,
    d: u64,
}

impl QuadInt {
    pub fn real(&self) -> &BigInt {
        &self.a
    }

    pub fn imag(&self) -> &BigInt {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// `N(a + b√−d) = a² + d·b²`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + BigInt::from(self.d) * &self.b * &self.b
    }

    pub fn conj(&self) -> QuadInt {
        QuadInt {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    fn same_ring(&self, other: &QuadInt) {
        assert_eq!(
            self.d, other.d,
            "QuadInt operands from different rings Z[sqrt(-{})] and Z[sqrt(-{})]",
            self.d, other.d
        );
    }
}

/// `N(x) = a² + d·b²`; nonnegative and zero only at zero.
pub fn quad_norm(x: &QuadInt) -> BigInt {
    x.norm()
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("sqrt(-{})", self.d);
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b.is_one() => write!(f, "{root}"),
            (true, false) => write!(f, "{}*{root}", self.b),
            (false, false) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                let mag = self.b.abs();
                if mag.is_one() {
                    write!(f, "{} {sign} {root}", self.a)
                } else {
                    write!(f, "{} {sign} {mag}*{root}", self.a)
                }
            }
        }
    }
}

impl Ring for QuadInt {
    fn tag(&self) -> RingTag {
        RingTag::Quadratic { d: self.d }
    }

    fn zero_like(&self) -> Self {
        QuadInt {
            a: BigInt::zero(),
            b: BigInt::zero(),
            d: self.d,
        }
    }

    fn one_like(&self) -> Self {
        QuadInt {
            a: BigInt::one(),
            b: BigInt::zero(),
            d: self.d,
        }
    }

    fn vanishes(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn plus(&self, other: &Self) -> Self {
        self.same_ring(other);
        QuadInt {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d: self.d,
        }
    }

    fn minus(&self, other: &Self) -> Self {
        self.same_ring(other);
        QuadInt {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            d: self.d,
        }
    }

    fn times(&self, other: &Self) -> Self {
        self.same_ring(other);
        let d = BigInt::from(self.d);
        QuadInt {
            a: &self.a * &other.a - d * &self.b * &other.b,
            b: &self.a * &other.b + &self.b * &other.a,
            d: self.d,
        }
    }

    fn negate(&self) -> Self {
        QuadInt {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }

    fn exact_div(&self, other: &Self) -> Option<Self> {
        self.same_ring(other);
        let n = other.norm();
        if n.is_zero() {
            return None;
        }
        // self / other = self * conj(other) / N(other)
        let num = self.times(&other.conj());
        let (qa, ra) = num.a.div_rem(&n);
        let (qb, rb) = num.b.div_rem(&n);
        (ra.is_zero() && rb.is_zero()).then_some(QuadInt {
            a: qa,
            b: qb,
            d: self.d,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_examples() {
        let z1 = QuadRing::new(1).unwrap();
        assert_eq!(quad_norm(&z1.element(1, 7)), BigInt::from(50));
        let z5 = QuadRing::new(5).unwrap();
        assert_eq!(quad_norm(&z5.element(0, 0)), BigInt::from(0));
        let z2 = QuadRing::new(2).unwrap();
        assert_eq!(quad_norm(&z2.element(29, 26)), BigInt::from(2193));
    }

    #[test]
    fn ring_validation() {
        assert_eq!(QuadRing::new(4), Err(Error::NotSquarefree(4)));
        assert!(QuadRing::new(0).is_err());
        assert_eq!(QuadRing::order(4).unwrap().d(), 4);
        assert!(QuadRing::order(0).is_err());
    }

    #[test]
    fn division_and_conjugates() {
        let z = QuadRing::new(1).unwrap();
        let x = z.element(1, 7);
        let fifty = z.from_int(50);
        assert_eq!(x.times(&x.conj()), fifty);
        assert_eq!(fifty.exact_div(&x), Some(x.conj()));
        assert_eq!(z.element(1, 0).exact_div(&z.element(1, 1)), None);
        assert_eq!(x.exact_div(&z.from_int(0)), None);
    }

    #[test]
    fn display() {
        let z = QuadRing::new(2).unwrap();
        assert_eq!(z.element(0, 8).to_string(), "8*sqrt(-2)");
        assert_eq!(z.element(3, -1).to_string(), "3 - sqrt(-2)");
        assert_eq!(z.element(-4, 0).to_string(), "-4");
    }

    #[test]
    #[should_panic(expected = "different rings")]
    fn mixing_rings_panics() {
        let a = QuadRing::new(1).unwrap().element(1, 1);
        let b = QuadRing::new(2).unwrap().element(1, 1);
        let _ = a.plus(&b);
    }
}
