//! Seeded generation of valid identity instances.
//!
//! `γ` is a product of 3 to 6 small random ring elements, each `α_i` is a
//! distinct random subproduct of those factors, and `β_i = γ / α_i` by exact
//! division. Collisions are resolved by regenerating.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::IdentityInstance;
use crate::error::{Error, Result};
use crate::rings::{MultiPoly, QuadInt, QuadRing, Ring};

pub type Rng64 = ChaCha8Rng;

/// Ring families available to the randomized suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingChoice {
    Integer,
    Quadratic(u64),
    Univariate,
    Bivariate,
}

impl fmt::Display for RingChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingChoice::Integer => write!(f, "int"),
            RingChoice::Quadratic(d) => write!(f, "quad:{d}"),
            RingChoice::Univariate => write!(f, "poly1"),
            RingChoice::Bivariate => write!(f, "poly2"),
        }
    }
}

/// Accepts `int`, `quad:D`, `poly1`, `poly2`.
impl FromStr for RingChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "int" => Ok(RingChoice::Integer),
            "poly1" => Ok(RingChoice::Univariate),
            "poly2" => Ok(RingChoice::Bivariate),
            _ => match s.strip_prefix("quad:").map(str::parse::<u64>) {
                Some(Ok(d)) => {
                    QuadRing::new(d)?;
                    Ok(RingChoice::Quadratic(d))
                }
                _ => Err(Error::Parse(format!(
                    "unknown ring {s:?}; expected int, quad:D, poly1 or poly2"
                ))),
            },
        }
    }
}

/// An identity instance over whichever ring was drawn.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyInstance {
    Integer(IdentityInstance<BigInt>),
    Quadratic(IdentityInstance<QuadInt>),
    Polynomial(IdentityInstance<MultiPoly>),
}

impl AnyInstance {
    pub fn m(&self) -> usize {
        match self {
            AnyInstance::Integer(i) => i.m(),
            AnyInstance::Quadratic(i) => i.m(),
            AnyInstance::Polynomial(i) => i.m(),
        }
    }
}

fn integer_factor(rng: &mut Rng64) -> BigInt {
    loop {
        let v: i64 = rng.gen_range(-12..=12);
        if v.abs() >= 2 {
            return BigInt::from(v);
        }
    }
}

fn quadratic_factor(ring: &QuadRing, rng: &mut Rng64) -> QuadInt {
    loop {
        let x = ring.element(rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        if x.norm() > BigInt::from(1) {
            return x;
        }
    }
}

fn polynomial_factor(arity: usize, rng: &mut Rng64) -> MultiPoly {
    loop {
        let mut p = MultiPoly::constant(arity, rng.gen_range(-3..=3));
        for v in 0..arity {
            let c: i64 = rng.gen_range(-2..=2);
            p = p.plus(&MultiPoly::var(arity, v).times(&MultiPoly::constant(arity, c)));
        }
        // nonconstant factors keep subproducts distinct
        if p.degree() > crate::rings::Degree::Finite(0) {
            return p;
        }
    }
}

/// Builds an instance from factors drawn by `factor`.
pub fn random_instance_with<R, F>(rng: &mut Rng64, m: usize, mut factor: F) -> IdentityInstance<R>
where
    R: Ring,
    F: FnMut(&mut Rng64) -> R,
{
    assert!(
        (2..=super::MAX_DET_DIM).contains(&m),
        "m = {m} out of range"
    );
    let min_factors = (usize::BITS - (m - 1).leading_zeros()).max(3) as usize;
    loop {
        let count = rng.gen_range(min_factors..=min_factors.max(6));
        let factors: Vec<R> = (0..count).map(|_| factor(rng)).collect();
        let one = factors[0].one_like();
        let gamma = factors.iter().fold(one.clone(), |acc, f| acc.times(f));
        let mut alpha: Vec<R> = Vec::with_capacity(m);
        for _ in 0..64 {
            if alpha.len() == m {
                break;
            }
            let mask: u32 = rng.gen_range(0..(1u32 << count));
            let sub = factors
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .fold(one.clone(), |acc, (_, f)| acc.times(f));
            if !alpha.contains(&sub) {
                alpha.push(sub);
            }
        }
        if alpha.len() < m {
            continue;
        }
        let beta = alpha
            .iter()
            .map(|a| {
                gamma
                    .exact_div(a)
                    .expect("subproduct divides the full product")
            })
            .collect();
        return IdentityInstance::new(alpha, beta, gamma).expect("generated instance is valid");
    }
}

pub fn random_instance(choice: RingChoice, rng: &mut Rng64, m: usize) -> AnyInstance {
    match choice {
        RingChoice::Integer => AnyInstance::Integer(random_instance_with(rng, m, integer_factor)),
        RingChoice::Quadratic(d) => {
            let ring = QuadRing::new(d).expect("validated when the choice was built");
            AnyInstance::Quadratic(random_instance_with(rng, m, |r| quadratic_factor(&ring, r)))
        }
        RingChoice::Univariate => {
            AnyInstance::Polynomial(random_instance_with(rng, m, |r| polynomial_factor(1, r)))
        }
        RingChoice::Bivariate => {
            AnyInstance::Polynomial(random_instance_with(rng, m, |r| polynomial_factor(2, r)))
        }
    }
}
