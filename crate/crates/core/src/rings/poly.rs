//! Sparse multivariate polynomials over `Z`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::{Ring, RingTag};
use crate::error::{Error, Result};

/// Schoolbook multiplication below this many coefficient products.
const KRONECKER_MIN_PRODUCTS: usize = 256;
/// Largest packed operand, in 32-bit words.
const KRONECKER_MAX_WORDS: u64 = 1 << 26;

/// Exponent vector, one entry per variable.
pub type Monomial = SmallVec<[u32; 4]>;

/// Total degree. The zero polynomial has degree `NegInfinity`, which sorts
/// below every finite degree and never takes part in arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial in `arity ≥ 1` variables with no zero coefficients stored.
/// Terms are keyed by exponent vector in lexicographic order, so the last
/// key is the lex-leading monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1, "polynomial arity must be at least 1");
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(SmallVec::from_elem(0, arity), c.into());
        p
    }

    /// The variable with index `var`.
    pub fn var(arity: usize, var: usize) -> Self {
        assert!(
            var < arity,
            "variable index {var} out of range for arity {arity}"
        );
        let mut exps: Monomial = SmallVec::from_elem(0, arity);
        exps[var] = 1;
        let mut p = Self::zero(arity);
        p.add_term(exps, BigInt::one());
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, summing repeated
    /// monomials and dropping zeros.
    pub fn from_terms<I, E>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (E, BigInt)>,
        E: AsRef<[u32]>,
    {
        let mut p = Self::zero(arity);
        for (exps, c) in terms {
            let exps = exps.as_ref();
            if exps.len() != arity {
                return Err(Error::RingMismatch(format!(
                    "monomial with {} exponents in a {arity}-variable ring",
                    exps.len()
                )));
            }
            p.add_term(SmallVec::from_slice(exps), c);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    fn add_term(&mut self, exps: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.last_key_value()
    }

    fn check_arity(&self, other: &Self) {
        assert_eq!(
            self.arity, other.arity,
            "MultiPoly operands with arities {} and {}",
            self.arity, other.arity
        );
    }

    fn times_schoolbook(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Monomial = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    /// Kronecker substitution: packs both operands into single integers
    /// with one `width`-bit slot per monomial of the product, multiplies
    /// once, and unpacks balanced digits. `None` when the packing would be
    /// unreasonably large.
    fn times_kronecker(&self, other: &Self) -> Option<Self> {
        let max_exp = |p: &Self, v: usize| p.terms.keys().map(|e| e[v]).max().unwrap_or(0) as u64;
        let mut strides = Vec::with_capacity(self.arity);
        let mut slots: u64 = 1;
        for v in 0..self.arity {
            strides.push(slots);
            slots = slots.checked_mul(max_exp(self, v) + max_exp(other, v) + 1)?;
        }
        let max_bits = |p: &Self| p.terms.values().map(|c| c.bits()).max().unwrap_or(0);
        let count = self.terms.len().min(other.terms.len()) as u64;
        // |coefficient| < 2^(width-1) for every coefficient of the product
        let needed = max_bits(self) + max_bits(other) + (64 - count.leading_zeros() as u64) + 1;
        let words = needed.div_ceil(32) as usize;
        if slots.checked_mul(words as u64)? > KRONECKER_MAX_WORDS {
            return None;
        }
        let slot_of = |e: &Monomial| -> usize {
            e.iter()
                .zip(&strides)
                .map(|(&x, s)| x as u64 * s)
                .sum::<u64>() as usize
        };
        let pack = |p: &Self| -> BigInt {
            let len = (p.terms.keys().map(slot_of).max().unwrap_or(0) + 1) * words;
            let (mut pos, mut neg) = (vec![0u32; len], vec![0u32; len]);
            for (e, c) in &p.terms {
                let base = slot_of(e) * words;
                let target = if c.is_negative() { &mut neg } else { &mut pos };
                for (i, d) in c.magnitude().iter_u32_digits().enumerate() {
                    target[base + i] = d;
                }
            }
            BigInt::from_biguint(Sign::Plus, BigUint::new(pos))
                - BigInt::from_biguint(Sign::Plus, BigUint::new(neg))
        };
        if self.is_zero() || other.is_zero() {
            return Some(Self::zero(self.arity));
        }
        let product = pack(self) * pack(other);
        let negative = product.is_negative();
        let digits = product.magnitude().to_u32_digits();
        let half = BigUint::one() << (32 * words - 1);
        let full = BigInt::one() << (32 * words);
        let radices: Vec<u64> = (0..self.arity)
            .map(|v| max_exp(self, v) + max_exp(other, v) + 1)
            .collect();
        let mut out = Self::zero(self.arity);
        let mut carry = false;
        let mut slot = 0usize;
        while slot * words < digits.len() || carry {
            let start = (slot * words).min(digits.len());
            let end = ((slot + 1) * words).min(digits.len());
            let mut d = BigUint::new(digits[start..end].to_vec());
            if carry {
                d += 1u32;
            }
            carry = d >= half;
            let mut c = BigInt::from_biguint(Sign::Plus, d);
            if carry {
                c -= &full;
            }
            if !c.is_zero() {
                if negative {
                    c = -c;
                }
                let mut rest = slot as u64;
                let exps: Monomial = radices
                    .iter()
                    .map(|r| {
                        let e = rest % r;
                        rest /= r;
                        e as u32
                    })
                    .collect();
                out.add_term(exps, c);
            }
            slot += 1;
        }
        Some(out)
    }

    /// Parses an expression over the default variable names of `arity`
    /// (`X, Y, Z, W`, or `x0, x1, …` above four variables).
    pub fn parse(text: &str, arity: usize) -> Result<Self> {
        let names = default_var_names(arity);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::parse_with_vars(text, &refs)
    }

    /// Parses `+ - * ^`, parentheses, integer literals and the given
    /// variable names. Juxtaposition such as `3X` means multiplication.
    pub fn parse_with_vars(text: &str, vars: &[&str]) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::Parse("at least one variable is required".into()));
        }
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
            vars,
        };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

pub fn default_var_names(arity: usize) -> Vec<String> {
    if arity <= 4 {
        ["X", "Y", "Z", "W"][..arity]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (0..arity).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = default_var_names(self.arity);
        for (i, (exps, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = exps.iter().all(|&e| e == 0);
            if !mag.is_one() || is_const {
                factors.push(mag.to_string());
            }
            for (name, &e) in names.iter().zip(exps.iter()) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Ring for MultiPoly {
    fn tag(&self) -> RingTag {
        RingTag::Polynomial { arity: self.arity }
    }

    fn zero_like(&self) -> Self {
        Self::zero(self.arity)
    }

    fn one_like(&self) -> Self {
        Self::constant(self.arity, 1)
    }

    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, other: &Self) -> Self {
        self.check_arity(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn minus(&self, other: &Self) -> Self {
        self.check_arity(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    fn times(&self, other: &Self) -> Self {
        self.check_arity(other);
        if self.terms.len() * other.terms.len() >= KRONECKER_MIN_PRODUCTS {
            if let Some(p) = self.times_kronecker(other) {
                return p;
            }
        }
        self.times_schoolbook(other)
    }
    fn negate(&self) -> Self {
        Self {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    /// Exact division by repeatedly cancelling the lex-leading term. In
    /// `Z[X]` a divisor always divides leading monomials and coefficients
    /// exactly, so the first non-divisible leading term proves that `other`
    /// does not divide `self`.
    fn exact_div(&self, other: &Self) -> Option<Self> {
        self.check_arity(other);
        let (lead_exp, lead_coef) = other.leading()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.arity);
        while let Some((r_exp, r_coef)) = rem.leading() {
            if r_exp.iter().zip(lead_exp.iter()).any(|(r, l)| r < l) {
                return None;
            }
            let (c, r) = r_coef.div_rem(lead_coef);
            if !r.is_zero() {
                return None;
            }
            let exps: Monomial = r_exp
                .iter()
                .zip(lead_exp.iter())
                .map(|(r, l)| r - l)
                .collect();
            let mut step = Self::zero(self.arity);
            step.add_term(exps, c);
            rem = rem.minus(&step.times(other));
            quot = quot.plus(&step);
        }
        Some(quot)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn arity(&self) -> usize {
        self.vars.len()
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} of polynomial", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' {
                acc.plus(&rhs)
            } else {
                acc.minus(&rhs)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.times(&self.unary()?);
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = acc.times(&self.unary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.negate())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.take_while(|c| c.is_ascii_digit());
            let e: u64 = digits
                .parse()
                .map_err(|_| self.error("expected a nonnegative integer exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && f(self.src[self.pos]) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n: BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(MultiPoly::constant(self.arity(), n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_');
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(MultiPoly::var(self.arity(), i)),
                    None => Err(Error::Parse(format!(
                        "unknown variable {name:?}; expected one of {:?}",
                        self.vars
                    ))),
                }
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, 1).unwrap()
    }

    fn p2(s: &str) -> MultiPoly {
        MultiPoly::parse(s, 2).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("X^3 - 1").to_string(), "X^3 - 1");
        assert_eq!(p("(X+1)(X-1)").to_string(), "X^2 - 1");
        assert_eq!(p2("3X*Y^2 - 2Y + 7").to_string(), "3*X*Y^2 - 2*Y + 7");
        assert_eq!(p2("-(X - Y)").to_string(), "-X + Y");
        assert_eq!(p("X - X").to_string(), "0");
        assert!(MultiPoly::parse("X + Q", 1).is_err());
        assert!(MultiPoly::parse("X^", 1).is_err());
        assert!(MultiPoly::parse("(X + 1", 1).is_err());
        let custom = MultiPoly::parse_with_vars("t^2 + s", &["s", "t"]).unwrap();
        assert_eq!(custom.to_string(), "X + Y^2");
    }

    #[test]
    fn degree_has_a_sentinel_for_zero() {
        assert_eq!(p("0").degree(), Degree::NegInfinity);
        assert_eq!(p("-2").degree(), Degree::Finite(0));
        assert_eq!(p2("X^2*Y + Y^5 - X").degree(), Degree::Finite(5));
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(Degree::NegInfinity.finite(), None);
    }

    #[test]
    fn exact_division() {
        let r = p("X^6 - 1");
        assert_eq!(r.exact_div(&p("X^3 - 1")), Some(p("X^3 + 1")));
        assert_eq!(r.exact_div(&p("X - 2")), None);
        assert_eq!(p("2X + 2").exact_div(&p("2")), Some(p("X + 1")));
        assert_eq!(p("2X + 1").exact_div(&p("2")), None);
        let u = p2("(X + Y)^2 * (X - 2Y + 3)");
        assert_eq!(u.exact_div(&p2("X + Y")), Some(p2("(X + Y)(X - 2Y + 3)")));
        assert_eq!(u.exact_div(&p2("X - Y")), None);
        assert_eq!(u.exact_div(&p2("0")), None);
    }

    #[test]
    fn from_terms_sums_duplicates() {
        let q = MultiPoly::from_terms(
            2,
            [
                ([1u32, 0], BigInt::from(2)),
                ([1u32, 0], BigInt::from(-2)),
                ([0u32, 3], BigInt::from(5)),
            ],
        )
        .unwrap();
        assert_eq!(q, p2("5Y^3"));
        assert!(MultiPoly::from_terms(2, [([1u32], BigInt::from(1))]).is_err());
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for arity in 1..=3 {
            for _ in 0..40 {
                let random = |rng: &mut rand_chacha::ChaCha8Rng| {
                    let n = rng.gen_range(1..60);
                    let terms: Vec<(Vec<u32>, BigInt)> = (0..n)
                        .map(|_| {
                            let e = (0..arity).map(|_| rng.gen_range(0..9)).collect();
                            let c = BigInt::from(rng.gen_range(-1i64 << 40..1i64 << 40))
                                << rng.gen_range(0..100usize);
                            (e, c)
                        })
                        .collect();
                    MultiPoly::from_terms(arity, terms).unwrap()
                };
                let (a, b) = (random(&mut rng), random(&mut rng));
                let k = a.times_kronecker(&b).unwrap();
                assert_eq!(k, a.times_schoolbook(&b));
                assert_eq!(k, a.times(&b));
            }
        }
        let x = p("X - 1");
        let c = x.pow(40).times_kronecker(&p("X + 1").pow(40)).unwrap();
        assert_eq!(c, p("X^2 - 1").pow(40));
        assert_eq!(p("0").times_kronecker(&x), Some(p("0")));
    }
}
