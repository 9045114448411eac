use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{out_of_range, Result};
use crate::rings::{format_rational, Rational};

/// `K(s, m) = max over 0 ≤ k ≤ m−1 of (s·k − k(k+1)/2)` with its maximizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KValue {
    pub s: Rational,
    pub m: usize,
    pub value: Rational,
    /// `min(⌊s⌋, m − 1)`. For integer `s` both `s` and `s − 1` attain the
    /// maximum; the larger one is reported.
    pub argmax_k: usize,
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn objective(s: &Rational, k: usize) -> Rational {
    let k_big = BigInt::from(k);
    s * Rational::from_integer(k_big.clone()) - Rational::new(&k_big * (&k_big + 1u32), 2.into())
}

/// Closed-form evaluation of `K(s, m)` for `m ≥ 2`, `0 ≤ s ≤ m`.
pub fn k_function(s: &Rational, m: usize) -> Result<KValue> {
    if m < 2 {
        return Err(out_of_range("K-function m", format!("{m} < 2")));
    }
    if s.is_negative() || *s > Rational::from_integer(m.into()) {
        return Err(out_of_range(
            "K-function s",
            format!("{} not in [0, {m}]", format_rational(s)),
        ));
    }
    let floor = s.floor().to_integer().to_usize().expect("s ≤ m fits");
    let argmax_k = floor.min(m - 1);
    let value = objective(s, argmax_k);
    debug_assert_eq!(value, k_by_enumeration(s, m).0);
    Ok(KValue {
        s: s.clone(),
        m,
        value,
        argmax_k,
    })
}

/// Direct maximisation over every `k` in `[0, m−1]`; returns the value and
/// all maximizers.
pub fn k_by_enumeration(s: &Rational, m: usize) -> (Rational, Vec<usize>) {
    let values: Vec<Rational> = (0..m).map(|k| objective(s, k)).collect();
    let best = values.iter().max().cloned().unwrap_or_else(Rational::zero);
    let maximizers = (0..m).filter(|&k| values[k] == best).collect();
    (best, maximizers)
}

/// `s(m) = 1/4 − 1/(8⌊m/2⌋ + 4)`.
pub fn arc_exponent(m: usize) -> Rational {
    ratio(1, 4) - ratio(1, 8 * (m / 2) as i64 + 4)
}

/// `K(s·m, m) / C(m, 2)`, the exponent in every gap bound.
pub fn bound_exponent(s: &Rational, m: usize) -> Result<Rational> {
    let k = k_function(&(s * Rational::from_integer(m.into())), m)?;
    Ok(k.value / Rational::from_integer(BigInt::from(m * (m - 1) / 2)))
}
