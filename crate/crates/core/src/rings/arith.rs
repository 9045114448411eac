//! Integer utilities: primality and factorization of 64-bit values, divisor
//! enumeration, p-adic valuations and the squarefree test for ring parameters.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{out_of_range, Error, Result};

/// Largest ring parameter accepted by [`is_squarefree`]; trial division by
/// every p ≤ 10⁶ decides squarefreeness completely below this bound.
pub const MAX_RING_D: u64 = 1_000_000_000_000;

const SQUAREFREE_TRIAL_LIMIT: u64 = 1_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime_u64(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's variant of Pollard rho. `n` must be odd and composite.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1usize;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let f = pollard_rho(n);
    factor_into(f, out);
    factor_into(n / f, out);
}

/// Prime factorization of `n ≥ 1` as ascending `(prime, exponent)` pairs.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
    }
    factor_into(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// All positive divisors of `n`, ascending. Supports `1 ≤ n ≤ 2⁶⁴`.
pub fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let limit = BigInt::one() << 64;
    if n.sign() != Sign::Plus || *n > limit {
        return Err(out_of_range(
            "divisor input",
            format!("{n} not in [1, 2^64]"),
        ));
    }
    if *n == limit {
        return Ok((0..=64).map(|e| BigInt::one() << e).collect());
    }
    let n = n.to_u64().expect("checked above");
    Ok(divisors_u64(n).into_iter().map(BigInt::from).collect())
}

/// Ascending divisors of a positive `u64`.
pub fn divisors_u64(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors of zero");
    let mut divs = vec![1u64];
    for (p, e) in factorize_u64(n) {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Exponent of the prime `p` in the nonzero integer `n`.
///
/// Primality of `p` is verified when it fits in 64 bits and trusted above.
pub fn p_adic_valuation(n: &BigInt, p: &BigInt) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::Zero("valuation argument"));
    }
    match p.to_u64() {
        Some(small) if is_prime_u64(small) => {}
        Some(_) => return Err(out_of_range("valuation prime", format!("{p} is not prime"))),
        None if p.sign() != Sign::Plus => {
            return Err(out_of_range("valuation prime", format!("{p} is not prime")))
        }
        None => {}
    }
    let mut e = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return Ok(e);
        }
        rest = q;
        e += 1;
    }
}

/// Squarefree test for ring parameters `1 ≤ d ≤ 10¹²`.
pub fn is_squarefree(d: u64) -> Result<bool> {
    if d == 0 || d > MAX_RING_D {
        return Err(out_of_range(
            "ring parameter d",
            format!("{d} not in [1, 10^12]"),
        ));
    }
    let mut rest = d;
    let mut p = 2u64;
    while p <= SQUAREFREE_TRIAL_LIMIT && p * p <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return Ok(false);
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    Ok(true)
}

/// Floor of the square root, `None` for negative input.
pub fn isqrt(n: &BigInt) -> Option<BigInt> {
    (n.sign() != Sign::Minus).then(|| n.sqrt())
}

/// `Some(r)` when `n = r²` for some `r ≥ 0`.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = isqrt(n)?;
    (&r * &r == *n).then_some(r)
}

pub fn binomial2(m: usize) -> u64 {
    (m as u64) * (m as u64).saturating_sub(1) / 2
}

/// C(n, k) saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
    }

    #[test]
    fn divisor_examples() {
        let d = |n: u64| divisors(&BigInt::from(n)).unwrap();
        assert_eq!(d(105), [1, 3, 5, 7, 15, 21, 35, 105].map(BigInt::from));
        assert_eq!(d(1), vec![BigInt::from(1)]);
        assert_eq!(d(50), [1, 2, 5, 10, 25, 50].map(BigInt::from));
    }

    #[test]
    fn divisors_match_trial_division() {
        for n in 1..3000 {
            assert_eq!(divisors_u64(n), trial_divisors(n), "n = {n}");
        }
    }

    #[test]
    fn divisor_range_is_enforced() {
        assert!(divisors(&BigInt::from(0)).is_err());
        assert!(divisors(&BigInt::from(-4)).is_err());
        let two64 = BigInt::one() << 64;
        assert_eq!(divisors(&two64).unwrap().len(), 65);
        assert!(divisors(&(two64 + 1)).is_err());
    }

    #[test]
    fn large_semiprime_factors() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        let q = 4_294_967_279u64;
        assert_eq!(factorize_u64(p * q), vec![(q, 1), (p, 1)]);
        assert_eq!(divisors_u64(p * q), vec![1, q, p, p * q]);
        assert!(is_prime_u64(18_446_744_073_709_551_557));
    }

    #[test]
    fn valuation_examples() {
        let v = |n: i64, p: i64| p_adic_valuation(&BigInt::from(n), &BigInt::from(p)).unwrap();
        assert_eq!(v(12, 2), 2);
        assert_eq!(v(1, 3), 0);
        assert_eq!(v(50, 5), 2);
        assert_eq!(v(-8, 2), 3);
        assert!(p_adic_valuation(&BigInt::from(0), &BigInt::from(2)).is_err());
        assert!(p_adic_valuation(&BigInt::from(12), &BigInt::from(4)).is_err());
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree(1).unwrap());
        assert!(is_squarefree(30).unwrap());
        assert!(!is_squarefree(12).unwrap());
        assert!(!is_squarefree(999_983 * 999_983).unwrap());
        assert!(is_squarefree(999_983 * 999_979).unwrap());
        assert!(is_squarefree(0).is_err());
        assert!(is_squarefree(MAX_RING_D + 1).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(48, 3), 17296);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial2(4), 6);
        assert_eq!(binomial(200, 100), u64::MAX);
    }
}
