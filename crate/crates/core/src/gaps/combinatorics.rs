//! Minimisations over the split point `k` that bound the `p`-adic valuation
//! of the product of norm differences for ramified `p`.

/// `min over k ∈ [0, m] of C(k,2) + C(m−k,2)`, with a minimizing `k`.
pub fn valuation_split_min(m: usize) -> (u64, usize) {
    let c2 = |n: usize| (n * n.saturating_sub(1) / 2) as u64;
    (0..=m)
        .map(|k| (c2(k) + c2(m - k), k))
        .min()
        .expect("nonempty range")
}

/// `min over k ∈ [0, m−1] of k(k+1)/2 + (m−1−k)(m−k)/2`, with a minimizing
/// `k`.
pub fn shifted_split_min(m: usize) -> (u64, usize) {
    assert!(m >= 1, "m must be positive");
    (0..m)
        .map(|k| (((k * (k + 1)) / 2 + ((m - 1 - k) * (m - k)) / 2) as u64, k))
        .min()
        .expect("nonempty range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaps::t_formula;

    #[test]
    fn small_values() {
        assert_eq!(valuation_split_min(3), (1, 1));
        assert_eq!(valuation_split_min(5).0, 4);
        assert_eq!(shifted_split_min(3).0, 2);
    }

    #[test]
    fn even_m_falls_short_of_t() {
        assert_eq!(valuation_split_min(4).0, 2);
        assert_eq!(t_formula(4), 3);
    }
}
