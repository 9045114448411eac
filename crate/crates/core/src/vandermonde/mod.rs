//! The mixed Vandermonde determinant `det_k(α, β)` and the identity
//!
//! ```text
//! γ^{k(k+1)/2} · ∏_{i<j} (α_i − α_j) = ε(m) · det_k(α, β) · ∏_i α_i^k
//! ```
//!
//! for sequences with `α_i·β_i = γ`. The sign `ε(m) = (−1)^{m(m−1)/2}` comes
//! from the row order `β^k, …, β, 1, α, …, α^{m−k−1}` and does not depend
//! on `k`.

mod det;
mod kfunc;
pub mod random;

pub use det::{det_exact, MAX_DET_DIM};
pub use kfunc::{arc_exponent, bound_exponent, k_by_enumeration, k_function, KValue};

use crate::error::{out_of_range, Error, Result};
use crate::report::{CheckReport, Conclusion, Quantity};
use crate::rings::{Ring, RingTag};

/// `α`, `β`, `γ` with `α_i·β_i = γ`, `α_i` pairwise distinct and every
/// element nonzero. All invariants are checked at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityInstance<R: Ring> {
    alpha: Vec<R>,
    beta: Vec<R>,
    gamma: R,
}

impl<R: Ring> IdentityInstance<R> {
    pub fn new(alpha: Vec<R>, beta: Vec<R>, gamma: R) -> Result<Self> {
        let m = alpha.len();
        if m < 2 {
            return Err(Error::TooFew { needed: 2, got: m });
        }
        if m > MAX_DET_DIM {
            return Err(Error::TooLarge(format!("m = {m} exceeds {MAX_DET_DIM}")));
        }
        if beta.len() != m {
            return Err(out_of_range(
                "beta",
                format!("{} entries for m = {m}", beta.len()),
            ));
        }
        let tag = gamma.tag();
        if let Some(x) = alpha.iter().chain(beta.iter()).find(|x| x.tag() != tag) {
            return Err(Error::RingMismatch(format!(
                "{} is in {}, gamma in {tag}",
                x,
                x.tag()
            )));
        }
        if gamma.vanishes() {
            return Err(Error::Zero("gamma"));
        }
        if alpha.iter().chain(beta.iter()).any(Ring::vanishes) {
            return Err(Error::Zero("alpha_i and beta_i"));
        }
        for i in 0..m {
            for j in i + 1..m {
                if alpha[i] == alpha[j] {
                    return Err(Error::NotDistinct(i, j));
                }
            }
        }
        for (i, (a, b)) in alpha.iter().zip(&beta).enumerate() {
            if a.times(b) != gamma {
                return Err(Error::NotDivisible(format!(
                    "alpha_{i} * beta_{i} = {} differs from gamma = {gamma}",
                    a.times(b)
                )));
            }
        }
        Ok(Self { alpha, beta, gamma })
    }

    /// Derives `β_i = γ / α_i` by exact division.
    pub fn from_alpha_gamma(alpha: Vec<R>, gamma: R) -> Result<Self> {
        let beta = alpha
            .iter()
            .enumerate()
            .map(|(i, a)| {
                gamma.exact_div(a).ok_or_else(|| {
                    Error::NotDivisible(format!("alpha_{i} = {a} does not divide gamma = {gamma}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alpha, beta, gamma)
    }

    pub fn m(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[R] {
        &self.alpha
    }

    pub fn beta(&self) -> &[R] {
        &self.beta
    }

    pub fn gamma(&self) -> &R {
        &self.gamma
    }

    pub fn tag(&self) -> RingTag {
        self.gamma.tag()
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k >= self.m() {
            return Err(out_of_range(
                "k",
                format!("{k} not in [0, {}]", self.m() - 1),
            ));
        }
        Ok(())
    }

    /// Rows `β^k, …, β, 1, α, …, α^{m−k−1}`, one column per index.
    pub fn det_k_matrix(&self, k: usize) -> Result<Vec<Vec<R>>> {
        self.check_k(k)?;
        let m = self.m();
        let mut rows = Vec::with_capacity(m);
        for e in (1..=k as u64).rev() {
            rows.push(self.beta.iter().map(|b| b.pow(e)).collect());
        }
        for e in 0..(m - k) as u64 {
            rows.push(self.alpha.iter().map(|a| a.pow(e)).collect());
        }
        Ok(rows)
    }

    /// Both sides of the identity: `(γ^{k(k+1)/2}·∏_{i<j}(α_i − α_j),
    /// ε(m)·det_k·∏ α_i^k)`.
    pub fn identity_sides(&self, k: usize) -> Result<(R, R)> {
        let det = det_k(self, k)?;
        let one = self.gamma.one_like();
        let k64 = k as u64;
        let mut diffs = one.clone();
        for i in 0..self.m() {
            for j in i + 1..self.m() {
                diffs = diffs.times(&self.alpha[i].minus(&self.alpha[j]));
            }
        }
        let lhs = self.gamma.pow(k64 * (k64 + 1) / 2).times(&diffs);
        let alpha_prod = self.alpha.iter().fold(one, |acc, a| acc.times(a));
        let mut rhs = det.times(&alpha_prod.pow(k64));
        if epsilon(self.m()) < 0 {
            rhs = rhs.negate();
        }
        Ok((lhs, rhs))
    }
}

/// `ε(m) = (−1)^{m(m−1)/2}`.
pub fn epsilon(m: usize) -> i8 {
    if (m * (m.saturating_sub(1)) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The `m×m` determinant `det_k(α, β)`; nonzero for every valid instance.
pub fn det_k<R: Ring>(instance: &IdentityInstance<R>, k: usize) -> Result<R> {
    det_exact(&instance.det_k_matrix(k)?)
}

/// Checks the identity with explicit sign as an exact ring equality.
pub fn verify_identity<R: Ring>(instance: &IdentityInstance<R>, k: usize) -> Result<CheckReport> {
    let (lhs, rhs) = instance.identity_sides(k)?;
    let holds = lhs == rhs;
    let mut report = CheckReport::new(format!("identity[k={k}]"));
    report
        .note("ring", instance.tag())
        .note("m", instance.m())
        .note("k", k)
        .note("epsilon", epsilon(instance.m()));
    report.conclusion = Some(Conclusion::equal(
        Quantity::Element(lhs.to_string()),
        Quantity::Element(rhs.to_string()),
        None,
        holds,
    ));
    Ok(report)
}
