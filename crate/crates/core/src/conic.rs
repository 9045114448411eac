//! Integer points on `X² + dY² = R`, the three-point families that make the
//! arc bound sharp in `R`, and the exact identities checked on them.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::report::{CheckReport, Conclusion, Quantity, Witness};
use crate::rings::{QuadInt, QuadRing, Rational};
use crate::vandermonde::{det_k, IdentityInstance};

/// Largest `R` accepted by [`enumerate_points`].
pub const MAX_CONIC_R: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ConicPoint {
    #[serde(serialize_with = "crate::report::serialize_display")]
    pub x: BigInt,
    #[serde(serialize_with = "crate::report::serialize_display")]
    pub y: BigInt,
}

impl ConicPoint {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Self {
            x: x.into(),
            y: y.into(),
        }
    }

    /// `x² + d·y²`.
    pub fn form(&self, d: u64) -> BigInt {
        &self.x * &self.x + BigInt::from(d) * &self.y * &self.y
    }

    pub fn check_on(&self, d: u64, r: &BigInt) -> Result<()> {
        if self.form(d) != *r {
            return Err(Error::OffConic {
                x: self.x.to_string(),
                y: self.y.to_string(),
                d,
                r: r.to_string(),
            });
        }
        Ok(())
    }

    /// `N(α_i − α_j) = Δx² + d·Δy²` for the associated `α = x + y√−d`.
    pub fn diff_norm(&self, other: &ConicPoint, d: u64) -> BigInt {
        ConicPoint::new(&self.x - &other.x, &self.y - &other.y).form(d)
    }

    /// Squared Euclidean distance.
    pub fn dist_sq(&self, other: &ConicPoint) -> BigInt {
        self.diff_norm(other, 1)
    }

    /// `x + y·√−d` in the order `Z[√−d]`.
    pub fn to_quad(&self, ring: &QuadRing) -> QuadInt {
        ring.element(self.x.clone(), self.y.clone())
    }
}

impl fmt::Display for ConicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// All integer solutions of `X² + dY² = R`, ordered by `y` then `x`.
pub fn enumerate_points(d: u64, r: &BigInt) -> Result<Vec<ConicPoint>> {
    if d == 0 {
        return Err(out_of_range("d", "0 < 1"));
    }
    let r = match r.to_u64() {
        Some(v) if (1..=MAX_CONIC_R).contains(&v) => v,
        _ => return Err(out_of_range("R", format!("{r} not in [1, {MAX_CONIC_R}]"))),
    };
    let mut points = Vec::new();
    let y_max = (r / d).sqrt();
    for y in 0..=y_max {
        let rest = r - d * y * y;
        let x = rest.sqrt();
        if x * x != rest {
            continue;
        }
        let (x, y) = (x as i64, y as i64);
        for (sx, sy) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
            let p = ConicPoint::new(sx * x, sy * y);
            if !points.contains(&p) {
                points.push(p);
            }
        }
    }
    points.sort_by(|a, b| (&a.y, &a.x).cmp(&(&b.y, &b.x)));
    Ok(points)
}

/// One parametric triple on `X² + dY² = R`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Example1Family {
    pub t: u64,
    pub d: u64,
    #[serde(serialize_with = "crate::report::serialize_display")]
    pub u: BigInt,
    pub points: Vec<ConicPoint>,
    #[serde(serialize_with = "crate::report::serialize_display")]
    pub r: BigInt,
}

/// `u = d²t + dt − d + 1`, `x₁ = dt(2dt−1)u − 1`, `y₁ = t(2dt+1)u + 1`,
/// `(x₂, y₂) = (x₁ + 2dt + 2, y₁ − 2dt)`, `(x₃, y₃) = (x₁ − 2dt, y₁ + 2dt − 2)`.
pub fn example1_generate(t: u64, d: u64) -> Result<Example1Family> {
    if t == 0 || d == 0 {
        return Err(out_of_range(
            "t and d",
            format!("t = {t}, d = {d}; both must be >= 1"),
        ));
    }
    let (tb, db) = (BigInt::from(t), BigInt::from(d));
    let dt = &db * &tb;
    let u = &db * &dt + &dt - &db + 1;
    let x1: BigInt = &dt * (2 * &dt - 1) * &u - 1;
    let y1: BigInt = &tb * (2 * &dt + 1) * &u + 1;
    let points = vec![
        ConicPoint::new(x1.clone(), y1.clone()),
        ConicPoint::new(&x1 + 2 * &dt + 2, &y1 - 2 * &dt),
        ConicPoint::new(&x1 - 2 * &dt, &y1 + 2 * &dt - 2),
    ];
    let r = points[0].form(d);
    for p in &points {
        p.check_on(d, &r)?;
    }
    for (i, j) in (0..3).tuple_combinations() {
        if points[i] == points[j] {
            return Err(Error::NotDistinct(i, j));
        }
    }
    Ok(Example1Family { t, d, u, points, r })
}

/// Leading coefficient of `R` as a polynomial in `t`: `4d⁵(d+1)³`.
pub fn r_leading_coefficient(d: u64) -> BigInt {
    let d = BigInt::from(d);
    4 * d.pow(5) * (&d + 1u32).pow(3)
}

/// Largest squared pairwise Euclidean distance among `points`.
pub fn diameter_sq(points: &[ConicPoint]) -> BigInt {
    points
        .iter()
        .tuple_combinations()
        .map(|(a, b)| a.dist_sq(b))
        .max()
        .unwrap_or_default()
}

/// `(R / (4d⁵(d+1)³·t⁶), D² / (32d²t²))`; both tend to 1.
pub fn example1_asymptotics(t: u64, d: u64) -> Result<(Rational, Rational)> {
    let fam = example1_generate(t, d)?;
    let tb = BigInt::from(t);
    let db = BigInt::from(d);
    let ratio_r = Rational::new(fam.r.clone(), r_leading_coefficient(d) * tb.pow(6));
    let ratio_d = Rational::new(diameter_sq(&fam.points), 32 * db.pow(2) * tb.pow(2));
    Ok((ratio_r, ratio_d))
}

/// `α_i = x_i + y_i√−d`, `β_i = x_i − y_i√−d`, `γ = R`: `α_iβ_i = γ` holds
/// for any points of one conic.
pub fn conic_instance(d: u64, points: &[ConicPoint]) -> Result<IdentityInstance<QuadInt>> {
    let ring = QuadRing::order(d)?;
    let alpha: Vec<QuadInt> = points.iter().map(|p| p.to_quad(&ring)).collect();
    let beta = alpha.iter().map(QuadInt::conj).collect();
    let gamma = ring.from_int(points.first().map(|p| p.form(d)).unwrap_or_default());
    IdentityInstance::new(alpha, beta, gamma)
}

/// `det₁(α, β)` for the parametric triple. Equals `8√−d` for every `t`.
pub fn remark3_determinant(t: u64, d: u64) -> Result<QuadInt> {
    let fam = example1_generate(t, d)?;
    det_k(&conic_instance(d, &fam.points)?, 1)
}

/// `|x₁(y₂−y₃) + x₂(y₃−y₁) + x₃(y₁−y₂)|`, twice the triangle area.
pub fn shoelace(p: &[ConicPoint; 3]) -> BigInt {
    let [a, b, c] = p;
    (&a.x * (&b.y - &c.y) + &b.x * (&c.y - &a.y) + &c.x * (&a.y - &b.y)).abs()
}

/// `N(det₁(α, ᾱ)) = 4d·(shoelace)²` for three points of one conic; with
/// `d = 1` this is `abc = 4ΔR` squared.
pub fn triangle_check(d: u64, points: &[ConicPoint; 3]) -> Result<CheckReport> {
    let r = points[0].form(d);
    for p in points.iter() {
        p.check_on(d, &r)?;
    }
    let det = det_k(&conic_instance(d, points)?, 1)?;
    let lhs = det.norm();
    let area2 = shoelace(points);
    let rhs = 4 * BigInt::from(d) * &area2 * &area2;
    let holds = lhs == rhs;
    let mut report = CheckReport::new("triangle");
    report
        .note("d", d)
        .note("R", &r)
        .note("det1", &det)
        .note("shoelace", &area2);
    report.conclusion = Some(Conclusion::equal(
        Quantity::Integer(lhs.clone()),
        Quantity::Integer(rhs.clone()),
        Some(lhs.cmp(&rhs)),
        holds,
    ));
    report.witness = Some(Witness::new("triangle", points.iter()));
    Ok(report)
}

/// `d·‖p_i − p_j‖² ≥ |N(α_i − α_j)|` over all pairs; the reported pair has
/// the least slack.
pub fn chord_bound_check(d: u64, points: &[ConicPoint]) -> Result<CheckReport> {
    if points.len() < 2 {
        return Err(Error::TooFew {
            needed: 2,
            got: points.len(),
        });
    }
    let db = BigInt::from(d);
    let (i, j, lhs, rhs) = (0..points.len())
        .tuple_combinations()
        .map(|(i, j)| {
            let (p, q) = (&points[i], &points[j]);
            (i, j, &db * p.dist_sq(q), p.diff_norm(q, d))
        })
        .min_by(|a, b| (&a.2 - &a.3).cmp(&(&b.2 - &b.3)))
        .expect("at least one pair");
    let ordering = lhs.cmp(&rhs);
    let mut report = CheckReport::new("chord");
    report.note("d", d).note("points", points.len());
    report.conclusion = Some(Conclusion::at_least(
        Quantity::Integer(lhs),
        Quantity::Integer(rhs),
        ordering,
    ));
    report.witness = Some(Witness::new("pair", [&points[i], &points[j]]));
    Ok(report)
}

/// `D < 2^{13/6}·R^{1/6}/d^{1/3}`, decided as `(D²)³·d² < 2¹³·R`.
pub fn ex2_holds(t: u64, d: u64) -> Result<bool> {
    let fam = example1_generate(t, d)?;
    let dsq = diameter_sq(&fam.points);
    Ok(dsq.pow(3) * BigInt::from(d).pow(2) < 8192 * fam.r)
}

/// Smallest `T₀ ≤ t_max` with the diameter bound holding for every
/// `t ∈ [T₀, t_max]`; `None` if it fails at `t_max`.
pub fn ex2_threshold(d: u64, t_max: u64) -> Result<Option<u64>> {
    let mut t0 = None;
    for t in (1..=t_max).rev() {
        if !ex2_holds(t, d)? {
            break;
        }
        t0 = Some(t);
    }
    Ok(t0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<ConicPoint> {
        v.iter().map(|&(x, y)| ConicPoint::new(x, y)).collect()
    }

    #[test]
    fn enumeration_examples() {
        let p = enumerate_points(1, &BigInt::from(50)).unwrap();
        assert_eq!(
            p,
            pts(&[
                (-7, -1),
                (7, -1),
                (-5, -5),
                (5, -5),
                (-1, -7),
                (1, -7),
                (-7, 1),
                (7, 1),
                (-5, 5),
                (5, 5),
                (-1, 7),
                (1, 7),
            ])
            .into_iter()
            .sorted_by(|a, b| (&a.y, &a.x).cmp(&(&b.y, &b.x)))
            .collect::<Vec<_>>()
        );
        assert!(enumerate_points(1, &BigInt::from(3)).unwrap().is_empty());
        assert_eq!(
            enumerate_points(5, &BigInt::from(5)).unwrap(),
            pts(&[(0, -1), (0, 1)])
        );
        assert_eq!(enumerate_points(1, &BigInt::from(1)).unwrap().len(), 4);
        assert!(enumerate_points(1, &BigInt::from(0)).is_err());
        assert!(enumerate_points(0, &BigInt::from(5)).is_err());
        assert!(enumerate_points(1, &BigInt::from(MAX_CONIC_R + 1)).is_err());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for d in 1..=6u64 {
            for r in 1..=300i64 {
                let mut brute = Vec::new();
                for y in -20i64..=20 {
                    for x in -20i64..=20 {
                        if x * x + d as i64 * y * y == r {
                            brute.push(ConicPoint::new(x, y));
                        }
                    }
                }
                brute.sort_by(|a, b| (&a.y, &a.x).cmp(&(&b.y, &b.x)));
                assert_eq!(enumerate_points(d, &BigInt::from(r)).unwrap(), brute);
            }
        }
    }

    #[test]
    fn families() {
        let f = example1_generate(1, 1).unwrap();
        assert_eq!(
            (f.u.clone(), f.r.clone()),
            (BigInt::from(2), BigInt::from(50))
        );
        assert_eq!(f.points, pts(&[(1, 7), (5, 5), (-1, 7)]));
        let f = example1_generate(2, 1).unwrap();
        assert_eq!(f.points, pts(&[(23, 41), (29, 37), (19, 43)]));
        assert_eq!(f.r, BigInt::from(2210));
        let f = example1_generate(1, 2).unwrap();
        assert_eq!(f.points, pts(&[(29, 26), (35, 22), (25, 28)]));
        assert_eq!(f.r, BigInt::from(2193));
        assert!(example1_generate(0, 1).is_err());
    }

    #[test]
    fn asymptotics() {
        let (_, ratio_d) = example1_asymptotics(1, 1).unwrap();
        assert_eq!(ratio_d, Rational::new(40.into(), 32.into()));
        for d in [1, 2] {
            let (ratio_r, ratio_d) = example1_asymptotics(1000, d).unwrap();
            for r in [ratio_r, ratio_d] {
                let v = r.to_f64().unwrap();
                assert!((0.99..=1.01).contains(&v), "d = {d}: {v}");
            }
        }
    }

    #[test]
    fn determinant_constant() {
        for (t, d) in [(1, 1), (2, 1), (1, 2), (7, 3)] {
            let ring = QuadRing::order(d).unwrap();
            assert_eq!(remark3_determinant(t, d).unwrap(), ring.element(0, 8));
        }
    }

    #[test]
    fn triangle_and_chords() {
        let p = pts(&[(1, 7), (5, 5), (-1, 7)]);
        let report = triangle_check(1, &[p[0].clone(), p[1].clone(), p[2].clone()]).unwrap();
        assert!(report.passed());
        assert_eq!(report.note_value("shoelace"), Some("4"));
        assert_eq!(report.conclusion.unwrap().lhs.to_string(), "64");
        let all = enumerate_points(2, &BigInt::from(2193)).unwrap();
        assert!(chord_bound_check(2, &all).unwrap().passed());
        assert!(triangle_check(1, &[p[0].clone(), p[1].clone(), ConicPoint::new(0, 0)]).is_err());
    }

    #[test]
    fn diameter_bound_eventually_holds() {
        for d in 1..=3 {
            assert!(ex2_threshold(d, 60).unwrap().is_some());
        }
    }
}
