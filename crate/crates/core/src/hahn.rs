//! Finite-support Hahn series over GF(2) with exponents in Γ = ℤ + ℤ√2.
//!
//! K embeds into this ring by β ↦ t and α ↦ t^√2, and θ extends to it by
//! scaling exponents by √2. Constant coefficients are θ-invariant, so an
//! element with constant coefficient 1 is never of the form v^θ + v. That
//! single observation is the obstruction implemented here.

use crate::base_field::Gf2Poly;
use crate::report::{expect, expect_eq, with_inputs, CheckReport, Failure, RunConfig};
use rand::Rng;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The number `a + b√2` with integer `a`, `b`, ordered by real value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, serde::Serialize)]
pub struct SqrtTwoNum {
    pub a: i64,
    pub b: i64,
}

impl SqrtTwoNum {
    pub const ZERO: SqrtTwoNum = SqrtTwoNum { a: 0, b: 0 };
    pub const ONE: SqrtTwoNum = SqrtTwoNum { a: 1, b: 0 };
    pub const SQRT2: SqrtTwoNum = SqrtTwoNum { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        SqrtTwoNum { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Exact sign of `a + b√2`.
    pub fn signum(self) -> i32 {
        let (a, b) = (self.a as i128, self.b as i128);
        let s = |x: i128| x.signum() as i32;
        match (a.signum(), b.signum()) {
            (x, y) if x >= 0 && y >= 0 => s(a + b),
            (x, y) if x <= 0 && y <= 0 => s(a + b),
            // mixed signs: compare a² with 2b²
            (1, _) => s(a * a - 2 * b * b),
            _ => s(2 * b * b - a * a),
        }
    }

    /// Multiplication by √2: (a + b√2)√2 = 2b + a√2.
    pub fn times_sqrt2(self) -> Self {
        SqrtTwoNum::new(2 * self.b, self.a)
    }
}

impl Ord for SqrtTwoNum {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum().cmp(&0)
    }
}

impl PartialOrd for SqrtTwoNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for SqrtTwoNum {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        SqrtTwoNum::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for SqrtTwoNum {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        SqrtTwoNum::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for SqrtTwoNum {
    type Output = Self;
    fn neg(self) -> Self {
        SqrtTwoNum::new(-self.a, -self.b)
    }
}

impl Mul for SqrtTwoNum {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        SqrtTwoNum::new(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)
    }
}

impl fmt::Display for SqrtTwoNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Default cap on the support size of a product.
pub const DEFAULT_SUPPORT_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HahnError {
    #[error("Hahn series support exceeded {cap} terms")]
    SupportOverflow { cap: usize },
}

/// A finite Hahn series: the set of exponents whose coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HahnElt {
    support: BTreeSet<SqrtTwoNum>,
}

impl HahnElt {
    pub fn zero() -> Self {
        HahnElt::default()
    }

    pub fn one() -> Self {
        Self::monomial(SqrtTwoNum::ZERO)
    }

    /// The monomial t^g.
    pub fn monomial(g: SqrtTwoNum) -> Self {
        HahnElt {
            support: BTreeSet::from([g]),
        }
    }

    /// Sum of monomials; repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = SqrtTwoNum>>(it: I) -> Self {
        let mut x = HahnElt::zero();
        for g in it {
            x.toggle(g);
        }
        x
    }

    fn toggle(&mut self, g: SqrtTwoNum) {
        if !self.support.remove(&g) {
            self.support.insert(g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = SqrtTwoNum> + '_ {
        self.support.iter().copied()
    }

    pub fn coeff(&self, g: SqrtTwoNum) -> bool {
        self.support.contains(&g)
    }

    /// Least exponent in the support.
    pub fn valuation(&self) -> Option<SqrtTwoNum> {
        self.support.first().copied()
    }

    pub fn add(&self, other: &HahnElt) -> HahnElt {
        HahnElt {
            support: self
                .support
                .symmetric_difference(&other.support)
                .copied()
                .collect(),
        }
    }

    /// Product, refusing supports larger than `cap`.
    pub fn mul_capped(&self, other: &HahnElt, cap: usize) -> Result<HahnElt, HahnError> {
        let mut out = HahnElt::zero();
        for &g in &self.support {
            for &h in &other.support {
                out.toggle(g + h);
            }
        }
        if out.support.len() > cap {
            return Err(HahnError::SupportOverflow { cap });
        }
        Ok(out)
    }
}

impl fmt::Display for HahnElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .support
            .iter()
            .map(|g| format!("t^({},{})", g.a, g.b))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Product with the default support cap.
pub fn hahn_mul(x: &HahnElt, y: &HahnElt) -> Result<HahnElt, HahnError> {
    x.mul_capped(y, DEFAULT_SUPPORT_CAP)
}

/// The extension of θ: exponent g ↦ √2·g.
pub fn hahn_theta(x: &HahnElt) -> HahnElt {
    HahnElt {
        support: x.support.iter().map(|g| g.times_sqrt2()).collect(),
    }
}

/// The embedding of polynomials: α^i β^j ↦ t^(j + i√2).
pub fn embed_poly(p: &Gf2Poly) -> HahnElt {
    HahnElt::from_exponents(p.terms().map(|(i, j)| SqrtTwoNum::new(j as i64, i as i64)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceObstruction {
    /// The constant coefficient is 1, so the element is not v^θ + v.
    NotATrace,
    /// The constant-coefficient test says nothing.
    Inconclusive,
}

pub fn trace_obstruction(x: &HahnElt) -> TraceObstruction {
    if x.coeff(SqrtTwoNum::ZERO) {
        TraceObstruction::NotATrace
    } else {
        TraceObstruction::Inconclusive
    }
}

/// The obstruction applied to `1 + t^√2·u²` for sampled finite-support `u`.
///
/// Squaring doubles exponents, so `t^√2·u²` is supported on `√2 + 2g`, which
/// is never 0 for `g ∈ Γ`. The constant coefficient of `1 + t^√2·u²` is
/// therefore 1 and the element is not a trace. Both steps are checked.
pub fn obstruction_checks(cfg: &RunConfig) -> Vec<CheckReport> {
    let mut out = vec![CheckReport::single("1 + t^√2·t² is not a trace", {
        let u = HahnElt::monomial(SqrtTwoNum::ONE);
        one_plus_sqrt2_square(&u).and_then(|x| {
            expect_eq(
                "obstruction",
                &trace_obstruction(&x),
                &TraceObstruction::NotATrace,
            )
        })
    })];
    out.push(cfg.run(
        "1 + t^√2·u² is not a trace for finite-support u",
        50,
        |rng| {
            let size = rng.gen_range(1..=8);
            let u = HahnElt::from_exponents(
                (0..size).map(|_| SqrtTwoNum::new(rng.gen_range(-4..=4), rng.gen_range(-4..=4))),
            );
            let x = one_plus_sqrt2_square(&u)?;
            let t = expect(
                "t^√2·u² has constant coefficient 0",
                !x.add(&HahnElt::one()).coeff(SqrtTwoNum::ZERO),
            )
            .and_then(|_| {
                expect_eq(
                    "obstruction",
                    &trace_obstruction(&x),
                    &TraceObstruction::NotATrace,
                )
            });
            with_inputs(t, &[("u", &u)])
        },
    ));
    out
}

fn one_plus_sqrt2_square(u: &HahnElt) -> Result<HahnElt, Failure> {
    let sq = hahn_mul(u, u).map_err(|e| Failure::new(e.to_string()))?;
    let shifted = hahn_mul(&HahnElt::monomial(SqrtTwoNum::SQRT2), &sq)
        .map_err(|e| Failure::new(e.to_string()))?;
    Ok(HahnElt::one().add(&shifted))
}

impl fmt::Display for TraceObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: i64, b: i64) -> HahnElt {
        HahnElt::monomial(SqrtTwoNum::new(a, b))
    }

    #[test]
    fn order_matches_real_value_on_a_grid() {
        let r2 = std::f64::consts::SQRT_2;
        let grid: Vec<SqrtTwoNum> = (-10..=10)
            .flat_map(|a| (-10..=10).map(move |b| SqrtTwoNum::new(a, b)))
            .collect();
        for &x in &grid {
            for &y in &grid {
                let fx = x.a as f64 + x.b as f64 * r2;
                let fy = y.a as f64 + y.b as f64 * r2;
                // the values never tie unless equal, since √2 is irrational
                let expect = if x == y {
                    Ordering::Equal
                } else {
                    fx.partial_cmp(&fy).unwrap()
                };
                assert_eq!(x.cmp(&y), expect, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn monomial_products() {
        assert_eq!(hahn_mul(&t(1, 0), &t(0, 1)).unwrap(), t(1, 1));
        assert!(hahn_mul(&t(1, 0), &HahnElt::zero()).unwrap().is_zero());
        let s = t(1, 0).add(&t(0, 1));
        assert_eq!(hahn_mul(&s, &s).unwrap(), t(2, 0).add(&t(0, 2)));
    }

    #[test]
    fn theta_on_generators() {
        assert_eq!(hahn_theta(&t(1, 0)), t(0, 1));
        assert_eq!(hahn_theta(&t(0, 1)), t(2, 0));
    }

    #[test]
    fn embedding_of_generators() {
        assert_eq!(embed_poly(&Gf2Poly::beta()), t(1, 0));
        assert_eq!(embed_poly(&Gf2Poly::alpha()), t(0, 1));
    }

    #[test]
    fn obstruction_cases() {
        assert_eq!(
            trace_obstruction(&HahnElt::zero()),
            TraceObstruction::Inconclusive
        );
        assert_eq!(trace_obstruction(&t(1, 0)), TraceObstruction::Inconclusive);
        // 1 + t^√2 · t² = 1 + t^(2,1)
        let x = HahnElt::one()
            .add(&hahn_mul(&t(0, 1), &hahn_mul(&t(1, 0), &t(1, 0)).unwrap()).unwrap());
        assert_eq!(trace_obstruction(&x), TraceObstruction::NotATrace);
    }

    #[test]
    fn support_cap_is_enforced() {
        let x = HahnElt::from_exponents((0..100).map(|k| SqrtTwoNum::new(k, 0)));
        let y = HahnElt::from_exponents((0..100).map(|k| SqrtTwoNum::new(0, k)));
        assert_eq!(
            x.mul_capped(&y, 4096),
            Err(HahnError::SupportOverflow { cap: 4096 })
        );
    }
}
