//! The separable quadratic extension E = K(γ), γ² = γ + δ.
//!
//! Elements are `a + bγ` with `a, b ∈ K`. The nontrivial automorphism χ
//! sends γ to γ + 1. θ extends to E in exactly two ways once a witness λ
//! with λ^θ + λ = δ is fixed: θ₁ sends γ to γ + λ, and θ₂ = χθ₁.

use crate::base_field::{self, Evaluator, Gf2Poly, RatFn, TitsEndoK};
use crate::error::{Error, Result};
use crate::report::{expect_eq, with_inputs, CheckReport, Failure, RunConfig};
use rand::Rng;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

/// The data defining E over K together with the witness λ that fixes the
/// extensions of θ.
#[derive(Debug, PartialEq)]
pub struct ExtDescriptor {
    delta: RatFn,
    lambda: RatFn,
    theta: TitsEndoK,
}

/// Which extension of θ to E is in use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum ThetaChoice {
    One,
    Two,
}

impl ThetaChoice {
    pub fn index(self) -> u8 {
        match self {
            ThetaChoice::One => 1,
            ThetaChoice::Two => 2,
        }
    }

    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(ThetaChoice::One),
            2 => Some(ThetaChoice::Two),
            _ => None,
        }
    }
}

impl ExtDescriptor {
    /// Validate `λ^θ + λ = δ` and run a cheap reducibility screen: δ must not
    /// equal y² + y for any y supported on monomials of degree ≤ 2.
    pub fn new(delta: RatFn, lambda: RatFn, theta: TitsEndoK) -> Result<Arc<Self>> {
        if theta.trace(&lambda) != delta {
            return Err(Error::WitnessMismatch);
        }
        let small: Vec<(usize, usize)> = (0..=2)
            .flat_map(|t| (0..=t).map(move |i| (i, t - i)))
            .collect();
        for mask in 0u32..(1 << small.len()) {
            let y = RatFn::from_poly(Gf2Poly::from_terms(
                (0..small.len())
                    .filter(|k| mask >> k & 1 == 1)
                    .map(|k| small[k]),
            ));
            if &y.square() + &y == delta {
                return Err(Error::ReducibleExtension(y.to_string()));
            }
        }
        Ok(Arc::new(ExtDescriptor {
            delta,
            lambda,
            theta,
        }))
    }

    /// δ = α + β², λ = α, standard θ.
    pub fn standard() -> Arc<Self> {
        Self::new(
            &RatFn::alpha() + &RatFn::monomial(0, 2),
            RatFn::alpha(),
            TitsEndoK::standard(),
        )
        .expect("the default extension data is valid")
    }

    pub fn delta(&self) -> &RatFn {
        &self.delta
    }

    pub fn lambda(&self) -> &RatFn {
        &self.lambda
    }

    pub fn theta(&self) -> &TitsEndoK {
        &self.theta
    }
}

/// An element `a + bγ` of E, tied to its descriptor.
#[derive(Clone)]
pub struct EElem {
    a: RatFn,
    b: RatFn,
    ext: Arc<ExtDescriptor>,
}

impl EElem {
    pub fn new(ext: &Arc<ExtDescriptor>, a: RatFn, b: RatFn) -> Self {
        EElem {
            a,
            b,
            ext: ext.clone(),
        }
    }

    pub fn zero(ext: &Arc<ExtDescriptor>) -> Self {
        Self::new(ext, RatFn::zero(), RatFn::zero())
    }

    pub fn one(ext: &Arc<ExtDescriptor>) -> Self {
        Self::from_k(ext, RatFn::one())
    }

    pub fn gamma(ext: &Arc<ExtDescriptor>) -> Self {
        Self::new(ext, RatFn::zero(), RatFn::one())
    }

    pub fn from_k(ext: &Arc<ExtDescriptor>, a: RatFn) -> Self {
        Self::new(ext, a, RatFn::zero())
    }

    pub fn a(&self) -> &RatFn {
        &self.a
    }

    pub fn b(&self) -> &RatFn {
        &self.b
    }

    pub fn ext(&self) -> &Arc<ExtDescriptor> {
        &self.ext
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_overflow(&self) -> bool {
        self.a.is_overflow() || self.b.is_overflow()
    }

    /// Whether the element lies in K.
    pub fn in_base(&self) -> bool {
        self.b.is_zero()
    }

    fn same_field(&self, o: &EElem) {
        assert!(
            Arc::ptr_eq(&self.ext, &o.ext),
            "elements of different extension descriptors mixed"
        );
    }

    /// χ: a + bγ ↦ (a + b) + bγ.
    pub fn conj(&self) -> EElem {
        EElem {
            a: &self.a + &self.b,
            b: self.b.clone(),
            ext: self.ext.clone(),
        }
    }

    /// N(a + bγ) = a² + ab + b²δ.
    pub fn norm(&self) -> RatFn {
        &(&self.a.square() + &(&self.a * &self.b)) + &(&self.b.square() * &self.ext.delta)
    }

    /// T(x) = x + χ(x), which is the γ-coordinate.
    pub fn trace(&self) -> RatFn {
        self.b.clone()
    }

    pub fn scale(&self, c: &RatFn) -> EElem {
        EElem {
            a: &self.a * c,
            b: &self.b * c,
            ext: self.ext.clone(),
        }
    }

    pub fn square(&self) -> EElem {
        // (a + bγ)² = a² + b²δ + b²γ
        let b2 = self.b.square();
        EElem {
            a: &self.a.square() + &(&b2 * &self.ext.delta),
            b: b2,
            ext: self.ext.clone(),
        }
    }

    /// Inverse via x⁻¹ = χ(x)/N(x); `None` for zero.
    pub fn checked_inv(&self) -> Option<EElem> {
        let n = self.norm().checked_inv()?;
        Some(self.conj().scale(&n))
    }

    pub fn inv(&self) -> EElem {
        self.checked_inv().expect("inverse of zero in E")
    }

    /// θ₁(a + bγ) = (a^θ + b^θλ) + b^θγ, and θ₂ = χθ₁.
    pub fn theta(&self, which: ThetaChoice) -> EElem {
        let th = &self.ext.theta;
        let bt = th.apply(&self.b);
        let t1 = EElem {
            a: &th.apply(&self.a) + &(&bt * &self.ext.lambda),
            b: bt,
            ext: self.ext.clone(),
        };
        match which {
            ThetaChoice::One => t1,
            ThetaChoice::Two => t1.conj(),
        }
    }

    fn add_ref(&self, o: &EElem) -> EElem {
        self.same_field(o);
        EElem {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            ext: self.ext.clone(),
        }
    }

    fn mul_ref(&self, o: &EElem) -> EElem {
        self.same_field(o);
        if self.b.is_zero() {
            return o.scale(&self.a);
        }
        if o.b.is_zero() {
            return self.scale(&o.a);
        }
        // (a + bγ)(c + dγ) = (ac + bdδ) + (ad + bc + bd)γ
        let (a, b, c, d) = (&self.a, &self.b, &o.a, &o.b);
        let bd = b * d;
        EElem {
            a: &(a * c) + &(&bd * &self.ext.delta),
            b: &(&(a * d) + &(b * c)) + &bd,
            ext: self.ext.clone(),
        }
    }
}

impl PartialEq for EElem {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.ext, &o.ext) && self.a == o.a && self.b == o.b
    }
}

macro_rules! forward_e {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&EElem> for &EElem {
            type Output = EElem;
            fn $method(self, o: &EElem) -> EElem {
                self.$imp(o)
            }
        }
        impl $tr<EElem> for EElem {
            type Output = EElem;
            fn $method(self, o: EElem) -> EElem {
                (&self).$imp(&o)
            }
        }
        impl $tr<&EElem> for EElem {
            type Output = EElem;
            fn $method(self, o: &EElem) -> EElem {
                (&self).$imp(o)
            }
        }
        impl $tr<EElem> for &EElem {
            type Output = EElem;
            fn $method(self, o: EElem) -> EElem {
                self.$imp(&o)
            }
        }
    };
}

forward_e!(Add, add, add_ref);
forward_e!(Sub, sub, add_ref);
forward_e!(Mul, mul, mul_ref);

impl Mul<&RatFn> for &EElem {
    type Output = EElem;
    fn mul(self, c: &RatFn) -> EElem {
        self.scale(c)
    }
}

impl Mul<&EElem> for &RatFn {
    type Output = EElem;
    fn mul(self, x: &EElem) -> EElem {
        x.scale(self)
    }
}

fn k_text(x: &RatFn, wrap: bool) -> String {
    let s = x.to_string();
    if wrap && (s.contains('+') || s.contains('/')) {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for EElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", k_text(&self.a, false)),
            (true, false) if self.b.is_one() => write!(f, "g"),
            (true, false) => write!(f, "{}*g", k_text(&self.b, true)),
            (false, false) if self.b.is_one() => write!(f, "{} + g", k_text(&self.a, false)),
            (false, false) => write!(
                f,
                "{} + {}*g",
                k_text(&self.a, false),
                k_text(&self.b, true)
            ),
        }
    }
}

impl fmt::Debug for EElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EElem({self})")
    }
}

/// Evaluates the text grammar in E: `a`, `b` for α, β and `g` for γ.
pub struct EEvaluator<'a>(pub &'a Arc<ExtDescriptor>);

impl Evaluator for EEvaluator<'_> {
    type Value = EElem;
    fn constant(&self, one: bool) -> EElem {
        if one {
            EElem::one(self.0)
        } else {
            EElem::zero(self.0)
        }
    }
    fn variable(&self, name: &str) -> Option<EElem> {
        match name {
            "g" | "γ" => Some(EElem::gamma(self.0)),
            other => base_field::KEvaluator
                .variable(other)
                .map(|k| EElem::from_k(self.0, k)),
        }
    }
    fn add(&self, x: EElem, y: EElem) -> EElem {
        x + y
    }
    fn mul(&self, x: EElem, y: EElem) -> EElem {
        x * y
    }
    fn div(&self, x: EElem, y: EElem) -> Option<EElem> {
        Some(&x * &y.checked_inv()?)
    }
}

/// Parse an element of E from text such as `a + (b+1)*g`.
pub fn parse_eelem(ext: &Arc<ExtDescriptor>, src: &str) -> Result<EElem> {
    let x = base_field::parse(src)?.eval(&EEvaluator(ext))?;
    x.a.clone().check()?;
    x.b.clone().check()?;
    Ok(x)
}

/// Random element with both coordinates drawn by [`base_field::random_ratfn`].
pub fn random_eelem<R: Rng + ?Sized>(
    rng: &mut R,
    ext: &Arc<ExtDescriptor>,
    maxdeg: usize,
) -> EElem {
    let a = base_field::random_ratfn(rng, maxdeg);
    let b = base_field::random_ratfn(rng, maxdeg);
    EElem::new(ext, a, b)
}

pub fn ext_mul(x: &EElem, y: &EElem) -> EElem {
    x * y
}

pub fn ext_conj(x: &EElem) -> EElem {
    x.conj()
}

pub fn ext_norm(x: &EElem) -> RatFn {
    x.norm()
}

pub fn theta_ext(which: ThetaChoice, x: &EElem) -> EElem {
    x.theta(which)
}

/// Tits-endomorphism facts for K and both extensions to E, plus the trace
/// facts that pin down the instance: λ witnesses δ, and 1 has no small
/// witness.
pub fn tits_checks(ext: &Arc<ExtDescriptor>, cfg: &RunConfig) -> Vec<CheckReport> {
    let d = cfg.max_deg;
    let th = ext.theta();
    let mut out = vec![cfg.run("θ² is the Frobenius on K", 50, |rng| {
        let x = base_field::random_ratfn(rng, d);
        with_inputs(
            expect_eq("θ(θ(x)) = x²", &th.apply(&th.apply(&x)), &x.square()),
            &[("x", &x)],
        )
    })];
    for which in [ThetaChoice::One, ThetaChoice::Two] {
        let i = which.index();
        out.push(cfg.run(&format!("θ{i} commutes with χ"), 50, |rng| {
            let x = random_eelem(rng, ext, d);
            with_inputs(
                expect_eq(
                    "θ(χ(x)) = χ(θ(x))",
                    &x.conj().theta(which),
                    &x.theta(which).conj(),
                ),
                &[("x", &x)],
            )
        }));
        out.push(cfg.run(&format!("θ{i}² is the Frobenius on E"), 50, |rng| {
            let x = random_eelem(rng, ext, d);
            with_inputs(
                expect_eq("θ(θ(x)) = x²", &x.theta(which).theta(which), &x.square()),
                &[("x", &x)],
            )
        }));
    }
    out.push(CheckReport::single(
        "λ is a verified trace witness for δ",
        {
            let bound = ext
                .lambda()
                .degree()
                .clamp(1, base_field::MAX_SEARCH_DEGREE);
            expect_eq("λ^θ + λ", &th.trace(ext.lambda()), ext.delta()).and_then(|_| {
                match base_field::tits_trace_search(th, ext.delta(), bound)? {
                    base_field::TraceAnswer::Witness(w) => {
                        expect_eq("searched witness", &th.trace(&w), ext.delta())
                    }
                    base_field::TraceAnswer::NoWitnessUpTo(m) => Err(Failure::new(format!(
                        "search found no witness up to degree {m}"
                    ))),
                }
            })
        },
    ));
    out.push(CheckReport::single(
        "1 has no trace witness up to degree 4",
        {
            let got = base_field::tits_trace_search(th, &RatFn::one(), 4);
            match got {
                Ok(base_field::TraceAnswer::NoWitnessUpTo(4)) => Ok(()),
                other => Err(Failure::new(format!("search returned {other:?}"))),
            }
        },
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relation() {
        let e = ExtDescriptor::standard();
        let g = EElem::gamma(&e);
        let delta = EElem::from_k(&e, e.delta().clone());
        assert_eq!(&g * &g, &g + &delta);
        let one_g = &EElem::one(&e) + &g;
        assert_eq!(&one_g * &one_g, &(&EElem::one(&e) + &g) + &delta);
    }

    #[test]
    fn conjugation_norm_and_theta_on_gamma() {
        let e = ExtDescriptor::standard();
        let g = EElem::gamma(&e);
        assert_eq!(g.conj(), &g + &EElem::one(&e));
        assert_eq!(g.norm(), e.delta().clone());
        assert_eq!(EElem::one(&e).norm(), RatFn::one());
        let lam = EElem::from_k(&e, e.lambda().clone());
        assert_eq!(g.theta(ThetaChoice::One), &g + &lam);
        assert_eq!(g.theta(ThetaChoice::Two), &(&g + &lam) + &EElem::one(&e));
    }

    #[test]
    fn witness_mismatch_is_rejected() {
        let r = ExtDescriptor::new(
            &RatFn::alpha() + &RatFn::monomial(0, 2),
            RatFn::beta(),
            TitsEndoK::standard(),
        );
        assert_eq!(r.unwrap_err(), Error::WitnessMismatch);
    }

    #[test]
    fn visibly_split_delta_is_rejected() {
        // y = β^θ + β = α + β is a trace, so δ = y² + y is the trace of
        // λ = β² + β, yet x² + x + δ has the root y
        let y = &RatFn::alpha() + &RatFn::beta();
        let delta = &y.square() + &y;
        let lambda = &RatFn::monomial(0, 2) + &RatFn::beta();
        let r = ExtDescriptor::new(delta, lambda, TitsEndoK::standard());
        assert!(matches!(r, Err(Error::ReducibleExtension(_))));
    }

    #[test]
    fn text_round_trip() {
        let e = ExtDescriptor::standard();
        for src in ["a + (b+1)*g", "g", "1/(a+b)", "(a*b)/(a+1)*g"] {
            let x = parse_eelem(&e, src).unwrap();
            assert_eq!(parse_eelem(&e, &x.to_string()).unwrap(), x, "{src}");
        }
    }
}
