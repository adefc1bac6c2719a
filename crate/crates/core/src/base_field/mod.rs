//! The base field K = F₂(α, β): exact polynomials and rational functions
//! over GF(2), the Frobenius and Tits endomorphisms, the bounded Tits-trace
//! search, and coordinates of K over F = K^θ.

mod gf64;
mod modgcd;
mod parse;
mod poly;
mod ratfn;
mod theta;
mod trace;
pub(crate) mod upoly;

pub use parse::{parse, Evaluator, Expr};
pub use poly::Gf2Poly;
pub use ratfn::{degree_cap, set_degree_cap, with_degree_cap, RatFn};
pub use theta::{frobenius, TitsEndoK};
pub use trace::{tits_trace_search, TraceAnswer, MAX_SEARCH_DEGREE};

use rand::Rng;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("degree overflow: a numerator or denominator exceeded total degree {cap}")]
    DegreeOverflow { cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("the generator images do not define a Tits endomorphism (θ² ≠ Frobenius)")]
    NotTitsEndomorphism,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

/// Shorthand for [`rat_normalize`]'s usual spelling.
pub fn rat_normalize(num: Gf2Poly, den: Gf2Poly) -> Result<RatFn, FieldError> {
    RatFn::new(num, den)
}

/// Apply θ; a free-function spelling of [`TitsEndoK::apply`].
pub fn theta_apply(theta: &TitsEndoK, x: &RatFn) -> RatFn {
    theta.apply(x)
}

/// Write `t = f1 + f2·β` with `f1, f2 ∈ F = F₂(α, β²)`.
///
/// Multiplying through by the denominator makes it a square (hence in F);
/// the numerator then splits by the parity of the β-exponent.
pub fn f_decompose(t: &RatFn) -> (RatFn, RatFn) {
    if t.is_overflow() {
        return (t.clone(), t.clone());
    }
    let n = t.num().mul(t.den());
    let d2 = t.den().square();
    let even = Gf2Poly::from_terms(n.terms().filter(|&(_, j)| j % 2 == 0));
    let odd = Gf2Poly::from_terms(
        n.terms()
            .filter(|&(_, j)| j % 2 == 1)
            .map(|(i, j)| (i, j - 1)),
    );
    let f1 = RatFn::new(even, d2.clone()).unwrap_or_else(|_| RatFn::overflow());
    let f2 = RatFn::new(odd, d2).unwrap_or_else(|_| RatFn::overflow());
    (f1, f2)
}

/// Whether `x` lies in F = F₂(α, β²): reduced numerator and denominator
/// then only carry even powers of β.
pub fn in_fixed_subfield(x: &RatFn) -> bool {
    !x.is_overflow()
        && x.num()
            .terms()
            .chain(x.den().terms())
            .all(|(_, j)| j % 2 == 0)
}

/// Evaluates the text grammar in K with `a` = α and `b` = β.
pub struct KEvaluator;

impl Evaluator for KEvaluator {
    type Value = RatFn;
    fn constant(&self, one: bool) -> RatFn {
        if one {
            RatFn::one()
        } else {
            RatFn::zero()
        }
    }
    fn variable(&self, name: &str) -> Option<RatFn> {
        match name {
            "a" | "α" => Some(RatFn::alpha()),
            "b" | "β" => Some(RatFn::beta()),
            _ => None,
        }
    }
    fn add(&self, x: RatFn, y: RatFn) -> RatFn {
        x + y
    }
    fn mul(&self, x: RatFn, y: RatFn) -> RatFn {
        x * y
    }
    fn div(&self, x: RatFn, y: RatFn) -> Option<RatFn> {
        Some(&x * &y.checked_inv()?)
    }
}

impl std::str::FromStr for RatFn {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, FieldError> {
        parse(s)?.eval(&KEvaluator)?.check()
    }
}

/// Uniform random polynomial: each monomial of total degree ≤ `maxdeg` is
/// present independently with probability ½.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, maxdeg: usize) -> Gf2Poly {
    let mut terms = Vec::new();
    for t in 0..=maxdeg {
        for i in 0..=t {
            if rng.gen::<bool>() {
                terms.push((i, t - i));
            }
        }
    }
    Gf2Poly::from_terms(terms)
}

/// Random rational function: random numerator over a random nonzero
/// denominator, each of degree ≤ `maxdeg`.
pub fn random_ratfn<R: Rng + ?Sized>(rng: &mut R, maxdeg: usize) -> RatFn {
    let num = random_poly(rng, maxdeg);
    let den = loop {
        let d = random_poly(rng, maxdeg);
        if !d.is_zero() {
            break d;
        }
    };
    RatFn::new(num, den).expect("denominator is nonzero and degrees are small")
}

/// Random nonzero rational function.
pub fn random_nonzero_ratfn<R: Rng + ?Sized>(rng: &mut R, maxdeg: usize) -> RatFn {
    loop {
        let x = random_ratfn(rng, maxdeg);
        if !x.is_zero() {
            return x;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn text_round_trip() {
        let x: RatFn = "(a^2+b)/(a*b+1)".parse().unwrap();
        assert_eq!(x.to_string(), "(a^2+b)/(a*b+1)");
        let y: RatFn = x.to_string().parse().unwrap();
        assert_eq!(x, y);
        assert_eq!("3*a - a".parse::<RatFn>().unwrap(), RatFn::zero());
        assert!("a/(b+b)".parse::<RatFn>().is_err());
        assert!("a + c".parse::<RatFn>().is_err());
    }

    #[test]
    fn f_decompose_examples() {
        let b = RatFn::beta();
        assert_eq!(f_decompose(&b), (RatFn::zero(), RatFn::one()));
        assert_eq!(
            f_decompose(&RatFn::alpha()),
            (RatFn::alpha(), RatFn::zero())
        );
        let x: RatFn = "1/(b+1)".parse().unwrap();
        let w: RatFn = "1/(b^2+1)".parse().unwrap();
        assert_eq!(f_decompose(&x), (w.clone(), w));
    }

    #[test]
    fn sampler_is_deterministic() {
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            assert_eq!(random_ratfn(&mut r1, 3), random_ratfn(&mut r2, 3));
        }
    }
}
