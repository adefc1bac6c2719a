//! Normalized rational functions: the field K = F₂(α, β).

use super::poly::Gf2Poly;
use super::FieldError;
use std::cell::Cell;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};

static DEGREE_CAP: AtomicUsize = AtomicUsize::new(256);

thread_local! {
    static LOCAL_CAP: Cell<Option<usize>> = const { Cell::new(None) };
}

/// Largest total degree a numerator or denominator may reach.
pub fn degree_cap() -> usize {
    LOCAL_CAP
        .with(|c| c.get())
        .unwrap_or_else(|| DEGREE_CAP.load(Ordering::Relaxed))
}

/// Run `f` on this thread with the cap raised to at least `cap`.
/// Other threads keep seeing the process-wide value.
pub fn with_degree_cap<T>(cap: usize, f: impl FnOnce() -> T) -> T {
    let prev = LOCAL_CAP.with(|c| c.get());
    let effective = cap.max(prev.unwrap_or_else(|| DEGREE_CAP.load(Ordering::Relaxed)));
    LOCAL_CAP.with(|c| c.set(Some(effective)));
    struct Restore(Option<usize>);
    impl Drop for Restore {
        fn drop(&mut self) {
            LOCAL_CAP.with(|c| c.set(self.0));
        }
    }
    let _restore = Restore(prev);
    f()
}

/// Change the process-wide degree cap. Values produced after the change are
/// checked against the new cap; existing values are untouched.
pub fn set_degree_cap(cap: usize) {
    DEGREE_CAP.store(cap, Ordering::Relaxed);
}

/// An element of K = F₂(α, β), kept as `num/den` with `gcd(num, den) = 1`.
///
/// Arithmetic is total. When a result would exceed the degree cap it
/// becomes an *overflow* value instead (internally `den = 0`). Overflow is
/// absorbing, compares unequal to everything including itself, and is
/// surfaced as [`FieldError::DegreeOverflow`] by the fallible entry points
/// and by [`RatFn::check`]. This keeps the field formulas readable while
/// still refusing to silently run away.
#[derive(Clone)]
pub struct RatFn {
    num: Gf2Poly,
    den: Gf2Poly,
}

impl RatFn {
    pub fn zero() -> Self {
        RatFn {
            num: Gf2Poly::zero(),
            den: Gf2Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Gf2Poly::one())
    }

    pub fn alpha() -> Self {
        Self::from_poly(Gf2Poly::alpha())
    }

    pub fn beta() -> Self {
        Self::from_poly(Gf2Poly::beta())
    }

    pub fn monomial(i: usize, j: usize) -> Self {
        Self::from_poly(Gf2Poly::monomial(i, j))
    }

    pub fn from_poly(p: Gf2Poly) -> Self {
        Self::capped(p, Gf2Poly::one())
    }

    pub(crate) fn overflow() -> Self {
        RatFn {
            num: Gf2Poly::zero(),
            den: Gf2Poly::zero(),
        }
    }

    /// Reduce `num/den` to lowest terms.
    pub fn new(num: Gf2Poly, den: Gf2Poly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        Self::reduced(num, den).check()
    }

    /// Build from a pair already known to be coprime.
    pub(crate) fn from_coprime(num: Gf2Poly, den: Gf2Poly) -> Self {
        debug_assert!(!den.is_zero());
        Self::capped(num, den)
    }

    fn reduced(num: Gf2Poly, den: Gf2Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self::capped(num, den);
        }
        let g = num.gcd(&den);
        if g.is_one() {
            Self::capped(num, den)
        } else {
            Self::capped(num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        }
    }

    fn capped(num: Gf2Poly, den: Gf2Poly) -> Self {
        let cap = degree_cap();
        if num.total_degree().unwrap_or(0) > cap || den.total_degree().unwrap_or(0) > cap {
            return Self::overflow();
        }
        RatFn { num, den }
    }

    pub fn num(&self) -> &Gf2Poly {
        &self.num
    }

    pub fn den(&self) -> &Gf2Poly {
        &self.den
    }

    pub fn is_overflow(&self) -> bool {
        self.den.is_zero()
    }

    /// `Err(DegreeOverflow)` if this value overflowed, else itself.
    pub fn check(self) -> Result<Self, FieldError> {
        if self.is_overflow() {
            Err(FieldError::DegreeOverflow { cap: degree_cap() })
        } else {
            Ok(self)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero() && !self.is_overflow()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Larger of the numerator and denominator total degrees.
    pub fn degree(&self) -> usize {
        self.num
            .total_degree()
            .unwrap_or(0)
            .max(self.den.total_degree().unwrap_or(0))
    }

    pub fn square(&self) -> RatFn {
        if self.is_overflow() {
            return Self::overflow();
        }
        // squaring preserves coprimality
        Self::capped(self.num.square(), self.den.square())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn checked_inv(&self) -> Option<RatFn> {
        if self.is_overflow() {
            return Some(Self::overflow());
        }
        if self.num.is_zero() {
            return None;
        }
        Some(RatFn {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    /// Multiplicative inverse. Panics on zero; use [`RatFn::checked_inv`]
    /// where zero is a legitimate input.
    pub fn inv(&self) -> RatFn {
        self.checked_inv().expect("inverse of zero in K")
    }

    pub fn pow(&self, mut e: u32) -> RatFn {
        let mut base = self.clone();
        let mut acc = RatFn::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    fn add_ref(&self, o: &RatFn) -> RatFn {
        if self.is_overflow() || o.is_overflow() {
            return Self::overflow();
        }
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        let (a, b, c, d) = (&self.num, &self.den, &o.num, &o.den);
        if b == d {
            return Self::reduced(a.add(c), b.clone());
        }
        let g = b.gcd(d);
        if g.is_one() {
            // with b, d coprime and both fractions reduced, the sum is reduced
            let mut n = a.mul(d);
            n.add_assign(&c.mul(b));
            return Self::capped(n, b.mul(d));
        }
        let b1 = b.div_exact(&g).unwrap();
        let d1 = d.div_exact(&g).unwrap();
        let mut n = a.mul(&d1);
        n.add_assign(&c.mul(&b1));
        if n.is_zero() {
            return Self::zero();
        }
        // only factors of g can be shared with the new numerator
        let h = n.gcd(&g);
        let g1 = g.div_exact(&h).unwrap();
        Self::capped(n.div_exact(&h).unwrap(), b1.mul(&d1).mul(&g1))
    }

    fn mul_ref(&self, o: &RatFn) -> RatFn {
        if self.is_overflow() || o.is_overflow() {
            return Self::overflow();
        }
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero();
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = o.den.div_exact(&g1).unwrap();
        let c = o.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        Self::capped(a.mul(&c), b.mul(&d))
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        !self.is_overflow()
            && !other.is_overflow()
            && self.num == other.num
            && self.den == other.den
    }
}

impl Default for RatFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_overflow() {
            return write!(f, "<overflow>");
        }
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Gf2Poly| {
            if p.term_count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&RatFn> for &RatFn {
            type Output = RatFn;
            fn $method(self, o: &RatFn) -> RatFn {
                self.$imp(o)
            }
        }
        impl $tr<RatFn> for RatFn {
            type Output = RatFn;
            fn $method(self, o: RatFn) -> RatFn {
                (&self).$imp(&o)
            }
        }
        impl $tr<&RatFn> for RatFn {
            type Output = RatFn;
            fn $method(self, o: &RatFn) -> RatFn {
                (&self).$imp(o)
            }
        }
        impl $tr<RatFn> for &RatFn {
            type Output = RatFn;
            fn $method(self, o: RatFn) -> RatFn {
                self.$imp(&o)
            }
        }
    };
}

impl RatFn {
    fn div_ref(&self, o: &RatFn) -> RatFn {
        self.mul_ref(&o.inv())
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, add_ref);
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl AddAssign<&RatFn> for RatFn {
    fn add_assign(&mut self, o: &RatFn) {
        *self = self.add_ref(o);
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        self
    }
}

impl std::iter::Sum for RatFn {
    fn sum<I: Iterator<Item = RatFn>>(iter: I) -> RatFn {
        iter.fold(RatFn::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(usize, usize)]) -> Gf2Poly {
        Gf2Poly::from_terms(terms.iter().copied())
    }

    #[test]
    fn normalize_forces_out_common_factor() {
        // (α²+αβ)/(αβ) = (α+β)/β
        let r = RatFn::new(p(&[(2, 0), (1, 1)]), p(&[(1, 1)])).unwrap();
        assert_eq!(r.num(), &p(&[(1, 0), (0, 1)]));
        assert_eq!(r.den(), &p(&[(0, 1)]));
    }

    #[test]
    fn zero_normalizes_to_zero_over_one() {
        let r = RatFn::new(Gf2Poly::zero(), Gf2Poly::beta()).unwrap();
        assert!(r.is_zero());
        assert!(r.den().is_one());
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert_eq!(
            RatFn::new(Gf2Poly::one(), Gf2Poly::zero()),
            Err(FieldError::ZeroDenominator)
        );
    }

    #[test]
    fn field_operations() {
        let x = RatFn::new(p(&[(1, 0), (0, 0)]), p(&[(0, 1)])).unwrap();
        let y = RatFn::new(p(&[(0, 1)]), p(&[(1, 0), (0, 1)])).unwrap();
        assert_eq!(&(&x * &y) / &y, x);
        assert_eq!(&(&x + &y) + &y, x);
        assert_eq!(&x * &x.inv(), RatFn::one());
        assert_eq!(x.square(), &x * &x);
        assert_eq!(x.pow(5), &x.pow(2) * &x.pow(3));
    }

    #[test]
    fn shared_denominator_sum_reduces() {
        // 1/(αβ) + (α+1)/(αβ) = α/(αβ) = 1/β
        let d = p(&[(1, 1)]);
        let x = RatFn::new(Gf2Poly::one(), d.clone()).unwrap();
        let y = RatFn::new(p(&[(1, 0), (0, 0)]), d).unwrap();
        assert_eq!(
            &x + &y,
            RatFn::new(Gf2Poly::one(), Gf2Poly::beta()).unwrap()
        );
    }

    #[test]
    fn overflow_is_absorbing_and_never_equal() {
        let big = RatFn::monomial(200, 0);
        let o = &big * &big;
        assert!(o.is_overflow());
        assert!(o != o.clone());
        assert!((&o + &RatFn::one()).is_overflow());
        assert!(matches!(o.check(), Err(FieldError::DegreeOverflow { .. })));
    }
}
