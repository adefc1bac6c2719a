//! Dense univariate polynomials over GF(2), bit-packed into `u64` words.
//!
//! These are the coefficient rows of [`Gf2Poly`](super::Gf2Poly): a
//! bivariate polynomial is stored as a polynomial in α whose coefficients are
//! `UPoly`s in β. Bit `k` of the packed words is the coefficient of β^k.

use smallvec::SmallVec;
use std::fmt;

/// Inline capacity covers β-degree below 128, the common case.
type Words = SmallVec<[u64; 2]>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    words: Words,
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly[")?;
        let mut first = true;
        for k in self.exponents() {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "{k}")?;
        }
        write!(f, "]")
    }
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly {
            words: Words::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(k: usize) -> Self {
        let mut words: Words = SmallVec::from_elem(0, k / 64 + 1);
        words[k / 64] = 1u64 << (k % 64);
        UPoly { words }
    }

    pub fn from_words(words: &[u64]) -> Self {
        let mut p = UPoly {
            words: SmallVec::from_slice(words),
        };
        p.trim();
        p
    }

    /// The packed bits when the degree is below 128.
    fn as_u128(&self) -> Option<u128> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0] as u128),
            2 => Some(self.words[0] as u128 | (self.words[1] as u128) << 64),
            _ => None,
        }
    }

    fn from_u128(x: u128) -> Self {
        UPoly::from_words(&[x as u64, (x >> 64) as u64])
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    /// Exponent of the lowest nonzero term.
    pub fn low_degree(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.words
            .get(k / 64)
            .is_some_and(|w| (w >> (k % 64)) & 1 == 1)
    }

    pub fn term_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents with coefficient 1, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn flip(&mut self, k: usize) {
        if self.words.len() <= k / 64 {
            self.words.resize(k / 64 + 1, 0);
        }
        self.words[k / 64] ^= 1u64 << (k % 64);
        self.trim();
    }

    pub fn add_assign(&mut self, other: &UPoly) {
        self.add_shifted(other, 0);
    }

    /// `self += other · x^shift`.
    pub fn add_shifted(&mut self, other: &UPoly, shift: usize) {
        if other.is_zero() {
            return;
        }
        let ws = shift / 64;
        let bs = shift % 64;
        let need = other.words.len() + ws + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        if bs == 0 {
            for (i, &w) in other.words.iter().enumerate() {
                self.words[i + ws] ^= w;
            }
        } else {
            for (i, &w) in other.words.iter().enumerate() {
                self.words[i + ws] ^= w << bs;
                self.words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        self.trim();
    }

    pub fn shl(&self, shift: usize) -> UPoly {
        let mut r = UPoly::zero();
        r.add_shifted(self, shift);
        r
    }

    /// Divide by x^shift, dropping the low bits; callers only use this when
    /// those bits are zero.
    pub fn shr(&self, shift: usize) -> UPoly {
        let ws = shift / 64;
        let bs = shift % 64;
        if ws >= self.words.len() {
            return UPoly::zero();
        }
        let src = &self.words[ws..];
        let mut words: Words = SmallVec::with_capacity(src.len());
        for i in 0..src.len() {
            let lo = src[i] >> bs;
            let hi = if bs > 0 && i + 1 < src.len() {
                src[i + 1] << (64 - bs)
            } else {
                0
            };
            words.push(lo | hi);
        }
        let mut r = UPoly { words };
        r.trim();
        r
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out: Words = SmallVec::from_elem(0, self.words.len() + other.words.len());
        mul_acc(&mut out, &self.words, &other.words);
        let mut r = UPoly { words: out };
        r.trim();
        r
    }

    /// Squaring is linear in characteristic 2: spread every bit to twice its index.
    pub fn square(&self) -> UPoly {
        let mut words: Words = SmallVec::with_capacity(self.words.len() * 2);
        for &w in &self.words {
            words.push(spread_bits(w as u32));
            words.push(spread_bits((w >> 32) as u32));
        }
        let mut r = UPoly { words };
        r.trim();
        r
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        if let (Some(a), Some(b)) = (self.as_u128(), divisor.as_u128()) {
            let (q, r) = div_rem_u128(a, b);
            return (UPoly::from_u128(q), UPoly::from_u128(r));
        }
        let mut rem = self.words.clone();
        let mut quo: Words = match self.degree() {
            Some(d) if d >= dd => SmallVec::from_elem(0, (d - dd) / 64 + 1),
            _ => Words::new(),
        };
        reduce_words(&mut rem, &divisor.words, dd, |s| {
            quo[s / 64] ^= 1u64 << (s % 64)
        });
        let (mut q, mut r) = (UPoly { words: quo }, UPoly { words: rem });
        q.trim();
        r.trim();
        (q, r)
    }

    pub fn div_exact(&self, divisor: &UPoly) -> Option<UPoly> {
        if divisor.is_one() {
            return Some(self.clone());
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn gcd(&self, other: &UPoly) -> UPoly {
        if self.is_one() || other.is_one() {
            return UPoly::one();
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        // word-level Euclid until both operands fit in 128 bits
        while let Some(db) = b.degree() {
            if db < 128 && a.words.len() <= 2 {
                break;
            }
            reduce_words(&mut a.words, &b.words, db, |_| {});
            std::mem::swap(&mut a, &mut b);
        }
        match (a.as_u128(), b.as_u128()) {
            (Some(x), Some(y)) => UPoly::from_u128(gcd_u128(x, y)),
            _ => a,
        }
    }
}

fn div_rem_u128(mut a: u128, b: u128) -> (u128, u128) {
    let db = 127 - b.leading_zeros();
    let mut q = 0u128;
    while a != 0 && 127 - a.leading_zeros() >= db {
        let s = 127 - a.leading_zeros() - db;
        q ^= 1 << s;
        a ^= b << s;
    }
    (q, a)
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let db = 127 - b.leading_zeros();
        while a != 0 && 127 - a.leading_zeros() >= db {
            a ^= b << (127 - a.leading_zeros() - db);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn words_degree(w: &[u64]) -> Option<usize> {
    let i = w.iter().rposition(|&x| x != 0)?;
    Some(i * 64 + 63 - w[i].leading_zeros() as usize)
}

/// Reduce `rem` modulo the polynomial `div` of degree `dd` in place, calling
/// `on_shift(s)` for every quotient term x^s. Leaves `rem` trimmed.
fn reduce_words(rem: &mut Words, div: &[u64], dd: usize, mut on_shift: impl FnMut(usize)) {
    let dlen = dd / 64 + 1;
    while let Some(rd) = words_degree(rem) {
        if rd < dd {
            break;
        }
        let s = rd - dd;
        on_shift(s);
        let (ws, bs) = (s / 64, s % 64);
        if bs == 0 {
            for i in 0..dlen {
                rem[i + ws] ^= div[i];
            }
        } else {
            for i in 0..dlen {
                rem[i + ws] ^= div[i] << bs;
                if i + ws + 1 < rem.len() {
                    rem[i + ws + 1] ^= div[i] >> (64 - bs);
                }
            }
        }
        rem.truncate(rd / 64 + 1);
    }
    while rem.last() == Some(&0) {
        rem.pop();
    }
}

/// Interleave zeros: bit `i` of the input lands on bit `2i` of the output.
fn spread_bits(x: u32) -> u64 {
    let mut v = x as u64;
    v = (v | (v << 16)) & 0x0000_FFFF_0000_FFFF;
    v = (v | (v << 8)) & 0x00FF_00FF_00FF_00FF;
    v = (v | (v << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    v = (v | (v << 2)) & 0x3333_3333_3333_3333;
    v = (v | (v << 1)) & 0x5555_5555_5555_5555;
    v
}

/// Carry-less `out ^= a · b`; `out` must have room for `a.len() + b.len()` words.
pub(crate) fn mul_acc(out: &mut [u64], a: &[u64], b: &[u64]) {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the feature was detected at runtime just above.
            unsafe { mul_acc_pclmul(out, a, b) };
            return;
        }
    }
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let (lo, hi) = clmul_soft(x, y);
            out[i + j] ^= lo;
            out[i + j + 1] ^= hi;
        }
    }
}

fn clmul_soft(a: u64, b: u64) -> (u64, u64) {
    let (mut lo, mut hi) = (0u64, 0u64);
    let mut rest = b;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        lo ^= a << i;
        if i > 0 {
            hi ^= a >> (64 - i);
        }
    }
    (lo, hi)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq,sse2")]
unsafe fn mul_acc_pclmul(out: &mut [u64], a: &[u64], b: &[u64]) {
    use std::arch::x86_64::*;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let xv = _mm_set_epi64x(0, x as i64);
        for (j, &y) in b.iter().enumerate() {
            let yv = _mm_set_epi64x(0, y as i64);
            let p = _mm_clmulepi64_si128(xv, yv, 0x00);
            let mut parts = [0u64; 2];
            _mm_storeu_si128(parts.as_mut_ptr() as *mut __m128i, p);
            out[i + j] ^= parts[0];
            out[i + j + 1] ^= parts[1];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_exps(e: &[usize]) -> UPoly {
        let mut p = UPoly::zero();
        for &k in e {
            p.flip(k);
        }
        p
    }

    #[test]
    fn soft_and_hardware_products_agree() {
        let a = [0xDEAD_BEEF_0123_4567u64, 0x8000_0000_0000_0001];
        let b = [0xFFFF_0000_FFFF_0001u64];
        let mut hw = [0u64; 3];
        mul_acc(&mut hw, &a, &b);
        let mut sw = [0u64; 3];
        for (i, &x) in a.iter().enumerate() {
            let (lo, hi) = clmul_soft(x, b[0]);
            sw[i] ^= lo;
            sw[i + 1] ^= hi;
        }
        assert_eq!(hw, sw);
    }

    #[test]
    fn product_of_binomials() {
        // (x+1)(x^70+1) = x^71 + x^70 + x + 1
        let p = from_exps(&[0, 1]).mul(&from_exps(&[0, 70]));
        assert_eq!(p.exponents().collect::<Vec<_>>(), vec![0, 1, 70, 71]);
    }

    #[test]
    fn square_matches_product() {
        let a = from_exps(&[0, 3, 40, 63, 64, 100]);
        assert_eq!(a.square(), a.mul(&a));
    }

    #[test]
    fn division_and_gcd() {
        let f = from_exps(&[0, 1, 3]); // irreducible x^3+x+1
        let g = from_exps(&[0, 2, 5, 77]);
        let h = from_exps(&[1, 4]);
        let (q, r) = f.mul(&g).div_rem(&g);
        assert_eq!(q, f);
        assert!(r.is_zero());
        assert_eq!(f.mul(&h).gcd(&f.mul(&g)), f.mul(&h.gcd(&g)));
    }

    #[test]
    fn shifts_round_trip() {
        let a = from_exps(&[0, 5, 63, 64, 130]);
        assert_eq!(a.shl(67).shr(67), a);
        assert_eq!(a.shl(3).low_degree(), Some(3));
    }

    /// Bit-serial Euclid on coefficient vectors, independent of the packed code.
    fn naive_gcd(mut a: Vec<bool>, mut b: Vec<bool>) -> Vec<bool> {
        let trim = |v: &mut Vec<bool>| {
            while v.last() == Some(&false) {
                v.pop();
            }
        };
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            while a.len() >= b.len() {
                let s = a.len() - b.len();
                for (k, &bit) in b.iter().enumerate() {
                    a[s + k] ^= bit;
                }
                trim(&mut a);
            }
            std::mem::swap(&mut a, &mut b);
        }
        a
    }

    fn bits(p: &UPoly) -> Vec<bool> {
        (0..=p.degree().map_or(0, |d| d + 1))
            .map(|k| p.coeff(k))
            .collect()
    }

    fn arb_upoly(max_deg: usize) -> impl Strategy<Value = UPoly> {
        proptest::collection::vec(0..max_deg, 0..40).prop_map(|e| from_exps(&e))
    }

    proptest! {
        #[test]
        fn division_identity(a in arb_upoly(300), d in arb_upoly(200)) {
            prop_assume!(!d.is_zero());
            let (q, r) = a.div_rem(&d);
            let mut back = q.mul(&d);
            back.add_assign(&r);
            prop_assert_eq!(back, a);
            prop_assert!(r.degree().is_none_or(|x| x < d.degree().unwrap()));
        }

        #[test]
        fn gcd_matches_bit_serial_euclid(a in arb_upoly(250), b in arb_upoly(250), c in arb_upoly(90)) {
            let (x, y) = (a.mul(&c), b.mul(&c));
            let mut expect = naive_gcd(bits(&x), bits(&y));
            let mut got = bits(&x.gcd(&y));
            for v in [&mut expect, &mut got] {
                while v.last() == Some(&false) {
                    v.pop();
                }
            }
            prop_assert_eq!(got, expect);
        }
    }
}
