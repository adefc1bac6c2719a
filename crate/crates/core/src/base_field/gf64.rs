//! Arithmetic in GF(2^64) = GF(2)[x]/(x^64 + x^4 + x^3 + x + 1), used to
//! reduce bivariate polynomials to univariate ones before a gcd.
//!
//! Reducing β ↦ x sends GF(2)[α, β] to GF(2^64)[α]. If two polynomials stay
//! of full α-degree and their images are coprime, the originals have no common
//! factor involving α. That certificate settles the common coprime case
//! without running a remainder sequence over GF(2)[β].

use super::upoly::UPoly;

fn clmul(a: u64, b: u64) -> (u64, u64) {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the feature was detected at runtime just above.
            return unsafe { clmul_hw(a, b) };
        }
    }
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
#[inline]
unsafe fn clmul_hw(a: u64, b: u64) -> (u64, u64) {
    use std::arch::x86_64::*;
    let p = _mm_clmulepi64_si128(
        _mm_set_epi64x(0, a as i64),
        _mm_set_epi64x(0, b as i64),
        0x00,
    );
    let mut parts = [0u64; 2];
    _mm_storeu_si128(parts.as_mut_ptr() as *mut __m128i, p);
    (parts[0], parts[1])
}

/// Fold a 128-bit product back below degree 64.
fn reduce(lo: u64, hi: u64) -> u64 {
    let over = (hi >> 63) ^ (hi >> 61) ^ (hi >> 60);
    let hi = hi ^ over;
    lo ^ hi ^ (hi << 1) ^ (hi << 3) ^ (hi << 4)
}

pub(crate) fn mul(a: u64, b: u64) -> u64 {
    let (lo, hi) = clmul(a, b);
    reduce(lo, hi)
}

/// Multiplicative inverse of a nonzero element, as a^(2^64 − 2).
pub(crate) fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    let mut acc = 1u64;
    let mut sq = a;
    // 2^64 − 2 has every bit set except bit 0
    for _ in 1..64 {
        sq = mul(sq, sq);
        acc = mul(acc, sq);
    }
    acc
}

/// Image of a polynomial in β under β ↦ x, i.e. its residue modulo the
/// field polynomial.
pub(crate) fn reduce_upoly(p: &UPoly) -> u64 {
    let w = p.words();
    let mut acc = 0u64;
    // Horner over words: acc ← acc·x^64 + w[i], with x^64 = x^4 + x^3 + x + 1
    for &word in w.iter().rev() {
        acc = reduce(word, acc);
    }
    acc
}

/// Monic gcd of two univariate polynomials over GF(2^64), given by
/// coefficient vectors (constant term first) with nonzero leading entries.
pub(crate) fn monic_gcd(a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    let mut g = gcd_any(a, b);
    let li = inv(*g.last().expect("gcd of nonzero polynomials"));
    for c in &mut g {
        *c = mul(*c, li);
    }
    g
}

/// Degree of the gcd; see [`monic_gcd`] for the input convention.
pub(crate) fn gcd_degree(a: Vec<u64>, b: Vec<u64>) -> usize {
    gcd_any(a, b).len() - 1
}

/// Some gcd, not normalized.
fn gcd_any(a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the feature was detected at runtime just above.
            return unsafe { gcd_hw(a, b) };
        }
    }
    gcd_with(a, b, mul)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq,sse2")]
unsafe fn gcd_hw(a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    gcd_with(a, b, |x, y| {
        let (lo, hi) = clmul_hw(x, y);
        reduce(lo, hi)
    })
}

/// Euclid by pseudo-division: scaling by the nonzero leading coefficient of
/// the divisor leaves the gcd unchanged and avoids inverses.
#[inline(always)]
fn gcd_with(mut a: Vec<u64>, mut b: Vec<u64>, mul: impl Fn(u64, u64) -> u64) -> Vec<u64> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.len() == 1 {
            return b;
        }
        let db = b.len() - 1;
        let lb = b[db];
        while a.len() > db {
            let top = a.len() - 1;
            let la = a[top];
            let shift = top - db;
            for k in 0..shift {
                a[k] = mul(a[k], lb);
            }
            for k in 0..db {
                a[shift + k] = mul(a[shift + k], lb) ^ mul(la, b[k]);
            }
            a.pop();
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        if a.is_empty() {
            return b;
        }
        std::mem::swap(&mut a, &mut b);
    }
}

/// Quotient of `num` by a monic divisor that divides it exactly.
pub(crate) fn div_monic(num: &[u64], den: &[u64]) -> Vec<u64> {
    let dd = den.len() - 1;
    let mut r = num.to_vec();
    let mut q = vec![0u64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                r[k + j] ^= mul(c, dj);
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0), "inexact division");
    q
}

/// Values of a polynomial with GF(2) coefficients at a fixed point, from a
/// table of the point's powers.
pub(crate) struct PowerTable(Vec<u64>);

impl PowerTable {
    pub(crate) fn new(x: u64, max_degree: usize) -> Self {
        let mut p = Vec::with_capacity(max_degree + 1);
        p.push(1u64);
        for k in 0..max_degree {
            p.push(mul(p[k], x));
        }
        PowerTable(p)
    }

    pub(crate) fn eval(&self, r: &UPoly) -> u64 {
        r.exponents().fold(0, |acc, k| acc ^ self.0[k])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_reduction() {
        for a in [1u64, 2, 3, 0xdead_beef, u64::MAX, 1 << 63] {
            assert_eq!(mul(a, inv(a)), 1, "a = {a:#x}");
        }
        // x^64 ≡ x^4 + x^3 + x + 1
        assert_eq!(reduce_upoly(&UPoly::monomial(64)), 0b11011);
        assert_eq!(mul(1 << 63, 2), 0b11011);
        // reduction is a ring map
        let p = UPoly::from_words(&[0x1234_5678_9abc_def1, 0x0fed_cba9]);
        let q = UPoly::from_words(&[0x5555_aaaa_1234_4321, 0x77]);
        assert_eq!(
            reduce_upoly(&p.mul(&q)),
            mul(reduce_upoly(&p), reduce_upoly(&q))
        );
    }

    #[test]
    fn gcd_degree_of_shared_factor() {
        // (α + 3)(α + 5) and (α + 3)(α + 7)
        let f = |r: u64, s: u64| vec![mul(r, s), r ^ s, 1];
        assert_eq!(gcd_degree(f(3, 5), f(3, 7)), 1);
        assert_eq!(gcd_degree(f(3, 5), f(9, 7)), 0);
        assert_eq!(gcd_degree(f(3, 5), f(5, 3)), 2);
        assert_eq!(monic_gcd(f(3, 5), f(3, 7)), vec![3, 1]);
        assert_eq!(div_monic(&f(3, 5), &[3, 1]), vec![5, 1]);
    }
}
