//! Polynomials over GF(2) in the two variables α and β.

use super::gf64;
use super::modgcd;
use super::upoly::UPoly;
use std::fmt;

/// A polynomial in α and β with coefficients in GF(2).
///
/// Stored as a polynomial in α whose coefficients are bit-packed polynomials
/// in β: `rows[i]` is the coefficient of α^i. Rows are trimmed and the last
/// row is nonzero, so the representation is unique and the zero polynomial
/// has no rows. Semantically this is just a set of monomials α^i β^j, and
/// addition is symmetric difference.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    rows: Vec<UPoly>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { rows: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn alpha() -> Self {
        Self::monomial(1, 0)
    }

    pub fn beta() -> Self {
        Self::monomial(0, 1)
    }

    /// The monomial α^i β^j.
    pub fn monomial(i: usize, j: usize) -> Self {
        let mut rows = vec![UPoly::zero(); i + 1];
        rows[i] = UPoly::monomial(j);
        Gf2Poly { rows }
    }

    /// Build from a list of exponent pairs `(i, j)`; repeated pairs cancel.
    pub fn from_terms<I: IntoIterator<Item = (usize, usize)>>(terms: I) -> Self {
        let mut rows: Vec<UPoly> = Vec::new();
        for (i, j) in terms {
            if rows.len() <= i {
                rows.resize(i + 1, UPoly::zero());
            }
            rows[i].flip(j);
        }
        Self::from_rows(rows)
    }

    pub(crate) fn from_rows(mut rows: Vec<UPoly>) -> Self {
        while rows.last().is_some_and(UPoly::is_zero) {
            rows.pop();
        }
        Gf2Poly { rows }
    }

    pub(crate) fn rows(&self) -> &[UPoly] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.rows.len() == 1 && self.rows[0].is_one()
    }

    /// `Some((i, j))` when the polynomial is the single monomial α^i β^j.
    pub fn as_monomial(&self) -> Option<(usize, usize)> {
        let i = self.rows.len().checked_sub(1)?;
        if self.rows[..i].iter().any(|r| !r.is_zero()) || self.rows[i].term_count() != 1 {
            return None;
        }
        Some((i, self.rows[i].degree()?))
    }

    pub fn term_count(&self) -> usize {
        self.rows.iter().map(UPoly::term_count).sum()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.degree().map(|d| i + d))
            .max()
    }

    pub fn degree_alpha(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn degree_beta(&self) -> Option<usize> {
        self.rows.iter().filter_map(UPoly::degree).max()
    }

    /// Largest `k` with α^k dividing the polynomial.
    pub fn low_alpha(&self) -> Option<usize> {
        self.rows.iter().position(|r| !r.is_zero())
    }

    /// Largest `k` with β^k dividing the polynomial.
    pub fn low_beta(&self) -> Option<usize> {
        self.rows.iter().filter_map(UPoly::low_degree).min()
    }

    pub fn coeff(&self, i: usize, j: usize) -> bool {
        self.rows.get(i).is_some_and(|r| r.coeff(j))
    }

    /// All monomials `(i, j)`, ordered by α-exponent then β-exponent.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.exponents().map(move |j| (i, j)))
    }

    /// Monomials in descending graded-lex order with α > β.
    pub fn terms_grlex(&self) -> Vec<(usize, usize)> {
        let mut t: Vec<_> = self.terms().collect();
        t.sort_by_key(|m| std::cmp::Reverse((m.0 + m.1, m.0)));
        t
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn add_assign(&mut self, other: &Gf2Poly) {
        if self.rows.len() < other.rows.len() {
            self.rows.resize(other.rows.len(), UPoly::zero());
        }
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            a.add_assign(b);
        }
        self.normalize_rows();
    }

    fn normalize_rows(&mut self) {
        while self.rows.last().is_some_and(UPoly::is_zero) {
            self.rows.pop();
        }
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        if self.is_zero() || other.is_zero() {
            return Gf2Poly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let wa = self.rows.iter().map(|r| r.words().len()).max().unwrap_or(0);
        let wb = other
            .rows
            .iter()
            .map(|r| r.words().len())
            .max()
            .unwrap_or(0);
        let stride = wa + wb;
        let nrows = self.rows.len() + other.rows.len() - 1;
        let mut buf = vec![0u64; nrows * stride];
        for (i, ra) in self.rows.iter().enumerate() {
            if ra.is_zero() {
                continue;
            }
            for (j, rb) in other.rows.iter().enumerate() {
                if rb.is_zero() {
                    continue;
                }
                let k = i + j;
                super::upoly::mul_acc(
                    &mut buf[k * stride..(k + 1) * stride],
                    ra.words(),
                    rb.words(),
                );
            }
        }
        let rows = buf.chunks(stride).map(UPoly::from_words).collect();
        Gf2Poly::from_rows(rows)
    }

    pub fn square(&self) -> Gf2Poly {
        let mut rows = vec![UPoly::zero(); self.rows.len() * 2];
        for (i, r) in self.rows.iter().enumerate() {
            rows[2 * i] = r.square();
        }
        Gf2Poly::from_rows(rows)
    }

    /// Multiply by a polynomial in β alone.
    pub(crate) fn mul_row(&self, c: &UPoly) -> Gf2Poly {
        if c.is_one() {
            return self.clone();
        }
        Gf2Poly::from_rows(self.rows.iter().map(|r| r.mul(c)).collect())
    }

    /// Multiply by the monomial α^i β^j.
    pub fn mul_monomial(&self, i: usize, j: usize) -> Gf2Poly {
        if self.is_zero() {
            return Gf2Poly::zero();
        }
        let mut rows = vec![UPoly::zero(); i];
        rows.extend(
            self.rows
                .iter()
                .map(|r| if j == 0 { r.clone() } else { r.shl(j) }),
        );
        Gf2Poly { rows }
    }

    /// Exact division by α^i β^j, assuming divisibility.
    fn div_monomial(&self, i: usize, j: usize) -> Gf2Poly {
        Gf2Poly::from_rows(
            self.rows[i..]
                .iter()
                .map(|r| if j == 0 { r.clone() } else { r.shr(j) })
                .collect(),
        )
    }

    /// Gcd of all α-coefficients: the content over GF(2)[β].
    pub(crate) fn content(&self) -> UPoly {
        row_gcd(self.rows.iter().filter(|r| !r.is_zero()))
    }

    pub(crate) fn div_row_exact(&self, c: &UPoly) -> Gf2Poly {
        if c.is_one() {
            return self.clone();
        }
        Gf2Poly::from_rows(
            self.rows
                .iter()
                .map(|r| r.div_exact(c).expect("content divides every row"))
                .collect(),
        )
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    ///
    /// Panics when `d` is zero.
    pub fn div_exact(&self, d: &Gf2Poly) -> Option<Gf2Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Gf2Poly::zero());
        }
        if d.is_one() {
            return Some(self.clone());
        }
        if let Some((i, j)) = d.as_monomial() {
            if self.low_alpha()? < i || self.low_beta()? < j {
                return None;
            }
            return Some(self.div_monomial(i, j));
        }
        let db = d.rows.len() - 1;
        let lc = &d.rows[db];
        let mut rem = self.clone();
        let mut quo = vec![UPoly::zero(); self.rows.len().saturating_sub(db)];
        while let Some(dr) = rem.degree_alpha() {
            if dr < db {
                return None;
            }
            let k = dr - db;
            let c = rem.rows[dr].div_exact(lc)?;
            rem.add_assign(&d.mul_row(&c).mul_monomial(k, 0));
            quo[k].add_assign(&c);
        }
        Some(Gf2Poly::from_rows(quo))
    }

    /// Greatest common divisor. Over GF(2) the only unit is 1, so the result
    /// is canonical.
    pub fn gcd(&self, other: &Gf2Poly) -> Gf2Poly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.is_one() || other.is_one() {
            return Gf2Poly::one();
        }
        if self == other {
            return self.clone();
        }
        let ea = self.low_alpha().unwrap().min(other.low_alpha().unwrap());
        let eb = self.low_beta().unwrap().min(other.low_beta().unwrap());
        if self.as_monomial().is_some() || other.as_monomial().is_some() {
            return Gf2Poly::monomial(ea, eb);
        }
        let a = self.div_monomial(self.low_alpha().unwrap(), 0);
        let b = other.div_monomial(other.low_alpha().unwrap(), 0);
        if a.rows.len() == 1 || b.rows.len() == 1 || coprime_mod_x64(&a, &b) {
            // no common factor involving α, so only the contents can share one
            let rows = a.rows.iter().chain(&b.rows).filter(|r| !r.is_zero());
            let c = row_gcd(rows);
            return Gf2Poly::from_rows(vec![c]).mul_monomial(ea, 0);
        }
        let (ca, cb) = (a.content(), b.content());
        let c = ca.gcd(&cb);
        let (a, b) = (a.div_row_exact(&ca), b.div_row_exact(&cb));
        let g = modgcd::brown_gcd(&a, &b).unwrap_or_else(|| primitive_gcd(a, b));
        g.mul_row(&c).mul_monomial(ea, 0)
    }

    /// Evaluate by replacing every monomial α^i β^j with `f(i, j)` and
    /// summing. Used for monomial substitutions such as θ.
    pub fn map_monomials<F: Fn(usize, usize) -> (usize, usize)>(&self, f: F) -> Gf2Poly {
        Gf2Poly::from_terms(self.terms().map(|(i, j)| f(i, j)))
    }
}

/// Gcd of nonzero rows, starting from the one of least degree so the common
/// case of a trivial gcd stops after a few steps.
fn row_gcd<'a>(rows: impl Iterator<Item = &'a UPoly>) -> UPoly {
    let mut rows: Vec<&UPoly> = rows.collect();
    let Some(k) = (0..rows.len()).min_by_key(|&i| rows[i].degree()) else {
        return UPoly::zero();
    };
    rows.swap(0, k);
    let mut c = rows[0].clone();
    for r in &rows[1..] {
        if c.is_one() {
            break;
        }
        c = c.gcd(r);
    }
    c
}

/// Whether the images of `a` and `b` in GF(2^64)[α] under β ↦ x are coprime
/// while `a` keeps its α-degree. The gcd of the originals then has α-degree 0.
fn coprime_mod_x64(a: &Gf2Poly, b: &Gf2Poly) -> bool {
    let image = |p: &Gf2Poly| p.rows.iter().map(gf64::reduce_upoly).collect::<Vec<u64>>();
    let (ia, mut ib) = (image(a), image(b));
    if ia.last() == Some(&0) {
        return false;
    }
    while ib.last() == Some(&0) {
        ib.pop();
    }
    if ib.is_empty() {
        return false;
    }
    gf64::gcd_degree(ia, ib) == 0
}

/// Gcd of two polynomials that are primitive over GF(2)[β] and not divisible
/// by α, via the primitive polynomial remainder sequence in α.
fn primitive_gcd(mut a: Gf2Poly, mut b: Gf2Poly) -> Gf2Poly {
    if a.rows.len() < b.rows.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.rows.len() == 1 {
            // primitive and constant in α, hence 1
            return Gf2Poly::one();
        }
        let r = pseudo_rem(&a, &b);
        if r.is_zero() {
            return b;
        }
        let r = r.div_monomial(r.low_alpha().unwrap(), 0);
        let r = r.div_row_exact(&r.content());
        a = b;
        b = r;
    }
}

/// A pseudo-remainder of `a` by `b` in α: `c·a mod b` for some nonzero
/// `c ∈ GF(2)[β]`, which is all the gcd needs.
fn pseudo_rem(a: &Gf2Poly, b: &Gf2Poly) -> Gf2Poly {
    let db = b.rows.len() - 1;
    let lcb = &b.rows[db];
    let mut r = a.clone();
    while let Some(dr) = r.degree_alpha() {
        if dr < db {
            break;
        }
        let lcr = r.rows[dr].clone();
        let g = lcb.gcd(&lcr);
        let mb = lcb.div_exact(&g).unwrap();
        let mr = lcr.div_exact(&g).unwrap();
        let mut next = r.mul_row(&mb);
        next.add_assign(&b.mul_row(&mr).mul_monomial(dr - db, 0));
        r = next;
    }
    r
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, j) in self.terms_grlex() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            write!(f, "{}", Monomial(i, j))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

struct Monomial(usize, usize);

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |f: &mut fmt::Formatter<'_>, v: &str, e: usize| match e {
            1 => write!(f, "{v}"),
            _ => write!(f, "{v}^{e}"),
        };
        match (self.0, self.1) {
            (0, 0) => write!(f, "1"),
            (i, 0) => part(f, "a", i),
            (0, j) => part(f, "b", j),
            (i, j) => {
                part(f, "a", i)?;
                write!(f, "*")?;
                part(f, "b", j)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(terms: &[(usize, usize)]) -> Gf2Poly {
        Gf2Poly::from_terms(terms.iter().copied())
    }

    #[test]
    fn addition_is_symmetric_difference() {
        let a = p(&[(1, 0), (0, 1)]);
        let b = p(&[(0, 1), (2, 2)]);
        assert_eq!(a.add(&b), p(&[(1, 0), (2, 2)]));
        assert!(a.add(&a).is_zero());
    }

    #[test]
    fn product_expands() {
        // (a+b)(a+b) = a^2 + b^2 in characteristic 2
        let a = p(&[(1, 0), (0, 1)]);
        assert_eq!(a.mul(&a), p(&[(2, 0), (0, 2)]));
        assert_eq!(a.square(), a.mul(&a));
    }

    #[test]
    fn exact_division_and_failure() {
        let f = p(&[(1, 1), (0, 0)]);
        let g = p(&[(3, 0), (0, 2), (1, 1)]);
        assert_eq!(f.mul(&g).div_exact(&g), Some(f.clone()));
        assert_eq!(f.div_exact(&g), None);
        assert_eq!(p(&[(2, 1)]).div_exact(&p(&[(1, 1)])), Some(p(&[(1, 0)])));
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let common = p(&[(2, 0), (1, 1), (0, 0)]);
        let x = p(&[(1, 0), (0, 3)]).mul(&common);
        let y = p(&[(0, 1), (0, 0), (4, 0)]).mul(&common).mul_monomial(1, 2);
        assert_eq!(x.gcd(&y), common);
        assert_eq!(x.mul_monomial(3, 1).gcd(&y), common.mul_monomial(1, 1));
    }

    /// The remainder-sequence gcd on its own, as an oracle for the modular
    /// fast paths.
    fn gcd_by_prs(x: &Gf2Poly, y: &Gf2Poly) -> Gf2Poly {
        if x.is_zero() || y.is_zero() {
            return x.add(y);
        }
        let ea = x.low_alpha().unwrap().min(y.low_alpha().unwrap());
        let a = x.div_monomial(x.low_alpha().unwrap(), 0);
        let b = y.div_monomial(y.low_alpha().unwrap(), 0);
        let (ca, cb) = (a.content(), b.content());
        let c = ca.gcd(&cb);
        let (a, b) = (a.div_row_exact(&ca), b.div_row_exact(&cb));
        let g = if a.rows.len() == 1 || b.rows.len() == 1 {
            Gf2Poly::one()
        } else {
            primitive_gcd(a, b)
        };
        g.mul_row(&c).mul_monomial(ea, 0)
    }

    fn arb_poly(max_terms: usize, max_exp: usize) -> impl Strategy<Value = Gf2Poly> {
        proptest::collection::vec((0..max_exp, 0..max_exp), 1..max_terms)
            .prop_map(Gf2Poly::from_terms)
            .prop_filter("nonzero", |p| !p.is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn gcd_agrees_with_remainder_sequence(
            a in arb_poly(10, 6), b in arb_poly(10, 6), c in arb_poly(8, 5),
        ) {
            let (x, y) = (a.mul(&c), b.mul(&c));
            let g = x.gcd(&y);
            prop_assert_eq!(&g, &gcd_by_prs(&x, &y));
            prop_assert!(x.div_exact(&g).is_some() && y.div_exact(&g).is_some());
            prop_assert!(g.div_exact(&c).is_some());
        }

        #[test]
        fn gcd_of_a_multiple_is_the_divisor(a in arb_poly(12, 8), c in arb_poly(12, 8)) {
            // the large-gcd shape, where interpolating a cofactor pays off
            let x = a.mul(&c).mul(&c);
            prop_assert_eq!(x.gcd(&c), c.clone());
            prop_assert_eq!(c.mul(&a).gcd(&x), gcd_by_prs(&c.mul(&a), &x));
        }

        #[test]
        fn modular_gcd_matches_on_primitive_inputs(
            a in arb_poly(10, 7), b in arb_poly(10, 7), c in arb_poly(10, 7),
        ) {
            let (x, y) = (a.mul(&c), b.mul(&c));
            let prim = |p: &Gf2Poly| {
                let p = p.div_monomial(p.low_alpha().unwrap(), 0);
                p.div_row_exact(&p.content())
            };
            let (x, y) = (prim(&x), prim(&y));
            prop_assume!(x.rows.len() > 1 && y.rows.len() > 1);
            let g = modgcd::brown_gcd(&x, &y);
            prop_assert_eq!(g, Some(gcd_by_prs(&x, &y)));
        }
    }

    #[test]
    fn display_is_grlex() {
        assert_eq!(
            p(&[(0, 0), (0, 2), (2, 0), (1, 1)]).to_string(),
            "a^2+a*b+b^2+1"
        );
    }
}
