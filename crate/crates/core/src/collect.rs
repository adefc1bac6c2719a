//! Collection to normal form in a group generated by root groups.
//!
//! A normal form is one coefficient per root group, read as the product
//! `x_0(c_0) x_1(c_1) ⋯ x_{n-1}(c_{n-1})` in a fixed order. Every group
//! handled here has characteristic 2 root groups, so each letter is its own
//! inverse and the inverse of a normal form is its reversed word.

/// A presentation by root groups and commutator relations.
pub(crate) trait Presentation {
    type Coef: Clone;

    /// Number of root groups.
    fn rank(&self) -> usize;

    fn zero(&self) -> Self::Coef;

    fn is_zero(&self, c: &Self::Coef) -> bool;

    fn add(&self, a: &Self::Coef, b: &Self::Coef) -> Self::Coef;

    /// The word `w` with `x_q(s) x_p(t) = x_p(t) x_q(s) · w`, for `q > p`.
    /// This is the commutator `[x_q(s), x_p(t)]`.
    fn swap_word(
        &self,
        q: usize,
        s: &Self::Coef,
        p: usize,
        t: &Self::Coef,
    ) -> Vec<(usize, Self::Coef)>;
}

pub(crate) fn identity<P: Presentation>(pres: &P) -> Vec<P::Coef> {
    (0..pres.rank()).map(|_| pres.zero()).collect()
}

/// Right-multiply a normal form by the letter `x_p(t)`.
///
/// Write `nf = n'·x_q(s)` with `q` the last nonzero slot. If `q ≤ p` the
/// letter is absorbed directly. Otherwise
/// `n'·x_q(s)·x_p(t) = (n'·x_p(t))·x_q(s)·[x_q(s), x_p(t)]`, and each factor
/// is multiplied in recursively. Termination rests on nilpotency: the
/// commutator words reach ever deeper into the lower central series.
pub(crate) fn mul_letter<P: Presentation>(pres: &P, nf: &mut [P::Coef], p: usize, t: &P::Coef) {
    if pres.is_zero(t) {
        return;
    }
    let last = (p + 1..nf.len()).rev().find(|&q| !pres.is_zero(&nf[q]));
    let Some(q) = last else {
        nf[p] = pres.add(&nf[p], t);
        return;
    };
    let s = std::mem::replace(&mut nf[q], pres.zero());
    mul_letter(pres, nf, p, t);
    mul_letter(pres, nf, q, &s);
    for (k, c) in pres.swap_word(q, &s, p, t) {
        mul_letter(pres, nf, k, &c);
    }
}

pub(crate) fn mul_word<P: Presentation>(pres: &P, nf: &mut [P::Coef], word: &[(usize, P::Coef)]) {
    for (k, c) in word {
        mul_letter(pres, nf, *k, c);
    }
}

pub(crate) fn mul<P: Presentation>(pres: &P, g: &[P::Coef], h: &[P::Coef]) -> Vec<P::Coef> {
    let mut out = g.to_vec();
    for (k, c) in h.iter().enumerate() {
        mul_letter(pres, &mut out, k, c);
    }
    out
}

pub(crate) fn inv<P: Presentation>(pres: &P, g: &[P::Coef]) -> Vec<P::Coef> {
    let mut out = identity(pres);
    for (k, c) in g.iter().enumerate().rev() {
        mul_letter(pres, &mut out, k, c);
    }
    out
}

/// `[g, h] = g⁻¹h⁻¹gh`.
pub(crate) fn comm<P: Presentation>(pres: &P, g: &[P::Coef], h: &[P::Coef]) -> Vec<P::Coef> {
    let gi = inv(pres, g);
    let hi = inv(pres, h);
    mul(pres, &mul(pres, &mul(pres, &gi, &hi), g), h)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Unitriangular 4×4 matrices over GF(2), as a check on the mechanics.
    /// Root groups: e12, e23, e34, e13, e24, e14, ordered by height.
    struct Uni4;

    const ROOTS: [(usize, usize); 6] = [(0, 1), (1, 2), (2, 3), (0, 2), (1, 3), (0, 3)];

    impl Presentation for Uni4 {
        type Coef = u8;
        fn rank(&self) -> usize {
            6
        }
        fn zero(&self) -> u8 {
            0
        }
        fn is_zero(&self, c: &u8) -> bool {
            *c == 0
        }
        fn add(&self, a: &u8, b: &u8) -> u8 {
            a ^ b
        }
        fn swap_word(&self, q: usize, s: &u8, p: usize, t: &u8) -> Vec<(usize, u8)> {
            // [e_ij(s), e_kl(t)] = e_il(st) if j = k, e_kj(st) if l = i
            let ((i, j), (k, l)) = (ROOTS[q], ROOTS[p]);
            let target = if j == k {
                Some((i, l))
            } else if l == i {
                Some((k, j))
            } else {
                None
            };
            target
                .map(|r| (ROOTS.iter().position(|&x| x == r).unwrap(), s & t))
                .into_iter()
                .collect()
        }
    }

    fn matrix(g: &[u8]) -> [[u8; 4]; 4] {
        let mut m = [[0u8; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for (k, &c) in g.iter().enumerate() {
            if c == 1 {
                let (i, j) = ROOTS[k];
                let mut e = [[0u8; 4]; 4];
                for (r, row) in e.iter_mut().enumerate() {
                    row[r] = 1;
                }
                e[i][j] = 1;
                m = matmul(&m, &e);
            }
        }
        m
    }

    fn matmul(a: &[[u8; 4]; 4], b: &[[u8; 4]; 4]) -> [[u8; 4]; 4] {
        let mut c = [[0u8; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                c[i][j] = (0..4).fold(0, |acc, k| acc ^ (a[i][k] & b[k][j]));
            }
        }
        c
    }

    #[test]
    fn matches_matrix_multiplication_on_the_whole_group() {
        let all: Vec<Vec<u8>> = (0..64u8)
            .map(|m| (0..6).map(|k| (m >> k) & 1).collect())
            .collect();
        for g in &all {
            for h in &all {
                assert_eq!(matrix(&mul(&Uni4, g, h)), matmul(&matrix(g), &matrix(h)));
            }
            assert_eq!(
                matrix(&mul(&Uni4, g, &inv(&Uni4, g))),
                matrix(&identity(&Uni4))
            );
        }
    }

    #[test]
    fn commutator_of_generators() {
        let mut g = identity(&Uni4);
        g[0] = 1;
        let mut h = identity(&Uni4);
        h[1] = 1;
        let c = comm(&Uni4, &g, &h);
        assert_eq!(c, vec![0, 0, 0, 1, 0, 0]);
    }
}
