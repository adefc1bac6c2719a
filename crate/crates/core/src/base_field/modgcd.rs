//! Brown's dense modular gcd over GF(2)[β][α], with β evaluated at points of
//! GF(2^64).
//!
//! Every image gcd is made monic and rescaled by γ(b), where γ is the gcd of
//! the two leading coefficients in α. Lucky images of γ·G/lc(G) then agree
//! coefficient by coefficient, and each coefficient is interpolated in β.
//! Points whose image gcd has too large a degree are skipped, and a smaller
//! degree discards the points collected so far. A candidate is accepted only
//! after it divides both inputs, so bad luck costs time, never correctness.

use super::gf64::{self, PowerTable};
use super::poly::Gf2Poly;
use super::upoly::UPoly;

/// The i-th evaluation point: a fixed scramble of `i`, so runs are repeatable.
fn point(i: u64) -> u64 {
    let mut z = i.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z ^ (z >> 31)
}

/// Incremental Newton interpolation of one α-coefficient.
struct Newton {
    coefs: Vec<u64>,
}

impl Newton {
    /// Value at `x` of the interpolant through `points`.
    fn eval(&self, points: &[u64], x: u64) -> u64 {
        let mut v = 0u64;
        for j in (0..self.coefs.len()).rev() {
            v = gf64::mul(v, x ^ points[j]) ^ self.coefs[j];
        }
        v
    }

    /// Expand into the monomial basis; `None` unless every coefficient lies
    /// in GF(2).
    fn to_upoly(&self, points: &[u64]) -> Option<UPoly> {
        let n = self.coefs.len();
        let mut p: Vec<u64> = vec![self.coefs[n - 1]];
        for j in (0..n - 1).rev() {
            // p ← p·(β + b_j) + c_j
            p.push(0);
            for i in (0..p.len() - 1).rev() {
                let c = p[i];
                p[i + 1] ^= c;
                p[i] = gf64::mul(c, points[j]);
            }
            p[0] ^= self.coefs[j];
        }
        let mut words = vec![0u64; p.len().div_ceil(64)];
        for (i, &c) in p.iter().enumerate() {
            match c {
                0 => {}
                1 => words[i / 64] |= 1 << (i % 64),
                _ => return None,
            }
        }
        Some(UPoly::from_words(&words))
    }
}

/// What the images are interpolated into. Once the degree d of the gcd is
/// known, the cofactor of an input can be far smaller than the gcd itself.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Target {
    /// γ·G/lc(G), from γ(b) times the monic image gcd.
    Gcd,
    /// lc(G)·(A/G), from the image of A divided by the monic image gcd.
    CofactorA,
    CofactorB,
}

/// The gcd of two primitive polynomials not divisible by α, each of positive
/// α-degree. `None` means the caller should fall back to an exact remainder
/// sequence; that only happens after a long run of unlucky points.
pub(crate) fn brown_gcd(a: &Gf2Poly, b: &Gf2Poly) -> Option<Gf2Poly> {
    let (ra, rb) = (a.rows(), b.rows());
    let (aa, ab) = (ra.len() - 1, rb.len() - 1);
    let gamma = ra.last()?.gcd(rb.last()?);
    let beta_deg = |rows: &[UPoly]| rows.iter().filter_map(UPoly::degree).max().unwrap_or(0);
    let (da, db) = (beta_deg(ra), beta_deg(rb));
    // β-degree bounds for each target
    let bound_gcd = gamma.degree().unwrap_or(0) + da.min(db);
    let max_points = 2 * (da + db) + 32;

    let mut points: Vec<u64> = Vec::new();
    let mut interp: Vec<Newton> = Vec::new();
    let mut degree = usize::MAX;
    let mut target = Target::Gcd;
    for i in 0..max_points as u64 {
        let x = point(i);
        if x == 0 || points.contains(&x) {
            continue;
        }
        let table = PowerTable::new(x, da.max(db));
        let ia: Vec<u64> = ra.iter().map(|r| table.eval(r)).collect();
        let ib: Vec<u64> = rb.iter().map(|r| table.eval(r)).collect();
        if ia.last() == Some(&0) || ib.last() == Some(&0) {
            continue;
        }
        let g = gf64::monic_gcd(ia.clone(), ib.clone());
        let d = g.len() - 1;
        if d == 0 {
            // a lucky-or-better image of degree 0 proves the gcd is 1
            return Some(Gf2Poly::one());
        }
        if d > degree {
            continue;
        }
        if d < degree {
            degree = d;
            points.clear();
            target = if aa - d <= ab - d && aa - d < d {
                Target::CofactorA
            } else if ab - d < d {
                Target::CofactorB
            } else {
                Target::Gcd
            };
            // a cofactor constant in α is 1, so the gcd is that input
            match target {
                Target::CofactorA if d == aa => {
                    if let Some(g) = b.div_exact(a).map(|_| a.clone()) {
                        return Some(g);
                    }
                }
                Target::CofactorB if d == ab => {
                    if let Some(g) = a.div_exact(b).map(|_| b.clone()) {
                        return Some(g);
                    }
                }
                _ => {}
            }
            let len = match target {
                Target::Gcd => d + 1,
                Target::CofactorA => aa - d + 1,
                Target::CofactorB => ab - d + 1,
            };
            interp = (0..len).map(|_| Newton { coefs: Vec::new() }).collect();
        }
        let image = match target {
            Target::Gcd => {
                let s = table.eval(&gamma);
                g.iter().map(|&c| gf64::mul(c, s)).collect()
            }
            Target::CofactorA => gf64::div_monic(&ia, &g),
            Target::CofactorB => gf64::div_monic(&ib, &g),
        };
        let w = points.iter().fold(1u64, |acc, &p| gf64::mul(acc, x ^ p));
        let w_inv = gf64::inv(w);
        let mut stable = !points.is_empty();
        for (nw, &v) in interp.iter_mut().zip(&image) {
            let diff = v ^ nw.eval(&points, x);
            stable &= diff == 0;
            nw.coefs.push(gf64::mul(diff, w_inv));
        }
        points.push(x);
        let exhausted = target == Target::Gcd && points.len() > bound_gcd;
        if stable || exhausted {
            if let Some(g) = candidate(&interp, &points, target, a, b) {
                return Some(g);
            }
            if points.len() > bound_gcd + da.max(db) + 1 {
                // every point so far shared an unlucky degree
                degree = usize::MAX;
            }
        }
    }
    None
}

/// The gcd implied by the interpolated target, if it checks out by exact
/// division.
fn candidate(
    interp: &[Newton],
    points: &[u64],
    target: Target,
    a: &Gf2Poly,
    b: &Gf2Poly,
) -> Option<Gf2Poly> {
    let rows = interp
        .iter()
        .map(|nw| nw.to_upoly(points))
        .collect::<Option<Vec<_>>>()?;
    let h = Gf2Poly::from_rows(rows);
    let pp = h.div_row_exact(&h.content());
    let (g, other) = match target {
        Target::Gcd => {
            a.div_exact(&pp)?;
            (pp, b)
        }
        Target::CofactorA => (a.div_exact(&pp)?, b),
        Target::CofactorB => (b.div_exact(&pp)?, a),
    };
    other.div_exact(&g)?;
    Some(g)
}
