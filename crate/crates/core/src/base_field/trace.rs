//! Bounded search for Tits-trace witnesses: λ with λ^θ + λ = x.

use super::poly::Gf2Poly;
use super::ratfn::RatFn;
use super::theta::TitsEndoK;
use super::FieldError;

#[derive(Clone, Debug, PartialEq)]
pub enum TraceAnswer {
    /// λ^θ + λ equals the query exactly (re-verified before returning).
    Witness(RatFn),
    /// No λ = p/q with `deg p, deg q ≤ maxdeg` exists. This is a bounded
    /// negative only.
    NoWitnessUpTo(usize),
}

/// Largest bound the search accepts: it enumerates all `2^m − 1` candidate
/// denominators, `m` being the number of monomials of degree ≤ `maxdeg`.
pub const MAX_SEARCH_DEGREE: usize = 5;

/// Search for λ = p/q with `p`, `q` supported on monomials of total degree
/// at most `maxdeg`.
///
/// For a fixed denominator `q` the condition `(p/q)^θ + p/q = n/d` clears to
/// `d·(p^θ q + p q^θ) = n q q^θ`, which is GF(2)-linear in the coefficients
/// of `p`. Every nonzero `q` in the box is tried in increasing order of its
/// coefficient bitmask, and each linear system is solved by elimination.
pub fn tits_trace_search(
    theta: &TitsEndoK,
    x: &RatFn,
    maxdeg: usize,
) -> Result<TraceAnswer, FieldError> {
    let x = x.clone().check()?;
    if maxdeg > MAX_SEARCH_DEGREE {
        return Err(FieldError::Unsupported(
            "trace search bound above MAX_SEARCH_DEGREE",
        ));
    }
    let basis: Vec<(usize, usize)> = (0..=maxdeg)
        .flat_map(|t| (0..=t).rev().map(move |i| (i, t - i)))
        .collect();
    let m = basis.len();
    let theta_poly = |p: &Gf2Poly| -> Result<Gf2Poly, FieldError> {
        let r = theta.apply_poly(p);
        if !r.is_polynomial() {
            return Err(FieldError::Unsupported(
                "trace search needs θ to map polynomials to polynomials",
            ));
        }
        Ok(r.num().clone())
    };
    let basis_theta: Vec<Gf2Poly> = basis
        .iter()
        .map(|&(i, j)| theta_poly(&Gf2Poly::monomial(i, j)))
        .collect::<Result<_, _>>()?;
    let (n, d) = (x.num(), x.den());

    for mask in 1u64..(1u64 << m) {
        let q = Gf2Poly::from_terms((0..m).filter(|k| mask >> k & 1 == 1).map(|k| basis[k]));
        let qt = theta_poly(&q)?;
        let dq = d.mul(&q);
        let dqt = d.mul(&qt);
        let rhs = n.mul(&q).mul(&qt);
        let columns: Vec<Gf2Poly> = (0..m)
            .map(|k| {
                let (i, j) = basis[k];
                let mut c = basis_theta[k].mul(&dq);
                c.add_assign(&dqt.mul_monomial(i, j));
                c
            })
            .collect();
        if let Some(coeffs) = solve_gf2(&columns, &rhs) {
            let p = Gf2Poly::from_terms((0..m).filter(|k| coeffs >> k & 1 == 1).map(|k| basis[k]));
            let lambda = RatFn::new(p, q)?;
            if theta.trace(&lambda) == x {
                return Ok(TraceAnswer::Witness(lambda));
            }
        }
    }
    Ok(TraceAnswer::NoWitnessUpTo(maxdeg))
}

/// Solve `Σ c_k · columns[k] = rhs` over GF(2); free unknowns are set to 0.
/// Returns the solution as a bitmask over the columns.
fn solve_gf2(columns: &[Gf2Poly], rhs: &Gf2Poly) -> Option<u64> {
    use std::collections::HashMap;
    // one equation per monomial: (bitmask over unknowns, right-hand side)
    let mut eqs: HashMap<(usize, usize), (u64, bool)> = HashMap::new();
    for (k, c) in columns.iter().enumerate() {
        for t in c.terms() {
            eqs.entry(t).or_default().0 ^= 1 << k;
        }
    }
    for t in rhs.terms() {
        let e = eqs.entry(t).or_default();
        e.1 = !e.1;
    }
    // reduced echelon form kept incrementally: (pivot bit, mask, rhs)
    let mut pivots: Vec<(u32, u64, bool)> = Vec::new();
    for (_, (mut mask, mut b)) in eqs {
        for &(bit, pm, pb) in &pivots {
            if mask >> bit & 1 == 1 {
                mask ^= pm;
                b ^= pb;
            }
        }
        if mask == 0 {
            if b {
                return None;
            }
            continue;
        }
        let bit = mask.trailing_zeros();
        for piv in pivots.iter_mut() {
            if piv.1 >> bit & 1 == 1 {
                piv.1 ^= mask;
                piv.2 ^= b;
            }
        }
        pivots.push((bit, mask, b));
    }
    Some(
        pivots
            .iter()
            .filter(|p| p.2)
            .fold(0u64, |acc, p| acc | 1 << p.0),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_for_alpha_plus_beta_squared() {
        let th = TitsEndoK::standard();
        let x = &RatFn::alpha() + &RatFn::monomial(0, 2);
        let TraceAnswer::Witness(l) = tits_trace_search(&th, &x, 1).unwrap() else {
            panic!("expected a witness")
        };
        assert_eq!(th.trace(&l), x);
    }

    #[test]
    fn one_has_no_small_witness() {
        let th = TitsEndoK::standard();
        assert_eq!(
            tits_trace_search(&th, &RatFn::one(), 2).unwrap(),
            TraceAnswer::NoWitnessUpTo(2)
        );
    }

    #[test]
    fn rational_witness_is_found() {
        // λ = 1/(α+1) has a non-polynomial trace; the search must recover a
        // witness (λ or λ+1)
        let th = TitsEndoK::standard();
        let lam = RatFn::one() / (&RatFn::alpha() + &RatFn::one());
        let x = th.trace(&lam);
        let TraceAnswer::Witness(l) = tits_trace_search(&th, &x, 1).unwrap() else {
            panic!("expected a witness")
        };
        assert!(l == lam || l == &lam + &RatFn::one());
    }
}
