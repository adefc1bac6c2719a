//! The quadratic space V = E ⊕ E ⊕ [K] attached to a polar triple.
//!
//! K acts on the last slot through θ: `c·[t] = [c^θ t]`. The stored third
//! coordinate is the plain value `t`, so every formula stays free of θ⁻¹.

use crate::base_field::{self, RatFn};
use crate::error::{Error, Result};
use crate::quad_ext::{self, EElem, ExtDescriptor, ThetaChoice};
use crate::report::{expect_eq, CheckReport, Failure};
use rand::Rng;
use std::fmt;
use std::ops::{Add, Sub};
use std::sync::Arc;

/// The data (E/K, θ, β) with α = β^{-θ}.
#[derive(Clone, Debug)]
pub struct PolarTriple {
    ext: Arc<ExtDescriptor>,
    choice: ThetaChoice,
    beta: RatFn,
    beta_inv: RatFn,
    alpha: RatFn,
}

impl PolarTriple {
    pub fn new(ext: Arc<ExtDescriptor>, choice: ThetaChoice, beta: RatFn) -> Result<Self> {
        let beta_inv = beta.checked_inv().ok_or(Error::ZeroBeta)?;
        let alpha = ext.theta().apply(&beta_inv);
        Ok(PolarTriple {
            ext,
            choice,
            beta,
            beta_inv,
            alpha,
        })
    }

    /// The default instance: δ = α+β², λ = α, β = β, θ₁. Its α constant is
    /// β^{-θ} = 1/α.
    pub fn standard() -> Self {
        Self::new(ExtDescriptor::standard(), ThetaChoice::One, RatFn::beta()).expect("β ≠ 0")
    }

    pub fn ext(&self) -> &Arc<ExtDescriptor> {
        &self.ext
    }

    pub fn choice(&self) -> ThetaChoice {
        self.choice
    }

    pub fn beta(&self) -> &RatFn {
        &self.beta
    }

    pub fn beta_inv(&self) -> &RatFn {
        &self.beta_inv
    }

    /// The constant α = β^{-θ} of the form.
    pub fn alpha(&self) -> &RatFn {
        &self.alpha
    }

    /// θ on K.
    pub fn theta_k(&self, x: &RatFn) -> RatFn {
        self.ext.theta().apply(x)
    }

    /// The chosen extension of θ on E.
    pub fn theta_e(&self, x: &EElem) -> EElem {
        x.theta(self.choice)
    }

    pub fn zero(&self) -> VElem {
        VElem::zero(&self.ext)
    }

    pub fn velem(&self, u: EElem, v: EElem, t: RatFn) -> VElem {
        VElem { u, v, t }
    }

    /// `(a + bγ, c + dγ, t)` from five K-values.
    pub fn velem_k(&self, a: RatFn, b: RatFn, c: RatFn, d: RatFn, t: RatFn) -> VElem {
        VElem {
            u: EElem::new(&self.ext, a, b),
            v: EElem::new(&self.ext, c, d),
            t,
        }
    }

    /// q(u, v, t) = β⁻¹(N(u) + αN(v)) + t^θ.
    pub fn q(&self, x: &VElem) -> RatFn {
        let n = &x.u.norm() + &(&self.alpha * &x.v.norm());
        &(&self.beta_inv * &n) + &self.theta_k(&x.t)
    }

    /// f(x, y) = β⁻¹(T(u ū') + α T(v v̄')), T the trace of E/K.
    pub fn f(&self, x: &VElem, y: &VElem) -> RatFn {
        let tu = (&x.u * &y.u.conj()).trace();
        let tv = (&x.v * &y.v.conj()).trace();
        &self.beta_inv * &(&tu + &(&self.alpha * &tv))
    }

    /// g(x, y) = [f(x, y)], the radical-valued companion of f.
    pub fn g(&self, x: &VElem, y: &VElem) -> VElem {
        VElem::radical(&self.ext, self.f(x, y))
    }

    /// c·(u, v, t) = (cu, cv, c^θ t).
    pub fn scalar_mul(&self, c: &RatFn, x: &VElem) -> VElem {
        VElem {
            u: x.u.scale(c),
            v: x.v.scale(c),
            t: &self.theta_k(c) * &x.t,
        }
    }

    /// The fixed K-basis (1,0,0), (γ,0,0), (0,1,0), (0,γ,0), [1], [β].
    pub fn basis(&self) -> [VElem; 6] {
        let e0 = EElem::zero(&self.ext);
        let e1 = EElem::one(&self.ext);
        let g = EElem::gamma(&self.ext);
        let z = RatFn::zero();
        [
            VElem {
                u: e1.clone(),
                v: e0.clone(),
                t: z.clone(),
            },
            VElem {
                u: g.clone(),
                v: e0.clone(),
                t: z.clone(),
            },
            VElem {
                u: e0.clone(),
                v: e1,
                t: z.clone(),
            },
            VElem {
                u: e0.clone(),
                v: g,
                t: z,
            },
            VElem {
                u: e0.clone(),
                v: e0.clone(),
                t: RatFn::one(),
            },
            VElem {
                u: e0.clone(),
                v: e0,
                t: RatFn::beta(),
            },
        ]
    }

    /// Coordinates over [`PolarTriple::basis`]. The [K] slot needs θ⁻¹ on
    /// F = K^θ, so this is available for the standard θ only.
    pub fn coordinates(&self, x: &VElem) -> Result<[RatFn; 6]> {
        let th = self.ext.theta();
        let (f1, f2) = base_field::f_decompose(&x.t);
        let back = |f: &RatFn| -> Result<RatFn> {
            th.preimage(f)?
                .ok_or_else(|| Error::ModelViolation(format!("{f} is not in the fixed field")))
        };
        Ok([
            x.u.a().clone(),
            x.u.b().clone(),
            x.v.a().clone(),
            x.v.b().clone(),
            back(&f1)?,
            back(&f2)?,
        ])
    }

    /// Σ cᵢ·basisᵢ with the twisted scalar action.
    pub fn from_coordinates(&self, c: &[RatFn; 6]) -> VElem {
        self.basis()
            .iter()
            .zip(c)
            .fold(self.zero(), |acc, (b, ci)| &acc + &self.scalar_mul(ci, b))
    }

    /// Find one `e` with `f(cᵢ, e) = rᵢ` for every constraint.
    ///
    /// Only the four E-coordinates of `e` are constrained ([K] is the radical
    /// of f), so the [K] coordinate of the answer is 0. Row reduction takes
    /// the first nonzero pivot in basis order and sets free unknowns to 0.
    pub fn solve_f_conditions(&self, constraints: &[(VElem, RatFn)]) -> Result<VElem> {
        let basis = self.basis();
        let mut rows: Vec<(Vec<RatFn>, RatFn)> = Vec::new();
        for (c, r) in constraints {
            let coeffs: Vec<RatFn> = basis[..4].iter().map(|b| self.f(c, b)).collect();
            if coeffs.iter().all(RatFn::is_zero) {
                if r.is_zero() {
                    continue;
                }
                return Err(Error::Unsolvable);
            }
            rows.push((coeffs, r.clone()));
        }
        let sol = solve_linear_k(rows)?;
        Ok(basis[..4]
            .iter()
            .zip(&sol)
            .fold(self.zero(), |acc, (b, x)| &acc + &self.scalar_mul(x, b)))
    }

    /// Random element: all five K-coordinates drawn independently.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, maxdeg: usize) -> VElem {
        VElem {
            u: quad_ext::random_eelem(rng, &self.ext, maxdeg),
            v: quad_ext::random_eelem(rng, &self.ext, maxdeg),
            t: base_field::random_ratfn(rng, maxdeg),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, maxdeg: usize) -> VElem {
        loop {
            let x = self.random(rng, maxdeg);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Random element outside the radical [K].
    pub fn random_nonradical<R: Rng + ?Sized>(&self, rng: &mut R, maxdeg: usize) -> VElem {
        loop {
            let x = self.random(rng, maxdeg);
            if !x.in_radical() {
                return x;
            }
        }
    }

    /// Search for an isotropic vector by construction rather than by luck.
    ///
    /// For a few fixed `e` with zero [K] slot, `q(e + [s]) = q(e) + s^θ`
    /// vanishes exactly when `q(e) = s^θ`, which is decidable for the
    /// standard θ. Returns the first isotropic vector found.
    pub fn isotropic_probe(&self) -> Option<VElem> {
        let th = self.ext.theta();
        if !th.is_standard() {
            return None;
        }
        let e0 = EElem::zero(&self.ext);
        let e1 = EElem::one(&self.ext);
        let g = EElem::gamma(&self.ext);
        let candidates = [
            (e1.clone(), e0.clone()),
            (g.clone(), e0.clone()),
            (e0.clone(), e1.clone()),
            (e0.clone(), g.clone()),
            (e1.clone(), e1.clone()),
            (g.clone(), e1.clone()),
            (e1, g),
        ];
        for (u, v) in candidates {
            let e = VElem {
                u,
                v,
                t: RatFn::zero(),
            };
            if let Ok(Some(s)) = th.preimage(&self.q(&e)) {
                let x = VElem { t: s, ..e };
                if self.q(&x).is_zero() {
                    return Some(x);
                }
            }
        }
        None
    }
}

/// Gauss–Jordan over K; free unknowns are 0.
pub(crate) fn solve_linear_k(mut rows: Vec<(Vec<RatFn>, RatFn)>) -> Result<Vec<RatFn>> {
    let n = rows.first().map_or(4, |r| r.0.len());
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].0[col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r].0[col].inv();
        let (prow, prhs) = (
            rows[r].0.iter().map(|x| x * &inv).collect::<Vec<_>>(),
            &rows[r].1 * &inv,
        );
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row.0[col].is_zero() {
                continue;
            }
            let m = row.0[col].clone();
            for k in 0..n {
                row.0[k] = &row.0[k] + &(&m * &prow[k]);
            }
            row.1 = &row.1 + &(&m * &prhs);
        }
        rows[r] = (prow, prhs);
        pivot_cols.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row.1.is_zero()) {
        return Err(Error::InconsistentSystem);
    }
    let mut sol = vec![RatFn::zero(); n];
    for (i, &c) in pivot_cols.iter().enumerate() {
        sol[c] = rows[i].1.clone();
    }
    Ok(sol)
}

/// A vector `(u, v, [t])` of V.
#[derive(Clone, PartialEq)]
pub struct VElem {
    pub u: EElem,
    pub v: EElem,
    pub t: RatFn,
}

impl VElem {
    pub fn zero(ext: &Arc<ExtDescriptor>) -> Self {
        VElem {
            u: EElem::zero(ext),
            v: EElem::zero(ext),
            t: RatFn::zero(),
        }
    }

    /// The radical element [t] = (0, 0, t).
    pub fn radical(ext: &Arc<ExtDescriptor>, t: RatFn) -> Self {
        VElem {
            u: EElem::zero(ext),
            v: EElem::zero(ext),
            t,
        }
    }

    pub fn ext(&self) -> &Arc<ExtDescriptor> {
        self.u.ext()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero() && self.t.is_zero()
    }

    /// Whether the vector lies in the radical [K] of f.
    pub fn in_radical(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_overflow(&self) -> bool {
        self.u.is_overflow() || self.v.is_overflow() || self.t.is_overflow()
    }

    fn add_ref(&self, o: &VElem) -> VElem {
        VElem {
            u: &self.u + &o.u,
            v: &self.v + &o.v,
            t: &self.t + &o.t,
        }
    }
}

impl Add<&VElem> for &VElem {
    type Output = VElem;
    fn add(self, o: &VElem) -> VElem {
        self.add_ref(o)
    }
}

impl Add for VElem {
    type Output = VElem;
    fn add(self, o: VElem) -> VElem {
        self.add_ref(&o)
    }
}

impl Sub<&VElem> for &VElem {
    type Output = VElem;
    fn sub(self, o: &VElem) -> VElem {
        self.add_ref(o)
    }
}

impl fmt::Display for VElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.u, self.v, self.t)
    }
}

impl fmt::Debug for VElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VElem{self}")
    }
}

/// Split on commas at parenthesis depth zero.
pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts
}

/// Parse `(<E>, <E>, <K>)`.
pub fn parse_velem(ext: &Arc<ExtDescriptor>, src: &str) -> Result<VElem> {
    let s = src.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| base_field::FieldError::Parse(format!("expected `(u, v, t)`, got `{s}`")))?;
    let parts = split_top_level(inner);
    if parts.len() != 3 {
        return Err(
            base_field::FieldError::Parse(format!("expected three components in `{s}`")).into(),
        );
    }
    let u = quad_ext::parse_eelem(ext, parts[0])?;
    let v = quad_ext::parse_eelem(ext, parts[1])?;
    let t: RatFn = parts[2].parse()?;
    Ok(VElem { u, v, t })
}

/// Outcome of [`anisotropy_sample`].
#[derive(Clone, Debug)]
pub struct AnisotropyReport {
    pub trials: usize,
    /// Vectors with q = 0, sampled or constructed.
    pub isotropic: Vec<VElem>,
}

impl AnisotropyReport {
    pub fn passed(&self) -> bool {
        self.isotropic.is_empty()
    }
}

/// Evidence for anisotropy: q(x) ≠ 0 on `trials` random nonzero vectors,
/// plus the constructive probe of [`PolarTriple::isotropic_probe`].
pub fn anisotropy_sample<R: Rng + ?Sized>(
    p: &PolarTriple,
    trials: usize,
    maxdeg: usize,
    rng: &mut R,
) -> AnisotropyReport {
    let mut isotropic = Vec::new();
    for _ in 0..trials {
        let x = p.random_nonzero(rng, maxdeg);
        if p.q(&x).is_zero() {
            isotropic.push(x);
        }
    }
    if trials > 0 {
        isotropic.extend(p.isotropic_probe());
    }
    AnisotropyReport { trials, isotropic }
}

/// Facts about the builtin example: β is not a Tits trace (bounded search
/// only), and the polarity criterion holds already at u = 0, that is, the
/// Artin–Schreier constant δ + αu² with u = 0 is a Tits trace.
pub fn example_checks() -> Vec<CheckReport> {
    let p = PolarTriple::standard();
    let th = p.ext().theta();
    vec![
        CheckReport::single("β has no trace witness up to degree 4", {
            match base_field::tits_trace_search(th, p.beta(), 4) {
                Ok(base_field::TraceAnswer::NoWitnessUpTo(4)) => Ok(()),
                other => Err(Failure::new(format!("search returned {other:?}"))),
            }
        }),
        CheckReport::single("polarity criterion holds at u = 0", {
            let u = RatFn::zero();
            let x = p.ext().delta() + &(p.alpha() * &u.square());
            match base_field::tits_trace_search(th, &x, 1) {
                Ok(base_field::TraceAnswer::Witness(w)) => {
                    expect_eq("witness trace", &th.trace(&w), &x)
                }
                other => Err(Failure::new(format!("search returned {other:?}"))),
            }
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn q_examples() {
        let p = PolarTriple::standard();
        let t: RatFn = "a*b+1".parse().unwrap();
        let e = p.ext().clone();
        assert_eq!(p.q(&VElem::radical(&e, t.clone())), p.theta_k(&t));
        let x = p.velem_k(
            RatFn::one(),
            RatFn::zero(),
            RatFn::zero(),
            RatFn::zero(),
            RatFn::zero(),
        );
        assert_eq!(p.q(&x), RatFn::beta().inv());
        let y = p.velem_k(
            RatFn::zero(),
            RatFn::zero(),
            RatFn::one(),
            RatFn::zero(),
            RatFn::zero(),
        );
        assert_eq!(p.q(&y), p.beta_inv() * p.alpha());
    }

    #[test]
    fn alpha_constant_of_default_instance() {
        // β^θ = α, so the form's α is the inverse of the variable α
        assert_eq!(PolarTriple::standard().alpha(), &RatFn::alpha().inv());
    }

    #[test]
    fn f_examples() {
        let p = PolarTriple::standard();
        let z = RatFn::zero;
        let d = p.velem_k(RatFn::one(), z(), z(), z(), z());
        let g = p.velem_k(z(), RatFn::one(), z(), z(), z());
        assert_eq!(p.f(&d, &g), RatFn::beta().inv());
        assert!(p.f(&d, &d).is_zero());
        assert!(p.f(&d, &VElem::radical(p.ext(), RatFn::alpha())).is_zero());
    }

    #[test]
    fn solver_examples() {
        let p = PolarTriple::standard();
        let z = RatFn::zero;
        let d = p.velem_k(RatFn::one(), z(), z(), z(), z());
        let e = p.solve_f_conditions(&[(d.clone(), RatFn::one())]).unwrap();
        assert_eq!(p.f(&d, &e), RatFn::one());
        let rad = VElem::radical(p.ext(), RatFn::one());
        assert_eq!(
            p.solve_f_conditions(&[(rad, RatFn::one())]).unwrap_err(),
            Error::Unsolvable
        );
        assert!(p.solve_f_conditions(&[]).unwrap().is_zero());
        let inconsistent = [(d.clone(), RatFn::one()), (d, RatFn::zero())];
        assert_eq!(
            p.solve_f_conditions(&inconsistent).unwrap_err(),
            Error::InconsistentSystem
        );
    }

    #[test]
    fn coordinates_round_trip() {
        let p = PolarTriple::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x = p.random(&mut rng, 3);
            let c = p.coordinates(&x).unwrap();
            assert_eq!(p.from_coordinates(&c), x);
        }
    }

    #[test]
    fn text_round_trip() {
        let p = PolarTriple::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let x = p.random(&mut rng, 2);
            assert_eq!(parse_velem(p.ext(), &x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn broken_instance_has_an_isotropic_vector() {
        // β = 1/α makes β⁻¹ = α = θ(β), so q((1,0,0) + [β]) = 0
        let p = PolarTriple::new(
            ExtDescriptor::standard(),
            ThetaChoice::One,
            RatFn::alpha().inv(),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rep = anisotropy_sample(&p, 10, 2, &mut rng);
        assert!(!rep.passed());
        assert!(p.q(&rep.isotropic[0]).is_zero());
        let good = anisotropy_sample(&PolarTriple::standard(), 50, 3, &mut rng);
        assert!(good.passed());
        assert!(anisotropy_sample(&PolarTriple::standard(), 0, 3, &mut rng).passed());
    }
}
