//! The nonassociative product on V = E ⊕ E ⊕ [K] and its identities.
//!
//! Juxtaposition in the identity names binds tighter than `·`, so
//! `uv·w` is `(u·v)·w` and `u·vw` is `u·(v·w)`.

use crate::base_field::{self, RatFn};
use crate::error::{Error, Result};
use crate::f4_space::{PolarTriple, VElem};
use crate::report::{expect, expect_eq, expect_zero, with_inputs, CheckReport, RunConfig};
use rand::Rng;
use std::ops::Deref;

/// Deliberate faults for checking that the suites can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Drop the bar on `ā` in the `β⁻¹v^θā` term of the second component.
    SwappedBar,
}

/// A polar triple together with its product.
#[derive(Clone, Debug)]
pub struct PolarityAlgebra {
    space: PolarTriple,
    mutation: Option<Mutation>,
}

impl Deref for PolarityAlgebra {
    type Target = PolarTriple;
    fn deref(&self) -> &PolarTriple {
        &self.space
    }
}

impl PolarityAlgebra {
    pub fn new(space: PolarTriple) -> Self {
        PolarityAlgebra {
            space,
            mutation: None,
        }
    }

    pub fn standard() -> Self {
        Self::new(PolarTriple::standard())
    }

    /// The same algebra with a fault injected into the product.
    pub fn mutated(&self, m: Mutation) -> Self {
        PolarityAlgebra {
            space: self.space.clone(),
            mutation: Some(m),
        }
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    pub fn space(&self) -> &PolarTriple {
        &self.space
    }

    /// `(a,b,r)·(u,v,s)` in the final coordinates:
    ///
    /// ```text
    /// ( sa + α(ū^θ b + β⁻¹v^θ b̄),
    ///   sb + u^θ a + β⁻¹v^θ ā,
    ///   s^θ r + β⁻¹r(N(u) + αN(v)) + αβ⁻¹ T(a^θ u v̄ + β⁻¹ b^θ ū v̄) )
    /// ```
    ///
    /// where T is the trace of E/K and θ the chosen extension to E.
    pub fn mul(&self, x: &VElem, y: &VElem) -> VElem {
        let p = &self.space;
        let (a, b, r) = (&x.u, &x.v, &x.t);
        let (u, v, s) = (&y.u, &y.v, &y.t);
        let (al, bi) = (p.alpha(), p.beta_inv());
        let ut = p.theta_e(u);
        let vt = p.theta_e(v);
        let bb = b.conj();
        let a_bar_or_a = match self.mutation {
            Some(Mutation::SwappedBar) => a.clone(),
            None => a.conj(),
        };

        let first = &a.scale(s) + &(&(&ut.conj() * b) + &(&vt * &bb).scale(bi)).scale(al);
        let second = &(&b.scale(s) + &(&ut * a)) + &(&vt * &a_bar_or_a).scale(bi);

        let vb = v.conj();
        let tr = &(&(&p.theta_e(a) * u) * &vb).trace()
            + &(bi * &(&(&p.theta_e(b) * &u.conj()) * &vb).trace());
        let third = &(&(&p.theta_k(s) * r) + &(&(bi * r) * &(&u.norm() + &(al * &v.norm()))))
            + &(&(al * bi) * &tr);
        VElem {
            u: first,
            v: second,
            t: third,
        }
    }

    /// `v⁻¹ = q(v)⁻¹·v`.
    pub fn inv(&self, x: &VElem) -> Result<VElem> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let q = self.q(x);
        let qi = q.checked_inv().ok_or(Error::ZeroElement)?;
        Ok(self.scalar_mul(&qi, x))
    }

    /// An `e` with `f(d,e) = 1`, `f(d,ed) = 0` and `f(ee,d) = 0`.
    ///
    /// Since `f(d, ed) = f(dd, e)`, the first two conditions are linear in
    /// `e`. A multiple of `dd` is then added to kill `f(ee, d)` without
    /// disturbing them. A radical `d` has `f(d, ·) ≡ 0` and is rejected.
    pub fn polar_pair(&self, d: &VElem) -> Result<VElem> {
        if d.is_zero() {
            return Err(Error::ZeroElement);
        }
        if d.in_radical() {
            return Err(Error::RadicalInput);
        }
        let dd = self.mul(d, d);
        let e =
            self.solve_f_conditions(&[(d.clone(), RatFn::one()), (dd.clone(), RatFn::zero())])?;
        let ee = self.mul(&e, &e);
        let lambda = &self.f(&ee, d) / &self.q(d);
        Ok(&e + &self.scalar_mul(&lambda, &dd))
    }

    /// A `b` with `b⁻¹·b = a`, namely `b = a·a`.
    pub fn root_pair(&self, a: &VElem) -> Result<VElem> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.mul(a, a))
    }
}

pub fn pa_mul(alg: &PolarityAlgebra, x: &VElem, y: &VElem) -> VElem {
    alg.mul(x, y)
}

pub fn pa_inv(alg: &PolarityAlgebra, x: &VElem) -> Result<VElem> {
    alg.inv(x)
}

fn rk<R: Rng + ?Sized>(rng: &mut R, d: usize) -> RatFn {
    base_field::random_ratfn(rng, d)
}

/// (R1)–(R7), each as a seeded check.
pub fn axiom_checks(alg: &PolarityAlgebra, cfg: &RunConfig) -> Vec<CheckReport> {
    let d = cfg.max_deg;
    let m = |x: &VElem, y: &VElem| alg.mul(x, y);
    let n = 200;
    vec![
        cfg.run("R1 right multiplication is K-linear", n, |rng| {
            let (x, y, v, c) = (
                alg.random(rng, d),
                alg.random(rng, d),
                alg.random(rng, d),
                rk(rng, d),
            );
            let lhs = m(&(&alg.scalar_mul(&c, &x) + &y), &v);
            let rhs = &alg.scalar_mul(&c, &m(&x, &v)) + &m(&y, &v);
            with_inputs(
                expect_eq("(cx+y)v = c(xv)+yv", &lhs, &rhs),
                &[("x", &x), ("y", &y), ("v", &v), ("c", &c)],
            )
        }),
        cfg.run("R2 v[t] = tv", n, |rng| {
            let (v, t) = (alg.random(rng, d), rk(rng, d));
            let lhs = m(&v, &VElem::radical(alg.ext(), t.clone()));
            with_inputs(
                expect_eq("v[t] = tv", &lhs, &alg.scalar_mul(&t, &v)),
                &[("v", &v), ("t", &t)],
            )
        }),
        cfg.run("R3 u(tv) = t^θ(uv)", n, |rng| {
            let (u, v, t) = (alg.random(rng, d), alg.random(rng, d), rk(rng, d));
            let lhs = m(&u, &alg.scalar_mul(&t, &v));
            let rhs = alg.scalar_mul(&alg.theta_k(&t), &m(&u, &v));
            with_inputs(
                expect_eq("u·tv = t^θ·uv", &lhs, &rhs),
                &[("u", &u), ("v", &v), ("t", &t)],
            )
        }),
        cfg.run("R4 [t]v = [tq(v)]", n, |rng| {
            let (v, t) = (alg.random(rng, d), rk(rng, d));
            let lhs = m(&VElem::radical(alg.ext(), t.clone()), &v);
            let rhs = VElem::radical(alg.ext(), &t * &alg.q(&v));
            with_inputs(
                expect_eq("[t]v = [tq(v)]", &lhs, &rhs),
                &[("v", &v), ("t", &t)],
            )
        }),
        cfg.run("R5 uv·v = q(v)^θ u", n, |rng| {
            let (u, v) = (alg.random(rng, d), alg.random(rng, d));
            let lhs = m(&m(&u, &v), &v);
            let rhs = alg.scalar_mul(&alg.theta_k(&alg.q(&v)), &u);
            with_inputs(
                expect_eq("uv·v = q(v)^θ·u", &lhs, &rhs),
                &[("u", &u), ("v", &v)],
            )
        }),
        cfg.run("R6 v·uv = q(v)·vu", n, |rng| {
            let (u, v) = (alg.random(rng, d), alg.random(rng, d));
            let lhs = m(&v, &m(&u, &v));
            let rhs = alg.scalar_mul(&alg.q(&v), &m(&v, &u));
            with_inputs(
                expect_eq("v·uv = q(v)·vu", &lhs, &rhs),
                &[("u", &u), ("v", &v)],
            )
        }),
        cfg.run("R7 u(v+w) = uv+uw+g(vu,w)", n, |rng| {
            let (u, v, w) = (alg.random(rng, d), alg.random(rng, d), alg.random(rng, d));
            let lhs = m(&u, &(&v + &w));
            let rhs = &(&m(&u, &v) + &m(&u, &w)) + &alg.g(&m(&v, &u), &w);
            with_inputs(
                expect_eq("u(v+w) = uv+uw+g(vu,w)", &lhs, &rhs),
                &[("u", &u), ("v", &v), ("w", &w)],
            )
        }),
    ]
}

/// Every identity of the polarity-algebra section, plus the lemma that
/// keeps the norm of the Moufang set away from zero.
pub fn identity_checks(alg: &PolarityAlgebra, cfg: &RunConfig) -> Vec<CheckReport> {
    let d = cfg.max_deg;
    let m = |x: &VElem, y: &VElem| alg.mul(x, y);
    let sm = |c: &RatFn, x: &VElem| alg.scalar_mul(c, x);
    let th = |c: &RatFn| alg.theta_k(c);
    let inv = |x: &VElem| alg.inv(x).expect("sampled nonzero");
    let rv = |rng: &mut rand_chacha::ChaCha8Rng| alg.random(rng, d);
    let rnz = |rng: &mut rand_chacha::ChaCha8Rng| alg.random_nonzero(rng, d);
    let n = 100;
    let mut out = Vec::new();

    out.push(cfg.run("g(u,uw) = 0", n, |rng| {
        let (u, w) = (rv(rng), rv(rng));
        with_inputs(
            expect_zero("f(u,uw) = 0", &alg.f(&u, &m(&u, &w))),
            &[("u", &u), ("w", &w)],
        )
    }));
    out.push(cfg.run("g(u,vw) = g(uw,v)", n, |rng| {
        let (u, v, w) = (rv(rng), rv(rng), rv(rng));
        let t = expect_eq(
            "g(u,vw) = g(uw,v)",
            &alg.g(&u, &m(&v, &w)),
            &alg.g(&m(&u, &w), &v),
        );
        with_inputs(t, &[("u", &u), ("v", &v), ("w", &w)])
    }));
    out.push(cfg.run("g(u,v)w = g(q(w)u,v)", n, |rng| {
        let (u, v, w) = (rv(rng), rv(rng), rv(rng));
        let lhs = m(&alg.g(&u, &v), &w);
        let rhs = alg.g(&sm(&alg.q(&w), &u), &v);
        with_inputs(
            expect_eq("g(u,v)w = g(q(w)u,v)", &lhs, &rhs),
            &[("u", &u), ("v", &v), ("w", &w)],
        )
    }));
    out.push(cfg.run("tg(u,v) = g(t^θu,v)", n, |rng| {
        let (u, v, t) = (rv(rng), rv(rng), rk(rng, d));
        let lhs = sm(&t, &alg.g(&u, &v));
        let rhs = alg.g(&sm(&th(&t), &u), &v);
        with_inputs(
            expect_eq("t·g(u,v) = g(t^θu,v)", &lhs, &rhs),
            &[("u", &u), ("v", &v), ("t", &t)],
        )
    }));
    out.push(cfg.run("v·wu = f(u,vw)u + f(u,v)uw + q(u)vw", n, |rng| {
        let (u, v, w) = (rv(rng), rv(rng), rv(rng));
        let vw = m(&v, &w);
        let lhs = m(&v, &m(&w, &u));
        let rhs =
            &(&sm(&alg.f(&u, &vw), &u) + &sm(&alg.f(&u, &v), &m(&u, &w))) + &sm(&alg.q(&u), &vw);
        with_inputs(
            expect_eq("lhs = rhs", &lhs, &rhs),
            &[("u", &u), ("v", &v), ("w", &w)],
        )
    }));
    out.push(
        cfg.run("uv·w + uw·v = g(v,f(v,wu)w) + f(v,w)^θu", n, |rng| {
            let (u, v, w) = (rv(rng), rv(rng), rv(rng));
            let lhs = &m(&m(&u, &v), &w) + &m(&m(&u, &w), &v);
            let rhs = &alg.g(&v, &sm(&alg.f(&v, &m(&w, &u)), &w)) + &sm(&th(&alg.f(&v, &w)), &u);
            with_inputs(
                expect_eq("lhs = rhs", &lhs, &rhs),
                &[("u", &u), ("v", &v), ("w", &w)],
            )
        }),
    );
    out.push(cfg.run("q(uv) = q(u)q(v)^θ", n, |rng| {
        let (u, v) = (rv(rng), rv(rng));
        let rhs = &alg.q(&u) * &th(&alg.q(&v));
        with_inputs(
            expect_eq("q(uv)", &alg.q(&m(&u, &v)), &rhs),
            &[("u", &u), ("v", &v)],
        )
    }));
    out.push(cfg.run("q([t]) = t^θ", n, |rng| {
        let t = rk(rng, d);
        with_inputs(
            expect_eq(
                "q([t])",
                &alg.q(&VElem::radical(alg.ext(), t.clone())),
                &th(&t),
            ),
            &[("t", &t)],
        )
    }));
    out.push(cfg.run("f(uv,uw) = f(v,wu)^θ + q(u)f(v,w)^θ", n, |rng| {
        let (u, v, w) = (rv(rng), rv(rng), rv(rng));
        let lhs = alg.f(&m(&u, &v), &m(&u, &w));
        let rhs = &th(&alg.f(&v, &m(&w, &u))) + &(&alg.q(&u) * &th(&alg.f(&v, &w)));
        with_inputs(
            expect_eq("lhs = rhs", &lhs, &rhs),
            &[("u", &u), ("v", &v), ("w", &w)],
        )
    }));
    out.push(cfg.run("f(uv,wv) = q(v)^θ f(u,w)", n, |rng| {
        let (u, v, w) = (rv(rng), rv(rng), rv(rng));
        let lhs = alg.f(&m(&u, &v), &m(&w, &v));
        let rhs = &th(&alg.q(&v)) * &alg.f(&u, &w);
        with_inputs(
            expect_eq("lhs = rhs", &lhs, &rhs),
            &[("u", &u), ("v", &v), ("w", &w)],
        )
    }));
    out.push(cfg.run("(uv)^-1 = u^-1 v^-1", n, |rng| {
        let (u, v) = (rnz(rng), rnz(rng));
        let lhs = inv(&m(&u, &v));
        let rhs = m(&inv(&u), &inv(&v));
        with_inputs(
            expect_eq("(uv)⁻¹ = u⁻¹v⁻¹", &lhs, &rhs),
            &[("u", &u), ("v", &v)],
        )
    }));
    out.push(cfg.run("u^-1·vu = uv", n, |rng| {
        let (u, v) = (rnz(rng), rv(rng));
        let lhs = m(&inv(&u), &m(&v, &u));
        with_inputs(
            expect_eq("u⁻¹·vu = uv", &lhs, &m(&u, &v)),
            &[("u", &u), ("v", &v)],
        )
    }));
    out.push(cfg.run("uv·v^-1 = u", n, |rng| {
        let (u, v) = (rv(rng), rnz(rng));
        let lhs = m(&m(&u, &v), &inv(&v));
        with_inputs(expect_eq("uv·v⁻¹ = u", &lhs, &u), &[("u", &u), ("v", &v)])
    }));
    out.push(
        cfg.run("g(uv·w,zv) = f(w,v)g(uv,z) + q(v)g(uw,z)", n, |rng| {
            let (u, v, w, z) = (rv(rng), rv(rng), rv(rng), rv(rng));
            let uv = m(&u, &v);
            let lhs = alg.g(&m(&uv, &w), &m(&z, &v));
            let rhs =
                &sm(&alg.f(&w, &v), &alg.g(&uv, &z)) + &sm(&alg.q(&v), &alg.g(&m(&u, &w), &z));
            with_inputs(
                expect_eq("lhs = rhs", &lhs, &rhs),
                &[("u", &u), ("v", &v), ("w", &w), ("z", &z)],
            )
        }),
    );
    out.push(cfg.run("g(uv·w,uz) expansion", n, |rng| {
        let (u, v, w, z) = (rv(rng), rv(rng), rv(rng), rv(rng));
        let (vu, wu, zu) = (m(&v, &u), m(&w, &u), m(&z, &u));
        let lhs = alg.g(&m(&m(&u, &v), &w), &m(&u, &z));
        let terms = [
            sm(&alg.f(&vu, &z), &w),
            sm(&alg.f(&wu, &v), &z),
            sm(&alg.f(&wu, &z), &v),
            sm(&alg.f(&w, &v), &zu),
            sm(&alg.f(&w, &z), &vu),
            sm(&alg.f(&v, &z), &wu),
        ];
        let rhs = terms.iter().fold(alg.zero(), |acc, t| &acc + t);
        with_inputs(
            expect_eq("lhs = rhs", &lhs, &rhs),
            &[("u", &u), ("v", &v), ("w", &w), ("z", &z)],
        )
    }));
    out.push(cfg.run("f(uv,zw) + f(uw,zv) = f(u,z)f(v,w)^θ", n, |rng| {
        let (u, v, w, z) = (rv(rng), rv(rng), rv(rng), rv(rng));
        let lhs = &alg.f(&m(&u, &v), &m(&z, &w)) + &alg.f(&m(&u, &w), &m(&z, &v));
        let rhs = &alg.f(&u, &z) * &th(&alg.f(&v, &w));
        with_inputs(
            expect_eq("lhs = rhs", &lhs, &rhs),
            &[("u", &u), ("v", &v), ("w", &w), ("z", &z)],
        )
    }));
    out.push(cfg.run("uv·vu = q(uv)u", n, |rng| {
        let (u, v) = (rv(rng), rv(rng));
        let uv = m(&u, &v);
        let lhs = m(&uv, &m(&v, &u));
        with_inputs(
            expect_eq("uv·vu = q(uv)u", &lhs, &sm(&alg.q(&uv), &u)),
            &[("u", &u), ("v", &v)],
        )
    }));
    out.push(
        cfg.run("uv·vw = q(wv)u + f(u,w)q(v)^θw + f(uv,w)wv", n, |rng| {
            let (u, v, w) = (rv(rng), rv(rng), rv(rng));
            let (uv, wv) = (m(&u, &v), m(&w, &v));
            let lhs = m(&uv, &m(&v, &w));
            let rhs = &(&sm(&alg.q(&wv), &u) + &sm(&(&alg.f(&u, &w) * &th(&alg.q(&v))), &w))
                + &sm(&alg.f(&uv, &w), &wv);
            with_inputs(
                expect_eq("lhs = rhs", &lhs, &rhs),
                &[("u", &u), ("v", &v), ("w", &w)],
            )
        }),
    );
    out.push(cfg.run("uv·vw = (u·vw)·v", n, |rng| {
        let (u, v, w) = (rv(rng), rv(rng), rv(rng));
        let vw = m(&v, &w);
        let lhs = m(&m(&u, &v), &vw);
        let rhs = m(&m(&u, &vw), &v);
        with_inputs(
            expect_eq("lhs = rhs", &lhs, &rhs),
            &[("u", &u), ("v", &v), ("w", &w)],
        )
    }));
    out.push(cfg.run("(vv)^-1·vv = v", n, |rng| {
        let v = rnz(rng);
        let vv = m(&v, &v);
        with_inputs(
            expect_eq("(vv)⁻¹·vv = v", &m(&inv(&vv), &vv), &v),
            &[("v", &v)],
        )
    }));
    out.push(cfg.run("u^-1u·u^-1u = u", n, |rng| {
        let u = rnz(rng);
        let x = m(&inv(&u), &u);
        with_inputs(expect_eq("u⁻¹u·u⁻¹u = u", &m(&x, &x), &u), &[("u", &u)])
    }));
    out.push(cfg.run("u^-1v + w != 0 for v = ww+u+g(u,w)", n, |rng| {
        let (u, w) = (rnz(rng), rv(rng));
        let v = &(&m(&w, &w) + &u) + &alg.g(&u, &w);
        let x = &m(&inv(&u), &v) + &w;
        let ok = !x.is_zero() && !x.is_overflow();
        with_inputs(
            expect("u⁻¹v + w is zero or overflowed", ok),
            &[("u", &u), ("w", &w)],
        )
    }));
    out
}

/// Input degree for the polar-pair check. Its e already has total degree
/// near 200 from degree-1 inputs, and e·e must stay below the degree cap.
pub const POLAR_PAIR_MAX_DEG: usize = 1;

/// The constructive polar-pair conclusions, inversion and root pairs.
pub fn construction_checks(alg: &PolarityAlgebra, cfg: &RunConfig) -> Vec<CheckReport> {
    let d = cfg.max_deg;
    let m = |x: &VElem, y: &VElem| alg.mul(x, y);
    vec![
        cfg.run("polar pair conclusions", 50, |rng| {
            let dv = alg.random_nonradical(rng, d.min(POLAR_PAIR_MAX_DEG));
            let e = alg
                .polar_pair(&dv)
                .map_err(|err| crate::report::Failure::from(err).with("d", &dv))?;
            let (de, ed, dd, ee) = (m(&dv, &e), m(&e, &dv), m(&dv, &dv), m(&e, &e));
            let qd = alg.q(&dv);
            let s = alg.f(&de, &ed);
            let checks = || {
                expect_eq("f(d,e) = 1", &alg.f(&dv, &e), &RatFn::one())?;
                expect_zero("f(d,ed) = 0", &alg.f(&dv, &ed))?;
                expect_zero("f(ee,d) = 0", &alg.f(&ee, &dv))?;
                expect_eq("f(dd,ed) = q(d)^θ", &alg.f(&dd, &ed), &alg.theta_k(&qd))?;
                let lhs = alg.scalar_mul(&alg.theta_k(&qd), &de);
                let rhs = &alg.scalar_mul(&s, &dd) + &alg.scalar_mul(&qd, &ed);
                expect_eq("q(d)^θ·de = f(de,ed)·dd + q(d)·ed", &lhs, &rhs)?;
                expect_eq(
                    "q(d)q(e) = s + s^θ",
                    &(&qd * &alg.q(&e)),
                    &(&alg.theta_k(&s) + &s),
                )
            };
            with_inputs(checks(), &[("d", &dv), ("e", &e)])
        }),
        cfg.run("pa_inv is an involution", 50, |rng| {
            let x = alg.random_nonzero(rng, d);
            let back = alg.inv(&x).and_then(|y| alg.inv(&y))?;
            with_inputs(expect_eq("(x⁻¹)⁻¹ = x", &back, &x), &[("x", &x)])
        }),
        cfg.run("root pair b^-1·b = a", 50, |rng| {
            let a = alg.random_nonzero(rng, d);
            let b = alg.root_pair(&a)?;
            let lhs = m(&alg.inv(&b)?, &b);
            with_inputs(expect_eq("b⁻¹·b = a", &lhs, &a), &[("a", &a)])
        }),
    ]
}

/// The quadratic-space properties of V.
pub fn space_checks(p: &PolarTriple, cfg: &RunConfig) -> Vec<CheckReport> {
    let d = cfg.max_deg;
    vec![
        cfg.run("polarization q(x+y) = q(x)+q(y)+f(x,y)", 100, |rng| {
            let (x, y) = (p.random(rng, d), p.random(rng, d));
            let rhs = &(&p.q(&x) + &p.q(&y)) + &p.f(&x, &y);
            with_inputs(
                expect_eq("polarization", &p.q(&(&x + &y)), &rhs),
                &[("x", &x), ("y", &y)],
            )
        }),
        cfg.run("q(cx) = c^2 q(x)", 50, |rng| {
            let (x, c) = (p.random(rng, d), rk(rng, d));
            let rhs = &c.square() * &p.q(&x);
            with_inputs(
                expect_eq("q(cx)", &p.q(&p.scalar_mul(&c, &x)), &rhs),
                &[("x", &x), ("c", &c)],
            )
        }),
        cfg.run("[K] is the radical of f", 50, |rng| {
            let (x, t) = (p.random(rng, d), rk(rng, d));
            let z = p.f(&x, &VElem::radical(p.ext(), t.clone()));
            with_inputs(expect_zero("f(x,[t]) = 0", &z), &[("x", &x), ("t", &t)])
        }),
        cfg.run("basis coordinates round trip", 50, |rng| {
            let x = p.random(rng, d);
            let c = p.coordinates(&x)?;
            with_inputs(
                expect_eq("Σ cᵢ·bᵢ = x", &p.from_coordinates(&c), &x),
                &[("x", &x)],
            )
        }),
        cfg.run("solver meets its constraints", 50, |rng| {
            let cs: Vec<(VElem, RatFn)> = (0..2)
                .map(|_| (p.random_nonradical(rng, d), rk(rng, d)))
                .collect();
            let t = match p.solve_f_conditions(&cs) {
                Ok(e) => cs
                    .iter()
                    .try_for_each(|(c, r)| expect_eq("f(c,e) = r", &p.f(c, &e), r)),
                // two random constraints are independent unless they are parallel
                Err(Error::InconsistentSystem) => Ok(()),
                Err(err) => Err(err.into()),
            };
            with_inputs(t, &[("c0", &cs[0].0), ("c1", &cs[1].0)])
        }),
        {
            let mut rng = crate::report::trial_rng(cfg.seed, "anisotropy", 0);
            let rep = crate::f4_space::anisotropy_sample(p, cfg.trials_or(200), d, &mut rng);
            let outcome = match rep.isotropic.first() {
                None => Ok(()),
                Some(x) => Err(crate::report::Failure::new("q(x) = 0 for nonzero x").with("x", x)),
            };
            let mut r = CheckReport::single("anisotropy of q", outcome);
            r.trials = rep.trials;
            r.passed = if r.failed == 0 { rep.trials } else { 0 };
            r
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad_ext::EElem;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(alg: &PolarityAlgebra, s: &str) -> EElem {
        crate::quad_ext::parse_eelem(alg.ext(), s).unwrap()
    }

    #[test]
    fn product_examples() {
        let alg = PolarityAlgebra::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = alg.random(&mut rng, 2);
        let one = VElem::radical(alg.ext(), RatFn::one());
        assert_eq!(alg.mul(&x, &one), x);
        let (r, s): (RatFn, RatFn) = ("a+b".parse().unwrap(), "a*b".parse().unwrap());
        let got = alg.mul(
            &VElem::radical(alg.ext(), r.clone()),
            &VElem::radical(alg.ext(), s.clone()),
        );
        assert_eq!(got, VElem::radical(alg.ext(), &alg.theta_k(&s) * &r));
    }

    #[test]
    fn inverse_examples() {
        let alg = PolarityAlgebra::standard();
        let one = VElem::radical(alg.ext(), RatFn::one());
        assert_eq!(alg.inv(&one).unwrap(), one);
        let d = alg.velem_k(
            RatFn::one(),
            RatFn::zero(),
            RatFn::zero(),
            RatFn::zero(),
            RatFn::zero(),
        );
        let want = alg.velem_k(
            RatFn::beta(),
            RatFn::zero(),
            RatFn::zero(),
            RatFn::zero(),
            RatFn::zero(),
        );
        assert_eq!(alg.inv(&d).unwrap(), want);
        assert_eq!(alg.inv(&alg.zero()).unwrap_err(), Error::ZeroElement);
    }

    #[test]
    fn printed_polar_pair_witness() {
        // d = (β,0,0), e = (γ,α,0) has q(d) = q(e) = β and f(d,e) = 1
        let alg = PolarityAlgebra::standard();
        let d = alg.velem(e(&alg, "b"), e(&alg, "0"), RatFn::zero());
        let w = alg.velem(e(&alg, "g"), e(&alg, "a"), RatFn::zero());
        assert_eq!(alg.q(&d), RatFn::beta());
        assert_eq!(alg.q(&w), RatFn::beta());
        assert_eq!(alg.f(&d, &w), RatFn::one());
        let got = alg.polar_pair(&d).unwrap();
        assert_eq!(alg.f(&d, &got), RatFn::one());
    }

    #[test]
    fn polar_pair_rejects_degenerate_input() {
        let alg = PolarityAlgebra::standard();
        let rad = VElem::radical(alg.ext(), RatFn::one());
        assert_eq!(alg.polar_pair(&rad).unwrap_err(), Error::RadicalInput);
        assert_eq!(alg.polar_pair(&alg.zero()).unwrap_err(), Error::ZeroElement);
    }

    #[test]
    fn root_pair_examples() {
        let alg = PolarityAlgebra::standard();
        let one = VElem::radical(alg.ext(), RatFn::one());
        assert_eq!(alg.root_pair(&one).unwrap(), one);
        assert_eq!(alg.root_pair(&alg.zero()).unwrap_err(), Error::ZeroElement);
    }
}
